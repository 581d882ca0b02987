//! Dense two-phase simplex with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;


use crate::linalg::{dot, Matrix, Vector};
use crate::tol;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `normal . x <= offset`
    Le,
    /// `normal . x == offset`
    Eq,
}

/// One row `normal . x (<= | ==) offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub normal: Vector,
    pub offset: f64,
    pub kind: ConstraintKind,
}

impl Constraint {
    pub fn le(normal: Vector, offset: f64) -> Self {
        Constraint { normal, offset, kind: ConstraintKind::Le }
    }

    /// `normal . x >= offset`, stored as `-normal . x <= -offset`.
    pub fn ge(normal: Vector, offset: f64) -> Self {
        Constraint { normal: -&normal, offset: -offset, kind: ConstraintKind::Le }
    }

    pub fn eq(normal: Vector, offset: f64) -> Self {
        Constraint { normal, offset, kind: ConstraintKind::Eq }
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = dot(&self.normal, x);
        match self.kind {
            ConstraintKind::Le => (lhs - self.offset).max(0.0),
            ConstraintKind::Eq => (lhs - self.offset).abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSign {
    NonNegative,
    Free,
}

/// `maximize objective . x` subject to `constraints`, with per-variable
/// sign restrictions (non-negative unless marked free).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vector,
    pub constraints: Vec<Constraint>,
    pub signs: Vec<VarSign>,
}

impl LinearProgram {
    pub fn new(objective: Vector) -> Self {
        let n = objective.dim();
        LinearProgram { objective, constraints: Vec::new(), signs: vec![VarSign::NonNegative; n] }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.dim()
    }

    pub fn all_free(mut self) -> Self {
        self.signs.iter_mut().for_each(|s| *s = VarSign::Free);
        self
    }

    pub fn set_free(&mut self, i: usize) {
        self.signs[i] = VarSign::Free;
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    fn validate(&self) -> Result<()> {
        let n = self.variable_count();
        if self.signs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.signs.len() });
        }
        if !self.objective.is_finite() {
            return Err(Error::NonFinite);
        }
        for c in &self.constraints {
            c.normal.check_dim(n)?;
            if !c.normal.is_finite() || !c.offset.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpStatus {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpStatus::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Solves `lp` to an optimal basic solution.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpStatus> {
    lp.validate()?;
    let standard = Standard::build(lp);
    let mut t = standard.tableau();

    // Phase 1: drive the artificial variables to zero.
    let phase_one: Vec<f64> =
        (0..t.cols).map(|j| if j >= standard.first_artificial { -1.0 } else { 0.0 }).collect();
    let all = t.cols;
    if t.optimize(&phase_one, all)? == Phase::Unbounded {
        return Err(Error::NumericalBreakdown("phase one reported unbounded"));
    }
    let infeasibility: f64 = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= standard.first_artificial)
        .map(|(r, _)| t.rhs(r))
        .sum();
    let scale = 1.0 + standard.b.iter().fold(0.0_f64, |m, b| m.max(b.abs()));
    if infeasibility > tol::FEASIBILITY * scale {
        return Ok(LpStatus::Infeasible);
    }
    t.expel_artificials(standard.first_artificial);

    // Phase 2 over structural and slack columns only.
    if t.optimize(&standard.cost, standard.first_artificial)? == Phase::Unbounded {
        return Ok(LpStatus::Unbounded);
    }

    let mut columns = t.primal();
    let mut x = standard.recover(&columns);
    if !feasible(lp, &x, 1e-7) {
        columns = standard.refactor(&t.basis, &t.live_rows)?;
        x = standard.recover(&columns);
        if !feasible(lp, &x, 1e-6) {
            return Err(Error::NumericalBreakdown("basic solution violates constraints"));
        }
    }
    let value = lp.objective.dot(&x);
    Ok(LpStatus::Optimal(LpSolution { value, x }))
}

fn feasible(lp: &LinearProgram, x: &Vector, slack: f64) -> bool {
    let xs = 1.0 + x.max_abs();
    lp.constraints.iter().all(|c| {
        let scale = 1.0 + c.offset.abs() + c.normal.max_abs() * xs;
        c.violation(x) <= slack * scale
    }) && lp.signs.iter().zip(x.iter()).all(|(s, &v)| *s == VarSign::Free || v >= -slack * xs)
}

/// Equality form `A z = b`, `z >= 0`, `b >= 0` of a linear program.
struct Standard {
    /// Row-major, `rows x cols`, including slack and artificial columns.
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    cost: Vec<f64>,
    initial_basis: Vec<usize>,
    first_artificial: usize,
    /// For each original variable: (plus column, optional minus column).
    var_columns: Vec<(usize, Option<usize>)>,
}

impl Standard {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_columns = Vec::with_capacity(lp.variable_count());
        let mut next = 0;
        for s in &lp.signs {
            match s {
                VarSign::NonNegative => {
                    var_columns.push((next, None));
                    next += 1;
                }
                VarSign::Free => {
                    var_columns.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let structural = next;
        let slacks = lp.constraints.iter().filter(|c| c.kind == ConstraintKind::Le).count();
        // Decide which rows need artificials.
        let needs_artificial: Vec<bool> = lp
            .constraints
            .iter()
            .map(|c| c.kind == ConstraintKind::Eq || c.offset < 0.0)
            .collect();
        let artificials = needs_artificial.iter().filter(|&&n| n).count();
        let first_artificial = structural + slacks;
        let cols = first_artificial + artificials;

        let mut a = Vec::with_capacity(lp.constraints.len());
        let mut b = Vec::with_capacity(lp.constraints.len());
        let mut initial_basis = Vec::with_capacity(lp.constraints.len());
        let (mut slack_col, mut art_col) = (structural, first_artificial);
        for (c, &art) in lp.constraints.iter().zip(&needs_artificial) {
            let mut row = vec![0.0; cols];
            for (i, &(plus, minus)) in var_columns.iter().enumerate() {
                row[plus] = c.normal[i];
                if let Some(m) = minus {
                    row[m] = -c.normal[i];
                }
            }
            let mut slack = None;
            if c.kind == ConstraintKind::Le {
                row[slack_col] = 1.0;
                slack = Some(slack_col);
                slack_col += 1;
            }
            let mut rhs = c.offset;
            if rhs < 0.0 {
                row[..first_artificial].iter_mut().for_each(|v| *v = -*v);
                rhs = -rhs;
            }
            if art {
                row[art_col] = 1.0;
                initial_basis.push(art_col);
                art_col += 1;
            } else {
                initial_basis.push(slack.expect("row without artificial has a slack"));
            }
            a.push(row);
            b.push(rhs);
        }

        let mut cost = vec![0.0; cols];
        for (i, &(plus, minus)) in var_columns.iter().enumerate() {
            cost[plus] = lp.objective[i];
            if let Some(m) = minus {
                cost[m] = -lp.objective[i];
            }
        }
        Standard { a, b, cost, initial_basis, first_artificial, var_columns }
    }

    fn tableau(&self) -> Tableau {
        let rows = self.a.len();
        let cols = self.cost.len();
        let mut data = Vec::with_capacity(rows * (cols + 1));
        for (row, &rhs) in self.a.iter().zip(&self.b) {
            data.extend_from_slice(row);
            data.push(rhs);
        }
        Tableau {
            rows,
            cols,
            data,
            basis: self.initial_basis.clone(),
            live_rows: (0..rows).collect(),
        }
    }

    fn recover(&self, columns: &[f64]) -> Vector {
        self.var_columns
            .iter()
            .map(|&(plus, minus)| columns[plus] - minus.map_or(0.0, |m| columns[m]))
            .collect::<Vec<_>>()
            .into()
    }

    /// Recomputes the basic solution directly from the original data.
    fn refactor(&self, basis: &[usize], live_rows: &[usize]) -> Result<Vec<f64>> {
        let m = basis.len();
        let bmat = Matrix::from_fn(m, m, |i, k| self.a[live_rows[i]][basis[k]]);
        let rhs = nalgebra::DVector::from_fn(m, |i, _| self.b[live_rows[i]]);
        let lu = bmat.lu();
        let u = lu.u();
        if (0..m).any(|i| u[(i, i)].abs() < tol::PIVOT) {
            return Err(Error::NumericalBreakdown("singular basis after refactorization"));
        }
        let xb = lu.solve(&rhs).ok_or(Error::NumericalBreakdown("basis solve failed"))?;
        let mut z = vec![0.0; self.cost.len()];
        for (k, &col) in basis.iter().enumerate() {
            z[col] = xb[k];
        }
        Ok(z)
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows x (cols + 1)`, right-hand side in the last column.
    data: Vec<f64>,
    basis: Vec<usize>,
    /// Original row index of each tableau row (redundant rows get removed).
    live_rows: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, j: usize) -> f64 {
        self.data[r * (self.cols + 1) + j]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let w = self.cols + 1;
        let p = self.at(r, j);
        for k in 0..w {
            self.data[r * w + k] /= p;
        }
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let factor = self.at(i, j);
            if factor == 0.0 {
                continue;
            }
            for k in 0..w {
                let v = self.data[r * w + k];
                self.data[i * w + k] -= factor * v;
            }
            self.data[i * w + j] = 0.0;
        }
        self.basis[r] = j;
    }

    /// Maximizes `cost . z` using only columns `< allowed` as entering
    /// candidates. Bland's rule on both entering and leaving choices.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<Phase> {
        let limit = 1000 + 50 * (self.rows + self.cols);
        let cost_scale = 1.0 + cost.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        for _ in 0..limit {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: f64 =
                    (0..self.rows).map(|r| cost[self.basis[r]] * self.at(r, j)).sum::<f64>() - cost[j];
                reduced < -tol::OPTIMALITY * cost_scale
            });
            let Some(j) = entering else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, j);
                if a <= tol::PIVOT {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((best, br)) => {
                        let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                        if ratio < br && !tie || tie && self.basis[r] < self.basis[best] {
                            Some((r, ratio))
                        } else {
                            Some((best, br))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(Phase::Unbounded);
            };
            self.pivot(r, j);
        }
        Err(Error::NumericalBreakdown("simplex iteration limit"))
    }

    /// Pivots zero-valued artificial variables out of the basis and drops
    /// rows that turn out to be redundant.
    fn expel_artificials(&mut self, first_artificial: usize) {
        let mut r = 0;
        while r < self.rows {
            if self.basis[r] < first_artificial {
                r += 1;
                continue;
            }
            let candidate = (0..first_artificial)
                .filter(|j| !self.basis.contains(j))
                .max_by(|&a, &b| self.at(r, a).abs().total_cmp(&self.at(r, b).abs()));
            match candidate {
                Some(j) if self.at(r, j).abs() > 1e-9 => {
                    self.pivot(r, j);
                    r += 1;
                }
                _ => self.remove_row(r),
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.cols + 1;
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.live_rows.remove(r);
        self.rows -= 1;
    }

    fn primal(&self) -> Vec<f64> {
        let mut z = vec![0.0; self.cols];
        for r in 0..self.rows {
            z[self.basis[r]] = self.rhs(r);
        }
        z
    }
}
