//! Minimum dual norm over a polyhedron.
//!
//! - Euclidean duals reduce to projecting the origin (Dykstra).
//! - Polyhedral duals (`l_1`, `l_inf`, polytope norms) become one LP.
//! - `l_q` duals with `q != 2` go through the Fenchel dual
//!   `max sum_k s_k lambda_k o_k - 1/2 |sum_k s_k lambda_k n_k|_p^2`, which only
//!   carries sign constraints on the inequality multipliers. It is solved by
//!   spectral projected gradient; the recovered primal point is projected back
//!   onto the polyhedron so that the returned argmin is feasible, and the
//!   duality gap is reported as the residual.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;


use super::dykstra::{Dykstra, Polyhedron, Projection};
use super::lp::{lp_solve, Constraint, ConstraintKind, LinearProgram, LpStatus};
use crate::linalg::{dot, Vector};
use crate::normed_space::{Exponent, NormSpec};
use crate::tol;
use crate::{Error, Result};

/// The dual space `X^*` of a normed space `X`.
#[derive(Clone, Copy, Debug)]
pub struct DualView<'a> {
    pub base: &'a NormSpec,
}

impl<'a> DualView<'a> {
    pub fn new(base: &'a NormSpec) -> Self {
        DualView { base }
    }

    pub fn eval(&self, f: &Vector) -> Result<f64> {
        self.base.dual_norm(f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinNorm {
    pub value: f64,
    pub argmin: Vector,
    /// Set on the `l_q`, `q != 2` path.
    pub approximate: bool,
    /// Upper minus lower bound on the optimum (0 on exact paths).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinNormOutcome {
    Optimal(MinNorm),
    Infeasible,
}

pub fn min_norm_over_polyhedron(dual: &DualView<'_>, poly: &Polyhedron) -> Result<MinNormOutcome> {
    let space = dual.base;
    if poly.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: poly.dim() });
    }
    match space {
        NormSpec::Lp { p: Exponent::Finite(p), .. } if *p == 2.0 => {
            let Some(x) = project_or_detect(&Vector::zeros(poly.dim()), poly)? else {
                return Ok(MinNormOutcome::Infeasible);
            };
            let value = x.euclidean_norm();
            Ok(MinNormOutcome::Optimal(MinNorm { value, argmin: x, approximate: false, residual: 0.0 }))
        }
        NormSpec::Lp { p: Exponent::Finite(p), .. } if *p > 1.0 => fenchel_dual(space, *p, poly),
        _ => polyhedral(space, poly),
    }
}

/// Projection of `point` onto `poly`, or `None` when the polyhedron is empty.
///
/// Emptiness shows up as a residual that does not shrink over three doubling
/// sweep budgets; an LP feasibility check confirms it before reporting.
pub(crate) fn project_or_detect(point: &Vector, poly: &Polyhedron) -> Result<Option<Vector>> {
    let mut dykstra = Dykstra::new(point, poly);
    let mut residuals = [0.0; 3];
    let mut until = 0;
    for (k, budget) in [64, 128, 256].into_iter().enumerate() {
        until += budget;
        match dykstra.run(until) {
            Projection::Converged(x) => return Ok(Some(x)),
            Projection::NotConverged { residual, .. } => residuals[k] = residual,
        }
    }
    let scale = 1.0 + point.max_abs();
    if residuals[2] > 1e-8 * scale && residuals[2] > 0.5 * residuals[0] && !lp_feasible(poly)? {
        return Ok(None);
    }
    match dykstra.run(tol::DYKSTRA_MAX_ITER) {
        Projection::Converged(x) => Ok(Some(x)),
        Projection::NotConverged { residual, .. } => {
            if lp_feasible(poly)? {
                Err(Error::NotConverged(residual))
            } else {
                Ok(None)
            }
        }
    }
}

fn lp_feasible(poly: &Polyhedron) -> Result<bool> {
    let mut lp = LinearProgram::new(Vector::zeros(poly.dim())).all_free();
    poly.constraints().iter().cloned().for_each(|c| lp.push(c));
    Ok(!matches!(lp_solve(&lp)?, LpStatus::Infeasible))
}

/// LP reformulation `min t` with `t >= |f|_*` written as linear rows.
fn polyhedral(space: &NormSpec, poly: &Polyhedron) -> Result<MinNormOutcome> {
    let n = poly.dim();
    let pad = |v: &[f64], extra: usize| -> Vector {
        let mut c = v.to_vec();
        c.resize(n + extra, 0.0);
        c.into()
    };
    let mut rows: Vec<Constraint> = Vec::new();
    let mut objective = vec![0.0; n];
    let extra;
    match space {
        NormSpec::Lp { p: Exponent::Infinity, .. } => {
            // dual l_1 via w_i >= |f_i|, minimize sum w_i
            extra = n;
            objective.extend(core::iter::repeat_n(-1.0, n));
            for i in 0..n {
                let mut up = vec![0.0; 2 * n];
                up[i] = 1.0;
                up[n + i] = -1.0;
                let mut down = vec![0.0; 2 * n];
                down[i] = -1.0;
                down[n + i] = -1.0;
                rows.push(Constraint::le(up.into(), 0.0));
                rows.push(Constraint::le(down.into(), 0.0));
            }
        }
        _ => {
            extra = 1;
            objective.push(-1.0);
            // each normal g gives g . f - t <= 0
            let normals: Vec<Vector> = match space {
                NormSpec::Lp { .. } => (0..n)
                    .flat_map(|i| [Vector::basis(n, i), -&Vector::basis(n, i)])
                    .collect(),
                NormSpec::Polytope { vertices } => vertices.clone(),
            };
            for g in normals {
                let mut row = g.into_inner();
                row.push(-1.0);
                rows.push(Constraint::le(row.into(), 0.0));
            }
        }
    }
    let mut lp = LinearProgram::new(objective.into());
    for i in 0..n {
        lp.set_free(i);
    }
    for c in poly.constraints() {
        lp.push(Constraint { normal: pad(&c.normal, extra), offset: c.offset, kind: c.kind });
    }
    rows.into_iter().for_each(|r| lp.push(r));
    match lp_solve(&lp)? {
        LpStatus::Infeasible => Ok(MinNormOutcome::Infeasible),
        LpStatus::Unbounded => Err(Error::NumericalBreakdown("norm LP unbounded")),
        LpStatus::Optimal(sol) => {
            let argmin = Vector::from(&sol.x.coords()[..n]);
            let value = space.dual_norm(&argmin)?;
            Ok(MinNormOutcome::Optimal(MinNorm { value, argmin, approximate: false, residual: 0.0 }))
        }
    }
}

/// Gradient of `1/2 |w|_p^2`: `|w|_p^{2-p} sign(w) |w|^{p-1}`.
fn half_sq_gradient(w: &[f64], p: f64) -> Vec<f64> {
    let norm = lp_norm(w, p);
    if norm == 0.0 {
        return vec![0.0; w.len()];
    }
    w.iter().map(|&c| norm * (c / norm).abs().powf(p - 1.0).copysign(c)).collect()
}

fn lp_norm(w: &[f64], p: f64) -> f64 {
    let m = w.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if m == 0.0 {
        return 0.0;
    }
    m * w.iter().map(|c| (c.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

struct DualProblem<'a> {
    poly: &'a Polyhedron,
    /// Exponent of the base space (the dual of the dual norm being minimized).
    p: f64,
    signs: Vec<f64>,
}

impl DualProblem<'_> {
    fn w(&self, lambda: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.poly.dim()];
        for ((c, &s), &l) in self.poly.constraints().iter().zip(&self.signs).zip(lambda) {
            if l != 0.0 {
                for (wi, ni) in w.iter_mut().zip(c.normal.iter()) {
                    *wi += s * l * ni;
                }
            }
        }
        w
    }

    /// Negated dual objective and its gradient; the gradient's entries are
    /// signed row residuals at the recovered primal point.
    fn value_and_gradient(&self, lambda: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
        let w = self.w(lambda);
        let norm = lp_norm(&w, self.p);
        let linear: f64 = self
            .poly
            .constraints()
            .iter()
            .zip(&self.signs)
            .zip(lambda)
            .map(|((c, &s), &l)| s * l * c.offset)
            .sum();
        let f = half_sq_gradient(&w, self.p);
        let grad = self
            .poly
            .constraints()
            .iter()
            .zip(&self.signs)
            .map(|(c, &s)| s * (dot(&c.normal, &f) - c.offset))
            .collect();
        (0.5 * norm * norm - linear, grad, f)
    }

    fn project(&self, lambda: &mut [f64]) {
        for (l, c) in lambda.iter_mut().zip(self.poly.constraints()) {
            if c.kind == ConstraintKind::Le && *l < 0.0 {
                *l = 0.0;
            }
        }
    }
}

fn fenchel_dual(space: &NormSpec, p: f64, poly: &Polyhedron) -> Result<MinNormOutcome> {
    // Feasibility and a reference point first.
    let Some(start) = project_or_detect(&Vector::zeros(poly.dim()), poly)? else {
        return Ok(MinNormOutcome::Infeasible);
    };
    let signs = poly
        .constraints()
        .iter()
        .map(|c| if c.kind == ConstraintKind::Le { -1.0 } else { 1.0 })
        .collect();
    let problem = DualProblem { poly, p, signs };
    let lambda = spectral_projected_gradient(&problem);
    let (neg_dual, _, f) = problem.value_and_gradient(&lambda);
    let lower = (-2.0 * neg_dual).max(0.0).sqrt();

    let recovered = Vector::from(f);
    let candidate = project_or_detect(&recovered, poly)?.unwrap_or(start.clone());
    let (argmin, value) = {
        let v_candidate = space.dual_norm(&candidate)?;
        let v_start = space.dual_norm(&start)?;
        if v_candidate <= v_start {
            (candidate, v_candidate)
        } else {
            (start, v_start)
        }
    };
    Ok(MinNormOutcome::Optimal(MinNorm {
        value,
        argmin,
        approximate: true,
        residual: (value - lower).max(0.0),
    }))
}

/// Nonmonotone spectral projected gradient for the negated dual.
fn spectral_projected_gradient(problem: &DualProblem<'_>) -> Vec<f64> {
    const MEMORY: usize = 10;
    const MAX_ITER: usize = 20_000;
    let m = problem.poly.constraints().len();
    let mut lambda = vec![0.0; m];
    let (mut value, mut grad, _) = problem.value_and_gradient(&lambda);
    let mut history: VecDeque<f64> = VecDeque::from([value]);
    let mut step = {
        let mut trial: Vec<f64> = lambda.iter().zip(&grad).map(|(l, g)| l - g).collect();
        problem.project(&mut trial);
        let d = trial.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        if d > 0.0 {
            1.0 / d
        } else {
            1.0
        }
    };
    for _ in 0..MAX_ITER {
        let mut trial: Vec<f64> = lambda.iter().zip(&grad).map(|(l, g)| l - step * g).collect();
        problem.project(&mut trial);
        let direction: Vec<f64> = trial.iter().zip(&lambda).map(|(t, l)| t - l).collect();
        let dnorm = direction.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
        let lscale = 1.0 + lambda.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
        if dnorm <= 1e-15 * lscale {
            break;
        }
        let slope = dot(&grad, &direction);
        let reference = history.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut theta = 1.0;
        let (next, next_value, next_grad) = loop {
            let candidate: Vec<f64> = lambda.iter().zip(&direction).map(|(l, d)| l + theta * d).collect();
            let (v, g, _) = problem.value_and_gradient(&candidate);
            if v <= reference + 1e-4 * theta * slope || theta < 1e-12 {
                break (candidate, v, g);
            }
            theta *= 0.5;
        };
        let s: Vec<f64> = next.iter().zip(&lambda).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = next_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        step = if sy > 0.0 { (dot(&s, &s) / sy).clamp(1e-30, 1e30) } else { 1e30_f64.min(step * 10.0) };
        let improved = value - next_value;
        lambda = next;
        value = next_value;
        grad = next_grad;
        history.push_back(value);
        if history.len() > MEMORY {
            history.pop_front();
        }
        if theta < 1e-12 && improved.abs() <= 1e-16 * (1.0 + value.abs()) {
            break;
        }
    }
    lambda
}
