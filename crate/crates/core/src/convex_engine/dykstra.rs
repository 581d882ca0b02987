//! Euclidean projection onto polyhedra by Dykstra's alternating projections.
//!
//! Each sweep projects onto every row in turn (closed form for halfspaces and
//! hyperplanes) while carrying Dykstra's correction terms. Every few sweeps the
//! rows that look active are handed to an equality-constrained least-squares
//! solve; when the resulting point satisfies the KKT conditions of the
//! projection problem it is returned as the exact projection.

use alloc::vec;
use alloc::vec::Vec;


use super::lp::{Constraint, ConstraintKind};
use crate::linalg::{dot, Matrix, Vector};
use crate::tol;
use crate::{Error, Result};

/// Intersection of halfspaces and hyperplanes.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::TooFewPoints(1));
        }
        for c in &constraints {
            c.normal.check_dim(dim)?;
            if !c.normal.is_finite() || !c.offset.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Polyhedron { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Largest row violation at `x`, each row scaled by its normal's length.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let n = c.normal.euclidean_norm();
                if n == 0.0 {
                    c.violation(x)
                } else {
                    c.violation(x) / n
                }
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Projection {
    Converged(Vector),
    NotConverged { last: Vector, residual: f64 },
}

impl Projection {
    pub fn point(&self) -> &Vector {
        match self {
            Projection::Converged(p) => p,
            Projection::NotConverged { last, .. } => last,
        }
    }
}

/// Euclidean projection of `point` onto `poly`, at most `max_iter` sweeps.
pub fn project_polyhedron(point: &Vector, poly: &Polyhedron, max_iter: usize) -> Result<Projection> {
    point.check_dim(poly.dim)?;
    let mut state = Dykstra::new(point, poly);
    Ok(state.run(max_iter))
}

/// Resumable Dykstra iteration, used to run successive sweep budgets.
pub(crate) struct Dykstra<'a> {
    origin: &'a Vector,
    poly: &'a Polyhedron,
    x: Vec<f64>,
    corrections: Vec<Vec<f64>>,
    norms_sq: Vec<f64>,
    sweeps: usize,
    next_polish: usize,
}

impl<'a> Dykstra<'a> {
    pub(crate) fn new(origin: &'a Vector, poly: &'a Polyhedron) -> Self {
        let norms_sq = poly.constraints.iter().map(|c| c.normal.dot(&c.normal)).collect();
        Dykstra {
            origin,
            poly,
            x: origin.to_vec(),
            corrections: vec![vec![0.0; poly.dim]; poly.constraints.len()],
            norms_sq,
            sweeps: 0,
            next_polish: 4,
        }
    }

    pub(crate) fn current(&self) -> Vector {
        Vector::from(self.x.clone())
    }

    /// Runs until converged or `self.sweeps` reaches `until`.
    pub(crate) fn run(&mut self, until: usize) -> Projection {
        let scale = 1.0 + self.origin.max_abs();
        while self.sweeps < until {
            let moved = self.sweep();
            self.sweeps += 1;
            if self.sweeps >= self.next_polish {
                self.next_polish = self.next_polish * 3 / 2 + 1;
                if let Some(exact) = self.polish() {
                    return Projection::Converged(exact);
                }
            }
            if moved < tol::DYKSTRA_STEP * scale && self.poly.residual(&self.x) <= 1e-8 * scale {
                if let Some(exact) = self.polish() {
                    return Projection::Converged(exact);
                }
                return Projection::Converged(self.current());
            }
        }
        Projection::NotConverged { last: self.current(), residual: self.poly.residual(&self.x) }
    }

    fn sweep(&mut self) -> f64 {
        let start = self.x.clone();
        for (k, c) in self.poly.constraints.iter().enumerate() {
            let nsq = self.norms_sq[k];
            if nsq == 0.0 {
                continue;
            }
            let y = &mut self.corrections[k];
            // z = x + y; x' = P_k(z); y = z - x'
            let z: Vec<f64> = self.x.iter().zip(y.iter()).map(|(a, b)| a + b).collect();
            let excess = dot(&c.normal, &z) - c.offset;
            let shift = match c.kind {
                ConstraintKind::Le => excess.max(0.0) / nsq,
                ConstraintKind::Eq => excess / nsq,
            };
            for i in 0..z.len() {
                let xi = z[i] - shift * c.normal[i];
                y[i] = z[i] - xi;
                self.x[i] = xi;
            }
        }
        start.iter().zip(&self.x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Active-set solve seeded by the current iterate. Returns the exact
    /// projection when the KKT conditions check out.
    fn polish(&self) -> Option<Vector> {
        let scale = 1.0 + self.origin.max_abs() + self.x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let mut active: Vec<usize> = self
            .poly
            .constraints
            .iter()
            .enumerate()
            .filter(|(k, c)| {
                if self.norms_sq[*k] == 0.0 {
                    return false;
                }
                match c.kind {
                    ConstraintKind::Eq => true,
                    ConstraintKind::Le => {
                        let slack = (c.offset - dot(&c.normal, &self.x)) / self.norms_sq[*k].sqrt();
                        slack <= 1e-6 * scale
                            || self.corrections[*k].iter().any(|v| v.abs() > 1e-12 * scale)
                    }
                }
            })
            .map(|(k, _)| k)
            .collect();
        for _ in 0..=self.poly.constraints.len() {
            let (candidate, multipliers) = self.solve_active(&active)?;
            let worst = active
                .iter()
                .zip(&multipliers)
                .enumerate()
                .filter(|(_, (k, _))| self.poly.constraints[**k].kind == ConstraintKind::Le)
                .min_by(|a, b| a.1 .1.total_cmp(b.1 .1));
            match worst {
                Some((pos, (_, &mu))) if mu < -1e-10 * scale => {
                    active.remove(pos);
                }
                _ => {
                    return if self.poly.residual(&candidate) <= 1e-11 * scale {
                        Some(Vector::from(candidate))
                    } else {
                        None
                    };
                }
            }
        }
        None
    }

    /// Minimizes `|x - origin|^2` subject to the active rows held with
    /// equality. Multipliers follow `x = origin - A^T mu`.
    fn solve_active(&self, active: &[usize]) -> Option<(Vec<f64>, Vec<f64>)> {
        let n = self.poly.dim;
        if active.is_empty() {
            return Some((self.origin.to_vec(), Vec::new()));
        }
        let rows: Vec<&Constraint> = active.iter().map(|&k| &self.poly.constraints[k]).collect();
        let a = Matrix::from_fn(rows.len(), n, |i, j| rows[i].normal[j]);
        let gram = &a * a.transpose();
        let rhs = nalgebra::DVector::from_fn(rows.len(), |i, _| {
            dot(&rows[i].normal, self.origin) - rows[i].offset
        });
        let svd = gram.svd(true, true);
        let cutoff = 1e-12 * svd.singular_values.max().max(f64::MIN_POSITIVE);
        let mu = svd.solve(&rhs, cutoff).ok()?;
        let correction = a.transpose() * &mu;
        let x: Vec<f64> = (0..n).map(|j| self.origin[j] - correction[j]).collect();
        if x.iter().any(|v| !v.is_finite()) {
            return None;
        }
        Some((x, mu.iter().copied().collect()))
    }
}
