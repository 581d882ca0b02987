//! Finite-dimensional norms: `l_p` and symmetric polytope balls.
//!
//! Polytope balls are described by their vertices only. Facets, when needed,
//! come from the polar: the dual ball of `conv(V)` is `{f : f . v <= 1}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::convex_engine::{lp_solve, Constraint, LinearProgram, LpStatus};
use crate::hull;
use crate::linalg::{rank, Vector};
use crate::tol;
use crate::{Error, Result};

/// The exponent `p` of an `l_p` norm. `p = inf` is its own variant so it
/// serializes exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Infinity => 0.0,
            Exponent::Finite(p) => 1.0 / p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    Lp { p: Exponent, dim: usize },
    /// Unit ball `conv(vertices)`; the list is closed under negation.
    Polytope { vertices: Vec<Vector> },
}

impl NormSpec {
    /// `l_p^dim`; `p = f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn lp(p: f64, dim: usize) -> Result<NormSpec> {
        let p = if p == f64::INFINITY { Exponent::Infinity } else { Exponent::Finite(p) };
        validate_space(NormSpec::Lp { p, dim })
    }

    pub fn linf(dim: usize) -> NormSpec {
        NormSpec::Lp { p: Exponent::Infinity, dim }
    }

    /// Validated polytope norm with the given vertex list.
    pub fn polytope(vertices: Vec<Vector>) -> Result<NormSpec> {
        validate_space(NormSpec::Polytope { vertices })
    }

    /// `[-1, 1]^dim` as an explicit polytope.
    pub fn cube(dim: usize) -> Result<NormSpec> {
        NormSpec::polytope(cube_vertices(dim))
    }

    /// The `l_1` ball `conv{+-e_i}` as an explicit polytope.
    pub fn cross_polytope(dim: usize) -> Result<NormSpec> {
        NormSpec::polytope(cross_vertices(dim))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormSpec::Lp { dim, .. } => *dim,
            NormSpec::Polytope { vertices } => vertices.first().map_or(0, Vector::dim),
        }
    }

    pub fn is_polytope(&self) -> bool {
        matches!(self, NormSpec::Polytope { .. })
    }

    /// Vertices of the unit ball when it is a polytope: listed vertices, or
    /// the cross-polytope / cube for `p = 1` / `p = inf` (cube only up to
    /// dimension 12).
    pub fn explicit_vertices(&self) -> Option<Vec<Vector>> {
        match self {
            NormSpec::Polytope { vertices } => Some(vertices.clone()),
            NormSpec::Lp { p: Exponent::Finite(p), dim } if *p == 1.0 => Some(cross_vertices(*dim)),
            NormSpec::Lp { p: Exponent::Infinity, dim } if *dim <= 12 => Some(cube_vertices(*dim)),
            NormSpec::Lp { .. } => None,
        }
    }

    pub fn norm(&self, x: &Vector) -> Result<f64> {
        norm_eval(self, x)
    }

    pub fn dual_norm(&self, f: &Vector) -> Result<f64> {
        dual_norm_eval(self, f)
    }

    pub fn support_point(&self, f: &Vector) -> Result<Vector> {
        support_point(self, f)
    }

    /// `x / |x|`.
    pub fn normalize(&self, x: &Vector) -> Result<Vector> {
        let n = self.norm(x)?;
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(x.scale(1.0 / n))
    }

    /// Facet normals `h` (facets `{h . x = 1}`) of a polytope ball in
    /// dimension at most 3; for other norms, `None`.
    pub fn facet_normals(&self) -> Option<Vec<Vector>> {
        match self {
            NormSpec::Polytope { vertices } => hull::facet_normals(vertices),
            _ => None,
        }
    }
}

fn cross_vertices(dim: usize) -> Vec<Vector> {
    (0..dim).flat_map(|i| [Vector::basis(dim, i), -&Vector::basis(dim, i)]).collect()
}

fn cube_vertices(dim: usize) -> Vec<Vector> {
    (0..1usize << dim)
        .map(|mask| (0..dim).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect::<Vec<_>>().into())
        .collect()
}

/// Checks and canonicalizes a norm description.
///
/// Polytope vertex lists must be centrally symmetric (checked, never
/// completed) and span the space; duplicate and non-extreme vertices are
/// dropped, keeping the first occurrence order.
pub fn validate_space(spec: NormSpec) -> Result<NormSpec> {
    match spec {
        NormSpec::Lp { p, dim } => {
            if dim == 0 {
                return Err(Error::DegenerateBall);
            }
            match p {
                Exponent::Finite(v) if v.is_nan() => Err(Error::BadExponent(v)),
                Exponent::Finite(v) if v < 1.0 => Err(Error::BadExponent(v)),
                Exponent::Finite(v) if v.is_infinite() => Ok(NormSpec::Lp { p: Exponent::Infinity, dim }),
                _ => Ok(NormSpec::Lp { p, dim }),
            }
        }
        NormSpec::Polytope { vertices } => validate_polytope(vertices).map(|vertices| NormSpec::Polytope { vertices }),
    }
}

fn validate_polytope(vertices: Vec<Vector>) -> Result<Vec<Vector>> {
    let Some(first) = vertices.first() else {
        return Err(Error::DegenerateBall);
    };
    let dim = first.dim();
    if dim == 0 {
        return Err(Error::DegenerateBall);
    }
    for v in &vertices {
        v.check_dim(dim)?;
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    let close = |a: &Vector, b: &Vector, sign: f64| {
        let scale = a.max_abs().max(1.0);
        a.iter().zip(b.iter()).all(|(x, y)| (x + sign * y).abs() <= tol::SYMMETRY * scale)
    };
    for (i, v) in vertices.iter().enumerate() {
        if !vertices.iter().any(|w| close(v, w, 1.0)) {
            return Err(Error::NotSymmetric(i));
        }
    }
    let mut unique: Vec<Vector> = Vec::with_capacity(vertices.len());
    for v in vertices {
        if !v.is_zero() && !unique.iter().any(|w| close(&v, w, -1.0)) {
            unique.push(v);
        }
    }
    if rank(&unique, dim) < dim {
        return Err(Error::DegenerateBall);
    }
    // v is extreme unless it lies in conv of the vertices other than +-v.
    let mut keep = vec![true; unique.len()];
    for (i, v) in unique.iter().enumerate() {
        let rest: Vec<Vector> =
            unique.iter().filter(|w| !close(v, w, -1.0) && !close(v, w, 1.0)).cloned().collect();
        if rest.is_empty() || rank(&rest, dim) < dim {
            continue;
        }
        if let Some(gauge) = gauge_over(&rest, v)? {
            if gauge <= 1.0 + tol::FEASIBILITY {
                keep[i] = false;
            }
        }
    }
    Ok(unique.into_iter().zip(keep).filter_map(|(v, k)| k.then_some(v)).collect())
}

/// Minkowski functional of `x` for the symmetric hull of `vertices`:
/// `min sum a_i` with `a >= 0`, `sum a_i v_i = x`. `None` if infeasible.
fn gauge_over(vertices: &[Vector], x: &Vector) -> Result<Option<f64>> {
    if x.is_zero() {
        return Ok(Some(0.0));
    }
    let n = x.dim();
    let mut lp = LinearProgram::new(Vector::from(vec![-1.0; vertices.len()]));
    for k in 0..n {
        let row: Vec<f64> = vertices.iter().map(|v| v[k]).collect();
        lp.push(Constraint::eq(row.into(), x[k]));
    }
    match lp_solve(&lp)? {
        LpStatus::Optimal(s) => Ok(Some(-s.value)),
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(Error::NumericalBreakdown("gauge LP unbounded")),
    }
}

fn lp_norm(x: &[f64], p: Exponent) -> f64 {
    let m = x.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    match p {
        Exponent::Infinity => m,
        _ if m == 0.0 => 0.0,
        Exponent::Finite(p) if p == 1.0 => x.iter().map(|c| c.abs()).sum(),
        Exponent::Finite(p) if p == 2.0 => m * x.iter().map(|c| (c / m) * (c / m)).sum::<f64>().sqrt(),
        Exponent::Finite(p) => m * x.iter().map(|c| (c.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

pub fn norm_eval(spec: &NormSpec, x: &Vector) -> Result<f64> {
    x.check_dim(spec.dim())?;
    match spec {
        NormSpec::Lp { p, .. } => Ok(lp_norm(x, *p)),
        NormSpec::Polytope { vertices } => {
            gauge_over(vertices, x)?.ok_or(Error::NumericalBreakdown("point outside the cone of the ball"))
        }
    }
}

pub fn dual_norm_eval(spec: &NormSpec, f: &Vector) -> Result<f64> {
    f.check_dim(spec.dim())?;
    match spec {
        NormSpec::Lp { p, .. } => Ok(lp_norm(f, p.conjugate())),
        NormSpec::Polytope { vertices } => Ok(vertices.iter().map(|v| v.dot(f).abs()).fold(0.0, f64::max)),
    }
}

fn argmax_abs(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, c) in x.iter().enumerate() {
        if c.abs() > x[best].abs() {
            best = i;
        }
    }
    best
}

fn sign_or_plus(c: f64) -> f64 {
    if c < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// A unit vector `x` with `f . x = |f|_*`. Ties go to the lowest index.
pub fn support_point(spec: &NormSpec, f: &Vector) -> Result<Vector> {
    f.check_dim(spec.dim())?;
    if f.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    let n = f.dim();
    match spec {
        NormSpec::Lp { p: Exponent::Infinity, .. } => Ok(f.iter().map(|&c| sign_or_plus(c)).collect::<Vec<_>>().into()),
        NormSpec::Lp { p: Exponent::Finite(p), .. } if *p == 1.0 => {
            let k = argmax_abs(f);
            Ok(Vector::basis(n, k).scale(sign_or_plus(f[k])))
        }
        NormSpec::Lp { p, .. } => {
            let q = p.conjugate();
            let Exponent::Finite(qv) = q else { unreachable!("1 < p < inf") };
            let g = f.scale(1.0 / lp_norm(f, q));
            Ok(g.iter().map(|&c| c.abs().powf(qv - 1.0).copysign(c)).collect::<Vec<_>>().into())
        }
        NormSpec::Polytope { vertices } => {
            let mut best = 0;
            for (i, v) in vertices.iter().enumerate() {
                if v.dot(f) > vertices[best].dot(f) {
                    best = i;
                }
            }
            Ok(vertices[best].clone())
        }
    }
}

/// A functional `f` with `|f|_* = 1` and `f . x = |x|`.
pub fn norming_functional(spec: &NormSpec, x: &Vector) -> Result<Vector> {
    x.check_dim(spec.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = x.dim();
    match spec {
        NormSpec::Lp { p: Exponent::Infinity, .. } => {
            let k = argmax_abs(x);
            Ok(Vector::basis(n, k).scale(sign_or_plus(x[k])))
        }
        NormSpec::Lp { p: Exponent::Finite(p), .. } if *p == 1.0 => {
            Ok(x.iter().map(|&c| if c == 0.0 { 0.0 } else { c.signum() }).collect::<Vec<_>>().into())
        }
        NormSpec::Lp { p: Exponent::Finite(p), .. } => {
            let g = x.scale(1.0 / lp_norm(x, Exponent::Finite(*p)));
            Ok(g.iter().map(|&c| c.abs().powf(p - 1.0).copysign(c)).collect::<Vec<_>>().into())
        }
        NormSpec::Polytope { vertices } => {
            // max f . x over the polar {f : f . v <= 1}
            let mut lp = LinearProgram::new(x.clone()).all_free();
            for v in vertices {
                lp.push(Constraint::le(v.clone(), 1.0));
            }
            match lp_solve(&lp)? {
                LpStatus::Optimal(s) => Ok(s.x),
                _ => Err(Error::NumericalBreakdown("polar LP failed")),
            }
        }
    }
}

/// Unit ball `conv(B_base ∪ {±points})`, canonicalized.
pub fn renorm_union(base: &NormSpec, points: &[Vector]) -> Result<NormSpec> {
    let NormSpec::Polytope { vertices } = base else {
        return Err(Error::NotPolytope);
    };
    let mut all = vertices.clone();
    for p in points {
        p.check_dim(base.dim())?;
        all.push(p.clone());
        all.push(-p);
    }
    validate_space(NormSpec::Polytope { vertices: all })
}

/// Inscribed polytope approximation of an `l_p` ball.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralApprox {
    pub space: NormSpec,
    /// `|x| <= |x|_approx <= (1 + ratio_bound) |x|` for every `x`.
    pub ratio_bound: f64,
}

/// Polytope with vertices on the `l_p` sphere along a deterministic direction
/// grid: uniform angles in dimension 2, a Fibonacci grid (closed under
/// antipodes) in dimension 3. `p = 1` and `p = inf` are returned exactly.
///
/// The bound is rigorous: the approximate gauge is `max_h h . x` over facet
/// normals `h`, so the worst ratio is `max_h |h|_q`.
pub fn polyhedral_approx(spec: &NormSpec, direction_count: usize) -> Result<PolyhedralApprox> {
    let NormSpec::Lp { p, dim } = spec else {
        return Err(Error::NotPolytope);
    };
    let dim = *dim;
    if let Some(vertices) = spec.explicit_vertices() {
        return Ok(PolyhedralApprox { space: NormSpec::polytope(vertices)?, ratio_bound: 0.0 });
    }
    let directions: Vec<Vector> = match dim {
        1 => vec![Vector::from([1.0]), Vector::from([-1.0])],
        2 => (0..direction_count)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / direction_count as f64;
                Vector::from([theta.cos(), theta.sin()])
            })
            .collect(),
        3 => fibonacci_sphere(direction_count),
        _ => return Err(Error::UnsupportedDimension(dim)),
    };
    let mut vertices: Vec<Vector> = Vec::with_capacity(2 * directions.len());
    for d in &directions {
        let u = d.scale(1.0 / lp_norm(d, *p));
        vertices.push(-&u);
        vertices.push(u);
    }
    let space = NormSpec::polytope(vertices)?;
    let facets = space.facet_normals().ok_or(Error::UnsupportedDimension(dim))?;
    let q = p.conjugate();
    let ratio_bound = facets.iter().map(|h| lp_norm(h, q)).fold(1.0, f64::max) - 1.0;
    Ok(PolyhedralApprox { space, ratio_bound })
}

/// Near-uniform deterministic points on `S^2`.
pub(crate) fn fibonacci_sphere(count: usize) -> Vec<Vector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Vector::from([r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}
