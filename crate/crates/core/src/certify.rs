//! Separation margins and b.s.a. certificates.
//!
//! For a finite set `S` and an ordered pair `(y, x)` the optimal margin is
//!
//! ```text
//! d*(x, y; S) = max { f(y) - f(x) : |f|_* <= 1, f(x) <= f(z) <= f(y) for z in S }.
//! ```
//!
//! It is computed in normalized form: minimize `|f|_*` over the polyhedron
//! `{f(y - x) = 1, f(z - x) >= 0, f(y - z) >= 0}`; the margin is the
//! reciprocal of the minimum and the optimal functional is the minimizer
//! rescaled to unit dual norm. An empty polyhedron means margin 0.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;


use crate::convex_engine::{min_norm_over_polyhedron, operator_norm, Constraint, DualView, MinNormOutcome, Polyhedron};
use crate::linalg::{inverse, mat_t_vec, mat_vec, Matrix, Vector};
use crate::normed_space::NormSpec;
use crate::tol;
use crate::{Error, Result};

/// A finite set of pairwise distinct points in a normed space.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    space: NormSpec,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(space: NormSpec, points: Vec<Vector>) -> Result<Self> {
        for p in &points {
            p.check_dim(space.dim())?;
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if space.norm(&(&points[i] - &points[j]))? <= tol::DISTINCT {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        Ok(PointSet { space, points })
    }

    pub fn space(&self) -> &NormSpec {
        &self.space
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `{alpha x : x in S}`.
    pub fn scaled(&self, alpha: f64) -> Result<PointSet> {
        PointSet::new(self.space.clone(), self.points.iter().map(|p| p.scale(alpha)).collect())
    }

    pub fn with_point(&self, p: Vector) -> Result<PointSet> {
        let mut points = self.points.clone();
        points.push(p);
        PointSet::new(self.space.clone(), points)
    }

    fn check_pair(&self, y: usize, x: usize) -> Result<()> {
        for i in [y, x] {
            if i >= self.len() {
                return Err(Error::IndexError(i));
            }
        }
        if y == x {
            return Err(Error::IndexError(y));
        }
        Ok(())
    }

    fn require(&self, count: usize) -> Result<()> {
        if self.len() < count {
            Err(Error::TooFewPoints(count))
        } else {
            Ok(())
        }
    }
}

/// A dual vector together with its dual norm.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    coeffs: Vector,
    dual_norm: f64,
}

impl Functional {
    pub fn new(space: &NormSpec, coeffs: Vector) -> Result<Self> {
        let dual_norm = space.dual_norm(&coeffs)?;
        Ok(Functional { coeffs, dual_norm })
    }

    pub fn zero(dim: usize) -> Self {
        Functional { coeffs: Vector::zeros(dim), dual_norm: 0.0 }
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn dual_norm(&self) -> f64 {
        self.dual_norm
    }

    pub fn apply(&self, x: &Vector) -> f64 {
        self.coeffs.dot(x)
    }
}

/// One separated pair: `functional` is largest at `upper`, smallest at
/// `lower`, and `margin = f(upper) - f(lower)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCertificate {
    pub upper: usize,
    pub lower: usize,
    pub functional: Functional,
    pub margin: f64,
}

impl PairCertificate {
    pub fn new(set: &PointSet, upper: usize, lower: usize, functional: Functional) -> Self {
        let margin = functional.apply(&set.points[upper]) - functional.apply(&set.points[lower]);
        PairCertificate { upper, lower, functional, margin }
    }

    /// Unordered key `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.upper.min(self.lower), self.upper.max(self.lower))
    }
}

/// Claimed `(c1, c2, d)`-b.s.a. certificate for a finite set.
#[derive(Clone, Debug, PartialEq)]
pub struct BsaCertificate {
    pub set: PointSet,
    pub pairs: BTreeMap<(usize, usize), PairCertificate>,
    pub c1: f64,
    pub c2: f64,
    pub d: f64,
}

impl BsaCertificate {
    /// Assembles a certificate from pair certificates (keyed automatically).
    pub fn from_pairs(set: PointSet, pairs: Vec<PairCertificate>, c1: f64, c2: f64, d: f64) -> Self {
        let pairs = pairs.into_iter().map(|p| (p.key(), p)).collect();
        BsaCertificate { set, pairs, c1, c2, d }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarginReport {
    /// Best-orientation margin of each unordered pair `(i, j)`, `i < j`.
    pub margins: BTreeMap<(usize, usize), f64>,
    pub d: f64,
    pub separation: f64,
    pub c1: f64,
    /// `d / max(c1, 1)`: the set rescaled into the unit ball is `(1, 1, ka_lower)`.
    pub ka_lower: f64,
    /// `separation / max(c1, 1)`.
    pub k_lower: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    /// `|x| <= c1`
    PointNorm { point: usize },
    /// `|f|_* <= c2`
    DualNorm,
    /// `f(y) - f(x) >= d`
    Margin,
    /// `f(x) <= f(z)`
    Lower { point: usize },
    /// `f(z) <= f(y)`
    Upper { point: usize },
    /// Recorded margin differs from `f(y) - f(x)`.
    RecordedMargin,
    /// No certificate for the pair.
    MissingPair,
    /// `c1`, `c2` and `d` must be positive.
    NonPositiveConstant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub pair: Option<(usize, usize)>,
    pub inequality: Inequality,
    /// Signed slack of the inequality; negative means violated.
    pub slack: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Verdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Re-evaluates every inequality of `cert` from scratch.
pub fn check_certificate(cert: &BsaCertificate, tol: f64) -> Result<Verdict> {
    let set = &cert.set;
    let space = set.space();
    let mut violations = Vec::new();
    for (name, value) in [("c1", cert.c1), ("c2", cert.c2), ("d", cert.d)] {
        let _ = name;
        if !(value > 0.0) {
            violations.push(Violation { pair: None, inequality: Inequality::NonPositiveConstant, slack: value });
        }
    }
    for (i, x) in set.points().iter().enumerate() {
        let slack = cert.c1 - space.norm(x)?;
        if slack < -tol {
            violations.push(Violation { pair: None, inequality: Inequality::PointNorm { point: i }, slack });
        }
    }
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let Some(pc) = cert.pairs.get(&(i, j)) else {
                violations.push(Violation { pair: Some((i, j)), inequality: Inequality::MissingPair, slack: -cert.d });
                continue;
            };
            if pc.key() != (i, j) || pc.upper == pc.lower {
                return Err(Error::IndexError(pc.upper.max(pc.lower)));
            }
            let pair = Some((i, j));
            let f = &pc.functional;
            f.coeffs().check_dim(space.dim())?;
            let mut push = |inequality, slack: f64| {
                if slack < -tol {
                    violations.push(Violation { pair, inequality, slack });
                }
            };
            push(Inequality::DualNorm, cert.c2 - space.dual_norm(f.coeffs())?);
            let top = f.apply(&set.points()[pc.upper]);
            let bottom = f.apply(&set.points()[pc.lower]);
            push(Inequality::Margin, top - bottom - cert.d);
            push(Inequality::RecordedMargin, -(pc.margin - (top - bottom)).abs());
            for (k, z) in set.points().iter().enumerate() {
                if k == pc.upper || k == pc.lower {
                    continue;
                }
                let fz = f.apply(z);
                push(Inequality::Lower { point: k }, fz - bottom);
                push(Inequality::Upper { point: k }, top - fz);
            }
        }
    }
    for key in cert.pairs.keys() {
        if key.1 >= set.len() {
            return Err(Error::IndexError(key.1));
        }
    }
    Ok(Verdict { valid: violations.is_empty(), violations })
}

/// The normalized margin polyhedron of the ordered pair `(y, x)`.
fn margin_polyhedron(set: &PointSet, y: usize, x: usize) -> Result<Polyhedron> {
    let (py, px) = (&set.points[y], &set.points[x]);
    let mut rows = Vec::with_capacity(2 * set.len());
    rows.push(Constraint::eq(py - px, 1.0));
    for (k, z) in set.points.iter().enumerate() {
        if k != y && k != x {
            rows.push(Constraint::ge(z - px, 0.0));
            rows.push(Constraint::ge(py - z, 0.0));
        }
    }
    Polyhedron::new(set.space.dim(), rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairMargin {
    pub margin: f64,
    /// Unit dual norm, or zero when the margin is zero.
    pub functional: Functional,
    /// The underlying solve was approximate (`l_q`, `q != 2`).
    pub approximate: bool,
}

/// Optimal margin `d*(x, y; S)` of the ordered pair with `y` on top.
pub fn pair_margin(set: &PointSet, y: usize, x: usize) -> Result<PairMargin> {
    set.check_pair(y, x)?;
    let poly = margin_polyhedron(set, y, x)?;
    match min_norm_over_polyhedron(&DualView::new(&set.space), &poly)? {
        MinNormOutcome::Infeasible => {
            Ok(PairMargin { margin: 0.0, functional: Functional::zero(set.space.dim()), approximate: false })
        }
        MinNormOutcome::Optimal(m) => {
            let norm = set.space.dual_norm(&m.argmin)?;
            let functional = Functional::new(&set.space, m.argmin.scale(1.0 / norm))?;
            let margin = (functional.apply(&set.points[y]) - functional.apply(&set.points[x])).max(0.0);
            Ok(PairMargin { margin, functional, approximate: m.approximate })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub report: MarginReport,
    pub certificate: BsaCertificate,
}

/// Optimal margins for every unordered pair, assembled into a report and a
/// `(c1, 1, d)` certificate.
pub fn certify_set(set: &PointSet) -> Result<Certification> {
    set.require(2)?;
    let mut pairs = BTreeMap::new();
    let mut margins = BTreeMap::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let forward = pair_margin(set, i, j)?;
            let backward = pair_margin(set, j, i)?;
            let (upper, lower, best) =
                if backward.margin > forward.margin { (j, i, backward) } else { (i, j, forward) };
            margins.insert((i, j), best.margin);
            pairs.insert((i, j), PairCertificate::new(set, upper, lower, best.functional));
        }
    }
    let d = margins.values().copied().fold(f64::INFINITY, f64::min);
    let c1 = max_norm(set)?;
    let separation = separation(set)?;
    let scale = c1.max(1.0);
    let report = MarginReport { margins, d, separation, c1, ka_lower: d / scale, k_lower: separation / scale };
    let certificate = BsaCertificate { set: set.clone(), pairs, c1, c2: 1.0, d };
    Ok(Certification { report, certificate })
}

fn max_norm(set: &PointSet) -> Result<f64> {
    let mut m = 0.0_f64;
    for p in set.points() {
        m = m.max(set.space.norm(p)?);
    }
    Ok(m)
}

/// Every pair has best-orientation margin above `tol`.
pub fn is_antipodal(set: &PointSet, tol: f64) -> Result<bool> {
    set.require(2)?;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if pair_margin(set, i, j)?.margin <= tol && pair_margin(set, j, i)?.margin <= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equilateral {
    pub flag: bool,
    /// Mean pairwise distance.
    pub lambda: f64,
}

pub fn is_equilateral(set: &PointSet, tol: f64) -> Result<Equilateral> {
    set.require(2)?;
    let distances = pairwise_distances(set)?;
    let lambda = distances.iter().sum::<f64>() / distances.len() as f64;
    let flag = distances.iter().all(|d| (d - lambda).abs() <= tol);
    Ok(Equilateral { flag, lambda })
}

/// `min |x - y|` over distinct pairs.
pub fn separation(set: &PointSet) -> Result<f64> {
    set.require(2)?;
    Ok(pairwise_distances(set)?.into_iter().fold(f64::INFINITY, f64::min))
}

fn pairwise_distances(set: &PointSet) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(set.len() * (set.len() - 1) / 2);
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            out.push(set.space.norm(&(&set.points[i] - &set.points[j]))?);
        }
    }
    Ok(out)
}

/// Pushes a certificate through an isomorphism `T` with `|T^{-1}| <= 1`:
/// points `z_i = T y_i / delta` and functionals `g = f o T^{-1}`, where
/// `delta = |T|`. Margins shrink by exactly `delta`.
pub fn transport_certificate(cert: &BsaCertificate, t: &Matrix, target: &NormSpec) -> Result<BsaCertificate> {
    let source = cert.set.space();
    if t.ncols() != source.dim() || t.nrows() != target.dim() {
        return Err(Error::DimensionMismatch { expected: source.dim(), found: t.ncols() });
    }
    let inv = inverse(t).ok_or(Error::NotInvertible)?;
    let inv_norm = operator_norm(&inv, target, source)?;
    if inv_norm > 1.0 + tol::FEASIBILITY {
        return Err(Error::NormBoundViolated(inv_norm));
    }
    let delta = operator_norm(t, source, target)?;
    let points: Vec<Vector> = cert.set.points().iter().map(|y| mat_vec(t, y).scale(1.0 / delta)).collect();
    let set = PointSet::new(target.clone(), points)?;
    let mut pairs = BTreeMap::new();
    let mut c2 = 0.0_f64;
    let mut d = f64::INFINITY;
    for (key, pc) in &cert.pairs {
        let g = Functional::new(target, mat_t_vec(&inv, pc.functional.coeffs()))?;
        c2 = c2.max(g.dual_norm());
        let moved = PairCertificate::new(&set, pc.upper, pc.lower, g);
        d = d.min(moved.margin);
        pairs.insert(*key, moved);
    }
    let c1 = max_norm(&set)?;
    let out = BsaCertificate { set, pairs, c1, c2, d };
    if !check_certificate(&out, 1e-7)?.valid {
        return Err(Error::NumericalBreakdown("transported certificate failed re-verification"));
    }
    Ok(out)
}
