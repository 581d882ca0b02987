//! Explicit b.s.a. families.
//!
//! Every generator returns a [`NamedFamily`]: a point set, one separating
//! functional per unordered pair and the constants `(c1, c2, d)` the
//! construction claims. The claim is checkable with
//! [`check_certificate`](crate::certify::check_certificate) via
//! [`NamedFamily::certificate`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::certify::{certify_set, check_certificate, BsaCertificate, Functional, PairCertificate, PointSet, Verdict};
use crate::linalg::{from_columns, inverse, row, Vector};
use crate::normed_space::{renorm_union, Exponent, NormSpec};
use crate::tol;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NamedFamily {
    pub set: PointSet,
    pub pairs: BTreeMap<(usize, usize), PairCertificate>,
    /// `(c1, c2, d)`.
    pub claimed: (f64, f64, f64),
    pub provenance: String,
    /// Scaling constant of each pair functional where the construction has
    /// one (`lambda_ij`, `s` or `t`).
    pub pair_constants: BTreeMap<(usize, usize), f64>,
}

impl NamedFamily {
    fn assemble(set: PointSet, pairs: Vec<PairCertificate>, claimed: (f64, f64, f64), provenance: String) -> Self {
        let pairs = pairs.into_iter().map(|p| (p.key(), p)).collect();
        NamedFamily { set, pairs, claimed, provenance, pair_constants: BTreeMap::new() }
    }

    /// The family as a certificate at its claimed constants.
    pub fn certificate(&self) -> BsaCertificate {
        let (c1, c2, d) = self.claimed;
        BsaCertificate { set: self.set.clone(), pairs: self.pairs.clone(), c1, c2, d }
    }

    pub fn check(&self, tol: f64) -> Result<Verdict> {
        check_certificate(&self.certificate(), tol)
    }
}

fn pair(set: &PointSet, upper: usize, lower: usize, coeffs: Vector) -> Result<PairCertificate> {
    Ok(PairCertificate::new(set, upper, lower, Functional::new(set.space(), coeffs)?))
}

/// Canonical basis of `l_p^n` with `g_kl = 2^{1/p - 1} (e_k* - e_l*)`.
pub fn lp_basis_family(p: f64, n: usize) -> Result<NamedFamily> {
    let space = NormSpec::lp(p, n)?;
    if matches!(space, NormSpec::Lp { p: Exponent::Infinity, .. }) {
        return Err(Error::UseSummingFamily);
    }
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let set = PointSet::new(space, (0..n).map(|k| Vector::basis(n, k)).collect())?;
    let c = (1.0 / p - 1.0).exp2();
    let mut pairs = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            pairs.push(pair(&set, k, l, (&Vector::basis(n, k) - &Vector::basis(n, l)).scale(c))?);
        }
    }
    let d = (1.0 / p).exp2();
    Ok(NamedFamily::assemble(set, pairs, (1.0, 1.0, d), format!("lp-basis(p={p}, n={n})")))
}

/// `y_m = e_1 + ... + e_m - e_{m+1}` in `l_inf^n`, `m = 1..n-1`, separated
/// by coordinate functionals.
pub fn summing_family(n: usize) -> Result<NamedFamily> {
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let points = (1..n)
        .map(|m| {
            let mut y = Vector::zeros(n);
            y.coords_mut()[..m].fill(1.0);
            y.coords_mut()[m] = -1.0;
            y
        })
        .collect();
    let set = PointSet::new(NormSpec::linf(n), points)?;
    let mut pairs = Vec::new();
    for a in 0..n - 1 {
        for b in a + 1..n - 1 {
            // point a is y_{a+1}; its negative coordinate is a + 1
            pairs.push(pair(&set, b, a, Vector::basis(n, a + 1))?);
        }
    }
    Ok(NamedFamily::assemble(set, pairs, (1.0, 1.0, 2.0), format!("summing(n={n})")))
}

/// Normalized vectors with normalized biorthogonal functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct AuerbachSystem {
    space: NormSpec,
    vectors: Vec<Vector>,
    functionals: Vec<Vector>,
}

impl AuerbachSystem {
    /// Validates `|x_i| = |x_i*| = 1` and `x_i*(x_j) = delta_ij` within
    /// [`tol::AUERBACH`].
    pub fn new(space: NormSpec, vectors: Vec<Vector>, functionals: Vec<Vector>) -> Result<Self> {
        let n = space.dim();
        if vectors.len() != n || functionals.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: vectors.len().min(functionals.len()) });
        }
        for (x, f) in vectors.iter().zip(&functionals) {
            x.check_dim(n)?;
            f.check_dim(n)?;
            if (space.norm(x)? - 1.0).abs() > tol::AUERBACH {
                return Err(Error::NotAuerbach("vector norm differs from 1"));
            }
            if (space.dual_norm(f)? - 1.0).abs() > tol::AUERBACH {
                return Err(Error::NotAuerbach("functional dual norm differs from 1"));
            }
        }
        check_biorthogonal(&vectors, &functionals)?;
        Ok(AuerbachSystem { space, vectors, functionals })
    }

    /// The canonical basis, Auerbach in every `l_p`.
    pub fn canonical(space: NormSpec) -> Result<Self> {
        let n = space.dim();
        let basis: Vec<Vector> = (0..n).map(|k| Vector::basis(n, k)).collect();
        AuerbachSystem::new(space, basis.clone(), basis)
    }

    pub fn space(&self) -> &NormSpec {
        &self.space
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn functionals(&self) -> &[Vector] {
        &self.functionals
    }

    pub fn determinant(&self) -> f64 {
        from_columns(&self.vectors).determinant()
    }
}

fn check_biorthogonal(vectors: &[Vector], functionals: &[Vector]) -> Result<()> {
    for (i, f) in functionals.iter().enumerate() {
        for (j, x) in vectors.iter().enumerate() {
            let value = f.dot(x);
            let target = if i == j { 1.0 } else { 0.0 };
            if (value - target).abs() > tol::AUERBACH {
                return Err(Error::NotBiorthogonal { i, j, value });
            }
        }
    }
    Ok(())
}

const MAX_SWEEPS: usize = 100_000;

/// Cyclic coordinate ascent on `|det(x_1, ..., x_n)|` over the unit sphere.
pub fn auerbach_ascent(space: &NormSpec, seed: u64) -> Result<AuerbachSystem> {
    auerbach_ascent_traced(space, seed).map(|(system, _)| system)
}

/// As [`auerbach_ascent`], also returning `|det|` after the start and after
/// every sweep.
pub fn auerbach_ascent_traced(space: &NormSpec, seed: u64) -> Result<(AuerbachSystem, Vec<f64>)> {
    let n = space.dim();
    let mut columns = start_columns(space, seed)?;
    let mut det = from_columns(&columns).determinant().abs();
    let mut history = Vec::from([det]);
    let vertices = space.explicit_vertices();
    let off_vertex = |x: &Vector| match &vertices {
        Some(list) => !list.iter().any(|v| (v - x).max_abs() <= 1e-12),
        None => false,
    };
    for _ in 0..MAX_SWEEPS {
        let before = det;
        let mut snapped = false;
        for i in 0..n {
            let x = from_columns(&columns);
            let signed = x.determinant();
            let inv = inverse(&x).ok_or(Error::NumericalBreakdown("ascent lost invertibility"))?;
            // v -> det(X with column i replaced by v)
            let cofactor = row(&inv, i).scale(signed);
            let candidate = space.support_point(&cofactor)?;
            let gain = cofactor.dot(&candidate);
            // on polytope balls, columns also move off edges at equal volume
            let level = signed.abs() * (1.0 + 4.0 * f64::EPSILON);
            if gain > level {
                columns[i] = candidate;
            } else if gain >= signed.abs() * (1.0 - 1e-12) && off_vertex(&columns[i]) && !off_vertex(&candidate) {
                columns[i] = candidate;
                snapped = true;
            }
        }
        det = from_columns(&columns).determinant().abs();
        history.push(det);
        if !snapped && det - before < 1e-12 * before {
            let inv = inverse(&from_columns(&columns)).ok_or(Error::NotInvertible)?;
            let functionals = (0..n).map(|i| row(&inv, i)).collect();
            return Ok((AuerbachSystem::new(space.clone(), columns, functionals)?, history));
        }
    }
    Err(Error::NotConverged(det))
}

fn start_columns(space: &NormSpec, seed: u64) -> Result<Vec<Vector>> {
    let n = space.dim();
    let canonical: Vec<Vector> =
        (0..n).map(|k| space.normalize(&Vector::basis(n, k))).collect::<Result<_>>()?;
    if from_columns(&canonical).determinant().abs() > 1e-12 {
        return Ok(canonical);
    }
    for attempt in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let columns = (0..n)
            .map(|_| {
                let v = Vector::from((0..n).map(|_| StandardNormal.sample(&mut rng)).collect::<Vec<f64>>());
                space.normalize(&v)
            })
            .collect::<Result<Vec<_>>>()?;
        if from_columns(&columns).determinant().abs() > 1e-12 {
            return Ok(columns);
        }
    }
    Err(Error::DegenerateStart)
}

/// Pair `(i, j)` separated by `lambda_ij (x_i* - x_j*) / 2` with
/// `lambda_ij = 1 / |(x_i* - x_j*) / 2|_*`.
pub fn strict_convex_family(system: &AuerbachSystem) -> Result<NamedFamily> {
    let space = system.space();
    let n = space.dim();
    let set = PointSet::new(space.clone(), system.vectors.clone())?;
    let mut pairs = Vec::new();
    let mut constants = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let half = (&system.functionals[i] - &system.functionals[j]).scale(0.5);
            let lambda = 1.0 / space.dual_norm(&half)?;
            let threshold = 1.0 + tol::FEASIBILITY;
            if lambda <= threshold {
                return Err(Error::NotStrictlyConvexEvidence { i, j, value: lambda, threshold });
            }
            constants.insert((i, j), lambda);
            pairs.push(pair(&set, i, j, half.scale(lambda))?);
        }
    }
    if pairs.is_empty() {
        return Err(Error::TooSmall(n));
    }
    let d = constants.values().copied().fold(f64::INFINITY, f64::min);
    let mut family = NamedFamily::assemble(set, pairs, (1.0, 1.0, d), String::from("strict-convex"));
    family.pair_constants = constants;
    Ok(family)
}

/// The `2n` points `x_0, -x_0, x_1, -x_1, ...` (index `2i` is `x_i`, `2i + 1`
/// is `-x_i`).
pub fn plus_minus_family(system: &AuerbachSystem) -> Result<NamedFamily> {
    let space = system.space();
    let n = space.dim();
    let x = &system.vectors;
    let xs = &system.functionals;
    let points = x.iter().flat_map(|v| [v.clone(), -v]).collect();
    let set = PointSet::new(space.clone(), points)?;
    let mut pairs = Vec::new();
    let mut constants = BTreeMap::new();
    let mut d = 2.0_f64;
    for i in 0..n {
        pairs.push(pair(&set, 2 * i, 2 * i + 1, xs[i].clone())?);
        constants.insert((2 * i, 2 * i + 1), 1.0);
    }
    let threshold = 0.5 + tol::FEASIBILITY;
    for i in 0..n {
        for j in i + 1..n {
            let diff = &xs[i] - &xs[j];
            let sum = &xs[i] + &xs[j];
            let t = 1.0 / space.dual_norm(&diff)?;
            let s = 1.0 / space.dual_norm(&sum)?;
            for value in [t, s] {
                if value <= threshold {
                    return Err(Error::NotStrictlyConvexEvidence { i, j, value, threshold });
                }
            }
            let (pi, mi, pj, mj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            // t (x_i* - x_j*) is t at x_i and -x_j, -t at x_j and -x_i
            pairs.push(pair(&set, pi, pj, diff.scale(t))?);
            pairs.push(pair(&set, mj, mi, diff.scale(t))?);
            // s (x_i* + x_j*) is s at x_i and x_j, -s at -x_i and -x_j
            pairs.push(pair(&set, pi, mj, sum.scale(s))?);
            pairs.push(pair(&set, pj, mi, sum.scale(s))?);
            for key in [(pi, pj), (mi, mj)] {
                constants.insert(key, t);
            }
            for key in [(pi, mj), (mi, pj)] {
                constants.insert(key, s);
            }
            d = d.min(2.0 * t).min(2.0 * s);
        }
    }
    let mut family = NamedFamily::assemble(set, pairs, (1.0, 1.0, d), String::from("plus-minus"));
    family.pair_constants = constants;
    Ok(family)
}

/// Renorms a polytope space so that `{+-2 x_i}` lies on the new unit sphere
/// and certifies it there.
pub fn renorm_equilateral_family(base: &NormSpec, system: &AuerbachSystem) -> Result<(NormSpec, NamedFamily)> {
    if !base.is_polytope() {
        return Err(Error::NotPolytope);
    }
    system.vectors[0].check_dim(base.dim())?;
    let doubled: Vec<Vector> = system.vectors.iter().map(|x| x.scale(2.0)).collect();
    let space = renorm_union(base, &doubled)?;
    let points: Vec<Vector> = doubled.iter().flat_map(|v| [v.clone(), -v]).collect();
    for p in &points {
        let norm = space.norm(p)?;
        if (norm - 1.0).abs() > tol::FEASIBILITY {
            return Err(Error::NumericalBreakdown("renormed point off the unit sphere"));
        }
    }
    let set = PointSet::new(space.clone(), points)?;
    let certified = certify_set(&set)?.certificate;
    let family = NamedFamily {
        set,
        pairs: certified.pairs,
        claimed: (1.0, 1.0, 2.0),
        provenance: String::from("renorm-equilateral"),
        pair_constants: BTreeMap::new(),
    };
    Ok((space, family))
}

/// `y_i = x_i / |x_i|`, `y_i* = |x_i| x_i*`; pair `(i, j)` is separated by
/// `y_i*`. Claims `(1, M, 1)` with `M = max |y_i*|_*`.
pub fn normalize_biorthogonal(vectors: &[Vector], functionals: &[Vector], space: &NormSpec) -> Result<NamedFamily> {
    if vectors.len() != functionals.len() {
        return Err(Error::DimensionMismatch { expected: vectors.len(), found: functionals.len() });
    }
    for v in vectors.iter().chain(functionals) {
        v.check_dim(space.dim())?;
    }
    check_biorthogonal(vectors, functionals)?;
    let mut points = Vec::with_capacity(vectors.len());
    let mut duals = Vec::with_capacity(vectors.len());
    for (x, f) in vectors.iter().zip(functionals) {
        let norm = space.norm(x)?;
        points.push(x.scale(1.0 / norm));
        duals.push(f.scale(norm));
    }
    let set = PointSet::new(space.clone(), points)?;
    let mut m = 0.0_f64;
    for f in &duals {
        m = m.max(space.dual_norm(f)?);
    }
    let mut pairs = Vec::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            pairs.push(pair(&set, i, j, duals[i].clone())?);
        }
    }
    Ok(NamedFamily::assemble(set, pairs, (1.0, m, 1.0), String::from("biorthogonal")))
}
