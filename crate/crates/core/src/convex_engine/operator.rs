use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{mat_t_vec, mat_vec, Matrix, Vector};
use crate::normed_space::{Exponent, NormSpec};
use crate::{Error, Result};

/// `sup |Tv|_codomain / |v|_domain`.
///
/// Exact for polyhedral domains (the convex function `v -> |Tv|` peaks at a
/// vertex of the unit ball). `l_2 -> l_2` uses power iteration on `T^T T`.
pub fn operator_norm(t: &Matrix, domain: &NormSpec, codomain: &NormSpec) -> Result<f64> {
    if t.ncols() != domain.dim() {
        return Err(Error::DimensionMismatch { expected: domain.dim(), found: t.ncols() });
    }
    if t.nrows() != codomain.dim() {
        return Err(Error::DimensionMismatch { expected: codomain.dim(), found: t.nrows() });
    }
    if let Some(vertices) = domain.explicit_vertices() {
        let mut best = 0.0_f64;
        for v in &vertices {
            best = best.max(codomain.norm(&mat_vec(t, v))?);
        }
        return Ok(best);
    }
    match (domain, codomain) {
        (NormSpec::Lp { p: Exponent::Finite(p), .. }, NormSpec::Lp { p: Exponent::Finite(q), .. })
            if *p == 2.0 && *q == 2.0 =>
        {
            Ok(spectral_norm(t, 0))
        }
        _ => Err(Error::UnsupportedNormPair),
    }
}

/// Largest singular value by power iteration on `T^T T`, relative
/// tolerance 1e-10, from a seeded random start.
fn spectral_norm(t: &Matrix, seed: u64) -> f64 {
    let n = t.ncols();
    if n == 0 || t.amax() == 0.0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Vector::from((0..n).map(|_| rng.random_range(-1.0..1.0)).collect::<alloc::vec::Vec<f64>>());
    let mut estimate = 0.0;
    for _ in 0..100_000 {
        let nv = v.euclidean_norm();
        if nv == 0.0 {
            return 0.0;
        }
        v = v.scale(1.0 / nv);
        let w = mat_t_vec(t, &mat_vec(t, &v));
        let next = v.dot(&w);
        v = w;
        if (next - estimate).abs() <= 1e-10 * next.abs() {
            estimate = next;
            break;
        }
        estimate = next;
    }
    estimate.max(0.0).sqrt()
}
