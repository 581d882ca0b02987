#![allow(dead_code)]

use antipodal_core::{NormSpec, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gaussian(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::from((0..dim).map(|_| StandardNormal.sample(&mut *rng)).collect::<Vec<f64>>())
}

/// Symmetric hull of a few Gaussian points; resampled until full-dimensional.
pub fn random_polytope(rng: &mut ChaCha8Rng, dim: usize) -> NormSpec {
    loop {
        let k = rng.random_range(dim..dim + 5);
        let mut vertices = Vec::new();
        for _ in 0..k {
            let v = gaussian(rng, dim);
            vertices.push(-&v);
            vertices.push(v);
        }
        if let Ok(space) = NormSpec::polytope(vertices) {
            return space;
        }
    }
}

/// A random `l_p` or polytope space of dimension 2 or 3.
pub fn random_space(rng: &mut ChaCha8Rng) -> NormSpec {
    let dim = rng.random_range(2..4);
    match rng.random_range(0..4) {
        0 => random_polytope(rng, dim),
        1 => NormSpec::lp(2.0, dim).unwrap(),
        2 => NormSpec::lp([1.0, f64::INFINITY][rng.random_range(0..2)], dim).unwrap(),
        _ => NormSpec::lp(rng.random_range(1.2..4.0), dim).unwrap(),
    }
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vector> {
    (0..count).map(|_| gaussian(rng, dim)).collect()
}
