//! Finite-dimensional normed spaces, exact separation margins and
//! bounded-and-separated antipodal (b.s.a.) certificates.
//!
//! A set `S` in a normed space is *antipodal* when every pair `x != y` of its
//! points admits a functional `f` with `f(x) < f(y)` and
//! `f(x) <= f(z) <= f(y)` for every `z` in `S`. It is a `(c1, c2, d)`-b.s.a.
//! set when the points are bounded by `c1`, the functionals by `c2` in the
//! dual norm, and every pair is separated with margin `f(y) - f(x) >= d`.
//!
//! The crate is `no_std` (with `alloc`) and split into:
//!
//! - [`normed_space`]: `l_p` and symmetric polytope norms, their duals,
//!   support points, Minkowski functionals and renormings.
//! - [`convex_engine`]: dense simplex, Dykstra projections, minimum dual-norm
//!   problems over polyhedra and operator norms.
//! - [`certify`]: optimal pair margins, whole-set certification, certificate
//!   checking and transport along isomorphisms.
//! - [`construct`]: the explicit families (canonical bases, summing vectors,
//!   Auerbach systems and the families built from them).
//! - [`search`]: annealing and greedy searches plus a brute-force margin
//!   oracle.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certify;
pub mod construct;
pub mod convex_engine;
mod error;
mod hull;
pub mod linalg;
pub mod normed_space;
pub mod search;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use normed_space::{Exponent, NormSpec};
