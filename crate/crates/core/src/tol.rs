//! Numerical tolerances shared across the crate.

/// Default feasibility and equality tolerance.
pub const FEASIBILITY: f64 = 1e-9;

/// Two polytope vertices `v`, `w` are antipodal when `|v + w|_inf` is below
/// this value (scaled by `max(1, |v|_inf)`).
pub const SYMMETRY: f64 = 1e-12;

/// Pivots smaller than this are treated as zero by the simplex method.
pub const PIVOT: f64 = 1e-12;

/// Reduced-cost optimality tolerance of the simplex method.
pub const OPTIMALITY: f64 = 1e-9;

/// Dykstra stops once a full sweep moves the iterate less than this.
pub const DYKSTRA_STEP: f64 = 1e-10;

/// Default sweep budget of Dykstra's algorithm.
pub const DYKSTRA_MAX_ITER: usize = 100_000;

/// Strictness threshold for `f(x) < f(y)` in the antipodal test.
pub const ANTIPODAL: f64 = 1e-9;

/// Minimum pairwise distance for points of a [`PointSet`](crate::certify::PointSet).
pub const DISTINCT: f64 = 1e-12;

/// Auerbach conditions (`|x_i| = |x_i^*| = 1`, biorthogonality).
pub const AUERBACH: f64 = 1e-8;
