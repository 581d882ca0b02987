//! Optimization primitives: dense simplex, Dykstra projections, minimum
//! dual-norm problems over polyhedra and operator norms.

mod dykstra;
mod lp;
mod min_norm;
mod operator;

pub use dykstra::{project_polyhedron, Polyhedron, Projection};
pub use lp::{lp_solve, Constraint, ConstraintKind, LinearProgram, LpSolution, LpStatus, VarSign};
pub use min_norm::{min_norm_over_polyhedron, DualView, MinNorm, MinNormOutcome};
pub use operator::operator_norm;
