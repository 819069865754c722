//! Exact rational and sparse-integer linear algebra.

mod echelon;
mod matrix;
mod subalgebra;

pub use echelon::{
    bareiss_rank, clear_denominators, float_rank, nullspace_basis, rank, ExactEchelon,
    FloatEchelon, RowReducer, DEFAULT_TOLERANCE,
};
pub use matrix::{commutator, rat, ratio, rational_to_f64, trace_inner, Matrix, Rational};
pub use subalgebra::{
    antisym_basis, gram_matrix, invert, project_off_span, solve_square, span_coefficients,
    AntisymCoords, SubalgebraBasis,
};
pub(crate) use subalgebra::sparse;
