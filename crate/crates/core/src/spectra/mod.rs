//! Exact linear algebra for the Coxeter transformation `θ` and the order-`n`
//! generator `τ`, two characteristic polynomial algorithms, and the factored
//! forms they are compared against.

mod charpoly;
mod factored;
mod matrix;
mod poly;
mod verify;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::ArithError;
use crate::tamari::TamariError;

pub use charpoly::{charpoly_direct, charpoly_finite_order, ramanujan_sum, FiniteOrderCharpoly};
pub use factored::{conjecture_form, square_consistency, theorem_form, FactoredForm};
pub use matrix::ExactMatrix;
pub use poly::IntPolynomial;
pub use verify::{
    build_matrix, coxeter_inverse, coxeter_matrix, cyclotomic_string, tau_matrix, tau_traces,
    verify_conjecture, verify_theorem, CharpolyReport, Claim, MatrixKind, Method, MethodResult,
    Mismatch,
};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("dimension mismatch: {left:?} times {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is not unit upper triangular")]
    NotUnitTriangular,
    #[error("factored form {0} does not denote a polynomial")]
    NotAPolynomial(String),
    #[error("exponent {e} of (t^{d}-1) is too large to expand")]
    ExponentTooLarge { d: u64, e: BigInt },
    #[error("matrix power {bound} is not the identity")]
    NotFiniteOrder { bound: u64 },
    #[error("multiplicity of Φ_{d} is {value}, not an integer")]
    NonIntegerMultiplicity { d: u64, value: String },
    #[error("multiplicity of Φ_{d} is negative ({value})")]
    NegativeMultiplicity { d: u64, value: BigInt },
    #[error("traces are inconsistent with any cyclotomic spectrum")]
    InconsistentTraces,
    #[error("τ^{n} is not the identity for n = {n}")]
    OrderCheckFailed { n: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Tamari(#[from] TamariError),
}
