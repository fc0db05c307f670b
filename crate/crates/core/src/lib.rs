//! Exact verification of characteristic polynomials attached to planar binary
//! trees: the anticyclic generator `τ` acting on the dendriform operad, and the
//! Coxeter transformation `θ` of the Tamari lattice.
//!
//! Everything is computed over the integers or the rationals; there is no
//! floating point anywhere in the crate.
//!
//! Module map:
//!
//! * [`arith`]: Möbius/Euler functions and the integer sequences `c_n`, `a_n`,
//!   `b_n`, `b'_n`, `λ(n)`.
//! * [`symfunc`]: symmetric functions in the power-sum basis, plethysm and the
//!   Murnaghan–Nakayama transition to Schur functions.
//! * [`series`]: truncated univariate power series over `Q`.
//! * [`tamari`]: binary trees, rotations and the Tamari order matrix.
//! * [`spectra`]: exact matrices, two characteristic polynomial algorithms and
//!   factored forms `∏ (t^d - 1)^{e_d}`.
//! * [`characters`]: characters of cyclic groups and their induction to the
//!   symmetric group.
//!
//! Data-parallel loops go through [`Exec`]; with the `parallel` feature
//! disabled every strategy runs sequentially.

pub mod arith;
pub mod characters;
mod exec;
pub mod series;
pub mod spectra;
pub mod symfunc;
pub mod tamari;

pub use exec::Exec;

use thiserror::Error;

/// Size limits shared by the verification pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest internal-node count accepted by tree enumeration.
    pub max_internal_nodes: usize,
    /// Largest matrix dimension for the trace (finite-order) method.
    pub max_dim_traces: usize,
    /// Largest matrix dimension for the Berkowitz method.
    pub max_dim_direct: usize,
    /// Largest degree for Schur expansions.
    pub max_schur_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_internal_nodes: 12,
            max_dim_traces: 1430,
            max_dim_direct: 132,
            max_schur_degree: 14,
        }
    }
}

/// Crate-wide error, wrapping the per-module errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
    #[error(transparent)]
    Symfunc(#[from] symfunc::SymError),
    #[error(transparent)]
    Series(#[from] series::SeriesError),
    #[error(transparent)]
    Tamari(#[from] tamari::TamariError),
    #[error(transparent)]
    Spectra(#[from] spectra::SpectraError),
    #[error(transparent)]
    Characters(#[from] characters::CharacterError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
