//! The higher-spin lattice model on a `v x w` grid: states, Boltzmann weights
//! and partition functions, the column transfer operators, the six-vertex
//! R-matrix and the F-basis in which the transfer operators become
//! quasi-diagonal.

mod fbasis;
mod partition;
mod sixvertex;
mod state;
mod transfer;
mod yaybe;

pub use fbasis::{
    bra_permutation, f_basis, fbasis_table, kappa, ket_permutation, lemma_lm_check, lemma_lm_closed_form, rsort, sort,
    tilde_bra, tilde_ket_with, wiring, FBasis,
};
pub use partition::{
    boltzmann_weight, partition_function, theorem_prefactor, theorem_tilde_w_check, transfer_partition_function,
};
pub use sixvertex::{
    check_sixvertex_identities, l_operator_entry, sixvertex_entry, sixvertex_entry_signed, sixvertex_r,
    sixvertex_r_signed, GAMMA_SIGN,
};
pub use state::{enumerate_states, LatticeState, VertexConfig};
pub use yaybe::yaybe_check;
pub use transfer::{binary_basis, column_transfer, embed_two_site, Column, TensorCovector, TensorVector};

use exact_field::FieldError;
use quiver_fixedpoints::FixedPointError;
use rmatrix::RMatrixError;
use shuffle_weights::WeightError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("invalid boundary: {0}")]
    Boundary(String),
    #[error("invalid state: {0}")]
    State(String),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
