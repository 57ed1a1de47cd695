//! Exact linear algebra over prime fields.
//!
//! Vectors over F_2 are bit-packed into 64-bit words; other primes (and the
//! reference path for p = 2) use one byte per entry.

mod echelon;
mod matrix;
mod subspace;
mod vector;

pub use echelon::Echelon;
pub use matrix::{FpMatrix, Rref};
pub use subspace::FpSubspace;
pub use vector::{inv_mod, is_prime, mul_mod, neg_mod, FpVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
}

/// Free functions mirroring the matrix methods.
pub fn rref(m: &FpMatrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &FpMatrix) -> FpSubspace {
    m.kernel()
}

pub fn image_basis(m: &FpMatrix) -> FpSubspace {
    m.image()
}

pub fn solve_preimage(m: &FpMatrix, target: &FpSubspace) -> Result<FpSubspace, LinalgError> {
    m.solve_preimage(target)
}

pub fn kronecker(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    a.kronecker(b)
}
