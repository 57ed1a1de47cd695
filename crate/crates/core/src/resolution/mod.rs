//! Minimal free resolutions over F_p G, chain-map lifting and the induced
//! maps on cohomology (products, restrictions, inflations, Künneth and the
//! comodule structure over a central elementary abelian subgroup).
//!
//! Free modules are stored in the regular-representation expansion: an
//! element of a free module of rank b is a vector of length b·|G| whose
//! entry at `j*|G| + g` is the coefficient of g·e_j.

mod cache;
mod chain;
mod complexes;
mod minimal;
mod ring;

pub use cache::{cache_path, load_resolution, save_resolution, CacheError};
pub use chain::{lift_chain_map, lift_chain_map_with, ChainMap};
pub use complexes::{ElementaryComplex, PeriodicResolution, TensorComplex, TrivialComplex};
pub use minimal::{MinimalResolution, DEFAULT_BUDGET};
pub use ring::{
    comodule_map, induced_map, inflation_map, kunneth, multiplication_chain, restriction_map, CohomologyFragment, ComoduleMap, InducedMap,
};

use crate::group::Group;
use crate::linalg::FpVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("degree {degree} needs {columns} columns, over the budget of {budget}")]
    BudgetExceeded { degree: usize, columns: usize, budget: usize },
    #[error("degree {degree} is beyond the computed bound {bound}")]
    DegreeOutOfRange { degree: usize, bound: usize },
    #[error("chain map lift failed in degree {0}")]
    LiftFailed(usize),
    #[error("resolution invariant violated: {0}")]
    Invariant(String),
    #[error("groups do not match: {0}")]
    Mismatch(String),
}

/// A nonnegatively graded complex of finitely generated free F_p G-modules.
pub trait FreeComplex: Send + Sync {
    fn group(&self) -> &Group;
    fn max_degree(&self) -> usize;
    fn rank(&self, deg: usize) -> usize;
    /// d(e_j) for a generator in degree `deg ≥ 1`, as (generator, element, coefficient) triples.
    fn boundary(&self, deg: usize, j: usize) -> Vec<(usize, usize, u32)>;
}

/// x·v for v in a free module over `g`.
pub(crate) fn translate(g: &Group, v: &FpVector, x: usize) -> FpVector {
    let n = g.order();
    if x == 0 {
        return v.clone();
    }
    let row = g.left_row(x);
    let mut out = FpVector::zero(v.prime(), v.len());
    for (i, c) in v.iter_nonzero() {
        let (k, h) = (i / n, i % n);
        out.set(k * n + row[h] as usize, c);
    }
    out
}

/// Sum of the coefficients in each generator block: the image in F_p ⊗ F.
pub(crate) fn block_sums(v: &FpVector, n: usize, rank: usize) -> Vec<u32> {
    let p = v.prime();
    let mut sums = vec![0u32; rank];
    for (i, c) in v.iter_nonzero() {
        let s = &mut sums[i / n];
        *s = (*s + c) % p;
    }
    sums
}
