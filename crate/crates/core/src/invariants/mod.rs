//! Invariants of H^*(G) controlled by the maximal central elementary abelian
//! subgroup C = C(G): the type, e and h, Duflot subalgebras, A-indecomposables
//! and C-primitives, central essential cohomology, e′ and e″, the detection
//! numbers d₀ and d₁, and the equalizer descriptions of H^*(G)_LF and R̄_d.

mod cess;
mod context;
mod detection;
mod duflot;
mod equalizer;
mod report;
mod typing;

pub use context::{GroupCohomology, SubgroupData};
pub use detection::sylow_transfer;
pub use report::{report, CertificationFlags, InvariantReport};

use serde::Serialize;

use crate::group::GroupError;
use crate::linalg::FpVector;
use crate::resolution::ResolutionError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    /// A guaranteed structural identity failed; this signals a bug upstream.
    #[error("structural identity violated: {0}")]
    Theorem(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
}

/// Degrees of the free generators of im(H^*(G) → H^*(C)), nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupType {
    pub entries: Vec<u32>,
    /// False when the Frobenius flag did not saturate within the degree bound;
    /// unresolved entries are then reported at their lower bound.
    pub certified: bool,
}

impl GroupType {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }
}

impl std::fmt::Display for GroupType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// The increasing filtration of H¹(C) by Frobenius level. `levels[j]` holds
/// the coefficient vectors c with (Σ cᵢxᵢ)^{2^j} in the image (p = 2), or
/// Σ cᵢ yᵢ^{p^j} in the image with yᵢ = βxᵢ (p odd).
#[derive(Clone, Debug)]
pub struct FrobeniusFlag {
    pub levels: Vec<crate::linalg::FpSubspace>,
    /// Degree-one part of the image (odd p only; zero at p = 2).
    pub exterior: crate::linalg::FpSubspace,
    pub saturated: bool,
}

/// Lifts ξᵢ ∈ H^{deg}(G) of the generators of im(i*), and the Hilbert
/// function of the subalgebra they generate.
#[derive(Clone, Debug)]
pub struct DuflotData {
    pub generators: Vec<(usize, FpVector)>,
    pub algebra_dims: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    QaH,
    PcH,
    Cess,
    QaCess,
    PcCess,
    Lf,
    BarRd(usize),
    ImRestriction,
    ImInflation,
}

/// Dimensions per degree 0..=truncation of a graded vector space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub role: Role,
    pub dims: Vec<usize>,
    pub truncation: usize,
    pub top_degree_certified: bool,
}

impl GradedDims {
    pub fn new(role: Role, dims: Vec<usize>, top_degree_certified: bool) -> Self {
        let truncation = dims.len().saturating_sub(1);
        GradedDims { role, dims, truncation, top_degree_certified }
    }

    /// Highest degree with a nonzero dimension, or −1.
    pub fn top_degree(&self) -> i64 {
        self.dims.iter().rposition(|&d| d > 0).map_or(-1, |k| k as i64)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// p(t) = t^n p(1/t) on the computed range (requires n ≤ truncation).
    pub fn is_palindromic(&self, n: usize) -> bool {
        n <= self.truncation && (0..=self.truncation).all(|k| self.dims[k] == if k <= n { self.dims[n - k] } else { 0 })
    }
}

/// A degree bound together with how it was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounded {
    pub value: i64,
    pub certified: bool,
    /// True when certification rests on the safety-margin rule rather than duality.
    pub heuristic: bool,
}

/// e(G) = Σ(aᵢ − 1).
pub fn e_of(t: &GroupType) -> i64 {
    t.entries.iter().map(|&a| a as i64 - 1).sum()
}

/// h(G) from a₁: 2p^{k−1} when a₁ = 2p^k with k ≥ 1, 1 when a₁ = 2, 0 when a₁ = 1.
pub fn h_of(t: &GroupType, p: u32) -> i64 {
    match t.entries.first() {
        None | Some(1) => 0,
        Some(2) => 1,
        Some(&a) => (a / p) as i64,
    }
}

/// Coefficients of Π 1/(1 − t^{aᵢ}) through degree n.
pub fn polynomial_hilbert(degrees: &[u32], n: usize) -> Vec<usize> {
    let mut out = vec![0usize; n + 1];
    out[0] = 1;
    for &a in degrees {
        let a = a as usize;
        for k in a..=n {
            out[k] += out[k - a];
        }
    }
    out
}
