//! Finite p-groups: polycyclic presentations, Cayley tables, subgroups,
//! elementary abelian subgroups and the category 𝒜_C(G).

mod hom;
mod pc;
mod quillen;
mod subgroups;
mod table;

pub use hom::{multiplication_hom, quotient_by_central, GroupHom, PcGroup};
pub use pc::{presentation_digest, Element, PcPresentation};
pub use quillen::{AcEdge, AcObject, QuillenCategoryAC};
pub use subgroups::{elem_abelian_from_subgroup, ConjugacyClasses, ElemAbelian, Subgroup};
pub use table::Group;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("collection did not terminate")]
    CollectionDiverged,
    #[error("group of order {0} exceeds the supported size")]
    TooLarge(usize),
    #[error("groups are over different primes")]
    PrimeMismatch,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not elementary abelian")]
    NotElementaryAbelian,
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
}
