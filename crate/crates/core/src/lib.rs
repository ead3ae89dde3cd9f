//! Exact counting of Hopf-Galois structures on Galois extensions with small
//! Galois group.
//!
//! Everything here is group theory on explicit Cayley tables:
//!
//! * [`group`] holds the [`FiniteGroup`] carrier, constructors, isomorphism
//!   testing and automorphism enumeration.
//! * [`lattice`] enumerates subgroups and classifies them as normal or
//!   characteristic; it also carries the index-two machinery (`G²`, `I₂`).
//! * [`holomorph`] realizes `λ(G)` and `Hol(N)` as permutation groups,
//!   searches for regular subgroups, and turns `|S(M,[G])|` into
//!   `|R(G,[M])|`.
//! * [`obstruction`] certifies `R(G,[M]) = ∅` whenever `M` has more
//!   characteristic subgroups of some order than `G` has subgroups of that
//!   order, and assembles census tables.
//! * [`partitions`] covers the abelian `p`-group combinatorics: subgroup
//!   type counts and canonical tuples.
//! * [`catalog`] is the registry of named groups.

pub mod catalog;
pub mod error;
pub mod group;
pub mod holomorph;
pub mod lattice;
pub mod obstruction;
pub mod partitions;
pub mod perm;

pub use catalog::{Catalog, CatalogEntry};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupMap};
pub use lattice::Subgroup;
pub use perm::{PermGroup, Permutation};

/// Size limits shared by the constructors and searches.
///
/// These are configuration rather than constants; callers that need to go
/// further (for instance the characteristic lattice of `C₁₂₀`) raise them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group produced by closing permutation generators; also the
    /// most automorphisms enumerated for a single group.
    pub closure: usize,
    /// Largest group for which a Cayley table is materialized.
    pub table: usize,
    /// Largest group whose automorphism group is enumerated.
    pub automorphism: usize,
    /// Largest group whose full subgroup lattice is enumerated.
    pub lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure: 1_000_000,
            table: 4096,
            automorphism: 256,
            lattice: 256,
        }
    }
}
