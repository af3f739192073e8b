//! Divisible design Cayley digraphs over the Heisenberg group `H_3(q)` and
//! the machinery to check them: finite fields, the group, the cyclotomic
//! S-ring, 2-dimensional Weisfeiler-Leman refinement, isomorphism search and
//! the neighbourhood designs.

pub mod coherent;
pub mod construction;
pub mod designs;
pub mod digraph;
pub mod gf;
pub mod heisenberg;
pub mod isotest;
pub mod psi;
pub mod srings;
pub mod suite;

pub use coherent::{CoherentConfiguration, PairColoring};
pub use construction::{Construction, MatrixM};
pub use digraph::Digraph;
pub use gf::{Field, FieldElement, FieldSpec, GfError};
pub use heisenberg::{GroupElement, Heisenberg};
pub use isotest::{Budget, IsoCertificate};
pub use psi::{ExtendedIndex, PsiGroup};
pub use srings::SRing;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("search cap exceeded: {0}")]
    SearchCapExceeded(String),
    #[error("exponent {m} is not coprime to {order}")]
    InvalidExponent { m: u64, order: u64 },
    #[error("structure constant depends on the representative: {0}")]
    NotAnSRing(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}
