//! Verification toolkit for Ore-type statements on intervals of finite groups.
//!
//! * [`group`], [`perm`], [`catalog`], [`iso`]: permutation groups at desk scale.
//! * [`sublattice`], [`lattice`]: subgroup lattices, intervals and lattice predicates.
//! * [`chartable`]: modular character tables and fixed-point dimensions.
//! * [`orelab`]: cyclicity witnesses, Dedekind and coatom criteria, conjecture checks.
//! * [`boxmodel`]: exact model of the 2-box space of `R ⊆ R⋊G`.
//! * [`fusion`]: fusion-ring axioms, dimensions and subrings.
//! * [`corpus`]: catalog scans and reports.

pub mod boxmodel;
pub mod catalog;
pub mod chartable;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod fusion;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod modp;
pub mod orelab;
pub mod perm;
pub mod quad;
pub mod sublattice;

pub use boxmodel::TwoBox;
pub use catalog::{builtin, Catalog};
pub use chartable::CharacterTable;
pub use corpus::{scan, CorpusReport, ScanOptions};
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use fusion::FusionRing;
pub use group::{Group, Subgroup};
pub use lattice::FiniteLattice;
pub use orelab::{classify_interval, IntervalReport};
pub use perm::Permutation;
pub use quad::QuadScalar;
pub use sublattice::{all_subgroups, IntervalOfGroups, SubgroupLattice};
