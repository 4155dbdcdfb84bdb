//! Minimal graded and multigraded Betti tables of monomial ideals.
//!
//! A Taylor or Lyubeznik resolution is built combinatorially and reduced to
//! the minimal resolution by cancelling unit pairs one homological degree at
//! a time (see [`engine`]). [`oracle`] recomputes the same numbers by brute
//! force, [`invariants`] checks known vanishing theorems and depth and
//! regularity bounds on the results, and [`homology`] reuses the reduction
//! to compute simplicial homology from minimal nonfaces.

pub mod bench;
pub mod engine;
pub mod field;
pub mod homology;
pub mod invariants;
pub mod monomial;
pub mod oracle;
pub mod random;
pub mod render;
pub mod simplicial;

pub use engine::{compute_betti_table, compute_multigraded, BettiTable, EngineError, EngineOptions, MultigradedBetti};
pub use field::{FieldKind, FieldScalar};
pub use monomial::{Monomial, MonomialIdeal};
pub use simplicial::{Face, Start};
