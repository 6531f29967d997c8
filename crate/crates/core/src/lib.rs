//! Finite groupoids and their calculus: validation, orbit decomposition,
//! trivialization, functor classification, actions, butterflies, fractions
//! and Morita equivalence.
//!
//! Groupoids are immutable values with explicit structure tables. Everything
//! is exhaustive; sizes are expected to stay small.

pub mod actions;
pub mod anchor;
pub mod butterfly;
pub mod construct;
pub mod diptych;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod fractions;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod morphisms;
pub mod search;
pub mod subgroupoid;
pub mod trivialize;

pub use anchor::{analyze_anchor, classify, AnchorAnalysis, Degeneracies};
pub use butterfly::{Butterfly, Transversality};
pub use document::{ArrowRecord, FunctorDocument, GroupoidDocument, GroupoidRef};
pub use error::{Error, FunctorViolation, Result, ValidationError, Violation};
pub use fractions::{Fraction, Meromorphism};
pub use group::GroupTable;
pub use groupoid::{ArrowId, Groupoid, ObjectId};
pub use morphisms::{classify_morphism, Functor, MorphismClassification};
pub use subgroupoid::{kernel, WideSubgroupoid};
