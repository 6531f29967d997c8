//! Functors, their classification, pullbacks, kernels, quotients and
//! natural isomorphisms.

pub mod classify;
pub mod functor;
pub mod natural;
pub mod pullback;
pub mod quotient;
pub mod section;

pub use classify::{a_square, classify_morphism, t_square, MorphismClassification, SquareReport};
pub use functor::Functor;
pub use natural::{all_natural_isos, for_each_natural_iso, natural_iso, NaturalTransformation};
pub use pullback::{fibre_product, fibre_product_on, pairing, pullback_groupoid, pullback_groupoid_labels, FibreProduct};
pub use quotient::{bilateral_quotient, induced_map};
pub use section::{full_subgroupoid, section_of};
