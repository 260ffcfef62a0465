//! Finite multivalued algebra: hyperfields, multirings and superrings, their
//! polynomial superrings, Marshall quotients, quadratic extensions of special
//! hyperfields, and a desk-scale checker for the Arason-Pfister bound.

pub mod axioms;
pub mod budget;
pub mod catalog;
pub mod elemset;
pub mod error;
pub mod forms;
pub mod hauptsatz;
pub mod ideal;
pub mod json;
pub mod marshall;
pub mod morphism;
pub mod poly;
pub mod quadext;
pub mod structure;

pub use axioms::{characteristic, check_axioms, Kind, Report, Violation};
pub use catalog::{find_isomorphism, make, CatalogKey};
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use forms::{QForm, WittDecomposition};
pub use hauptsatz::{InRepresentation, ProofTrace};
pub use ideal::Ideal;
pub use json::{emit_structure, parse_structure};
pub use marshall::{marshall_quotient, MarshallQuotient};
pub use morphism::{check_morphism, Morphism};
pub use poly::{BoxPoly, Poly};
pub use quadext::{extend, iterate_tower, s_quotient, Extension, Tower};
pub use structure::{DeclaredKind, Op, Structure};
