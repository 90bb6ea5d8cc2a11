//! Finite groupoids and their generalized morphisms.
//!
//! Groupoids are given by explicit tables and validated exhaustively on
//! construction. On top of that: homomorphisms and natural transformations,
//! groupoid actions, Hilsum-Skandalis bibundles with composition and Morita
//! checks, 2-morphisms between bibundles, and the axioms of a Weinstein
//! group(oid) presented by a finite groupoid.

mod bibundle;
mod groupoid;
mod hom;
pub mod json;
mod weinstein;

pub use bibundle::{
    check_two_morphism, count_two_morphisms, find_two_morphism, two_morphisms, Bibundle, GroupoidAction, Side,
    TwoMorphism,
};
pub use groupoid::{Arr, Arrow, FiniteGroupoid, Obj};
pub use hom::{check_hom_two_morphism, count_natural_transformations, natural_transformations, Homomorphism};
pub use weinstein::{
    abelian_bg, bz2, point, z2_star_bz2, AxiomResult, ChainGroupoid, FaceRule, Obstruction, WeinsteinGroupoid,
    WeinsteinReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("malformed groupoid: {0}")]
    Malformed(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("invalid action: {0}")]
    BadAction(String),
    #[error("invalid bibundle: {0}")]
    BadBibundle(String),
    #[error("not a 2-morphism: {0}")]
    NotTwoMorphism(String),
    #[error("non-composable chain: {0}")]
    NotComposable(String),
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}
