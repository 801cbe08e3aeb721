//! Finite groupoids in two forms: a symbolic expression algebra whose
//! cardinality is computed compositionally, and an explicit materialized
//! groupoid whose cardinality is computed by enumerating isomorphism classes
//! and automorphism groups. [`realize`] connects the two.

mod cardinality;
mod explicit;
mod expr;
mod union_find;
mod validate;

pub use cardinality::{
    cardinality_explicit, cardinality_explicit_with, iso_classes, iso_classes_with, CardinalityReport, IsoClass,
};
pub use explicit::{realize, CompositionTable, ExplicitGroupoid, Label, Limits, Morphism, MorphismId, ObjectId};
pub use expr::{cardinality_expr, disjoint_union, product, GroupoidExpr, Node, Size};
pub use union_find::UnionFind;
pub use validate::{validate, validate_with, AssociativityCoverage, ValidationOptions, ValidationReport, Violation};
