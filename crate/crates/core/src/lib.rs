//! Catalogs of mathematical models, ordered by complexity.
//!
//! A catalog lists models by the physical assumptions they rest on. A model
//! with strictly fewer assumptions is strictly more complex: fewer
//! restrictions, a more general description. That single idea induces a
//! strict partial order over a catalog, and this crate does everything that
//! follows from it:
//!
//! * parse and serialize the `.mcat` text format ([`dsl`]),
//! * validate catalog structure and build immutable catalogs ([`catalog`]),
//! * derive the order, reduce it to its Hasse diagram, find the extremal
//!   objects, classify the ordering, and enumerate maximal chains
//!   ([`order`]),
//! * check the category laws, convertibility links, and the dimension rule
//!   ([`validate`]),
//! * emit DOT diagrams, chain listings, and a JSON report ([`report`]).
//!
//! Catalogs and posets are immutable after construction and safe to share
//! across threads; every operation here is a pure function of its inputs.
//!
//! Terminology note: with arrows drawn from simpler toward more complex
//! objects (the direction of dropping assumptions), the simplest object is
//! initial and the most complex object is terminal in the induced category.

pub mod catalog;
pub mod decl;
pub mod diag;
pub mod dsl;
pub mod ident;
pub mod order;
pub mod report;
pub mod validate;

pub use catalog::{
    build_catalog, Assumption, AssumptionSet, BuildError, BuildErrorKind, Catalog, CatalogBuilder,
    CatalogCounts, CatalogError, ConvertibilityClass, DeclaredArrow, Formulation, ModelDiff,
    ModelRecord, ModelTriple,
};
pub use decl::{CatalogHeader, CatalogMode, Declaration};
pub use diag::{Diagnostic, Severity, SourceSpan};
pub use dsl::{parse, parse_catalog, serialize, LoadError, Parsed};
pub use order::{
    compare, derive_relation, Chain, Classification, Comparison, ComplexityPoset, ExtremalCase,
    OrderError, OrderingKind, Provenance, Totality, DEFAULT_CHAIN_CAP,
};
pub use report::{emit_chains_text, emit_dot, emit_report, AnalysisBundle, DotOptions};
pub use validate::{
    check_category_axioms, check_convertibility, check_dimension, validate_all, CheckEntry,
    CheckSeverity, CheckStatus, ValidationReport,
};
