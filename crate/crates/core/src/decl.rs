//! Parsed declarations, the input to catalog construction.
//!
//! Declarations are produced by [`crate::dsl::parse`] or built directly by
//! [`crate::catalog::CatalogBuilder`]. Spans are `None` for programmatic
//! construction.

use crate::diag::SourceSpan;

/// How a catalog's complexity relation is sourced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogMode {
    /// Every model declares its assumption set; the relation is derived by
    /// pairwise set comparison.
    Sets,
    /// Objects and arrows are declared explicitly; assumption sets are
    /// optional annotations.
    Declared,
}

impl CatalogMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogMode::Sets => "sets",
            CatalogMode::Declared => "declared",
        }
    }
}

/// The `catalog ... { ... }` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogHeader {
    pub name: String,
    pub dimension: String,
    /// `None` means the source omitted `mode`; builders default to `Sets`.
    pub mode: Option<CatalogMode>,
    pub span: Option<SourceSpan>,
}

/// One item inside a catalog block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Assumption {
        id: String,
        text: String,
        span: Option<SourceSpan>,
    },
    Model {
        id: String,
        assumes: Vec<String>,
        span: Option<SourceSpan>,
    },
    /// Declared-mode abstract objects (no assumption set).
    Objects {
        ids: Vec<String>,
        span: Option<SourceSpan>,
    },
    Arrow {
        id: String,
        source: String,
        target: String,
        span: Option<SourceSpan>,
    },
    Formulation {
        id: String,
        of_model: String,
        mapping_label: Option<String>,
        expr: String,
        span: Option<SourceSpan>,
    },
    Convertible {
        members: Vec<String>,
        span: Option<SourceSpan>,
    },
}

impl Declaration {
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            Declaration::Assumption { span, .. }
            | Declaration::Model { span, .. }
            | Declaration::Objects { span, .. }
            | Declaration::Arrow { span, .. }
            | Declaration::Formulation { span, .. }
            | Declaration::Convertible { span, .. } => *span,
        }
    }
}
