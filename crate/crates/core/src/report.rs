//! Output artifacts: DOT diagrams, chain listings, and the JSON report.
//!
//! Everything emitted here is byte-deterministic: identical inputs produce
//! identical output across runs and platforms. The JSON schema is stable:
//! top-level keys `catalog{name,dimension,mode,counts}`, `analyses{ordering,
//! prop1_case,most_complex,simplest,union_set,chains}` (an empty object when
//! no analysis ran), `validation[]`, `tool_version`, in that order.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::catalog::Catalog;
use crate::ident::natural_cmp;
use crate::order::{Chain, Classification, ComplexityPoset, ExtremalCase, OrderingKind};
use crate::validate::ValidationReport;

#[derive(Debug, Clone, Copy, Default)]
pub struct DotOptions {
    /// Also draw non-covering order pairs, dashed.
    pub show_composites: bool,
}

/// Render the Hasse diagram as DOT text.
///
/// One node per object (the id is the label; in sets mode a tooltip lists the
/// assumption ids), one edge per covering pair, and optionally the composite
/// pairs with `style=dashed`. Node and edge order follow the poset's natural
/// object order. Styling is deliberately minimal.
pub fn emit_dot(catalog: &Catalog, poset: &ComplexityPoset, options: &DotOptions) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", dot_quote(catalog.name())));
    for id in poset.objects() {
        match catalog.assumption_set_of(id) {
            Ok(set) => {
                let tooltip = set.sorted_members().join(" ");
                out.push_str(&format!(
                    "  {} [tooltip={}];\n",
                    dot_quote(id),
                    dot_quote(&tooltip)
                ));
            }
            Err(_) => out.push_str(&format!("  {};\n", dot_quote(id))),
        }
    }
    for (a, b) in poset.hasse_edges() {
        out.push_str(&format!("  {} -> {};\n", dot_quote(a), dot_quote(b)));
    }
    if options.show_composites {
        for (a, b) in poset.composite_edges() {
            out.push_str(&format!(
                "  {} -> {} [style=dashed];\n",
                dot_quote(a),
                dot_quote(b)
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn dot_quote(s: &str) -> String {
    let mut quoted = String::with_capacity(s.len() + 2);
    quoted.push('"');
    for c in s.chars() {
        match c {
            '"' => quoted.push_str("\\\""),
            '\\' => quoted.push_str("\\\\"),
            other => quoted.push(other),
        }
    }
    quoted.push('"');
    quoted
}

/// One numbered line per chain, in the engine's sorted order.
pub fn emit_chains_text(chains: &[Chain]) -> String {
    let mut out = String::new();
    for (i, chain) in chains.iter().enumerate() {
        out.push_str(&format!("{}. {}\n", i + 1, chain));
    }
    out
}

/// Everything one analysis run produced, ready for serialization. The bundle
/// carries engine outputs verbatim; nothing is recomputed at emission time.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisBundle {
    pub catalog: CatalogSummary,
    #[serde(serialize_with = "analyses_or_empty_object")]
    pub analyses: Option<Analyses>,
    pub validation: Vec<ValidationEntry>,
    pub tool_version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSummary {
    pub name: String,
    pub dimension: String,
    pub mode: String,
    pub counts: Counts,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counts {
    pub assumptions: usize,
    pub models: usize,
    pub formulations: usize,
    pub convertibility_classes: usize,
    pub arrows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analyses {
    pub ordering: String,
    pub prop1_case: String,
    pub most_complex: Option<String>,
    pub simplest: Option<String>,
    pub union_set: Option<Vec<String>>,
    pub chains: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationEntry {
    pub check: String,
    pub status: String,
    pub severity: String,
    pub details: String,
    pub witnesses: Vec<String>,
}

fn analyses_or_empty_object<S: Serializer>(
    value: &Option<Analyses>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(analyses) => analyses.serialize(serializer),
        None => serializer.serialize_map(Some(0))?.end(),
    }
}

impl AnalysisBundle {
    /// A bundle with catalog structure only; `analyses` serializes as `{}`.
    pub fn catalog_only(catalog: &Catalog) -> Self {
        AnalysisBundle {
            catalog: summarize(catalog),
            analyses: None,
            validation: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }

    /// A bundle with classification, chains, and validation outcomes.
    pub fn full(
        catalog: &Catalog,
        classification: &Classification,
        chains: &[Chain],
        validation: &ValidationReport,
    ) -> Self {
        AnalysisBundle {
            catalog: summarize(catalog),
            analyses: Some(Analyses {
                ordering: ordering_str(classification.ordering).to_owned(),
                prop1_case: case_str(classification.prop1_case).to_owned(),
                most_complex: classification.most_complex.clone(),
                simplest: classification.simplest.clone(),
                union_set: classification.union_set.as_ref().map(|set| {
                    let mut ids: Vec<String> = set.iter().cloned().collect();
                    ids.sort_by(|a, b| natural_cmp(a, b));
                    ids
                }),
                chains: chains.iter().map(|c| c.path.clone()).collect(),
            }),
            validation: validation
                .checks
                .iter()
                .map(|c| ValidationEntry {
                    check: c.id.to_owned(),
                    status: c.status.as_str().to_owned(),
                    severity: c.severity.as_str().to_owned(),
                    details: c.details.clone(),
                    witnesses: c.witnesses.clone(),
                })
                .collect(),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

fn summarize(catalog: &Catalog) -> CatalogSummary {
    let counts = catalog.counts();
    CatalogSummary {
        name: catalog.name().to_owned(),
        dimension: catalog.dimension().to_owned(),
        mode: catalog.mode().as_str().to_owned(),
        counts: Counts {
            assumptions: counts.assumptions,
            models: counts.models,
            formulations: counts.formulations,
            convertibility_classes: counts.convertibility_classes,
            arrows: counts.arrows,
        },
    }
}

fn ordering_str(kind: OrderingKind) -> &'static str {
    kind.as_str()
}

fn case_str(case: ExtremalCase) -> &'static str {
    case.as_str()
}

/// Serialize a bundle as pretty-printed JSON: UTF-8, two-space indent, LF
/// line endings, fixed key order, trailing newline.
pub fn emit_report(bundle: &AnalysisBundle) -> String {
    let mut text = serde_json::to_string_pretty(bundle).expect("bundle serializes");
    text.push('\n');
    text
}
