//! In-memory model catalogs.
//!
//! A [`Catalog`] holds assumptions, models, formulations, convertibility
//! classes and declared arrows, validated against the structural rules of the
//! format: ids are unique, references resolve, assumption sets are non-empty,
//! and the two sourcing modes (`sets` vs `declared`) never mix. Construction
//! collects *all* violations instead of stopping at the first one, and a
//! catalog is immutable once built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decl::{CatalogHeader, CatalogMode, Declaration};
use crate::diag::SourceSpan;
use crate::ident::natural_cmp;

/// An identified modelling assumption. The text is opaque: assumptions are
/// compared by id only, never by sentence content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    pub id: String,
    pub text: String,
}

/// The finite non-empty set of assumption ids underlying one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionSet {
    pub owner: String,
    pub members: BTreeSet<String>,
}

impl AssumptionSet {
    /// Member ids in natural order.
    pub fn sorted_members(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.members.iter().map(String::as_str).collect();
        out.sort_by(|a, b| natural_cmp(a, b));
        out
    }
}

/// An opaque instantiation of a model: expression text plus the optional
/// label of the formalisation mapping that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formulation {
    pub id: String,
    pub of_model: String,
    pub mapping_label: Option<String>,
    pub expr: String,
}

/// One catalog object: a model id, its assumption set (absent for abstract
/// declared-mode objects), and the ids of its formulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelRecord {
    pub model_id: String,
    pub assumption_set: Option<AssumptionSet>,
    /// Formulation ids in natural order.
    pub formulations: Vec<String>,
}

/// A declared link between formulations of the same model. Members are
/// formulation ids; the class itself carries no computable transformation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConvertibilityClass {
    pub members: BTreeSet<String>,
}

impl ConvertibilityClass {
    /// Member ids in natural order.
    pub fn sorted_members(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.members.iter().map(String::as_str).collect();
        out.sort_by(|a, b| natural_cmp(a, b));
        out
    }
}

/// A declared morphism from a simpler object toward a more complex one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredArrow {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// A validated, immutable model catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    name: String,
    dimension: String,
    mode: CatalogMode,
    assumptions: BTreeMap<String, Assumption>,
    models: BTreeMap<String, ModelRecord>,
    formulations: BTreeMap<String, Formulation>,
    classes: Vec<ConvertibilityClass>,
    arrows: BTreeMap<String, DeclaredArrow>,
}

/// Three disjoint sets partitioning the union of two models' assumption sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDiff {
    pub only_in_a: BTreeSet<String>,
    pub only_in_b: BTreeSet<String>,
    pub shared: BTreeSet<String>,
}

/// Read-only view of a formulation as the triple (assumption set,
/// instantiation, formalisation mapping). `assumption_set` is `None` for
/// formulations of abstract declared-mode objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelTriple<'a> {
    pub model_id: &'a str,
    pub assumption_set: Option<&'a AssumptionSet>,
    pub expr: &'a str,
    pub mapping_label: Option<&'a str>,
}

/// Lookup failures on a valid catalog.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown formulation `{0}`")]
    UnknownFormulation(String),
    #[error("model `{0}` has no assumption set (abstract declared-mode object)")]
    NoAssumptionSet(String),
}

/// One structural violation found while building a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildError {
    pub kind: BuildErrorKind,
    pub span: Option<SourceSpan>,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

impl std::error::Error for BuildError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildErrorKind {
    #[error("missing `catalog` header")]
    MissingHeader,
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("{kind} `{from}` references unknown {missing_kind} `{missing}`")]
    DanglingReference {
        kind: &'static str,
        from: String,
        missing_kind: &'static str,
        missing: String,
    },
    #[error("model `{model}` has an empty assumption set")]
    EmptyAssumptionSet { model: String },
    #[error("`{decl}` declarations are not allowed in {mode} mode")]
    MixedMode {
        decl: &'static str,
        mode: &'static str,
    },
    #[error("convertibility class {{{members}}} spans models {{{models}}}")]
    ConvertibilitySpansModels { members: String, models: String },
    #[error("convertibility class {{{members}}} needs at least two distinct formulations")]
    ConvertibilityTooSmall { members: String },
    #[error("arrow `{arrow}` is a self-loop on `{object}`")]
    SelfArrow { arrow: String, object: String },
    #[error("empty {kind} id")]
    EmptyId { kind: &'static str },
    #[error("assumption `{assumption}` has empty text")]
    EmptyAssumptionText { assumption: String },
    #[error("{what} contains a newline, which the text format cannot represent")]
    UnrepresentableString { what: String },
    #[error("catalog declares no models or objects")]
    NoObjects,
}

impl BuildErrorKind {
    fn at(self, span: Option<SourceSpan>) -> BuildError {
        BuildError { kind: self, span }
    }
}

/// Build a catalog from a parsed header and declarations.
///
/// Returns either a catalog satisfying every structural invariant or the
/// complete list of violations; a partially constructed catalog is never
/// observable.
pub fn build_catalog(
    header: Option<&CatalogHeader>,
    decls: &[Declaration],
) -> Result<Catalog, Vec<BuildError>> {
    let mut errors: Vec<BuildError> = Vec::new();

    let Some(header) = header else {
        return Err(vec![BuildErrorKind::MissingHeader.at(None)]);
    };
    let mode = header.mode.unwrap_or(CatalogMode::Sets);

    let mut assumptions: BTreeMap<String, Assumption> = BTreeMap::new();
    let mut models: BTreeMap<String, ModelRecord> = BTreeMap::new();
    let mut formulations: BTreeMap<String, Formulation> = BTreeMap::new();
    let mut classes: Vec<ConvertibilityClass> = Vec::new();
    let mut arrows: BTreeMap<String, DeclaredArrow> = BTreeMap::new();
    // Convertible declarations are checked after all formulations are known.
    let mut pending_classes: Vec<(Vec<String>, Option<SourceSpan>)> = Vec::new();

    // Ids come non-empty from the parser by construction; programmatic input
    // gets the same guarantee here.
    let check_id = |id: &str, kind: &'static str, span, errors: &mut Vec<BuildError>| {
        if id.is_empty() {
            errors.push(BuildErrorKind::EmptyId { kind }.at(span));
            false
        } else {
            true
        }
    };
    // Strings with raw newlines cannot be serialized back (string literals
    // are single-line), so they are rejected up front.
    let check_text = |text: &str, what: String, span, errors: &mut Vec<BuildError>| {
        if text.contains('\n') {
            errors.push(BuildErrorKind::UnrepresentableString { what }.at(span));
            false
        } else {
            true
        }
    };
    check_text(
        &header.name,
        "catalog name".to_owned(),
        header.span,
        &mut errors,
    );
    check_text(
        &header.dimension,
        "catalog dimension".to_owned(),
        header.span,
        &mut errors,
    );

    for decl in decls {
        let span = decl.span();
        match decl {
            Declaration::Assumption { id, text, .. } => {
                if !check_id(id, "assumption", span, &mut errors) {
                    continue;
                }
                if text.is_empty() {
                    errors.push(
                        BuildErrorKind::EmptyAssumptionText {
                            assumption: id.clone(),
                        }
                        .at(span),
                    );
                    continue;
                }
                if !check_text(
                    text,
                    format!("text of assumption `{id}`"),
                    span,
                    &mut errors,
                ) {
                    continue;
                }
                if assumptions.contains_key(id) {
                    errors.push(
                        BuildErrorKind::DuplicateId {
                            kind: "assumption",
                            id: id.clone(),
                        }
                        .at(span),
                    );
                } else {
                    assumptions.insert(
                        id.clone(),
                        Assumption {
                            id: id.clone(),
                            text: text.clone(),
                        },
                    );
                }
            }
            Declaration::Model { id, assumes, .. } => {
                if !check_id(id, "model", span, &mut errors) {
                    continue;
                }
                if models.contains_key(id) {
                    errors.push(
                        BuildErrorKind::DuplicateId {
                            kind: "model",
                            id: id.clone(),
                        }
                        .at(span),
                    );
                    continue;
                }
                if assumes.is_empty() {
                    errors.push(BuildErrorKind::EmptyAssumptionSet { model: id.clone() }.at(span));
                    continue;
                }
                let members: BTreeSet<String> = assumes.iter().cloned().collect();
                models.insert(
                    id.clone(),
                    ModelRecord {
                        model_id: id.clone(),
                        assumption_set: Some(AssumptionSet {
                            owner: id.clone(),
                            members,
                        }),
                        formulations: Vec::new(),
                    },
                );
            }
            Declaration::Objects { ids, .. } => {
                if mode == CatalogMode::Sets {
                    errors.push(
                        BuildErrorKind::MixedMode {
                            decl: "object",
                            mode: "sets",
                        }
                        .at(span),
                    );
                    continue;
                }
                for id in ids {
                    if !check_id(id, "object", span, &mut errors) {
                        continue;
                    }
                    if models.contains_key(id) {
                        errors.push(
                            BuildErrorKind::DuplicateId {
                                kind: "object",
                                id: id.clone(),
                            }
                            .at(span),
                        );
                    } else {
                        models.insert(
                            id.clone(),
                            ModelRecord {
                                model_id: id.clone(),
                                assumption_set: None,
                                formulations: Vec::new(),
                            },
                        );
                    }
                }
            }
            Declaration::Arrow {
                id, source, target, ..
            } => {
                if mode == CatalogMode::Sets {
                    errors.push(
                        BuildErrorKind::MixedMode {
                            decl: "arrow",
                            mode: "sets",
                        }
                        .at(span),
                    );
                    continue;
                }
                if !check_id(id, "arrow", span, &mut errors) {
                    continue;
                }
                if arrows.contains_key(id) {
                    errors.push(
                        BuildErrorKind::DuplicateId {
                            kind: "arrow",
                            id: id.clone(),
                        }
                        .at(span),
                    );
                    continue;
                }
                if source == target {
                    errors.push(
                        BuildErrorKind::SelfArrow {
                            arrow: id.clone(),
                            object: source.clone(),
                        }
                        .at(span),
                    );
                    continue;
                }
                arrows.insert(
                    id.clone(),
                    DeclaredArrow {
                        id: id.clone(),
                        source: source.clone(),
                        target: target.clone(),
                    },
                );
            }
            Declaration::Formulation {
                id,
                of_model,
                mapping_label,
                expr,
                ..
            } => {
                if !check_id(id, "formulation", span, &mut errors) {
                    continue;
                }
                let expr_ok = check_text(expr, format!("expression of `{id}`"), span, &mut errors);
                let label_ok = match mapping_label.as_deref() {
                    Some(label) => {
                        check_text(label, format!("mapping label of `{id}`"), span, &mut errors)
                    }
                    None => true,
                };
                if !expr_ok || !label_ok {
                    continue;
                }
                if formulations.contains_key(id) {
                    errors.push(
                        BuildErrorKind::DuplicateId {
                            kind: "formulation",
                            id: id.clone(),
                        }
                        .at(span),
                    );
                    continue;
                }
                formulations.insert(
                    id.clone(),
                    Formulation {
                        id: id.clone(),
                        of_model: of_model.clone(),
                        mapping_label: mapping_label.clone(),
                        expr: expr.clone(),
                    },
                );
            }
            Declaration::Convertible { members, .. } => {
                pending_classes.push((members.clone(), span));
            }
        }
    }

    // Reference checks, in declaration order for stable error listings.
    for decl in decls {
        let span = decl.span();
        match decl {
            Declaration::Model { id, assumes, .. } => {
                for a in assumes {
                    if !assumptions.contains_key(a) {
                        errors.push(
                            BuildErrorKind::DanglingReference {
                                kind: "model",
                                from: id.clone(),
                                missing_kind: "assumption",
                                missing: a.clone(),
                            }
                            .at(span),
                        );
                    }
                }
            }
            Declaration::Arrow {
                id, source, target, ..
            } => {
                for end in [source, target] {
                    if !models.contains_key(end) {
                        errors.push(
                            BuildErrorKind::DanglingReference {
                                kind: "arrow",
                                from: id.clone(),
                                missing_kind: "object",
                                missing: end.clone(),
                            }
                            .at(span),
                        );
                    }
                }
            }
            Declaration::Formulation { id, of_model, .. } if !models.contains_key(of_model) => {
                errors.push(
                    BuildErrorKind::DanglingReference {
                        kind: "formulation",
                        from: id.clone(),
                        missing_kind: "model",
                        missing: of_model.clone(),
                    }
                    .at(span),
                );
            }
            _ => {}
        }
    }

    for (members, span) in &pending_classes {
        let distinct: BTreeSet<String> = members.iter().cloned().collect();
        let listing = || distinct.iter().cloned().collect::<Vec<_>>().join(", ");
        if distinct.len() < 2 {
            errors.push(BuildErrorKind::ConvertibilityTooSmall { members: listing() }.at(*span));
            continue;
        }
        let mut owners: BTreeSet<String> = BTreeSet::new();
        let mut dangling = false;
        for m in &distinct {
            match formulations.get(m) {
                Some(f) => {
                    owners.insert(f.of_model.clone());
                }
                None => {
                    dangling = true;
                    errors.push(
                        BuildErrorKind::DanglingReference {
                            kind: "convertibility class",
                            from: listing(),
                            missing_kind: "formulation",
                            missing: m.clone(),
                        }
                        .at(*span),
                    );
                }
            }
        }
        if !dangling && owners.len() > 1 {
            errors.push(
                BuildErrorKind::ConvertibilitySpansModels {
                    members: listing(),
                    models: owners.into_iter().collect::<Vec<_>>().join(", "),
                }
                .at(*span),
            );
            continue;
        }
        if !dangling {
            classes.push(ConvertibilityClass { members: distinct });
        }
    }

    if models.is_empty() {
        errors.push(BuildErrorKind::NoObjects.at(header.span));
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    // Attach formulation ids to their models, in natural order.
    for f in formulations.values() {
        models
            .get_mut(&f.of_model)
            .expect("formulation reference checked above")
            .formulations
            .push(f.id.clone());
    }
    for record in models.values_mut() {
        record.formulations.sort_by(|a, b| natural_cmp(a, b));
    }
    classes.sort();
    classes.dedup();

    Ok(Catalog {
        name: header.name.clone(),
        dimension: header.dimension.clone(),
        mode,
        assumptions,
        models,
        formulations,
        classes,
        arrows,
    })
}

impl Catalog {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> &str {
        &self.dimension
    }

    pub fn mode(&self) -> CatalogMode {
        self.mode
    }

    pub fn assumptions(&self) -> impl Iterator<Item = &Assumption> {
        self.assumptions.values()
    }

    pub fn assumption(&self, id: &str) -> Option<&Assumption> {
        self.assumptions.get(id)
    }

    pub fn models(&self) -> impl Iterator<Item = &ModelRecord> {
        self.models.values()
    }

    pub fn model(&self, id: &str) -> Option<&ModelRecord> {
        self.models.get(id)
    }

    /// Model ids in natural order.
    pub fn model_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.models.keys().map(String::as_str).collect();
        ids.sort_by(|a, b| natural_cmp(a, b));
        ids
    }

    pub fn formulations(&self) -> impl Iterator<Item = &Formulation> {
        self.formulations.values()
    }

    pub fn formulation(&self, id: &str) -> Option<&Formulation> {
        self.formulations.get(id)
    }

    /// Formulations of one model, in natural id order.
    pub fn formulations_of<'a>(
        &'a self,
        model_id: &'a str,
    ) -> impl Iterator<Item = &'a Formulation> {
        self.formulations
            .values()
            .filter(move |f| f.of_model == model_id)
    }

    pub fn convertibility_classes(&self) -> &[ConvertibilityClass] {
        &self.classes
    }

    pub fn arrows(&self) -> impl Iterator<Item = &DeclaredArrow> {
        self.arrows.values()
    }

    /// Arrow ids in natural order.
    pub fn arrow_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.arrows.keys().map(String::as_str).collect();
        ids.sort_by(|a, b| natural_cmp(a, b));
        ids
    }

    pub fn counts(&self) -> CatalogCounts {
        CatalogCounts {
            assumptions: self.assumptions.len(),
            models: self.models.len(),
            formulations: self.formulations.len(),
            convertibility_classes: self.classes.len(),
            arrows: self.arrows.len(),
        }
    }

    /// The exact member set of a model's assumptions.
    pub fn assumption_set_of(&self, model_id: &str) -> Result<&AssumptionSet, CatalogError> {
        let record = self
            .models
            .get(model_id)
            .ok_or_else(|| CatalogError::UnknownModel(model_id.to_owned()))?;
        record
            .assumption_set
            .as_ref()
            .ok_or_else(|| CatalogError::NoAssumptionSet(model_id.to_owned()))
    }

    /// Partition two models' assumption sets into exclusive and shared parts.
    pub fn diff_models(&self, a: &str, b: &str) -> Result<ModelDiff, CatalogError> {
        let sa = &self.assumption_set_of(a)?.members;
        let sb = &self.assumption_set_of(b)?.members;
        Ok(ModelDiff {
            only_in_a: sa.difference(sb).cloned().collect(),
            only_in_b: sb.difference(sa).cloned().collect(),
            shared: sa.intersection(sb).cloned().collect(),
        })
    }

    /// Assemble the triple view (assumption set, expression, mapping label)
    /// for one formulation.
    pub fn model_triple(&self, formulation_id: &str) -> Result<ModelTriple<'_>, CatalogError> {
        let f = self
            .formulations
            .get(formulation_id)
            .ok_or_else(|| CatalogError::UnknownFormulation(formulation_id.to_owned()))?;
        let record = self
            .models
            .get(&f.of_model)
            .expect("formulation owner checked at build time");
        Ok(ModelTriple {
            model_id: &record.model_id,
            assumption_set: record.assumption_set.as_ref(),
            expr: &f.expr,
            mapping_label: f.mapping_label.as_deref(),
        })
    }
}

/// Item counts for report summaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogCounts {
    pub assumptions: usize,
    pub models: usize,
    pub formulations: usize,
    pub convertibility_classes: usize,
    pub arrows: usize,
}

/// Fluent programmatic construction, mainly for tests and embedding.
#[derive(Debug, Clone)]
pub struct CatalogBuilder {
    header: CatalogHeader,
    decls: Vec<Declaration>,
}

impl CatalogBuilder {
    pub fn new(name: &str, dimension: &str, mode: CatalogMode) -> Self {
        CatalogBuilder {
            header: CatalogHeader {
                name: name.to_owned(),
                dimension: dimension.to_owned(),
                mode: Some(mode),
                span: None,
            },
            decls: Vec::new(),
        }
    }

    pub fn assumption(mut self, id: &str, text: &str) -> Self {
        self.decls.push(Declaration::Assumption {
            id: id.to_owned(),
            text: text.to_owned(),
            span: None,
        });
        self
    }

    pub fn model(mut self, id: &str, assumes: &[&str]) -> Self {
        self.decls.push(Declaration::Model {
            id: id.to_owned(),
            assumes: assumes.iter().map(|s| (*s).to_owned()).collect(),
            span: None,
        });
        self
    }

    pub fn object(mut self, id: &str) -> Self {
        self.decls.push(Declaration::Objects {
            ids: vec![id.to_owned()],
            span: None,
        });
        self
    }

    pub fn arrow(mut self, id: &str, source: &str, target: &str) -> Self {
        self.decls.push(Declaration::Arrow {
            id: id.to_owned(),
            source: source.to_owned(),
            target: target.to_owned(),
            span: None,
        });
        self
    }

    pub fn formulation(mut self, id: &str, of_model: &str, via: Option<&str>, expr: &str) -> Self {
        self.decls.push(Declaration::Formulation {
            id: id.to_owned(),
            of_model: of_model.to_owned(),
            mapping_label: via.map(str::to_owned),
            expr: expr.to_owned(),
            span: None,
        });
        self
    }

    pub fn convertible(mut self, members: &[&str]) -> Self {
        self.decls.push(Declaration::Convertible {
            members: members.iter().map(|s| (*s).to_owned()).collect(),
            span: None,
        });
        self
    }

    pub fn build(self) -> Result<Catalog, Vec<BuildError>> {
        build_catalog(Some(&self.header), &self.decls)
    }
}
