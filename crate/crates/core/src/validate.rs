//! Consistency checks over a catalog and its derived order.
//!
//! Checks never abort: every registered check appears exactly once in the
//! report with a Pass/Fail/NotApplicable status, and failures carry the
//! witnessing objects or arrows. Reports are deterministic byte for byte.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::Catalog;
use crate::decl::CatalogMode;
use crate::ident::natural_cmp;
use crate::order::ComplexityPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        }
    }
}

/// Whether a failed check blocks the catalog or merely flags it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckSeverity {
    Error,
    Warning,
}

impl CheckSeverity {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckSeverity::Error => "error",
            CheckSeverity::Warning => "warning",
        }
    }
}

/// One check outcome. Ids are stable across releases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub id: &'static str,
    pub status: CheckStatus,
    pub severity: CheckSeverity,
    pub details: String,
    /// Ids of the objects/arrows/models witnessing a failure.
    pub witnesses: Vec<String>,
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:4} {}: {}",
            self.status.as_str(),
            self.id,
            self.details
        )?;
        if !self.witnesses.is_empty() {
            write!(f, " [{}]", self.witnesses.join(", "))?;
        }
        if self.status == CheckStatus::Fail && self.severity == CheckSeverity::Warning {
            write!(f, " (warning)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckEntry>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    fn merged(reports: Vec<ValidationReport>) -> ValidationReport {
        ValidationReport {
            checks: reports.into_iter().flat_map(|r| r.checks).collect(),
        }
    }
}

fn pass(id: &'static str, details: impl Into<String>) -> CheckEntry {
    CheckEntry {
        id,
        status: CheckStatus::Pass,
        severity: CheckSeverity::Error,
        details: details.into(),
        witnesses: Vec::new(),
    }
}

fn fail(id: &'static str, details: impl Into<String>, witnesses: Vec<String>) -> CheckEntry {
    CheckEntry {
        id,
        status: CheckStatus::Fail,
        severity: CheckSeverity::Error,
        details: details.into(),
        witnesses,
    }
}

fn not_applicable(id: &'static str, details: impl Into<String>) -> CheckEntry {
    CheckEntry {
        id,
        status: CheckStatus::NotApplicable,
        severity: CheckSeverity::Error,
        details: details.into(),
        witnesses: Vec::new(),
    }
}

/// Verify the category laws on the catalog's induced structure.
///
/// Identity arrows and associativity hold by construction for a relation and
/// are reported as such; strictness (irreflexive, antisymmetric) and
/// composition closure are checked explicitly rather than assumed. In
/// declared mode, every declared arrow must point from a superset of
/// assumptions to a strict subset whenever both endpoints carry sets.
pub fn check_category_axioms(catalog: &Catalog, poset: &ComplexityPoset) -> ValidationReport {
    let mut checks = Vec::new();

    checks.push(pass(
        "axioms.identity",
        "every object has its identity arrow implicitly; nothing to enumerate",
    ));
    checks.push(pass(
        "axioms.associativity",
        "composition of relation arrows is associative by construction",
    ));

    let mut strict_witnesses = Vec::new();
    for a in poset.objects() {
        if poset.lt(a, a) {
            strict_witnesses.push(a.clone());
        }
        for b in poset.objects() {
            if a != b && poset.lt(a, b) && poset.lt(b, a) {
                strict_witnesses.push(format!("{a} <> {b}"));
            }
        }
    }
    checks.push(if strict_witnesses.is_empty() {
        pass(
            "axioms.strict-order",
            "relation is irreflexive and antisymmetric",
        )
    } else {
        fail(
            "axioms.strict-order",
            "relation is not a strict order",
            strict_witnesses,
        )
    });

    let mut composition_witnesses = Vec::new();
    for a in poset.objects() {
        for b in poset.objects() {
            if !poset.lt(a, b) {
                continue;
            }
            for c in poset.objects() {
                if poset.lt(b, c) && !poset.lt(a, c) {
                    composition_witnesses.push(format!("{a} -> {b} -> {c}"));
                }
            }
        }
    }
    checks.push(if composition_witnesses.is_empty() {
        pass(
            "axioms.composition",
            "every composable pair of arrows has its composite in the relation",
        )
    } else {
        fail(
            "axioms.composition",
            "missing composite arrows",
            composition_witnesses,
        )
    });

    if catalog.mode() == CatalogMode::Declared {
        let mut witnesses = Vec::new();
        let mut checked = 0usize;
        for arrow in catalog.arrows() {
            let (Ok(source), Ok(target)) = (
                catalog.assumption_set_of(&arrow.source),
                catalog.assumption_set_of(&arrow.target),
            ) else {
                continue;
            };
            checked += 1;
            let points_down =
                target.members.is_subset(&source.members) && target.members != source.members;
            if !points_down {
                witnesses.push(format!(
                    "{} ({} -> {})",
                    arrow.id, arrow.source, arrow.target
                ));
            }
        }
        witnesses.sort_by(|a, b| natural_cmp(a, b));
        checks.push(if !witnesses.is_empty() {
            fail(
                "axioms.arrow-direction",
                "declared arrows must drop assumptions from source to target",
                witnesses,
            )
        } else if checked == 0 {
            pass(
                "axioms.arrow-direction",
                "no arrow has assumption sets on both endpoints; nothing to cross-check",
            )
        } else {
            pass(
                "axioms.arrow-direction",
                format!("{checked} arrow(s) consistent with their endpoint assumption sets"),
            )
        });
    } else {
        checks.push(not_applicable(
            "axioms.arrow-direction",
            "sets mode has no declared arrows",
        ));
    }

    ValidationReport { checks }
}

/// Verify the convertibility bookkeeping.
///
/// (a) every class stays within one model; (b) all formulations of a shared
/// model are linked into one class — unlinked co-formulations are flagged at
/// warning severity since the link may simply not be declared yet; (c) any
/// two members of a class have models of equal complexity. Formalisation
/// mapping labels are deliberately ignored here: two formulations with
/// different labels may still be convertible.
pub fn check_convertibility(catalog: &Catalog) -> ValidationReport {
    let mut checks = Vec::new();

    let mut span_witnesses = Vec::new();
    for class in catalog.convertibility_classes() {
        let owners: BTreeSet<&str> = class
            .members
            .iter()
            .filter_map(|m| catalog.formulation(m))
            .map(|f| f.of_model.as_str())
            .collect();
        if owners.len() != 1 {
            span_witnesses.push(format!("{{{}}}", class.sorted_members().join(", ")));
        }
    }
    checks.push(if span_witnesses.is_empty() {
        pass(
            "convertibility.single-model",
            "every convertibility class references exactly one model",
        )
    } else {
        fail(
            "convertibility.single-model",
            "classes spanning multiple models",
            span_witnesses,
        )
    });

    let mut unlinked = Vec::new();
    for model_id in catalog.model_ids() {
        let formulations: Vec<&str> = catalog
            .formulations_of(model_id)
            .map(|f| f.id.as_str())
            .collect();
        if formulations.len() < 2 {
            continue;
        }
        let covered = catalog
            .convertibility_classes()
            .iter()
            .any(|class| formulations.iter().all(|f| class.members.contains(*f)));
        if !covered {
            unlinked.push(model_id.to_owned());
        }
    }
    checks.push(if unlinked.is_empty() {
        pass(
            "convertibility.linked",
            "all co-formulations of each model are declared convertible",
        )
    } else {
        CheckEntry {
            id: "convertibility.linked",
            status: CheckStatus::Fail,
            severity: CheckSeverity::Warning,
            details: "unlinked co-formulations".to_owned(),
            witnesses: unlinked,
        }
    });

    let mut unequal = Vec::new();
    let mut compared = 0usize;
    for class in catalog.convertibility_classes() {
        let members = class.sorted_members();
        for (k, a) in members.iter().enumerate() {
            for b in &members[k + 1..] {
                let (Some(fa), Some(fb)) = (catalog.formulation(a), catalog.formulation(b)) else {
                    continue;
                };
                let (Ok(sa), Ok(sb)) = (
                    catalog.assumption_set_of(&fa.of_model),
                    catalog.assumption_set_of(&fb.of_model),
                ) else {
                    continue;
                };
                compared += 1;
                if crate::order::compare(sa, sb) != crate::order::Comparison::Equal {
                    unequal.push(format!("{a} vs {b}"));
                }
            }
        }
    }
    checks.push(if !unequal.is_empty() {
        fail(
            "convertibility.equal-complexity",
            "convertible formulations with differing model complexity",
            unequal,
        )
    } else if compared == 0 {
        pass(
            "convertibility.equal-complexity",
            "no member pairs with assumption sets to compare",
        )
    } else {
        pass(
            "convertibility.equal-complexity",
            format!("{compared} convertible pair(s) compare equal in complexity"),
        )
    });

    ValidationReport { checks }
}

/// Verify the single-dimension rule: one non-empty dimension tag per catalog.
pub fn check_dimension(catalog: &Catalog) -> ValidationReport {
    let check = if catalog.dimension().trim().is_empty() {
        fail(
            "dimension.single-tag",
            "catalog dimension tag is empty",
            vec![catalog.name().to_owned()],
        )
    } else {
        pass(
            "dimension.single-tag",
            format!("all objects share dimension \"{}\"", catalog.dimension()),
        )
    };
    ValidationReport {
        checks: vec![check],
    }
}

/// Run every check in a fixed order.
pub fn validate_all(catalog: &Catalog, poset: &ComplexityPoset) -> ValidationReport {
    ValidationReport::merged(vec![
        check_category_axioms(catalog, poset),
        check_convertibility(catalog),
        check_dimension(catalog),
    ])
}
