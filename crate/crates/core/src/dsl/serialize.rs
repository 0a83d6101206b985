//! Canonical text emission.
//!
//! The canonical form is: explicit `mode`, declarations sorted by kind
//! (assumption, model, object, arrow, formulation, convertible) then by id in
//! natural order, two-space indentation, one declaration per line, LF line
//! endings. Re-parsing the output rebuilds a structurally equal catalog.

use std::fmt::Write;

use crate::catalog::Catalog;
use crate::decl::CatalogMode;
use crate::ident::natural_cmp;

/// Render a catalog in canonical form.
pub fn serialize(catalog: &Catalog) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "catalog {} dimension {} mode {} {{",
        quote(catalog.name()),
        quote(catalog.dimension()),
        catalog.mode().as_str()
    )
    .unwrap();

    let mut assumptions: Vec<_> = catalog.assumptions().collect();
    assumptions.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    for a in assumptions {
        writeln!(out, "  assumption {} {}", a.id, quote(&a.text)).unwrap();
    }

    let mut with_sets = Vec::new();
    let mut abstract_objects = Vec::new();
    for m in catalog.models() {
        match &m.assumption_set {
            Some(set) => with_sets.push((m.model_id.as_str(), set)),
            None => abstract_objects.push(m.model_id.as_str()),
        }
    }
    with_sets.sort_by(|a, b| natural_cmp(a.0, b.0));
    abstract_objects.sort_by(|a, b| natural_cmp(a, b));
    for (id, set) in with_sets {
        writeln!(
            out,
            "  model {} {{ assumes {} }}",
            id,
            set.sorted_members().join(" ")
        )
        .unwrap();
    }
    for id in abstract_objects {
        writeln!(out, "  object {id}").unwrap();
    }

    if catalog.mode() == CatalogMode::Declared {
        for id in catalog.arrow_ids() {
            let arrow = catalog.arrows().find(|a| a.id == id).unwrap();
            writeln!(
                out,
                "  arrow {} : {} -> {}",
                arrow.id, arrow.source, arrow.target
            )
            .unwrap();
        }
    }

    let mut formulations: Vec<_> = catalog.formulations().collect();
    formulations.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    for f in formulations {
        match &f.mapping_label {
            Some(label) => writeln!(
                out,
                "  formulation {} of {} via {} expr {}",
                f.id,
                f.of_model,
                quote(label),
                quote(&f.expr)
            )
            .unwrap(),
            None => writeln!(
                out,
                "  formulation {} of {} expr {}",
                f.id,
                f.of_model,
                quote(&f.expr)
            )
            .unwrap(),
        }
    }

    let mut classes: Vec<Vec<&str>> = catalog
        .convertibility_classes()
        .iter()
        .map(|c| c.sorted_members())
        .collect();
    classes.sort_by(|a, b| {
        let key_a = a.join(" ");
        let key_b = b.join(" ");
        natural_cmp(&key_a, &key_b)
    });
    for members in classes {
        writeln!(out, "  convertible {}", members.join(" ")).unwrap();
    }

    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
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
