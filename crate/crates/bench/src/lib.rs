//! Synthetic catalog generators for benchmarking.

use modelcat_core::{Catalog, CatalogBuilder, CatalogMode};

/// A declared-mode stack of `layers` diamonds, each `width` objects wide.
/// The number of maximal chains is `width^layers`, which makes chain
/// enumeration the dominant cost.
pub fn diamond_stack(layers: usize, width: usize) -> Catalog {
    let mut builder = CatalogBuilder::new("DiamondStack", "synthetic", CatalogMode::Declared);
    let mut arrow = 0usize;
    builder = builder.object("n0");
    for layer in 0..layers {
        let bottom = format!("n{layer}");
        let top = format!("n{}", layer + 1);
        builder = builder.object(&top);
        for w in 0..width {
            let mid = format!("n{layer}_w{w}");
            builder = builder.object(&mid);
            builder = builder.arrow(&format!("e{arrow}"), &bottom, &mid);
            arrow += 1;
            builder = builder.arrow(&format!("e{arrow}"), &mid, &top);
            arrow += 1;
        }
    }
    builder.build().expect("diamond stack builds")
}

/// A sets-mode catalog of `n` strictly nested assumption sets; the relation
/// is a single chain with the densest possible closure.
pub fn nested_chain(n: usize) -> Catalog {
    let mut builder = CatalogBuilder::new("NestedChain", "synthetic", CatalogMode::Sets);
    for a in 1..=n {
        builder = builder.assumption(&format!("a{a}"), "synthetic assumption");
    }
    for m in 1..=n {
        let members: Vec<String> = (m..=n).map(|a| format!("a{a}")).collect();
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        builder = builder.model(&format!("m{m}"), &refs);
    }
    builder.build().expect("nested chain builds")
}
