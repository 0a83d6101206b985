//! Shared helpers for integration tests: fixture loading, a seeded random
//! catalog generator, and brute-force oracles kept deliberately independent
//! of the library's own algorithms.

// Each integration test target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use std::collections::BTreeSet;

use modelcat_core::{Catalog, CatalogBuilder, CatalogMode, Chain, Comparison, ComplexityPoset};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"))
}

pub fn beam() -> Catalog {
    modelcat_core::parse_catalog(&fixture("beam.mcat")).expect("beam fixture")
}

pub fn aero() -> Catalog {
    modelcat_core::parse_catalog(&fixture("aero.mcat")).expect("aero fixture")
}

/// A random sets-mode catalog: up to 8 models over up to 8 assumptions, with
/// occasional formulations and convertibility classes. Three family shapes
/// keep the poset distribution interesting: independent subsets, sets derived
/// from earlier ones by adding/removing elements (many comparable pairs), and
/// subsets around a shared core (frequent extremes).
pub fn random_catalog(rng: &mut ChaCha8Rng, idx: usize) -> Catalog {
    let n_assumptions: usize = rng.gen_range(1..=8);
    let n_models: usize = rng.gen_range(1..=8);
    let mut builder = CatalogBuilder::new(&format!("Random{idx}"), "randomized", CatalogMode::Sets);
    for a in 1..=n_assumptions {
        builder = builder.assumption(&format!("a{a}"), &format!("assumption number {a}"));
    }

    let random_subset = |rng: &mut ChaCha8Rng| -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (1..=n_assumptions).filter(|_| rng.gen_bool(0.5)).collect();
        if s.is_empty() {
            s.insert(rng.gen_range(1..=n_assumptions));
        }
        s
    };

    let style = rng.gen_range(0..3);
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(n_models);
    for m in 0..n_models {
        let set = match style {
            // Independent subsets.
            0 => random_subset(rng),
            // Grow or shrink an earlier set by one or two elements.
            1 if m > 0 => {
                let mut set = sets[rng.gen_range(0..m)].clone();
                for _ in 0..rng.gen_range(1..=2) {
                    let candidate = rng.gen_range(1..=n_assumptions);
                    if rng.gen_bool(0.5) {
                        set.insert(candidate);
                    } else if set.len() > 1 {
                        set.remove(&candidate);
                    }
                }
                if set.is_empty() {
                    set.insert(rng.gen_range(1..=n_assumptions));
                }
                set
            }
            // Random subsets sharing the first assumption as a common core.
            2 => {
                let mut set = random_subset(rng);
                set.insert(1);
                set
            }
            _ => random_subset(rng),
        };
        sets.push(set);
    }
    for (m, set) in sets.iter().enumerate() {
        let members: Vec<String> = set.iter().map(|a| format!("a{a}")).collect();
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        builder = builder.model(&format!("m{}", m + 1), &refs);
    }
    for m in 1..=n_models {
        let n_formulations = rng.gen_range(0..=2);
        for k in 1..=n_formulations {
            builder = builder.formulation(
                &format!("f{m}_{k}"),
                &format!("m{m}"),
                if rng.gen_bool(0.5) { Some("S") } else { None },
                &format!("expression {m}.{k}"),
            );
        }
        if n_formulations == 2 && rng.gen_bool(0.7) {
            builder = builder.convertible(&[&format!("f{m}_1"), &format!("f{m}_2")]);
        }
    }
    builder
        .build()
        .expect("random catalog is structurally valid")
}

/// Element-by-element strict subset comparison; no set operations from the
/// library under test.
pub fn oracle_compare(a: &BTreeSet<String>, b: &BTreeSet<String>) -> Comparison {
    let mut a_in_b = true;
    for x in a {
        if !b.contains(x) {
            a_in_b = false;
            break;
        }
    }
    let mut b_in_a = true;
    for x in b {
        if !a.contains(x) {
            b_in_a = false;
            break;
        }
    }
    match (a_in_b, b_in_a) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::HigherComplexity,
        (false, true) => Comparison::LowerComplexity,
        (false, false) => Comparison::Incomparable,
    }
}

/// Poset as an index matrix for oracle work.
pub struct Matrix {
    pub ids: Vec<String>,
    pub lt: Vec<bool>,
}

impl Matrix {
    pub fn of(poset: &ComplexityPoset) -> Matrix {
        let ids: Vec<String> = poset.objects().to_vec();
        let n = ids.len();
        let mut lt = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                lt[i * n + j] = poset.lt(&ids[i], &ids[j]);
            }
        }
        Matrix { ids, lt }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn at(&self, i: usize, j: usize) -> bool {
        self.lt[i * self.n() + j]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt[i * n + j])
            .collect()
    }
}

/// Transitive closure by fixpoint iteration (not Warshall, on purpose).
pub fn closure_fixpoint(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut closure = vec![false; n * n];
    for &(i, j) in edges {
        closure[i * n + j] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !closure[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if closure[j * n + k] && !closure[i * n + k] {
                        closure[i * n + k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return closure;
        }
    }
}

/// Covering pairs straight from the definition: an order pair with no
/// intermediate object.
pub fn oracle_covering(m: &Matrix) -> BTreeSet<(usize, usize)> {
    let n = m.n();
    let mut edges = BTreeSet::new();
    for (i, j) in m.pairs() {
        let mut has_mid = false;
        for k in 0..n {
            if m.at(i, k) && m.at(k, j) {
                has_mid = true;
                break;
            }
        }
        if !has_mid {
            edges.insert((i, j));
        }
    }
    edges
}

fn combinations(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

/// Visit every k-subset of `0..len`, stopping early when `f` returns false.
fn for_each_combination(len: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > len {
        return;
    }
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        if !f(&indices) {
            return;
        }
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if indices[i] != i + len - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        indices[i] += 1;
        for j in i + 1..k {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

/// Exhaustive minimal-edge-set search. Checks that `reduction` is the unique
/// smallest subset of the order whose transitive closure equals the order.
///
/// Only subset sizes |reduction| and |reduction|-1 need enumeration: adding
/// edges never shrinks the closure and can never push it past the order
/// itself (the order is transitively closed), so "some subset of size s
/// reproduces the order" is monotone in s.
///
/// Returns `None` when the combination count exceeds `budget`; callers then
/// fall back to [`oracle_covering`].
pub fn oracle_hasse_minimal_unique(
    m: &Matrix,
    reduction: &BTreeSet<(usize, usize)>,
    budget: u128,
) -> Option<bool> {
    let pairs = m.pairs();
    let l = pairs.len();
    let r = reduction.len();
    if reduction.iter().any(|e| !pairs.contains(e)) {
        return Some(false);
    }
    if combinations(l, r) + combinations(l, r.saturating_sub(1)) > budget {
        return None;
    }
    let n = m.n();
    let closure_equals_lt = |subset: &[usize]| {
        let edges: Vec<(usize, usize)> = subset.iter().map(|&x| pairs[x]).collect();
        closure_fixpoint(n, &edges) == m.lt
    };

    let mut winners_of_size_r: Vec<BTreeSet<(usize, usize)>> = Vec::new();
    for_each_combination(l, r, |subset| {
        if closure_equals_lt(subset) {
            winners_of_size_r.push(subset.iter().map(|&x| pairs[x]).collect());
        }
        winners_of_size_r.len() <= 1
    });
    if winners_of_size_r.len() != 1 || winners_of_size_r[0] != *reduction {
        return Some(false);
    }

    if r > 0 {
        let mut smaller_works = false;
        for_each_combination(l, r - 1, |subset| {
            if closure_equals_lt(subset) {
                smaller_works = true;
            }
            !smaller_works
        });
        if smaller_works {
            return Some(false);
        }
    }
    Some(true)
}

/// All maximal totally ordered subsets, by exhaustive subset enumeration,
/// returned as simplest-first paths of object ids.
pub fn oracle_maximal_chains(m: &Matrix) -> BTreeSet<Vec<String>> {
    let n = m.n();
    assert!(n <= 16, "oracle is exponential in the object count");
    let comparable = |i: usize, j: usize| m.at(i, j) || m.at(j, i);
    let totally_ordered = |mask: u32| {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in i + 1..n {
                if mask & (1 << j) != 0 && !comparable(i, j) {
                    return false;
                }
            }
        }
        true
    };

    let mut chains = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if !totally_ordered(mask) {
            continue;
        }
        let mut maximal = true;
        for v in 0..n {
            if mask & (1 << v) == 0 && totally_ordered(mask | (1 << v)) {
                maximal = false;
                break;
            }
        }
        if !maximal {
            continue;
        }
        let mut members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        members.sort_by(|&a, &b| {
            if m.at(a, b) {
                std::cmp::Ordering::Less
            } else if m.at(b, a) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        chains.insert(members.into_iter().map(|i| m.ids[i].clone()).collect());
    }
    chains
}

/// The engine's sorted-output contract, restated independently.
pub fn chains_are_sorted(chains: &[Chain]) -> bool {
    chains.windows(2).all(|w| {
        let a = &w[0].path;
        let b = &w[1].path;
        let mut ia = a.iter();
        let mut ib = b.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, _) => return true,
                (Some(_), None) => return false,
                (Some(x), Some(y)) => match modelcat_core::ident::natural_cmp(x, y) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => continue,
                },
            }
        }
    })
}
