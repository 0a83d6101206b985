//! The model-complexity relation.
//!
//! A model is *more complex* than another exactly when its assumption set is a
//! strict subset of the other's: fewer restrictions, more general model. The
//! relation is a strict partial order over the catalog's objects; this module
//! derives it (from sets, or from declared arrows by transitive closure),
//! reduces it to its Hasse diagram, finds extremal objects, classifies the
//! ordering, and enumerates the maximal chains, i.e. the totally ordered
//! subcategories.
//!
//! Edge orientation runs from simpler object toward more complex object, in
//! the direction of dropping assumptions. Under that convention the simplest
//! object is the initial object of the category and the most complex object
//! is the terminal one.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::{AssumptionSet, Catalog};
use crate::decl::CatalogMode;
use crate::ident::natural_cmp;

/// Default bound on chain enumeration. Overridable per call and, in the CLI,
/// via `--max` or `MODELCAT_CHAIN_CAP`.
pub const DEFAULT_CHAIN_CAP: usize = 10_000;

/// Outcome of comparing two models by complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// The first model's set is a strict subset of the second's.
    HigherComplexity,
    /// The second model's set is a strict subset of the first's.
    LowerComplexity,
    /// Identical assumption sets.
    Equal,
    /// Neither set contains the other.
    Incomparable,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::HigherComplexity => "higher",
            Comparison::LowerComplexity => "lower",
            Comparison::Equal => "equal",
            Comparison::Incomparable => "incomparable",
        }
    }
}

/// Compare two assumption sets. Total on valid (non-empty) sets.
pub fn compare(a: &AssumptionSet, b: &AssumptionSet) -> Comparison {
    let a_in_b = a.members.is_subset(&b.members);
    let b_in_a = b.members.is_subset(&a.members);
    match (a_in_b, b_in_a) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::HigherComplexity,
        (false, true) => Comparison::LowerComplexity,
        (false, false) => Comparison::Incomparable,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    DerivedFromSets,
    Declared,
}

/// The strict partial order of a catalog, with its transitive reduction.
///
/// `lt(a, b)` reads "b is strictly more complex than a"; in sets mode that is
/// `Set_b ⊊ Set_a`. Objects are kept in natural id order and every listing
/// this type produces is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityPoset {
    objects: Vec<String>,
    /// Flat n×n strict-order matrix; `lt[i * n + j]` means j above i.
    lt: Vec<bool>,
    /// Covering pairs, sorted by (source, target) object index.
    hasse: Vec<(usize, usize)>,
    provenance: Provenance,
    /// Distinct models with identical assumption sets (kept as distinct
    /// objects, surfaced as warnings).
    equal_pairs: Vec<(String, String)>,
}

/// A totally ordered subcategory: a path through the Hasse diagram from a
/// minimal-complexity object to a maximal one, listed simplest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub path: Vec<String>,
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.join(" -> "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingKind {
    TotallyOrdered,
    PartiallyOrdered,
}

impl OrderingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingKind::TotallyOrdered => "total",
            OrderingKind::PartiallyOrdered => "partial",
        }
    }
}

/// Which of the four extremal-object cases holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalCase {
    /// Neither the most complex nor the simplest object exists.
    I,
    /// Only the most complex object exists.
    II,
    /// Only the simplest object exists.
    III,
    /// Both exist.
    IV,
}

impl ExtremalCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalCase::I => "I",
            ExtremalCase::II => "II",
            ExtremalCase::III => "III",
            ExtremalCase::IV => "IV",
        }
    }
}

/// The catalog's ordering status plus its extremal structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub ordering: OrderingKind,
    pub prop1_case: ExtremalCase,
    pub most_complex: Option<String>,
    pub simplest: Option<String>,
    /// Union of all assumption sets; sets mode only.
    pub union_set: Option<BTreeSet<String>>,
}

/// Evidence backing a totality answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Totality {
    pub total: bool,
    /// First incomparable pair in object order, when not total.
    pub incomparable: Option<(String, String)>,
    /// Union of all assumption sets; sets mode only.
    pub union_set: Option<BTreeSet<String>>,
    /// In a totally ordered sets-mode catalog, the object whose set equals
    /// the union. Checked, not assumed.
    pub union_object: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("cycle detected among declared arrows: {}", cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },
    #[error("more than {cap} maximal chains; enumeration stopped after {found}")]
    ChainExplosion { cap: usize, found: usize },
}

/// Derive the complexity relation of a catalog.
///
/// Sets mode compares all model pairs; declared mode takes the transitive
/// closure of the arrows and rejects cycles. Models with identical sets are
/// kept as distinct, mutually incomparable objects and reported via
/// [`ComplexityPoset::equal_pairs`].
pub fn derive_relation(catalog: &Catalog) -> Result<ComplexityPoset, OrderError> {
    let objects: Vec<String> = catalog
        .model_ids()
        .iter()
        .map(|s| (*s).to_owned())
        .collect();
    let n = objects.len();
    let mut lt = vec![false; n * n];

    let provenance = match catalog.mode() {
        CatalogMode::Sets => {
            for (i, a) in objects.iter().enumerate() {
                let sa = &catalog.assumption_set_of(a).expect("sets mode").members;
                for (j, b) in objects.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let sb = &catalog.assumption_set_of(b).expect("sets mode").members;
                    // j above i: strictly fewer assumptions.
                    lt[i * n + j] = sb.is_subset(sa) && sb != sa;
                }
            }
            Provenance::DerivedFromSets
        }
        CatalogMode::Declared => {
            for arrow in catalog.arrows() {
                let i = objects
                    .binary_search_by(|o| natural_cmp(o, &arrow.source))
                    .unwrap();
                let j = objects
                    .binary_search_by(|o| natural_cmp(o, &arrow.target))
                    .unwrap();
                lt[i * n + j] = true;
            }
            // Warshall closure.
            for k in 0..n {
                for i in 0..n {
                    if lt[i * n + k] {
                        for j in 0..n {
                            if lt[k * n + j] {
                                lt[i * n + j] = true;
                            }
                        }
                    }
                }
            }
            if let Some(start) = (0..n).find(|&i| lt[i * n + i]) {
                return Err(OrderError::CycleDetected {
                    cycle: shortest_cycle_through(catalog, &objects, start),
                });
            }
            Provenance::Declared
        }
    };

    let mut equal_pairs = Vec::new();
    for i in 0..n {
        let Ok(sa) = catalog.assumption_set_of(&objects[i]) else {
            continue;
        };
        for j in i + 1..n {
            let Ok(sb) = catalog.assumption_set_of(&objects[j]) else {
                continue;
            };
            if sa.members == sb.members {
                equal_pairs.push((objects[i].clone(), objects[j].clone()));
            }
        }
    }

    let hasse = covering_pairs(&lt, n);
    Ok(ComplexityPoset {
        objects,
        lt,
        hasse,
        provenance,
        equal_pairs,
    })
}

/// An edge of a transitively closed relation is covering exactly when no
/// third object sits between its endpoints.
fn covering_pairs(lt: &[bool], n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !lt[i * n + j] {
                continue;
            }
            let redundant = (0..n).any(|k| lt[i * n + k] && lt[k * n + j]);
            if !redundant {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Shortest declared-arrow cycle through `objects[start]`, found by BFS.
fn shortest_cycle_through(catalog: &Catalog, objects: &[String], start: usize) -> Vec<String> {
    let n = objects.len();
    let index = |id: &str| {
        objects
            .binary_search_by(|o| natural_cmp(o, id))
            .expect("arrow endpoints are objects")
    };
    let mut direct = vec![Vec::new(); n];
    for arrow in catalog.arrows() {
        direct[index(&arrow.source)].push(index(&arrow.target));
    }
    for succs in &mut direct {
        succs.sort_unstable();
        succs.dedup();
    }

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = vec![false; n];
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &direct[u] {
            if v == start {
                let mut path = vec![start];
                let mut cur = u;
                let mut rev = vec![];
                while cur != start {
                    rev.push(cur);
                    cur = parent[cur].expect("BFS parent chain");
                }
                path.extend(rev.into_iter().rev());
                path.push(start);
                return path.into_iter().map(|i| objects[i].clone()).collect();
            }
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    unreachable!("start lies on a cycle of its own closure")
}

impl ComplexityPoset {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn equal_pairs(&self) -> &[(String, String)] {
        &self.equal_pairs
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.objects.binary_search_by(|o| natural_cmp(o, id)).ok()
    }

    fn n(&self) -> usize {
        self.objects.len()
    }

    /// Is `above` strictly more complex than `below`?
    pub fn lt(&self, below: &str, above: &str) -> bool {
        match (self.index_of(below), self.index_of(above)) {
            (Some(i), Some(j)) => self.lt[i * self.n() + j],
            _ => false,
        }
    }

    /// All strict-order pairs (simpler, more complex), in object order.
    pub fn lt_pairs(&self) -> Vec<(&str, &str)> {
        let n = self.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt[i * n + j] {
                    pairs.push((self.objects[i].as_str(), self.objects[j].as_str()));
                }
            }
        }
        pairs
    }

    /// The transitive reduction: covering edges (simpler, more complex),
    /// sorted. The transitive closure of these edges equals the full order.
    pub fn hasse_edges(&self) -> Vec<(&str, &str)> {
        self.hasse
            .iter()
            .map(|&(i, j)| (self.objects[i].as_str(), self.objects[j].as_str()))
            .collect()
    }

    /// Order pairs that are not covering edges; drawn dashed in diagrams.
    pub fn composite_edges(&self) -> Vec<(&str, &str)> {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt[i * n + j] && !self.hasse.contains(&(i, j)) {
                    edges.push((self.objects[i].as_str(), self.objects[j].as_str()));
                }
            }
        }
        edges
    }

    /// Totality with evidence. In a totally ordered sets-mode catalog the
    /// largest set must equal the union of all sets; that condition is
    /// re-checked here rather than trusted.
    pub fn is_totally_ordered(&self, catalog: &Catalog) -> Totality {
        let n = self.n();
        let mut incomparable = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if !self.lt[i * n + j] && !self.lt[j * n + i] {
                    incomparable = Some((self.objects[i].clone(), self.objects[j].clone()));
                    break 'outer;
                }
            }
        }
        let total = incomparable.is_none();

        let union_set = union_of_sets(catalog);
        let mut union_object = None;
        if total && n > 0 && catalog.mode() == CatalogMode::Sets {
            let simplest = self
                .simplest()
                .expect("a finite totally ordered catalog has a simplest object");
            let set = &catalog
                .assumption_set_of(simplest)
                .expect("sets mode")
                .members;
            assert_eq!(
                Some(set),
                union_set.as_ref(),
                "totally ordered catalog: largest set must equal the union of all sets"
            );
            union_object = Some(simplest.to_owned());
        }
        Totality {
            total,
            incomparable,
            union_set,
            union_object,
        }
    }

    /// The unique object strictly above every other one, if it exists: the
    /// terminal object, reachable from everywhere.
    pub fn most_complex(&self) -> Option<&str> {
        let n = self.n();
        let mut found = None;
        for j in 0..n {
            if (0..n).all(|i| i == j || self.lt[i * n + j]) {
                if found.is_some() {
                    return None;
                }
                found = Some(self.objects[j].as_str());
            }
        }
        found
    }

    /// The unique object strictly below every other one, if it exists: the
    /// initial object, from which everything is reachable. In sets mode its
    /// set equals the union of all assumption sets.
    pub fn simplest(&self) -> Option<&str> {
        let n = self.n();
        let mut found = None;
        for i in 0..n {
            if (0..n).all(|j| j == i || self.lt[i * n + j]) {
                if found.is_some() {
                    return None;
                }
                found = Some(self.objects[i].as_str());
            }
        }
        found
    }

    /// Ordering status, extremal case, and extremes in one record.
    pub fn classify(&self, catalog: &Catalog) -> Classification {
        let totality = self.is_totally_ordered(catalog);
        let most_complex = self.most_complex().map(str::to_owned);
        let simplest = self.simplest().map(str::to_owned);
        let prop1_case = match (&most_complex, &simplest) {
            (None, None) => ExtremalCase::I,
            (Some(_), None) => ExtremalCase::II,
            (None, Some(_)) => ExtremalCase::III,
            (Some(_), Some(_)) => ExtremalCase::IV,
        };
        Classification {
            ordering: if totality.total {
                OrderingKind::TotallyOrdered
            } else {
                OrderingKind::PartiallyOrdered
            },
            prop1_case,
            most_complex,
            simplest,
            union_set: totality.union_set,
        }
    }

    /// All maximal chains, sorted lexicographically by object id. Never empty
    /// for a non-empty poset: every object lies on some maximal chain.
    pub fn maximal_chains(&self) -> Result<Vec<Chain>, OrderError> {
        self.maximal_chains_capped(DEFAULT_CHAIN_CAP)
    }

    /// As [`maximal_chains`](Self::maximal_chains) with an explicit cap;
    /// enumeration stops with [`OrderError::ChainExplosion`] once the cap is
    /// exceeded rather than exhausting memory.
    pub fn maximal_chains_capped(&self, cap: usize) -> Result<Vec<Chain>, OrderError> {
        let n = self.n();
        let mut successors = vec![Vec::new(); n];
        let mut has_pred = vec![false; n];
        for &(i, j) in &self.hasse {
            successors[i].push(j);
            has_pred[j] = true;
        }

        let mut chains = Vec::new();
        let mut path = Vec::new();
        for (start, _) in has_pred.iter().enumerate().filter(|(_, p)| !**p) {
            self.extend_chain(start, &successors, &mut path, &mut chains, cap)?;
        }
        chains.sort_by(|a: &Chain, b: &Chain| {
            let mut ia = a.path.iter();
            let mut ib = b.path.iter();
            loop {
                match (ia.next(), ib.next()) {
                    (None, None) => return std::cmp::Ordering::Equal,
                    (None, Some(_)) => return std::cmp::Ordering::Less,
                    (Some(_), None) => return std::cmp::Ordering::Greater,
                    (Some(x), Some(y)) => match natural_cmp(x, y) {
                        std::cmp::Ordering::Equal => continue,
                        other => return other,
                    },
                }
            }
        });
        Ok(chains)
    }

    fn extend_chain(
        &self,
        node: usize,
        successors: &[Vec<usize>],
        path: &mut Vec<usize>,
        chains: &mut Vec<Chain>,
        cap: usize,
    ) -> Result<(), OrderError> {
        path.push(node);
        if successors[node].is_empty() {
            if chains.len() >= cap {
                path.pop();
                return Err(OrderError::ChainExplosion {
                    cap,
                    found: chains.len() + 1,
                });
            }
            chains.push(Chain {
                path: path.iter().map(|&i| self.objects[i].clone()).collect(),
            });
        } else {
            for &next in &successors[node] {
                self.extend_chain(next, successors, path, chains, cap)?;
            }
        }
        path.pop();
        Ok(())
    }
}

fn union_of_sets(catalog: &Catalog) -> Option<BTreeSet<String>> {
    if catalog.mode() != CatalogMode::Sets {
        return None;
    }
    let mut union = BTreeSet::new();
    for model in catalog.models() {
        if let Some(set) = &model.assumption_set {
            union.extend(set.members.iter().cloned());
        }
    }
    Some(union)
}
