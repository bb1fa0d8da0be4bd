//! Maximum matchings on trees and the matching-number bounds
//! `|contact| >= t`, `n <= 2m + b - 1`, `t <= min(b, m)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{normalize, Edge, TreeWithBoundary};

/// A set of pairwise vertex-disjoint edges, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    fn from_edges(mut edges: Vec<Edge>) -> Self {
        for e in edges.iter_mut() {
            *e = normalize(*e);
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.edges.binary_search(&normalize(edge)).is_ok()
    }

    /// Disjointness plus membership of every edge in `tree`.
    pub fn is_valid_in(&self, tree: &TreeWithBoundary) -> bool {
        let mut used = vec![false; tree.n()];
        for &(u, v) in &self.edges {
            if u >= tree.n() || v >= tree.n() || !tree.is_adjacent(u, v) || used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }
}

/// Greedy leaf stripping on a forest: repeatedly match the smallest
/// remaining leaf with its neighbor and delete both. Optimal on forests.
pub fn maximum_matching_forest(n: usize, edges: &[Edge]) -> Matching {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
    let mut matched = Vec::new();
    while let Some(u) = leaves.pop_first() {
        let Some(&v) = adj[u].iter().next() else {
            continue;
        };
        matched.push((u, v));
        leaves.remove(&v);
        adj[u].clear();
        let nbrs: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
        for w in nbrs {
            if w == u {
                continue;
            }
            adj[w].remove(&v);
            match adj[w].len() {
                0 => {
                    leaves.remove(&w);
                }
                1 => {
                    leaves.insert(w);
                }
                _ => {}
            }
        }
    }
    Matching::from_edges(matched)
}

/// Maximum matching of `tree`; its size is the matching number.
pub fn matching_number(tree: &TreeWithBoundary) -> Matching {
    maximum_matching_forest(tree.n(), &tree.edges())
}

/// A maximum matching containing the chosen pendant edge `v - choice[v]`
/// for every contact vertex `v`. Starts from the leaf-stripping matching and
/// swaps `v w` for `v u` whenever a chosen edge is missing.
pub fn matching_containing_pendants(
    tree: &TreeWithBoundary,
    choice: &BTreeMap<usize, usize>,
) -> Result<Matching> {
    let contact = tree.contact_set();
    for (&v, &u) in choice {
        if v >= tree.n() || u >= tree.n() {
            return Err(Error::InvalidChoice(format!(
                "vertex out of range in {v}->{u}"
            )));
        }
        if contact.binary_search(&v).is_err() {
            return Err(Error::InvalidChoice(format!("{v} is not a contact vertex")));
        }
        if !tree.is_adjacent(u, v) || !tree.is_boundary(u) {
            return Err(Error::InvalidChoice(format!(
                "{u} is not a boundary neighbor of {v}"
            )));
        }
    }
    if let Some(v) = contact.iter().find(|v| !choice.contains_key(v)) {
        return Err(Error::InvalidChoice(format!("no pendant chosen for {v}")));
    }

    let initial = matching_number(tree);
    let mut mate: Vec<Option<usize>> = vec![None; tree.n()];
    for &(a, b) in initial.edges() {
        mate[a] = Some(b);
        mate[b] = Some(a);
    }
    for (&v, &u) in choice {
        if mate[v] == Some(u) {
            continue;
        }
        // An uncovered v would extend the matching, contradicting maximality.
        let w = mate[v].expect("maximum matching covers every contact vertex");
        // u's only neighbor is v, so u is uncovered here.
        debug_assert!(mate[u].is_none());
        mate[w] = None;
        mate[v] = Some(u);
        mate[u] = Some(v);
    }
    let edges = (0..tree.n())
        .filter_map(|a| mate[a].filter(|&b| a < b).map(|b| (a, b)))
        .collect();
    let out = Matching::from_edges(edges);
    debug_assert_eq!(out.size(), initial.size());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchingBounds {
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub contact: usize,
    pub t: i64,
    /// `contact >= t`
    pub contact_bound: bool,
    /// `n <= 2m + b - 1`
    pub order_bound: bool,
    /// `t <= min(b, m)`
    pub deficiency_bound: bool,
}

impl MatchingBounds {
    pub fn all_hold(&self) -> bool {
        self.contact_bound && self.order_bound && self.deficiency_bound
    }
}

pub fn check_matching_bounds(tree: &TreeWithBoundary) -> MatchingBounds {
    let inv = tree.invariants();
    let (n, m, b) = (inv.n as i64, inv.m as i64, inv.b as i64);
    MatchingBounds {
        n: inv.n,
        m: inv.m,
        b: inv.b,
        contact: inv.contact,
        t: inv.t,
        contact_bound: inv.contact as i64 >= inv.t,
        order_bound: n < 2 * m + b,
        deficiency_bound: inv.t <= b.min(m),
    }
}
