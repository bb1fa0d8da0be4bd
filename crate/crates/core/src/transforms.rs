//! Edge rewrites that do not increase the Rayleigh quotient under ordering
//! hypotheses on the test function.
//!
//! Each rewrite leaves the interior vertex set and the function untouched,
//! so the denominator `Σ f²` is unchanged and the effect is captured by the
//! change `ΔN` of the numerator `Σ_{xy∈E} (f̂(x) - f̂(y))²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::spectral::{self, COMPARE_TOL, DEFAULT_TOL};
use crate::tree::{normalize, Edge, TreeWithBoundary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RewriteKind {
    Switching,
    Shifting,
    Jumping,
}

/// Vertices named by the rewrite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Switching {
        v1: usize,
        v2: usize,
        u1: usize,
        u2: usize,
    },
    Shifting {
        v1: usize,
        v2: usize,
        u: usize,
    },
    Jumping {
        v1: usize,
        v2: usize,
        u: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRewrite {
    pub kind: RewriteKind,
    pub removed: Vec<Edge>,
    pub inserted: Vec<Edge>,
    pub witness: Witness,
}

impl EdgeRewrite {
    /// Closed-form numerator change for a function `fhat` on all vertices:
    ///
    /// * switching: `2(f̂(v1) - f̂(u2))(f̂(u1) - f̂(v2))`
    /// * shifting: `(f̂(u) - f̂(v2))² - (f̂(u) - f̂(v1))²`
    /// * jumping: `(f(u) - f(v2))(2f(v1) - f(u) - f(v2))`
    pub fn numerator_delta(&self, fhat: &[f64]) -> f64 {
        match self.witness {
            Witness::Switching { v1, v2, u1, u2 } => {
                2.0 * (fhat[v1] - fhat[u2]) * (fhat[u1] - fhat[v2])
            }
            Witness::Shifting { v1, v2, u } => {
                (fhat[u] - fhat[v2]).powi(2) - (fhat[u] - fhat[v1]).powi(2)
            }
            Witness::Jumping { v1, v2, u } => {
                (fhat[u] - fhat[v2]) * (2.0 * fhat[v1] - fhat[u] - fhat[v2])
            }
        }
    }

    /// Whether the ordering hypothesis that guarantees `R_{T'}(f) <= R_T(f)`
    /// holds for `fhat`.
    pub fn hypothesis_holds(&self, fhat: &[f64]) -> bool {
        match self.witness {
            Witness::Switching { v1, v2, u1, u2 } => fhat[v1] >= fhat[u2] && fhat[v2] >= fhat[u1],
            Witness::Shifting { v1, v2, u } | Witness::Jumping { v1, v2, u } => {
                fhat[v1] >= fhat[v2] && fhat[v2] >= fhat[u]
            }
        }
    }
}

/// A rewrite together with the tree it produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Rewritten {
    pub rewrite: EdgeRewrite,
    pub tree: TreeWithBoundary,
}

fn violated(msg: String) -> Error {
    Error::PreconditionViolated(msg)
}

fn check_vertices(tree: &TreeWithBoundary, vs: &[usize]) -> Result<()> {
    for &v in vs {
        if v >= tree.n() {
            return Err(Error::InvalidVertex {
                vertex: v,
                n: tree.n(),
            });
        }
    }
    Ok(())
}

/// Edge multiset after removing `removed` and appending `inserted`, with no
/// validity check. The result may contain cycles or repeated edges.
#[doc(hidden)]
pub fn rewire_unchecked(tree: &TreeWithBoundary, removed: &[Edge], inserted: &[Edge]) -> Vec<Edge> {
    let removed: Vec<Edge> = removed.iter().map(|&e| normalize(e)).collect();
    let mut edges: Vec<Edge> = tree
        .edges()
        .into_iter()
        .filter(|e| !removed.contains(e))
        .collect();
    edges.extend(inserted.iter().map(|&e| normalize(e)));
    edges
}

fn apply(tree: &TreeWithBoundary, rewrite: EdgeRewrite, keep_boundary: bool) -> Result<Rewritten> {
    let edges = rewire_unchecked(tree, &rewrite.removed, &rewrite.inserted);
    let boundary = tree.boundary();
    let result = if keep_boundary && !tree.has_leaf_boundary() {
        TreeWithBoundary::from_edge_list(tree.n(), &edges, Some(&boundary))
    } else {
        TreeWithBoundary::with_leaf_boundary(tree.n(), &edges)
    };
    match result {
        Ok(t) => Ok(Rewritten { rewrite, tree: t }),
        Err(Error::NotATree(_)) => Err(Error::ResultNotTree),
        Err(e) => Err(e),
    }
}

/// Replaces `v1u1`, `v2u2` by `v1v2`, `u1u2`. Requires `v1 ≁ v2`,
/// `u2 ∈ P(v1, v2)`, `u1 ∉ P(v1, v2)`. Degrees and the boundary are
/// preserved.
pub fn switching(
    tree: &TreeWithBoundary,
    v1: usize,
    v2: usize,
    u1: usize,
    u2: usize,
) -> Result<Rewritten> {
    check_vertices(tree, &[v1, v2, u1, u2])?;
    if v1 == v2 || tree.is_adjacent(v1, v2) {
        return Err(violated(format!(
            "{v1} and {v2} must be distinct and non-adjacent"
        )));
    }
    if !tree.is_adjacent(v1, u1) || !tree.is_adjacent(v2, u2) {
        return Err(violated(format!("{v1}-{u1} and {v2}-{u2} must be edges")));
    }
    let path = tree.geodesic_path(v1, v2)?;
    if !path.contains(&u2) {
        return Err(violated(format!(
            "{u2} is not on the path from {v1} to {v2}"
        )));
    }
    if path.contains(&u1) {
        return Err(violated(format!("{u1} lies on the path from {v1} to {v2}")));
    }
    let rewrite = EdgeRewrite {
        kind: RewriteKind::Switching,
        removed: vec![normalize((v1, u1)), normalize((v2, u2))],
        inserted: vec![normalize((v1, v2)), normalize((u1, u2))],
        witness: Witness::Switching { v1, v2, u1, u2 },
    };
    apply(tree, rewrite, true)
}

/// Replaces `uv1` by `uv2`. Requires `uv1 ∈ E`, `u ∉ P(v1, v2)`,
/// `v1 ≠ v2`. The leaf set is unchanged when `v2` is interior and
/// `deg(v1) >= 3`; otherwise the result gets its own leaf boundary.
pub fn shifting(tree: &TreeWithBoundary, v1: usize, v2: usize, u: usize) -> Result<Rewritten> {
    check_vertices(tree, &[v1, v2, u])?;
    if v1 == v2 {
        return Err(violated("v1 and v2 must differ".into()));
    }
    if !tree.is_adjacent(u, v1) {
        return Err(violated(format!("{u}-{v1} must be an edge")));
    }
    if tree.geodesic_path(v1, v2)?.contains(&u) {
        return Err(violated(format!("{u} lies on the path from {v1} to {v2}")));
    }
    let rewrite = EdgeRewrite {
        kind: RewriteKind::Shifting,
        removed: vec![normalize((u, v1))],
        inserted: vec![normalize((u, v2))],
        witness: Witness::Shifting { v1, v2, u },
    };
    apply(tree, rewrite, false)
}

/// Replaces `v1u` by `v1v2`. Requires interior `v1 ≁ v2`, `uv1 ∈ E`, and
/// `u` on `P(v1, v2)` with a boundary neighbor. Interior and boundary sets
/// are preserved.
pub fn jumping(tree: &TreeWithBoundary, v1: usize, v2: usize, u: usize) -> Result<Rewritten> {
    check_vertices(tree, &[v1, v2, u])?;
    if tree.is_boundary(v1) || tree.is_boundary(v2) {
        return Err(violated(format!("{v1} and {v2} must be interior")));
    }
    if v1 == v2 || tree.is_adjacent(v1, v2) {
        return Err(violated(format!(
            "{v1} and {v2} must be distinct and non-adjacent"
        )));
    }
    if !tree.is_adjacent(u, v1) {
        return Err(violated(format!("{u}-{v1} must be an edge")));
    }
    if !tree.geodesic_path(v1, v2)?.contains(&u) {
        return Err(violated(format!(
            "{u} is not on the path from {v1} to {v2}"
        )));
    }
    if tree.contact_set().binary_search(&u).is_err() {
        return Err(violated(format!("{u} has no boundary neighbor")));
    }
    let rewrite = EdgeRewrite {
        kind: RewriteKind::Jumping,
        removed: vec![normalize((v1, u))],
        inserted: vec![normalize((v1, v2))],
        witness: Witness::Jumping { v1, v2, u },
    };
    apply(tree, rewrite, true)
}

/// Parses `"switch v1 v2 u1 u2"`, `"shift v1 v2 u"` or `"jump v1 v2 u"`
/// and applies it.
pub fn apply_move(tree: &TreeWithBoundary, text: &str) -> Result<Rewritten> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let nums: Vec<usize> = parts
        .iter()
        .skip(1)
        .map(|p| p.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(format!("move {text:?}: {e}")))?;
    match (parts.first().copied(), nums.as_slice()) {
        (Some("switch"), &[v1, v2, u1, u2]) => switching(tree, v1, v2, u1, u2),
        (Some("shift"), &[v1, v2, u]) => shifting(tree, v1, v2, u),
        (Some("jump"), &[v1, v2, u]) => jumping(tree, v1, v2, u),
        _ => Err(Error::Parse(format!(
            "move {text:?}: expected \"switch v1 v2 u1 u2\", \"shift v1 v2 u\" or \"jump v1 v2 u\""
        ))),
    }
}

/// Every switching `(v1, v2, u1, u2)` whose preconditions hold. For a given
/// `v1, v2` the vertex `u2` is forced: it is the neighbor of `v2` on the
/// path.
pub fn admissible_switchings(tree: &TreeWithBoundary) -> Vec<(usize, usize, usize, usize)> {
    let n = tree.n();
    let mut out = Vec::new();
    for v1 in 0..n {
        for v2 in 0..n {
            if v1 == v2 || tree.is_adjacent(v1, v2) {
                continue;
            }
            let path = tree.geodesic_path(v1, v2).expect("valid vertices");
            let u2 = path[path.len() - 2];
            for &u1 in tree.neighbors(v1) {
                if !path.contains(&u1) {
                    out.push((v1, v2, u1, u2));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchingOutcome {
    pub v1: usize,
    pub v2: usize,
    pub u1: usize,
    pub u2: usize,
    #[serde(serialize_with = "json::f64")]
    pub lambda_after: f64,
    /// Larger of the two hypothesis margins `f̂(v1)-f̂(u2)`, `f̂(v2)-f̂(u1)`.
    #[serde(serialize_with = "json::f64")]
    pub margin: f64,
    /// `u1` and `v2` are both boundary vertices: the move only swaps two
    /// leaves, so `T'` is `T` relabeled and λ₁ cannot drop.
    pub leaf_exchange: bool,
    pub strict_expected: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchingReport {
    #[serde(serialize_with = "json::f64")]
    pub lambda_before: f64,
    pub outcomes: Vec<SwitchingOutcome>,
}

impl SwitchingReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.ok)
    }
}

/// Thresholds for [`eigenvalue_after_switching_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchingCheck {
    /// Allowed numerical increase of λ₁.
    pub slack: f64,
    /// A hypothesis margin above this demands a strict decrease.
    pub strict_margin: f64,
}

impl Default for SwitchingCheck {
    fn default() -> Self {
        SwitchingCheck {
            slack: DEFAULT_TOL,
            strict_margin: 1e-6,
        }
    }
}

/// Applies every admissible switching whose hypothesis holds for the
/// positive eigenfunction of λ₁(tree) and checks λ₁(T') ≤ λ₁(T), strictly
/// when a hypothesis inequality is strict.
///
/// Leaf exchanges are exempt from the strict check. If λ₁(T') = λ₁(T) then
/// `f` is an eigenfunction of `T'`, and comparing the eigen-equations at
/// interior vertices forces `f̂(u1) = f̂(v2)` and, unless `u1` and `v2` are
/// both boundary, `f̂(v1) = f̂(u2)`. So leaf exchanges are the only moves
/// where one strict hypothesis still leaves λ₁ unchanged.
pub fn eigenvalue_after_switching_check(
    tree: &TreeWithBoundary,
    check: SwitchingCheck,
) -> Result<SwitchingReport> {
    let spectrum = spectral::first_eigenpair(tree, DEFAULT_TOL)?;
    let fhat = spectrum.extended(tree);
    let mut outcomes = Vec::new();
    for (v1, v2, u1, u2) in admissible_switchings(tree) {
        let margin_a = fhat[v1] - fhat[u2];
        let margin_b = fhat[v2] - fhat[u1];
        if margin_a < 0.0 || margin_b < 0.0 {
            continue;
        }
        let after = switching(tree, v1, v2, u1, u2)?;
        let lambda_after = spectral::lambda1(&after.tree)?;
        let margin = margin_a.max(margin_b);
        let leaf_exchange = tree.is_boundary(u1) && tree.is_boundary(v2);
        let strict_expected = margin > check.strict_margin && !leaf_exchange;
        let ok = if strict_expected {
            lambda_after < spectrum.lambda1
        } else {
            lambda_after <= spectrum.lambda1 + check.slack
        };
        outcomes.push(SwitchingOutcome {
            v1,
            v2,
            u1,
            u2,
            lambda_after,
            margin,
            leaf_exchange,
            strict_expected,
            ok,
        });
    }
    Ok(SwitchingReport {
        lambda_before: spectrum.lambda1,
        outcomes,
    })
}

/// λ₁ comparison helper: `a` is below `b` beyond the tie tolerance.
pub fn strictly_below(a: f64, b: f64) -> bool {
    a < b - COMPARE_TOL
}
