//! Exhaustive free-tree generation and extremal certificates.
//!
//! Free trees are produced by the Wright–Richmond–Odlyzko–McKay successor
//! on canonical level sequences, one representative per isomorphism class,
//! in a fixed order. Verification eigensolves every member of a class,
//! keeps all trees within `tol` of the minimum, and compares their
//! canonical codes to the predicted minimizers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{self, PredictionStatus};
use crate::json;
use crate::spectral;
use crate::tree::{CanonicalCode, Edge, TreeInvariants, TreeWithBoundary};

/// Default largest order enumerated.
pub const DEFAULT_CAP: usize = 16;
/// No configuration may raise the cap above this.
pub const HARD_CAP: usize = 20;

/// Edge lists of all free trees on `n` vertices (`n >= 1`), one per
/// isomorphism class.
#[derive(Debug, Clone)]
pub struct FreeTreeEdges {
    layout: Option<Vec<usize>>,
}

impl FreeTreeEdges {
    pub fn new(n: usize) -> Self {
        let layout = match n {
            0 => None,
            _ => {
                let mut l: Vec<usize> = (0..=n / 2).collect();
                l.extend(1..n.div_ceil(2));
                Some(l)
            }
        };
        FreeTreeEdges { layout }
    }
}

impl Iterator for FreeTreeEdges {
    type Item = Vec<Edge>;

    fn next(&mut self) -> Option<Vec<Edge>> {
        let current = self.layout.take()?;
        if current.len() == 1 {
            return Some(Vec::new());
        }
        let tree = next_free_tree(current);
        let edges = layout_to_edges(&tree);
        self.layout = next_rooted_tree(&tree, None);
        Some(edges)
    }
}

/// Successor of a level sequence among rooted trees, or `None` after the
/// last one. `p` overrides the position that is incremented.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits a level sequence into the first subtree of the root (levels
/// shifted down by one) and the rest of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let second_one = layout
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == 1)
        .nth(1)
        .map(|(i, _)| i)
        .unwrap_or(layout.len());
    let left = layout[1..second_one].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[second_one..]);
    (left, rest)
}

/// Returns `candidate` if it is the canonical (centroid-rooted) layout of a
/// free tree, otherwise jumps to the next layout that is.
fn next_free_tree(candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&candidate);
    let left_height = *left.iter().max().expect("nonempty");
    let rest_height = *rest.iter().max().expect("nonempty");
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p)).expect("p >= 1");
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = *new_left.iter().max().expect("nonempty");
        let len = next.len();
        for (i, level) in (1..=h + 1).enumerate() {
            next[len - (h + 1) + i] = level;
        }
    }
    next
}

fn layout_to_edges(layout: &[usize]) -> Vec<Edge> {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&j) = stack.last() {
            edges.push((j, i));
        }
        stack.push(i);
    }
    edges
}

/// All free trees on `n` vertices with the leaf set as boundary.
pub fn free_trees(n: usize, cap: usize) -> Result<impl Iterator<Item = TreeWithBoundary>> {
    check_cap(n, cap)?;
    if n < 3 {
        return Err(Error::InvalidParameters(format!(
            "trees with leaf boundary need n >= 3, got {n}"
        )));
    }
    Ok(FreeTreeEdges::new(n).map(move |edges| {
        TreeWithBoundary::with_leaf_boundary(n, &edges).expect("generator emits trees")
    }))
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// One of the tree classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKey {
    /// Order `n`, matching number `m`.
    NM { n: usize, m: usize },
    /// Order `n`, matching number `m`, `b` leaves.
    NMB { n: usize, m: usize, b: usize },
    /// Order `n`, `k` interior vertices.
    NK { n: usize, k: usize },
    /// Order `n`, diameter `d`.
    ND { n: usize, d: usize },
}

impl ClassKey {
    pub fn order(&self) -> usize {
        match *self {
            ClassKey::NM { n, .. }
            | ClassKey::NMB { n, .. }
            | ClassKey::NK { n, .. }
            | ClassKey::ND { n, .. } => n,
        }
    }

    /// `t = 2m + b - n` for NMB keys.
    pub fn deficiency(&self) -> Option<i64> {
        match *self {
            ClassKey::NMB { n, m, b } => Some(2 * m as i64 + b as i64 - n as i64),
            _ => None,
        }
    }

    /// Parameter ranges in which the class is nonempty.
    pub fn is_feasible(&self) -> bool {
        match *self {
            ClassKey::NM { n, m } => n >= 3 && m >= 1 && 2 * m <= n,
            ClassKey::NMB { n, m, b } => {
                let t = self.deficiency().unwrap_or(0);
                n >= 3 && m >= 1 && b >= 2 && b < n && t >= 1 && t <= b.min(m) as i64
            }
            ClassKey::NK { n, k } => n >= 3 && k >= 1 && k + 2 <= n,
            ClassKey::ND { n, d } => n >= 3 && d >= 2 && d < n,
        }
    }

    pub fn contains(&self, inv: &TreeInvariants) -> bool {
        match *self {
            ClassKey::NM { n, m } => inv.n == n && inv.m == m,
            ClassKey::NMB { n, m, b } => inv.n == n && inv.m == m && inv.b == b,
            ClassKey::NK { n, k } => inv.n == n && inv.interior() == k,
            ClassKey::ND { n, d } => inv.n == n && inv.diameter == d,
        }
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassKey::NM { n, m } => write!(f, "NM {n} {m}"),
            ClassKey::NMB { n, m, b } => write!(f, "NMB {n} {m} {b}"),
            ClassKey::NK { n, k } => write!(f, "NK {n} {k}"),
            ClassKey::ND { n, d } => write!(f, "ND {n} {d}"),
        }
    }
}

impl FromStr for ClassKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let nums: Vec<usize> = parts
            .iter()
            .skip(1)
            .map(|p| p.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("class key {s:?}: {e}")))?;
        let kind = parts.first().map(|k| k.to_ascii_uppercase());
        match (kind.as_deref(), nums.as_slice()) {
            (Some("NM"), &[n, m]) => Ok(ClassKey::NM { n, m }),
            (Some("NMB"), &[n, m, b]) => Ok(ClassKey::NMB { n, m, b }),
            (Some("NK"), &[n, k]) => Ok(ClassKey::NK { n, k }),
            (Some("ND"), &[n, d]) => Ok(ClassKey::ND { n, d }),
            _ => Err(Error::Parse(format!(
                "class key {s:?}: expected \"NM n m\", \"NMB n m b\", \"NK n k\" or \"ND n D\""
            ))),
        }
    }
}

impl Serialize for ClassKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The four class keys a tree belongs to.
pub fn classify(tree: &TreeWithBoundary) -> Vec<ClassKey> {
    let inv = tree.invariants();
    vec![
        ClassKey::NM { n: inv.n, m: inv.m },
        ClassKey::NMB {
            n: inv.n,
            m: inv.m,
            b: inv.b,
        },
        ClassKey::NK {
            n: inv.n,
            k: inv.interior(),
        },
        ClassKey::ND {
            n: inv.n,
            d: inv.diameter,
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "EMPTY_CLASS")]
    EmptyClass,
    #[serde(rename = "CONJECTURE-MATCH")]
    ConjectureMatch,
    #[serde(rename = "CONJECTURE-MISMATCH")]
    ConjectureMismatch,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Match | Verdict::ConjectureMatch)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::EmptyClass => "EMPTY_CLASS",
            Verdict::ConjectureMatch => "CONJECTURE-MATCH",
            Verdict::ConjectureMismatch => "CONJECTURE-MISMATCH",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalCertificate {
    pub key: ClassKey,
    pub population: usize,
    #[serde(serialize_with = "json::opt_f64")]
    pub lambda_min: Option<f64>,
    pub minimizers: Vec<CanonicalCode>,
    pub predicted: Vec<CanonicalCode>,
    pub verdict: Verdict,
    #[serde(serialize_with = "json::f64")]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Eigenvalues within `tol` of the minimum count as minimizers.
    pub tol: f64,
    pub cap: usize,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tol: spectral::COMPARE_TOL,
            cap: DEFAULT_CAP,
            jobs: 1,
        }
    }
}

/// A tree with everything a certificate needs.
#[derive(Debug, Clone)]
pub struct TreeRecord {
    pub tree: TreeWithBoundary,
    pub code: CanonicalCode,
    pub invariants: TreeInvariants,
    pub lambda1: f64,
}

fn record(tree: TreeWithBoundary) -> Result<TreeRecord> {
    let lambda1 = spectral::lambda1(&tree)?;
    Ok(TreeRecord {
        code: tree.canonical_code(),
        invariants: tree.invariants(),
        lambda1,
        tree,
    })
}

/// Records for every free tree on `n` vertices, sorted by canonical code.
/// Eigensolves run on `config.jobs` threads.
pub fn tree_records(n: usize, config: &VerifyConfig) -> Result<Vec<TreeRecord>> {
    let trees: Vec<TreeWithBoundary> = free_trees(n, config.cap)?.collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let mut records = pool.install(|| {
        trees
            .into_par_iter()
            .with_min_len(64)
            .map(record)
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(records)
}

/// Certificate for `key` from precomputed records of order `key.order()`.
pub fn certify(key: ClassKey, records: &[TreeRecord], tol: f64) -> Result<ExtremalCertificate> {
    let empty = |predicted| ExtremalCertificate {
        key,
        population: 0,
        lambda_min: None,
        minimizers: Vec::new(),
        predicted,
        verdict: Verdict::EmptyClass,
        tol,
    };
    if !key.is_feasible() {
        return Ok(empty(Vec::new()));
    }
    let prediction = families::predicted_extremal(&key)?;
    let predicted: Vec<CanonicalCode> = prediction
        .trees
        .iter()
        .map(TreeWithBoundary::canonical_code)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let members: Vec<&TreeRecord> = records
        .iter()
        .filter(|r| key.contains(&r.invariants))
        .collect();
    if members.is_empty() {
        return Ok(empty(predicted));
    }
    let lambda_min = members
        .iter()
        .map(|r| r.lambda1)
        .fold(f64::INFINITY, f64::min);
    let minimizers: Vec<CanonicalCode> = members
        .iter()
        .filter(|r| r.lambda1 <= lambda_min + tol)
        .map(|r| r.code.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let verdict = match prediction.status {
        PredictionStatus::Theorem if minimizers == predicted => Verdict::Match,
        PredictionStatus::Theorem => Verdict::Mismatch,
        PredictionStatus::Conjecture if minimizers.iter().all(|c| predicted.contains(c)) => {
            Verdict::ConjectureMatch
        }
        PredictionStatus::Conjecture => Verdict::ConjectureMismatch,
    };
    Ok(ExtremalCertificate {
        key,
        population: members.len(),
        lambda_min: Some(lambda_min),
        minimizers,
        predicted,
        verdict,
        tol,
    })
}

/// Enumerates the class of `key` and certifies its minimizers. Infeasible
/// keys yield an `EMPTY_CLASS` certificate.
pub fn verify_class(key: ClassKey, config: &VerifyConfig) -> Result<ExtremalCertificate> {
    let n = key.order();
    check_cap(n, config.cap)?;
    if !key.is_feasible() || n < 3 {
        return certify(key, &[], config.tol);
    }
    let records = tree_records(n, config)?;
    certify(key, &records, config.tol)
}

/// Which class family a sweep checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// Fixed order and matching number.
    MatchingNumber,
    /// Fixed order, matching number and leaf count.
    MatchingAndLeaves,
    /// Fixed order and interior count (comets).
    InteriorCount,
    /// Diameter 4 (forks).
    DiameterFour,
    /// Every diameter; `D > 4` is checked against the conjectured forks/comets.
    Diameter,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "matching" | "t13" => Ok(Theorem::MatchingNumber),
            "matching-leaves" | "t14" => Ok(Theorem::MatchingAndLeaves),
            "interior" | "kloburstel" => Ok(Theorem::InteriorCount),
            "diameter4" | "d4" => Ok(Theorem::DiameterFour),
            "diameter" => Ok(Theorem::Diameter),
            _ => Err(Error::Parse(format!("unknown sweep {s:?}"))),
        }
    }
}

/// The feasible keys of `theorem` at order `n`.
pub fn sweep_keys(theorem: Theorem, n: usize) -> Vec<ClassKey> {
    let keys: Vec<ClassKey> = match theorem {
        Theorem::MatchingNumber => (1..=n / 2).map(|m| ClassKey::NM { n, m }).collect(),
        Theorem::MatchingAndLeaves => (1..=n / 2)
            .flat_map(|m| (2..n).map(move |b| ClassKey::NMB { n, m, b }))
            .collect(),
        Theorem::InteriorCount => (1..n.saturating_sub(1))
            .map(|k| ClassKey::NK { n, k })
            .collect(),
        Theorem::DiameterFour => vec![ClassKey::ND { n, d: 4 }],
        Theorem::Diameter => (2..n).map(|d| ClassKey::ND { n, d }).collect(),
    };
    keys.into_iter().filter(ClassKey::is_feasible).collect()
}

/// Certificates for every feasible key of `theorem` with order up to
/// `n_max`. Each order is enumerated and eigensolved once.
pub fn verify_theorem_sweep(
    theorem: Theorem,
    n_max: usize,
    config: &VerifyConfig,
) -> Result<Vec<ExtremalCertificate>> {
    check_cap(n_max, config.cap)?;
    let mut out = Vec::new();
    for n in 3..=n_max {
        let keys = sweep_keys(theorem, n);
        if keys.is_empty() {
            continue;
        }
        let records = tree_records(n, config)?;
        for key in keys {
            out.push(certify(key, &records, config.tol)?);
        }
    }
    Ok(out)
}
