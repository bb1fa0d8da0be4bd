//! Finite trees with a distinguished boundary vertex set.
//!
//! A [`TreeWithBoundary`] is immutable once built. Vertices are dense
//! `0..n` integers and neighbor lists are kept sorted so every traversal
//! visits vertices in the same order.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching;

/// Unordered edge stored as `(min, max)`.
pub type Edge = (usize, usize);

pub(crate) fn normalize(edge: Edge) -> Edge {
    if edge.0 <= edge.1 {
        edge
    } else {
        (edge.1, edge.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeWithBoundary {
    adj: Vec<Vec<usize>>,
    boundary: Vec<bool>,
}

impl TreeWithBoundary {
    /// Builds a tree from an edge list. When `boundary` is `None` the
    /// boundary is the set of degree-1 vertices.
    pub fn from_edge_list(n: usize, edges: &[Edge], boundary: Option<&[usize]>) -> Result<Self> {
        let adj = adjacency(n, edges)?;
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        let mut is_boundary = vec![false; n];
        match boundary {
            Some(set) => {
                for &v in set {
                    if v >= n {
                        return Err(Error::InvalidVertex { vertex: v, n });
                    }
                    is_boundary[v] = true;
                }
            }
            None => {
                for v in 0..n {
                    is_boundary[v] = adj[v].len() == 1;
                }
            }
        }
        let tree = TreeWithBoundary {
            adj,
            boundary: is_boundary,
        };
        tree.validate_boundary()?;
        Ok(tree)
    }

    /// Tree with the leaf set as boundary.
    pub fn with_leaf_boundary(n: usize, edges: &[Edge]) -> Result<Self> {
        Self::from_edge_list(n, edges, None)
    }

    fn validate_boundary(&self) -> Result<()> {
        let b = self.boundary.iter().filter(|&&x| x).count();
        if b == self.n() {
            return Err(Error::EmptyInterior);
        }
        if b == 0 {
            return Err(Error::InvalidBoundary);
        }
        if !self.interior_connected() {
            return Err(Error::DisconnectedInterior);
        }
        Ok(())
    }

    fn interior_connected(&self) -> bool {
        let interior = self.interior();
        let Some(&start) = interior.first() else {
            return false;
        };
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] && !self.boundary[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == interior.len()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&w| w > u).map(|&w| (u, w)));
        }
        out
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.boundary[v]).collect()
    }

    /// Interior vertices in ascending order. Every vector indexed "on the
    /// interior" uses this order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.boundary[v]).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].len() == 1).collect()
    }

    /// True when the boundary is exactly the leaf set.
    pub fn has_leaf_boundary(&self) -> bool {
        (0..self.n()).all(|v| self.boundary[v] == (self.adj[v].len() == 1))
    }

    /// Interior vertices with at least one boundary neighbor.
    pub fn contact_set(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| !self.boundary[v] && self.adj[v].iter().any(|&w| self.boundary[w]))
            .collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// BFS distances and parents from `source`.
    fn bfs(&self, source: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        Ok(self.bfs(source).0)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// The unique path from `u` to `v`, endpoints included.
    pub fn geodesic_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let (_, parent) = self.bfs(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        Ok(path)
    }

    /// d(x, Y). `Y` must be nonempty.
    pub fn distance_to_set(&self, x: usize, set: &[usize]) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::InvalidParameters("distance to an empty set".into()));
        }
        let dist = self.distances_from(x)?;
        let mut best = usize::MAX;
        for &y in set {
            self.check_vertex(y)?;
            best = best.min(dist[y]);
        }
        Ok(best)
    }

    pub fn diameter(&self) -> usize {
        let (d0, _) = self.bfs(0);
        let far = argmax(&d0);
        let (d1, _) = self.bfs(far);
        d1.into_iter().max().unwrap_or(0)
    }

    /// Distance to the boundary for every vertex (multi-source BFS).
    pub fn boundary_distances(&self) -> Vec<usize> {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if self.boundary[v] {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Maximum over vertices of the distance to the boundary.
    pub fn inscribed_radius(&self) -> usize {
        self.boundary_distances().into_iter().max().unwrap_or(0)
    }

    /// Whether every boundary vertex lies at distance `r` or `r + 1` from
    /// `center`.
    pub fn is_ball_approximation(&self, center: usize, r: usize) -> Result<bool> {
        let dist = self.distances_from(center)?;
        Ok(self
            .boundary()
            .into_iter()
            .all(|w| dist[w] == r || dist[w] == r + 1))
    }

    /// One or two central vertices (midpoints of a longest path).
    pub fn centers(&self) -> Vec<usize> {
        let (d0, _) = self.bfs(0);
        let a = argmax(&d0);
        let (da, parent) = self.bfs(a);
        let b = argmax(&da);
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        let len = path.len();
        if len % 2 == 1 {
            vec![path[len / 2]]
        } else {
            let mut c = vec![path[len / 2 - 1], path[len / 2]];
            c.sort_unstable();
            c
        }
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::InvalidParameters("permutation length".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameters("not a permutation".into()));
            }
            seen[p] = true;
        }
        let edges: Vec<Edge> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let boundary: Vec<usize> = self.boundary().into_iter().map(|v| perm[v]).collect();
        Self::from_edge_list(n, &edges, Some(&boundary))
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_code(self)
    }

    pub fn invariants(&self) -> TreeInvariants {
        invariants(self)
    }
}

fn argmax(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Builds sorted adjacency lists and checks that the edges form a tree.
pub(crate) fn adjacency(n: usize, edges: &[Edge]) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(Error::InvalidVertex { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::NotATree(format!("self-loop at {u}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for (v, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotATree(format!("duplicate edge at {v}")));
        }
    }
    if n > 0 && edges.len() != n - 1 {
        return Err(Error::NotATree(format!(
            "{} edges for {} vertices",
            edges.len(),
            n
        )));
    }
    if n > 0 {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(Error::NotATree("disconnected".into()));
        }
    }
    Ok(adj)
}

/// Structural parameters of a tree with leaf boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeInvariants {
    pub n: usize,
    /// Matching number.
    pub m: usize,
    /// Number of boundary vertices.
    pub b: usize,
    /// Diameter.
    pub diameter: usize,
    /// Inscribed radius.
    pub radius: usize,
    /// Number of interior vertices with a boundary neighbor.
    pub contact: usize,
    /// `2m + b - n`.
    pub t: i64,
}

impl TreeInvariants {
    pub fn interior(&self) -> usize {
        self.n - self.b
    }
}

pub fn invariants(tree: &TreeWithBoundary) -> TreeInvariants {
    let n = tree.n();
    let m = matching::matching_number(tree).size();
    let b = tree.boundary().len();
    TreeInvariants {
        n,
        m,
        b,
        diameter: tree.diameter(),
        radius: tree.inscribed_radius(),
        contact: tree.contact_set().len(),
        t: 2 * m as i64 + b as i64 - n as i64,
    }
}

/// Byte string identifying a tree up to boundary-preserving isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Only '(' ')' '0' '1' ever appear.
        f.write_str(std::str::from_utf8(&self.0).expect("ascii code"))
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Center-rooted AHU encoding with one boundary bit per vertex. For a
/// bicentral tree the smaller of the two rooted encodings is taken.
pub fn canonical_code(tree: &TreeWithBoundary) -> CanonicalCode {
    tree.centers()
        .into_iter()
        .map(|c| CanonicalCode(rooted_code(tree, c)))
        .min()
        .expect("tree has a center")
}

fn rooted_code(tree: &TreeWithBoundary, root: usize) -> Vec<u8> {
    let n = tree.n();
    // Iterative post-order so deep paths do not recurse.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in tree.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = tree
            .neighbors(v)
            .iter()
            .filter(|&&w| parent[w] == v && w != root)
            .map(|&w| std::mem::take(&mut codes[w]))
            .collect();
        children.sort();
        let mut code = Vec::with_capacity(3 + children.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        code.push(if tree.is_boundary(v) { b'1' } else { b'0' });
        for c in children {
            code.extend_from_slice(&c);
        }
        code.push(b')');
        codes[v] = code;
    }
    std::mem::take(&mut codes[root])
}
