//! Independent oracles shared by the integration and acceptance tests.
//! Nothing here calls the library's matching, canonical-form or
//! enumeration code.
#![allow(dead_code, clippy::needless_range_loop)]

use dirichlet_trees::{Edge, TreeWithBoundary};
use rand::Rng;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a labeled tree.
pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<Edge> {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<Edge> {
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_edges(n, &seq)
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> TreeWithBoundary {
    TreeWithBoundary::with_leaf_boundary(n, &random_tree_edges(rng, n)).unwrap()
}

/// Largest matching by trying every edge subset, largest first.
pub fn brute_matching_number(n: usize, edges: &[Edge]) -> usize {
    let k = edges.len();
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used = vec![false; n];
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used[u] || used[v] {
                    ok = false;
                    break;
                }
                used[u] = true;
                used[v] = true;
            }
        }
        if ok {
            best = size;
        }
    }
    best
}

fn edge_set(edges: &[Edge]) -> Vec<Edge> {
    let mut s: Vec<Edge> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    s.sort_unstable();
    s
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Whether some vertex permutation maps `a` onto `b`, boundary to boundary.
pub fn brute_isomorphic(a: &TreeWithBoundary, b: &TreeWithBoundary) -> bool {
    let n = a.n();
    if n != b.n() {
        return false;
    }
    let target = edge_set(&b.edges());
    let ea = a.edges();
    let mut found = false;
    for_each_permutation(n, |p| {
        if found {
            return;
        }
        if (0..n).any(|v| a.is_boundary(v) != b.is_boundary(p[v])) {
            return;
        }
        let mapped: Vec<Edge> = ea.iter().map(|&(u, v)| (p[u], p[v])).collect();
        if edge_set(&mapped) == target {
            found = true;
        }
    });
    found
}

/// Number of automorphisms of the underlying tree.
pub fn automorphism_count(n: usize, edges: &[Edge]) -> u64 {
    let target = edge_set(edges);
    let mut count = 0;
    for_each_permutation(n, |p| {
        let mapped: Vec<Edge> = edges.iter().map(|&(u, v)| (p[u], p[v])).collect();
        if edge_set(&mapped) == target {
            count += 1;
        }
    });
    count
}

/// Unlabeled free-tree counts for orders `0..=n_max` from the rooted-tree
/// Euler transform and the dissimilarity formula.
pub fn free_tree_counts(n_max: usize) -> Vec<u64> {
    let mut r = vec![0u64; n_max + 1];
    if n_max >= 1 {
        r[1] = 1;
    }
    for n in 1..n_max {
        // r[n+1] = (1/n) Σ_{k=1..n} (Σ_{d|k} d r[d]) r[n-k+1]
        let mut s = 0u64;
        for k in 1..=n {
            let sd: u64 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u64 * r[d])
                .sum();
            s += sd * r[n - k + 1];
        }
        r[n + 1] = s / n as u64;
    }
    let mut t = vec![0u64; n_max + 1];
    for n in 1..=n_max {
        let mut pairs = 0u64;
        for i in 1..n {
            pairs += r[i] * r[n - i];
        }
        let mid = if n % 2 == 0 { r[n / 2] } else { 0 };
        t[n] = r[n] - (pairs - mid) / 2;
    }
    t
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Dense symmetric eigenvalues by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Dirichlet matrix built straight from the edge list: degree on the
/// diagonal, -1 for each interior-interior edge, rows in ascending interior
/// order.
pub fn dirichlet_dense(tree: &TreeWithBoundary) -> Vec<Vec<f64>> {
    let interior = tree.interior();
    let pos = |v: usize| interior.iter().position(|&w| w == v);
    let k = interior.len();
    let mut a = vec![vec![0.0; k]; k];
    for (i, &v) in interior.iter().enumerate() {
        a[i][i] = tree.degree(v) as f64;
    }
    for (u, v) in tree.edges() {
        if let (Some(i), Some(j)) = (pos(u), pos(v)) {
            a[i][j] -= 1.0;
            a[j][i] -= 1.0;
        }
    }
    a
}

/// Rayleigh quotient straight from the definition, `f` indexed by vertex
/// and zero on the boundary.
pub fn rayleigh_direct(tree: &TreeWithBoundary, fhat: &[f64]) -> f64 {
    let num: f64 = tree
        .edges()
        .iter()
        .map(|&(u, v)| (fhat[u] - fhat[v]).powi(2))
        .sum();
    let den: f64 = tree.interior().iter().map(|&v| fhat[v] * fhat[v]).sum();
    num / den
}

/// Diameter by BFS from every vertex.
pub fn brute_diameter(tree: &TreeWithBoundary) -> usize {
    let n = tree.n();
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in tree.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(*dist.iter().max().unwrap());
    }
    best
}
