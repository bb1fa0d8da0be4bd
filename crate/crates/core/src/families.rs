//! Constructors for the named tree families and the cubic factor of the
//! characteristic polynomial of a radius-2 fork.

use serde::Serialize;

use crate::enumerate::{self, ClassKey};
use crate::error::{Error, Result};
use crate::json;
use crate::tree::{Edge, TreeWithBoundary};

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

pub fn build_path(n: usize) -> Result<TreeWithBoundary> {
    if n < 3 {
        return Err(invalid(format!("path needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<Edge> = (0..n - 1).map(|i| (i, i + 1)).collect();
    TreeWithBoundary::with_leaf_boundary(n, &edges)
}

/// `K_{1,n-1}` with center 0.
pub fn build_star(n: usize) -> Result<TreeWithBoundary> {
    if n < 3 {
        return Err(invalid(format!("star needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<Edge> = (1..n).map(|i| (0, i)).collect();
    TreeWithBoundary::with_leaf_boundary(n, &edges)
}

/// `T(p, q, b)`: a path `u_1 .. u_{p+q}` with one pendant on each of
/// `u_1, u_{p+2}, .., u_{p+q-1}` and `b + 1 - q` pendants on `u_{p+q}`.
///
/// Path vertices get ids `0..p+q`, pendants follow in that order. The tree
/// has `p + q + b` vertices, `b` leaves, and matching number `q + ⌊p/2⌋`.
/// `T(0, 1, b)` is the star with `b` leaves.
pub fn build_t(p: usize, q: usize, b: usize) -> Result<TreeWithBoundary> {
    if q == 1 {
        if p != 0 || b < 2 {
            return Err(invalid(format!(
                "T({p},1,{b}) is only defined as the star T(0,1,b), b >= 2"
            )));
        }
        return build_star(b + 1);
    }
    if q < 2 || b < q {
        return Err(invalid(format!("T({p},{q},{b}) needs b >= q >= 2")));
    }
    let spine = p + q;
    let mut edges: Vec<Edge> = (0..spine - 1).map(|i| (i, i + 1)).collect();
    let mut next = spine;
    let mut attach = |host: usize, count: usize, edges: &mut Vec<Edge>| {
        for _ in 0..count {
            edges.push((host, next));
            next += 1;
        }
    };
    attach(0, 1, &mut edges);
    // u_{p+2} .. u_{p+q-1} are ids p+1 .. p+q-2
    for host in p + 1..spine - 1 {
        attach(host, 1, &mut edges);
    }
    attach(spine - 1, b + 1 - q, &mut edges);
    TreeWithBoundary::with_leaf_boundary(spine + b, &edges)
}

/// The comet on `n` vertices with `k` interior vertices: a star with a
/// path tail, `T(k-2, 2, n-k)` for `k >= 2`, the star for `k = 1`.
pub fn build_comet(n: usize, k: usize) -> Result<TreeWithBoundary> {
    if n < 3 || k < 1 || k > n - 2 {
        return Err(invalid(format!(
            "comet needs n >= 3 and 1 <= k <= n-2, got n={n} k={k}"
        )));
    }
    if k == 1 {
        build_star(n)
    } else {
        build_t(k - 2, 2, n - k)
    }
}

/// Generalized fork `GF(a, r, n)`: `a` paths of length `r` glued at a hub
/// (id 0), plus `n - a·r - 1` extra leaves on the vertex at distance `r-1`
/// along the first path. Arm `j` occupies ids `1 + j·r ..= (j+1)·r` by
/// increasing distance from the hub.
///
/// The extra-leaf count makes the order exactly `n`; for `r = 2` the
/// Dirichlet matrix is the `D_k` matrix with `k = a + 1`.
pub fn build_fork(a: usize, r: usize, n: usize) -> Result<TreeWithBoundary> {
    if a < 2 || r < 1 || n < a * r + 1 {
        return Err(invalid(format!(
            "GF({a},{r},{n}) needs a >= 2, r >= 1, n >= a*r + 1"
        )));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for arm in 0..a {
        let mut prev = 0;
        for d in 1..=r {
            let id = 1 + arm * r + (d - 1);
            edges.push((prev, id));
            prev = id;
        }
    }
    let host = if r == 1 { 0 } else { r - 1 };
    for extra in a * r + 1..n {
        edges.push((host, extra));
    }
    TreeWithBoundary::with_leaf_boundary(n, &edges)
}

/// The monic cubic `P(λ, k)` with `det(λI - D_k) = (λ-2)^{k-3} P(λ, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForkPolynomial {
    pub k: i64,
    pub n: i64,
    /// Highest degree first.
    pub coefficients: [i64; 4],
}

impl ForkPolynomial {
    fn unchecked(k: i64, n: i64) -> Self {
        ForkPolynomial {
            k,
            n,
            coefficients: [
                1,
                k - n - 4,
                -2 * k * k + k * n + 2 * k + n + 2,
                2 * k * k - k * n - 3 * k + 2,
            ],
        }
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, &c| acc * lambda + c as f64)
    }

    /// Smallest root, which lies in `(0, 1)` because `P(0) < 0 < P(1)`.
    pub fn smallest_root(&self) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        debug_assert!(self.eval(lo) < 0.0 && self.eval(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All three real roots in ascending order, by bisection between the
    /// critical points of the cubic.
    pub fn roots(&self) -> [f64; 3] {
        let [_, c2, c1, _] = self.coefficients.map(|c| c as f64);
        // P'(λ) = 3λ² + 2 c2 λ + c1
        let disc = (4.0 * c2 * c2 - 12.0 * c1).max(0.0).sqrt();
        let x1 = (-2.0 * c2 - disc) / 6.0;
        let x2 = (-2.0 * c2 + disc) / 6.0;
        let span = 1.0
            + self
                .coefficients
                .iter()
                .map(|c| c.abs() as f64)
                .sum::<f64>();
        [
            bisect_root(|x| self.eval(x), -span, x1),
            bisect_root(|x| self.eval(x), x1, x2),
            bisect_root(|x| self.eval(x), x2, span),
        ]
    }
}

fn bisect_root(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let rising = g(hi) >= g(lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let below = if rising { g(mid) < 0.0 } else { g(mid) > 0.0 };
        if below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `P(λ, k)` for a fork with `k` interior vertices on `n` vertices.
pub fn fork_char_poly(k: i64, n: i64) -> Result<ForkPolynomial> {
    if k < 3 || n < 2 * k - 1 {
        return Err(invalid(format!(
            "P(λ,k) needs k >= 3 and n >= 2k-1, got k={k} n={n}"
        )));
    }
    Ok(ForkPolynomial::unchecked(k, n))
}

/// Both sides of `P(λ,k+1) - P(λ,k) = (λ-1)(λ-(4k-n-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolyDifference {
    #[serde(serialize_with = "json::f64")]
    pub lhs: f64,
    #[serde(serialize_with = "json::f64")]
    pub rhs: f64,
}

impl PolyDifference {
    pub fn agrees(&self, tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= tol
    }
}

pub fn fork_poly_difference(k: i64, n: i64, lambda: f64) -> PolyDifference {
    let lhs = ForkPolynomial::unchecked(k + 1, n).eval(lambda)
        - ForkPolynomial::unchecked(k, n).eval(lambda);
    let rhs = (lambda - 1.0) * (lambda - (4 * k - n - 1) as f64);
    PolyDifference { lhs, rhs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PredictionStatus {
    /// Proven characterization.
    Theorem,
    /// Open problem; the candidates are conjectured minimizers.
    Conjecture,
}

#[derive(Debug, Clone)]
pub struct Prediction {
    pub trees: Vec<TreeWithBoundary>,
    pub status: PredictionStatus,
}

/// The predicted minimizers of λ₁ in the class `key`.
pub fn predicted_extremal(key: &ClassKey) -> Result<Prediction> {
    if !key.is_feasible() {
        return Err(Error::EmptyClass(key.to_string()));
    }
    let theorem = |trees| {
        Ok(Prediction {
            trees,
            status: PredictionStatus::Theorem,
        })
    };
    match *key {
        ClassKey::NM { n, m } => {
            if m == 1 {
                theorem(vec![build_t(0, 1, n - 1)?])
            } else if n > 2 * m {
                theorem(vec![build_t(2 * m - 3, 2, n + 1 - 2 * m)?])
            } else {
                theorem(vec![build_t(2 * m - 4, 2, 2)?])
            }
        }
        ClassKey::NMB { n, m, b } => {
            let t = key.deficiency().expect("NMB key");
            let t = t as usize;
            if m == 1 {
                theorem(vec![build_t(0, 1, n - 1)?])
            } else if t == 1 {
                theorem(vec![build_t(2 * m - 3, 2, b)?])
            } else if t < m {
                theorem(vec![build_t(2 * m - 2 * t, t, b)?])
            } else if t == b {
                theorem(one_leaf_per_interior(m)?)
            } else {
                theorem(vec![build_t(0, t, b)?])
            }
        }
        ClassKey::NK { n, k } => theorem(vec![build_comet(n, k)?]),
        ClassKey::ND { n, d } => match d {
            2 => theorem(vec![build_star(n)?]),
            3 => theorem(vec![build_comet(n, 2)?]),
            4 => theorem(vec![build_fork((n - 1) / 2, 2, n)?]),
            _ => {
                let r = d / 2;
                let mut trees = vec![build_fork((n - 1) / r, r, n)?, build_comet(n, d - 1)?];
                trees.retain(|t| t.diameter() == d);
                Ok(Prediction {
                    trees,
                    status: PredictionStatus::Conjecture,
                })
            }
        },
    }
}

/// Every tree on `2m` vertices whose `m` interior vertices each carry
/// exactly one leaf: one pendant attached to each vertex of every free tree
/// on `m` vertices.
pub fn one_leaf_per_interior(m: usize) -> Result<Vec<TreeWithBoundary>> {
    if m < 2 {
        return Err(invalid(format!(
            "need at least 2 interior vertices, got {m}"
        )));
    }
    enumerate::FreeTreeEdges::new(m)
        .map(|mut edges| {
            edges.extend((0..m).map(|v| (v, m + v)));
            TreeWithBoundary::with_leaf_boundary(2 * m, &edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral;

    #[test]
    fn t_022_is_p4() {
        let t = build_t(0, 2, 2).unwrap();
        assert_eq!(t.canonical_code(), build_path(4).unwrap().canonical_code());
    }

    #[test]
    fn t_323_shape() {
        let t = build_t(3, 2, 3).unwrap();
        let inv = t.invariants();
        assert_eq!(
            (inv.n, inv.b, inv.m, inv.interior(), inv.diameter, inv.t),
            (8, 3, 3, 5, 6, 1)
        );
    }

    #[test]
    fn t_star_convention() {
        for n in 3..9 {
            let t = build_t(0, 1, n - 1).unwrap();
            assert_eq!(t.canonical_code(), build_star(n).unwrap().canonical_code());
        }
        assert!(build_t(1, 1, 3).is_err());
        assert!(build_t(0, 3, 2).is_err());
        assert!(build_t(0, 0, 2).is_err());
    }

    #[test]
    fn t_323_path_between_extreme_pendants() {
        let t = build_t(3, 2, 3).unwrap();
        // pendant at u1 is id 5, pendants at u5 are 6 and 7
        let p = t.geodesic_path(5, 6).unwrap();
        assert_eq!(p.len() - 1, 6);
    }

    #[test]
    fn comets() {
        let c = build_comet(5, 1).unwrap();
        assert_eq!(c.canonical_code(), build_star(5).unwrap().canonical_code());
        let c = build_comet(7, 3).unwrap();
        assert_eq!(
            c.canonical_code(),
            build_t(1, 2, 4).unwrap().canonical_code()
        );
        assert!(build_comet(7, 6).is_err());
        assert!(build_comet(7, 0).is_err());
    }

    #[test]
    fn fork_gf225_is_p5() {
        let f = build_fork(2, 2, 5).unwrap();
        assert_eq!(f.canonical_code(), build_path(5).unwrap().canonical_code());
    }

    #[test]
    fn fork_gf329_matrix() {
        let f = build_fork(3, 2, 9).unwrap();
        let dm = spectral::dirichlet_matrix(&f);
        assert_eq!(dm.order(), 4);
        let diag: Vec<f64> = (0..4).map(|i| dm.get(i, i)).collect();
        assert_eq!(diag, vec![3.0, 4.0, 2.0, 2.0]);
        let hub: Vec<f64> = (0..4).map(|j| dm.get(0, j)).collect();
        assert_eq!(hub, vec![3.0, -1.0, -1.0, -1.0]);
        for i in 1..4 {
            for j in 1..4 {
                if i != j {
                    assert_eq!(dm.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn fork_rejects_small_order() {
        assert!(build_fork(3, 2, 6).is_err());
        assert!(build_fork(1, 2, 9).is_err());
    }

    #[test]
    fn fork_polynomial_k4_n9() {
        let p = fork_char_poly(4, 9).unwrap();
        assert_eq!(p.coefficients, [1, -9, 23, -14]);
        assert_eq!(p.eval(1.0), 1.0);
        assert!(fork_char_poly(2, 9).is_err());
        assert!(fork_char_poly(5, 8).is_err());
    }

    #[test]
    fn fork_polynomial_endpoint_signs() {
        for k in 3..10i64 {
            for n in 2 * k - 1..30 {
                let p = fork_char_poly(k, n).unwrap();
                assert!(p.eval(0.0) < 0.0);
                assert_eq!(p.eval(1.0), 1.0);
                let r = p.smallest_root();
                assert!(r > 0.0 && r < 1.0);
            }
        }
    }

    #[test]
    fn difference_vanishes_at_factors() {
        for (k, n) in [(3, 7), (4, 9), (5, 12)] {
            let d = fork_poly_difference(k, n, 1.0);
            assert_eq!((d.lhs, d.rhs), (0.0, 0.0));
            let d = fork_poly_difference(k, n, (4 * k - n - 1) as f64);
            assert_eq!((d.lhs, d.rhs), (0.0, 0.0));
        }
    }

    #[test]
    fn predictions_for_matching_classes() {
        let p = predicted_extremal(&ClassKey::NM { n: 8, m: 3 }).unwrap();
        assert_eq!(p.trees.len(), 1);
        assert_eq!(
            p.trees[0].canonical_code(),
            build_t(3, 2, 3).unwrap().canonical_code()
        );
        let p = predicted_extremal(&ClassKey::NM { n: 6, m: 3 }).unwrap();
        assert_eq!(
            p.trees[0].canonical_code(),
            build_path(6).unwrap().canonical_code()
        );
        let p = predicted_extremal(&ClassKey::NMB { n: 8, m: 4, b: 4 }).unwrap();
        assert_eq!(p.trees.len(), 2);
        assert!(matches!(
            predicted_extremal(&ClassKey::NM { n: 5, m: 3 }),
            Err(Error::EmptyClass(_))
        ));
    }

    #[test]
    fn conjecture_candidates_are_flagged() {
        let p = predicted_extremal(&ClassKey::ND { n: 11, d: 6 }).unwrap();
        assert_eq!(p.status, PredictionStatus::Conjecture);
        assert!(p.trees.iter().all(|t| t.diameter() == 6));
        let p = predicted_extremal(&ClassKey::ND { n: 9, d: 4 }).unwrap();
        assert_eq!(p.status, PredictionStatus::Theorem);
    }
}
