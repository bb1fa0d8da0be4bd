//! The Dirichlet Laplacian of a tree with boundary and its first eigenpair.
//!
//! Functions "on the interior" are slices indexed like
//! [`TreeWithBoundary::interior`], i.e. by ascending vertex id. The zero
//! extension to all of `V` puts `0` on every boundary vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{self, SymMatrix};
use crate::tree::TreeWithBoundary;

/// Residual tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Two eigenvalues of different trees closer than this are treated as equal.
pub const COMPARE_TOL: f64 = 1e-8;

/// `-Δ` restricted to the interior: degree on the diagonal, `-1` for each
/// interior-interior edge.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletMatrix {
    interior: Vec<usize>,
    matrix: SymMatrix,
}

impl DirichletMatrix {
    pub fn order(&self) -> usize {
        self.interior.len()
    }

    /// Vertex id of each row.
    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::symmetric_eigenvalues(&self.matrix)
    }
}

/// The construction cannot fail: [`TreeWithBoundary`] already guarantees a
/// nonempty connected interior.
pub fn dirichlet_matrix(tree: &TreeWithBoundary) -> DirichletMatrix {
    let interior = tree.interior();
    let mut index = vec![usize::MAX; tree.n()];
    for (i, &v) in interior.iter().enumerate() {
        index[v] = i;
    }
    let mut matrix = SymMatrix::zeros(interior.len());
    for (i, &v) in interior.iter().enumerate() {
        matrix.set(i, i, tree.degree(v) as f64);
        for &w in tree.neighbors(v) {
            if !tree.is_boundary(w) {
                matrix.set(i, index[w], -1.0);
            }
        }
    }
    DirichletMatrix { interior, matrix }
}

/// First Dirichlet eigenvalue with its positive unit eigenfunction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletSpectrum {
    #[serde(serialize_with = "json::f64")]
    pub lambda1: f64,
    #[serde(serialize_with = "json::vec_f64")]
    pub eigenfunction: Vec<f64>,
    #[serde(serialize_with = "json::f64")]
    pub residual: f64,
    /// `λ₂ - λ₁`; `None` when the interior is a single vertex.
    #[serde(serialize_with = "json::opt_f64")]
    pub gap: Option<f64>,
}

impl DirichletSpectrum {
    /// Eigenfunction extended by zero to every vertex of `tree`.
    pub fn extended(&self, tree: &TreeWithBoundary) -> Vec<f64> {
        zero_extend(tree, &self.eigenfunction)
    }
}

/// λ₁ by Sturm bisection on the Householder tridiagonal form, eigenvector by
/// inverse iteration on the original matrix.
pub fn first_eigenpair(tree: &TreeWithBoundary, tol: f64) -> Result<DirichletSpectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let dm = dirichlet_matrix(tree);
    let k = dm.order();
    let tri = linalg::tridiagonalize(dm.matrix());
    let lambda1 = tri.eigenvalue(0);
    let gap = (k > 1).then(|| tri.eigenvalue(1) - lambda1);

    let start = vec![1.0; k];
    let (mut f, residual) = linalg::inverse_iteration(dm.matrix(), lambda1, &start, tol, 16);
    if !(residual <= tol) {
        return Err(Error::NoConvergence { tol, residual });
    }
    if f[0] < 0.0 {
        for x in f.iter_mut() {
            *x = -*x;
        }
    }
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::NonPositiveEigenvector(min));
    }
    Ok(DirichletSpectrum {
        lambda1,
        eigenfunction: f,
        residual,
        gap,
    })
}

/// λ₁ with the default tolerance.
pub fn lambda1(tree: &TreeWithBoundary) -> Result<f64> {
    first_eigenpair(tree, DEFAULT_TOL).map(|s| s.lambda1)
}

pub fn zero_extend(tree: &TreeWithBoundary, f: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; tree.n()];
    for (&v, &x) in tree.interior().iter().zip(f) {
        out[v] = x;
    }
    out
}

/// `Σ_{xy ∈ E} (g(x) - g(y))²` for a function `g` on all vertices.
pub fn edge_energy(tree: &TreeWithBoundary, g: &[f64]) -> f64 {
    tree.edges()
        .into_iter()
        .map(|(x, y)| (g[x] - g[y]).powi(2))
        .sum()
}

/// Rayleigh quotient of the zero extension of `f`.
pub fn rayleigh_quotient(tree: &TreeWithBoundary, f: &[f64]) -> Result<f64> {
    let k = tree.n() - tree.boundary().len();
    if f.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: f.len(),
        });
    }
    let mass: f64 = f.iter().map(|x| x * x).sum();
    if mass == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(edge_energy(tree, &zero_extend(tree, f)) / mass)
}

/// λ₁ of the path on `len` vertices with its two leaves as boundary:
/// `2(1 - cos(π/(len-1)))`.
pub fn path_eigenvalue(len: usize) -> Result<f64> {
    if len < 3 {
        return Err(Error::TooSmall(len));
    }
    Ok(2.0 * (1.0 - (std::f64::consts::PI / (len - 1) as f64).cos()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueBounds {
    /// `4 sin²(π/(4r+2))` with `r` the inscribed radius.
    #[serde(serialize_with = "json::f64")]
    pub lower: f64,
    /// `|B| / |Ω|`.
    #[serde(serialize_with = "json::f64")]
    pub upper: f64,
}

pub fn eigenvalue_bounds(tree: &TreeWithBoundary) -> EigenvalueBounds {
    let r = tree.inscribed_radius() as f64;
    let b = tree.boundary().len() as f64;
    let k = tree.n() as f64 - b;
    EigenvalueBounds {
        lower: 4.0 * (std::f64::consts::PI / (4.0 * r + 2.0)).sin().powi(2),
        upper: b / k,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionReport {
    /// λ₁ of the original tree.
    #[serde(serialize_with = "json::f64")]
    pub lambda_extended: f64,
    /// λ₁ after demoting the chosen interior vertices to boundary.
    #[serde(serialize_with = "json::f64")]
    pub lambda_restricted: f64,
    pub holds: bool,
}

/// Demotes `demote` (interior vertices of `tree`) to boundary, keeps the
/// remaining interior with its boundary neighbors, and relabels densely in
/// ascending id order. The result has a leaf boundary.
pub fn restrict_by_demotion(tree: &TreeWithBoundary, demote: &[usize]) -> Result<TreeWithBoundary> {
    let n = tree.n();
    let mut demoted = vec![false; n];
    for &v in demote {
        if v >= n || tree.is_boundary(v) {
            return Err(Error::InvalidDemotion(format!(
                "{v} is not an interior vertex"
            )));
        }
        demoted[v] = true;
    }
    let keep_interior: Vec<bool> = (0..n)
        .map(|v| !tree.is_boundary(v) && !demoted[v])
        .collect();
    let mut keep = keep_interior.clone();
    for v in 0..n {
        if keep_interior[v] {
            for &w in tree.neighbors(v) {
                keep[w] = true;
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if keep[v] {
            index[v] = count;
            count += 1;
        }
    }
    let edges: Vec<_> = tree
        .edges()
        .into_iter()
        .filter(|&(x, y)| keep_interior[x] || keep_interior[y])
        .map(|(x, y)| (index[x], index[y]))
        .collect();
    let boundary: Vec<usize> = (0..n)
        .filter(|&v| keep[v] && !keep_interior[v])
        .map(|v| index[v])
        .collect();
    TreeWithBoundary::from_edge_list(count, &edges, Some(&boundary)).map_err(|e| match e {
        Error::EmptyInterior => Error::InvalidDemotion("no interior vertex remains".into()),
        Error::NotATree(_) | Error::DisconnectedInterior => {
            Error::InvalidDemotion("remaining interior is disconnected".into())
        }
        other => other,
    })
}

/// Checks λ₁(tree) ≤ λ₁(restricted tree): enlarging a graph with
/// separated boundary never raises the first Dirichlet eigenvalue.
pub fn extension_monotonicity_check(
    tree: &TreeWithBoundary,
    demote: &[usize],
) -> Result<ExtensionReport> {
    let restricted = restrict_by_demotion(tree, demote)?;
    let lambda_extended = lambda1(tree)?;
    let lambda_restricted = lambda1(&restricted)?;
    Ok(ExtensionReport {
        lambda_extended,
        lambda_restricted,
        holds: lambda_extended <= lambda_restricted + COMPARE_TOL,
    })
}

/// Interior vertices ordered by decreasing eigenfunction value, and whether
/// the strict decrease pattern `f(v_j) > f(v_{j+2})` for `j <= k-t+1`,
/// `f(v_j) > f(v_{j+1})` for `k-t+2 <= j <= k-1` holds (1-based, `k = |Ω|`).
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileReport {
    pub order: Vec<usize>,
    pub values: Vec<f64>,
    pub holds: bool,
}

pub fn descending_profile_check(tree: &TreeWithBoundary, t: usize) -> Result<ProfileReport> {
    let spectrum = first_eigenpair(tree, DEFAULT_TOL)?;
    let interior = tree.interior();
    let mut pairs: Vec<(usize, f64)> = interior.into_iter().zip(spectrum.eigenfunction).collect();
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let values: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let k = values.len();
    let strict = |i: usize, j: usize| values[i] - values[j] > 1e-12;
    let mut holds = true;
    for j in 1..=(k + 1).saturating_sub(t) {
        if j + 2 <= k {
            holds &= strict(j - 1, j + 1);
        }
    }
    for j in (k + 2).saturating_sub(t).max(1)..k {
        holds &= strict(j - 1, j);
    }
    Ok(ProfileReport {
        order: pairs.iter().map(|p| p.0).collect(),
        values,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Edge;

    fn path(n: usize) -> TreeWithBoundary {
        let edges: Vec<Edge> = (0..n - 1).map(|i| (i, i + 1)).collect();
        TreeWithBoundary::with_leaf_boundary(n, &edges).unwrap()
    }

    fn star(n: usize) -> TreeWithBoundary {
        let edges: Vec<Edge> = (1..n).map(|i| (0, i)).collect();
        TreeWithBoundary::with_leaf_boundary(n, &edges).unwrap()
    }

    #[test]
    fn p4_matrix() {
        let dm = dirichlet_matrix(&path(4));
        assert_eq!(dm.order(), 2);
        assert_eq!(
            (dm.get(0, 0), dm.get(0, 1), dm.get(1, 0), dm.get(1, 1)),
            (2.0, -1.0, -1.0, 2.0)
        );
    }

    #[test]
    fn star_matrix_is_scalar() {
        let dm = dirichlet_matrix(&star(6));
        assert_eq!(dm.order(), 1);
        assert_eq!(dm.get(0, 0), 5.0);
        let s = first_eigenpair(&star(6), DEFAULT_TOL).unwrap();
        assert_eq!(s.lambda1, 5.0);
        assert_eq!(s.eigenfunction, vec![1.0]);
        assert_eq!(s.gap, None);
    }

    #[test]
    fn small_paths() {
        let p4 = first_eigenpair(&path(4), DEFAULT_TOL).unwrap();
        assert!((p4.lambda1 - 1.0).abs() < 1e-14);
        let p5 = first_eigenpair(&path(5), DEFAULT_TOL).unwrap();
        let exact = 2.0 * (1.0 - (std::f64::consts::PI / 4.0).cos());
        assert!((p5.lambda1 - exact).abs() < 1e-14);
        assert!((exact - 0.585786).abs() < 1e-6);
        assert!(p5.eigenfunction.iter().all(|&x| x > 0.0));
        assert!(p5.gap.unwrap() > 0.0);
    }

    #[test]
    fn rayleigh_examples() {
        let p4 = path(4);
        assert_eq!(rayleigh_quotient(&p4, &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(rayleigh_quotient(&p4, &[-3.0, -3.0]).unwrap(), 1.0);
        assert_eq!(
            rayleigh_quotient(&p4, &[0.0, 0.0]),
            Err(Error::ZeroFunction)
        );
        assert!(matches!(
            rayleigh_quotient(&p4, &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        let s = first_eigenpair(&path(7), DEFAULT_TOL).unwrap();
        let r = rayleigh_quotient(&path(7), &s.eigenfunction).unwrap();
        assert!((r - s.lambda1).abs() < 10.0 * DEFAULT_TOL);
    }

    #[test]
    fn path_closed_form_errors_below_three() {
        assert_eq!(path_eigenvalue(2), Err(Error::TooSmall(2)));
        assert!((path_eigenvalue(4).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bounds_equality_cases() {
        let p6 = path(6);
        let b = eigenvalue_bounds(&p6);
        let lam = lambda1(&p6).unwrap();
        assert!((b.lower - lam).abs() < 1e-12);
        assert!((b.lower - 2.0 * (1.0 - (std::f64::consts::PI / 5.0).cos())).abs() < 1e-15);
        let s = star(7);
        assert_eq!(eigenvalue_bounds(&s).upper, 6.0);
        assert_eq!(lambda1(&s).unwrap(), 6.0);
    }

    #[test]
    fn demotion_of_nothing_is_equality() {
        let p = path(6);
        let r = extension_monotonicity_check(&p, &[]).unwrap();
        assert_eq!(r.lambda_extended, r.lambda_restricted);
        assert!(r.holds);
    }

    #[test]
    fn demotion_strictly_increases() {
        let p = path(6);
        let restricted = restrict_by_demotion(&p, &[1]).unwrap();
        assert_eq!(restricted.n(), 5);
        let r = extension_monotonicity_check(&p, &[1]).unwrap();
        assert!(r.lambda_restricted > r.lambda_extended + COMPARE_TOL);
        assert!((r.lambda_restricted - path_eigenvalue(5).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn invalid_demotions() {
        let p = path(6);
        assert!(matches!(
            restrict_by_demotion(&p, &[0]),
            Err(Error::InvalidDemotion(_))
        ));
        assert!(matches!(
            restrict_by_demotion(&p, &[2]),
            Err(Error::InvalidDemotion(_))
        ));
        assert!(matches!(
            restrict_by_demotion(&p, &[1, 2, 3, 4]),
            Err(Error::InvalidDemotion(_))
        ));
    }

    #[test]
    fn spectrum_json_shape() {
        let s = first_eigenpair(&path(4), DEFAULT_TOL).unwrap();
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 4);
        for k in ["lambda1", "eigenfunction", "residual", "gap"] {
            assert!(v.get(k).is_some());
        }
    }

    #[test]
    fn bad_tolerance() {
        assert!(first_eigenpair(&path(4), 0.0).is_err());
        assert!(first_eigenpair(&path(4), f64::NAN).is_err());
    }
}
