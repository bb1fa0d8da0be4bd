//! Dense symmetric eigenvalue routines for small matrices: Householder
//! tridiagonalization, Sturm-sequence bisection, inverse iteration.

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let order = rows.len();
        let mut m = Self::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), order, "square matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * order + j] = x;
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.order + j] = x;
        self.data[j * self.order + i] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// x^T A x
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.order {
            let radius: f64 = (0..self.order)
                .filter(|&j| j != i)
                .map(|j| self.get(i, j).abs())
                .sum();
            lo = lo.min(self.get(i, i) - radius);
            hi = hi.max(self.get(i, i) + radius);
        }
        (lo, hi)
    }
}

/// Symmetric tridiagonal matrix: `diag[0..n]`, `off[0..n-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Reduces `a` to tridiagonal form with Householder reflections. The
/// result is orthogonally similar to `a`.
pub fn tridiagonalize(a: &SymMatrix) -> Tridiagonal {
    let n = a.order();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| m[i][k]).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if x[0] > 0.0 { -norm } else { norm };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for t in v.iter_mut() {
            *t /= vnorm;
        }
        let sub = n - k - 1;
        // p = A_sub v, q = p - (v.p) v, A_sub -= 2 (v q^T + q v^T)
        let p: Vec<f64> = (0..sub)
            .map(|i| (0..sub).map(|j| m[k + 1 + i][k + 1 + j] * v[j]).sum())
            .collect();
        let kdot: f64 = v.iter().zip(&p).map(|(a, b)| a * b).sum();
        let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kdot * vi).collect();
        for i in 0..sub {
            for j in 0..sub {
                m[k + 1 + i][k + 1 + j] -= 2.0 * (v[i] * q[j] + q[i] * v[j]);
            }
        }
        m[k + 1][k] = alpha;
        m[k][k + 1] = alpha;
        for i in k + 2..n {
            m[i][k] = 0.0;
            m[k][i] = 0.0;
        }
    }
    Tridiagonal {
        diag: (0..n).map(|i| m[i][i]).collect(),
        off: (0..n.saturating_sub(1)).map(|i| m[i + 1][i]).collect(),
    }
}

impl Tridiagonal {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (count of negative pivots
    /// of the LDL^T factorization of T - xI).
    pub fn sturm_count(&self, x: f64) -> usize {
        let scale = self
            .diag
            .iter()
            .chain(&self.off)
            .fold(1.0f64, |acc, v| acc.max(v.abs()));
        let guard = f64::EPSILON * f64::EPSILON * scale;
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.order() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = self.diag[i] - x - coupling;
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bounds(&self) -> (f64, f64) {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) * 4.0;
        (lo - pad, hi + pad)
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection, to full
    /// double precision.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        assert!(index < self.order(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.bounds();
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.order()).map(|k| self.eigenvalue(k)).collect()
    }
}

/// All eigenvalues of `a` in ascending order.
pub fn symmetric_eigenvalues(a: &SymMatrix) -> Vec<f64> {
    tridiagonalize(a).eigenvalues()
}

/// Solves `(a - shift I) x = rhs` by Gaussian elimination with partial
/// pivoting. Exactly singular pivots are nudged to a tiny value, which is
/// what inverse iteration wants.
fn shifted_solve(a: &SymMatrix, shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = a.order();
    let scale = a.gershgorin().1.abs().max(1.0);
    let tiny = f64::EPSILON * scale;
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row[i] -= shift;
            row.push(rhs[i]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("nonempty");
        m.swap(col, pivot);
        if m[col][col].abs() < tiny {
            m[col][col] = tiny;
        }
        for i in col + 1..n {
            let factor = m[i][col] / m[col][col];
            if factor != 0.0 {
                for j in col..=n {
                    m[i][j] -= factor * m[col][j];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

/// Max-norm of `a x - lambda x`.
pub fn residual(a: &SymMatrix, lambda: f64, x: &[f64]) -> f64 {
    a.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(ax, xi)| (ax - lambda * xi).abs())
        .fold(0.0, f64::max)
}

/// Unit eigenvector for the (accurately known) eigenvalue `lambda` by
/// inverse iteration started from `start`. Returns the vector and its
/// residual after at most `max_iter` solves.
pub fn inverse_iteration(
    a: &SymMatrix,
    lambda: f64,
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    normalize(&mut x);
    let mut best = (x.clone(), residual(a, lambda, &x));
    for _ in 0..max_iter {
        let mut y = shifted_solve(a, lambda, &x);
        if normalize(&mut y) == 0.0 || y.iter().any(|v| !v.is_finite()) {
            break;
        }
        let r = residual(a, lambda, &y);
        x = y;
        if r < best.1 {
            best = (x.clone(), r);
        }
        if r <= tol * 1e-2 {
            break;
        }
    }
    best
}
