//! Internal dense and sparse solvers used by the regression fits.
//!
//! Two routes cover everything the fits need: a dense Cholesky factorization
//! for the (always positive definite) ridge normal equations, and CGLS
//! (conjugate gradients on the normal equations) for unregularized least
//! squares, where the system may be rank-deficient and the minimum-norm
//! solution is wanted. Centering by column means is applied implicitly so
//! sparse rows never get densified.

use crate::featurize::FeatureMatrix;

pub(crate) fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// The row-centered design operator `A = X - 1 x̄ᵀ`.
///
/// Products against `A` and `Aᵀ` are formed from the sparse rows plus a
/// rank-one correction, so centering never materializes a dense matrix.
pub(crate) struct CenteredOp<'a> {
    matrix: &'a FeatureMatrix,
    col_means: &'a [f64],
}

impl<'a> CenteredOp<'a> {
    pub fn new(matrix: &'a FeatureMatrix, col_means: &'a [f64]) -> Self {
        debug_assert_eq!(matrix.dim(), col_means.len());
        CenteredOp { matrix, col_means }
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.matrix.dim()
    }

    /// `out = (X - 1 x̄ᵀ) v`
    pub fn matvec(&self, v: &[f64], out: &mut [f64]) {
        let shift = dot(self.col_means, v);
        for (i, row) in self.matrix.rows().iter().enumerate() {
            out[i] = row.dot_dense(v) - shift;
        }
    }

    /// `out = (X - 1 x̄ᵀ)ᵀ r`
    pub fn rmatvec(&self, r: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (i, row) in self.matrix.rows().iter().enumerate() {
            row.add_scaled_into(r[i], out);
        }
        let total: f64 = r.iter().sum();
        for (o, &m) in out.iter_mut().zip(self.col_means) {
            *o -= total * m;
        }
    }
}

/// In-place lower Cholesky factorization of a symmetric matrix stored
/// row-major. Returns `false` when a pivot is non-positive or non-finite.
pub(crate) fn cholesky_factor(a: &mut [f64], n: usize) -> bool {
    debug_assert_eq!(a.len(), n * n);
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let ljj = d.sqrt();
        a[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / ljj;
        }
    }
    true
}

/// Solves `L Lᵀ x = b` given the factor from [`cholesky_factor`].
pub(crate) fn cholesky_solve(l: &[f64], n: usize, b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(b.len(), n);
    let mut x = b.to_vec();
    // forward: L y = b
    for i in 0..n {
        let mut s = x[i];
        for k in 0..i {
            s -= l[i * n + k] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    // backward: Lᵀ x = y
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in (i + 1)..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    x
}

/// Minimum-norm least squares via CGLS, started from zero.
///
/// Starting at the origin keeps every iterate inside `range(Aᵀ)`, so on
/// convergence the result is the pseudoinverse (minimum-norm) solution even
/// when the system is rank-deficient. Outer restarts recompute the residual
/// from scratch to shed accumulated rounding drift. Stops once
/// `‖Aᵀ(Ax - b)‖ ≤ target_normal_residual` or the sweep budget runs out;
/// the caller re-checks optimality on the returned solution.
pub(crate) fn cgls_min_norm(
    op: &CenteredOp<'_>,
    b: &[f64],
    target_normal_residual: f64,
) -> Vec<f64> {
    let p = op.n_rows();
    let m = op.n_cols();
    debug_assert_eq!(b.len(), p);

    let mut x = vec![0.0; m];
    let mut residual = vec![0.0; p];
    let mut s = vec![0.0; m];
    let mut q = vec![0.0; p];
    let mut ax = vec![0.0; p];

    let max_sweeps = 6;
    let iters_per_sweep = 2 * m.min(p) + 20;

    for _ in 0..max_sweeps {
        // residual = b - A x, recomputed exactly at every restart
        op.matvec(&x, &mut ax);
        for i in 0..p {
            residual[i] = b[i] - ax[i];
        }
        op.rmatvec(&residual, &mut s);
        let mut gamma = dot(&s, &s);
        let mut reached = gamma.sqrt() <= target_normal_residual;
        if reached {
            break;
        }

        let mut direction = s.clone();
        let mut stalled = false;
        for _ in 0..iters_per_sweep {
            op.matvec(&direction, &mut q);
            let qq = dot(&q, &q);
            if qq <= 0.0 || !qq.is_finite() {
                stalled = true;
                break;
            }
            let alpha = gamma / qq;
            for (xj, dj) in x.iter_mut().zip(&direction) {
                *xj += alpha * dj;
            }
            for (ri, qi) in residual.iter_mut().zip(&q) {
                *ri -= alpha * qi;
            }
            op.rmatvec(&residual, &mut s);
            let gamma_new = dot(&s, &s);
            if gamma_new.sqrt() <= target_normal_residual {
                reached = true;
                break;
            }
            let beta = gamma_new / gamma;
            gamma = gamma_new;
            for (dj, sj) in direction.iter_mut().zip(&s) {
                *dj = sj + beta * *dj;
            }
        }
        if reached || stalled {
            break;
        }
    }
    x
}
