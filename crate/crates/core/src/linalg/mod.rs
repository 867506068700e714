//! Dense linear algebra: symmetric eigendecomposition, numerical rank,
//! nullspaces and Gauss–Jordan reduction with a prescribed column order.

mod jacobi;
mod reduce;

pub use jacobi::{sym_eigen, SymEigen};
pub use reduce::{reduce_rows, RowReduction};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Dense symmetric matrix, stored full and symmetric by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    m: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(m: usize) -> Self {
        SymMatrix { m, data: vec![0.0; m * m] }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Entry `(i, j)` for `i ≤ j` is `f(i, j)`; the lower triangle mirrors it.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut s = Self::zeros(m);
        for i in 0..m {
            for j in i..m {
                let v = f(i, j);
                s.data[i * m + j] = v;
                s.data[j * m + i] = v;
            }
        }
        s
    }

    /// Symmetrize `(A + Aᵀ)/2`.
    pub fn from_dmatrix(a: &DMatrix<f64>) -> Self {
        assert_eq!(a.nrows(), a.ncols());
        Self::from_fn(a.nrows(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.m + j] = v;
        self.data[j * self.m + i] = v;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Leading `k × k` principal submatrix.
    pub fn leading(&self, k: usize) -> SymMatrix {
        assert!(k <= self.m);
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.m, self.m, &self.data)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.m);
        (0..self.m).map(|i| self.data[i * self.m..(i + 1) * self.m].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Outcome of a numerical rank decision at relative tolerance `tau`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankDecision {
    /// Descending.
    pub singular_values: Vec<f64>,
    pub tau: f64,
    pub rank: usize,
    pub corank: usize,
}

impl RankDecision {
    /// `r = #{σ_i > τ·max(1, σ_1)}`.
    pub fn from_singular_values(mut sv: Vec<f64>, tau: f64) -> Self {
        sv.sort_by(|a, b| b.total_cmp(a));
        let thresh = tau * sv.first().copied().unwrap_or(0.0).max(1.0);
        let rank = sv.iter().filter(|&&s| s > thresh).count();
        RankDecision { corank: sv.len() - rank, singular_values: sv, tau, rank }
    }
}

/// Rank of a symmetric matrix and an orthonormal basis (columns) of its
/// numerical nullspace.
pub fn rank_and_nullspace(m: &SymMatrix, tau: f64) -> Result<(RankDecision, DMatrix<f64>), LinalgError> {
    let eig = sym_eigen(m)?;
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.values[j].abs().total_cmp(&eig.values[i].abs()));
    let sv: Vec<f64> = order.iter().map(|&i| eig.values[i].abs()).collect();
    let decision = RankDecision::from_singular_values(sv, tau);
    let null = DMatrix::from_fn(n, decision.corank, |r, c| eig.vectors[(r, order[decision.rank + c])]);
    Ok((decision, null))
}

/// Result of [`svd_nullspace`]: numerical rank and an orthonormal nullspace basis.
pub struct Nullspace {
    pub rank: usize,
    pub basis: DMatrix<f64>,
    pub singular_values: Vec<f64>,
}

/// Rank and nullspace of a rectangular matrix via SVD; singular values
/// `≤ threshold` count as zero.
pub fn svd_nullspace(a: &DMatrix<f64>, threshold: impl Fn(f64) -> f64) -> Nullspace {
    let (r, c) = a.shape();
    if c == 0 {
        return Nullspace { rank: 0, basis: DMatrix::zeros(0, 0), singular_values: vec![] };
    }
    // thin SVD only returns min(r, c) right vectors; pad short matrices
    let padded;
    let a = if r < c {
        padded = {
            let mut p = DMatrix::zeros(c, c);
            p.view_mut((0, 0), (r, c)).copy_from(a);
            p
        };
        &padded
    } else {
        a
    };
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sv: Vec<f64> = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let thresh = threshold(sv.first().copied().unwrap_or(0.0));
    let rank = sv.iter().filter(|&&s| s > thresh).count();
    let basis = DMatrix::from_fn(c, c - rank, |row, k| vt[(idx[rank + k], row)]);
    Nullspace { rank, basis, singular_values: sv }
}

/// Minimum-norm least-squares solution of `a x = b`, singular values below
/// `threshold(σ_max)` discarded. Returns the solution and the numerical rank.
pub fn min_norm_solve(a: &DMatrix<f64>, b: &DVector<f64>, threshold: impl Fn(f64) -> f64) -> (DVector<f64>, usize) {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return (DVector::zeros(c), 0);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let thresh = threshold(smax);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut x = DVector::zeros(c);
    let mut rank = 0;
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > thresh {
            rank += 1;
            let coef = u.column(k).dot(b) / s;
            x += vt.row(k).transpose() * coef;
        }
    }
    (x, rank)
}

/// Solution set `{x_p + N w}` of `a x = b` from one SVD: singular values
/// `≤ threshold(σ_max)` count as zero. `x_p` has minimum norm.
pub struct AffineSolution {
    pub particular: DVector<f64>,
    pub null: DMatrix<f64>,
    pub rank: usize,
}

pub fn solve_affine(a: &DMatrix<f64>, b: &DVector<f64>, threshold: impl Fn(f64) -> f64) -> AffineSolution {
    let (r, c) = a.shape();
    if c == 0 {
        return AffineSolution { particular: DVector::zeros(0), null: DMatrix::zeros(0, 0), rank: 0 };
    }
    let rows = r.max(c);
    let mut padded = DMatrix::zeros(rows, c);
    padded.view_mut((0, 0), (r, c)).copy_from(a);
    let mut rhs = DVector::zeros(rows);
    rhs.rows_mut(0, r).copy_from(b);
    let svd = padded.svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let thresh = threshold(smax);
    let mut particular = DVector::zeros(c);
    let mut null_idx = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > thresh {
            particular += vt.row(k).transpose() * (u.column(k).dot(&rhs) / s);
        } else {
            null_idx.push(k);
        }
    }
    let null = DMatrix::from_fn(c, null_idx.len(), |row, k| vt[(null_idx[k], row)]);
    AffineSolution { particular, rank: c - null_idx.len(), null }
}

/// Orthonormal basis of the orthogonal complement of the column span of `v`
/// (columns of `v` assumed orthonormal).
pub fn orthogonal_complement(v: &DMatrix<f64>) -> DMatrix<f64> {
    svd_nullspace(&v.transpose(), |smax| 1e-8 * smax.max(1.0)).basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity_ranks() {
        let (d, null) = rank_and_nullspace(&SymMatrix::zeros(2), 1e-8).unwrap();
        assert_eq!((d.rank, d.corank), (0, 2));
        assert_eq!(null.ncols(), 2);
        let (d, null) = rank_and_nullspace(&SymMatrix::identity(4), 1e-8).unwrap();
        assert_eq!((d.rank, d.corank), (4, 0));
        assert_eq!(null.ncols(), 0);
    }

    #[test]
    fn nullspace_residual() {
        // rank-2 matrix u uᵀ + w wᵀ in dimension 4
        let u = [1.0, 2.0, 0.0, -1.0];
        let w = [0.0, 1.0, 1.0, 1.0];
        let m = SymMatrix::from_fn(4, |i, j| u[i] * u[j] + w[i] * w[j]);
        let (d, null) = rank_and_nullspace(&m, 1e-10).unwrap();
        assert_eq!(d.rank, 2);
        let res = m.to_dmatrix() * &null;
        assert!(res.norm() < 1e-12);
    }

    #[test]
    fn svd_nullspace_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = svd_nullspace(&a, |s| 1e-12 * s);
        assert_eq!(ns.rank, 1);
        assert_eq!(ns.basis.ncols(), 2);
        assert!((&a * &ns.basis).norm() < 1e-14);
    }

    #[test]
    fn min_norm_solution() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let (x, r) = min_norm_solve(&a, &DVector::from_vec(vec![2.0]), |s| 1e-12 * s);
        assert_eq!(r, 1);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn affine_solution_of_underdetermined_system() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 2.0]);
        let sol = solve_affine(&a, &b, |s| 1e-12 * s);
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.null.ncols(), 1);
        assert!((&a * &sol.particular - &b).norm() < 1e-14);
        assert!((&a * &sol.null).norm() < 1e-14);
    }

    #[test]
    fn complement_dimensions() {
        let v = DMatrix::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let c = orthogonal_complement(&v);
        assert_eq!(c.shape(), (3, 2));
        assert!((v.transpose() * &c).norm() < 1e-14);
    }
}
