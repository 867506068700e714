//! Structural identities a generic point must satisfy, evaluated numerically.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use super::{OrderAnalysis, PipelineError};
use crate::kernelbasis::reduced_kernel_basis;
use crate::linalg::SymMatrix;
use crate::moment::{build_index, index_size, vect, MonomialIndex};
use crate::pommaret::class_profile;
use crate::polycore::{Exponent, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationCheck {
    /// α from the degree-(t−2) slice of the reduced basis of `ker M_{t−1}`.
    pub alpha_slice: Vec<usize>,
    /// α from the reduced basis of `ker M_{t−2}` computed on its own.
    pub alpha_own: Vec<usize>,
    pub same_leading: bool,
    /// Largest coefficient difference between elements with equal leading monomial.
    pub max_coeff_diff: f64,
    /// Sine of the largest principal angle between the two kernels.
    pub subspace_gap: f64,
}

/// Compare the degree ≤ t−2 part of the reduced basis of `ker M_{t−1}` with
/// the reduced basis of `ker M_{t−2}`.
pub fn truncation_identity(a: &OrderAnalysis, tau: f64) -> Result<TruncationCheck, PipelineError> {
    let t = a.record.t;
    let n = a.kernel.elements.first().map_or_else(|| a.record.alpha.len(), Polynomial::nvars);
    let index = build_index(n, t - 1);
    let own = reduced_kernel_basis(&a.moment.leading(index_size(n, t - 2)), &index, tau)?;
    let slice: Vec<&Polynomial<f64>> = a.kernel.elements.iter().filter(|p| p.degree().is_some_and(|d| d + 2 <= t)).collect();
    let lead = |ps: &mut dyn Iterator<Item = &Polynomial<f64>>| -> BTreeSet<Exponent> {
        ps.filter_map(|p| p.leading_exponent().cloned()).collect()
    };
    let same_leading = lead(&mut slice.iter().copied()) == lead(&mut own.elements.iter());
    let mut max_coeff_diff = 0.0f64;
    if same_leading {
        for p in &slice {
            let e = p.leading_exponent().expect("nonzero");
            let q = own.elements.iter().find(|q| q.leading_exponent() == Some(e)).expect("same leading set");
            max_coeff_diff = max_coeff_diff.max(p.sub(q).max_abs_coeff());
        }
    } else {
        max_coeff_diff = f64::INFINITY;
    }
    let slice_owned: Vec<Polynomial<f64>> = slice.into_iter().cloned().collect();
    let dim = index_size(n, t - 2);
    let subspace_gap = subspace_gap(&columns(&slice_owned, &index, dim)?, &columns(&own.elements, &index, dim)?);
    Ok(TruncationCheck {
        alpha_slice: class_profile(&slice_owned, n, t - 2).alpha,
        alpha_own: class_profile(&own.elements, n, t - 2).alpha,
        same_leading,
        max_coeff_diff,
        subspace_gap,
    })
}

fn columns(ps: &[Polynomial<f64>], index: &MonomialIndex, dim: usize) -> Result<DMatrix<f64>, PipelineError> {
    let mut m = DMatrix::zeros(dim, ps.len());
    for (k, p) in ps.iter().enumerate() {
        let v = vect(p, index)?;
        m.column_mut(k).copy_from_slice(&v[..dim]);
    }
    Ok(m)
}

fn orthonormal(a: &DMatrix<f64>) -> DMatrix<f64> {
    if a.ncols() == 0 {
        return a.clone();
    }
    let svd = a.clone().svd(true, false);
    svd.u.expect("u requested").columns(0, a.ncols().min(a.nrows())).into_owned()
}

/// `max(‖(I − P_A) Q_B‖, ‖(I − P_B) Q_A‖)` for orthonormal bases `Q`;
/// 1 if the dimensions differ.
pub fn subspace_gap(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    let (qa, qb) = (orthonormal(a), orthonormal(b));
    let off = |q: &DMatrix<f64>, r: &DMatrix<f64>| (r - q * (q.transpose() * r)).norm();
    off(&qa, &qb).max(off(&qb, &qa))
}

/// `‖M·vec(p)‖ / (σ_max(M)·‖vec(p)‖)`.
pub fn relative_residual(m: &SymMatrix, p: &Polynomial<f64>, index: &MonomialIndex) -> Result<f64, PipelineError> {
    let v = vect(p, index)?;
    let v = &v[..m.dim()];
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = m.mul_vec(v).iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = crate::linalg::sym_eigen(m)?.values.iter().fold(0.0f64, |s, l| s.max(l.abs())).max(1e-300);
    Ok(if norm == 0.0 { 0.0 } else { r / (scale * norm) })
}

/// Largest relative residual of `x_i·p` in `ker M_{t−1}` over kernel
/// elements `p` of degree ≤ t−2 and all variables.
pub fn multiplication_closure(a: &OrderAnalysis) -> Result<f64, PipelineError> {
    let t = a.record.t;
    let Some(n) = a.kernel.elements.first().map(Polynomial::nvars) else {
        return Ok(0.0);
    };
    let index = build_index(n, t - 1);
    let m = a.moment.leading(index.len());
    let mut worst = 0.0f64;
    for p in a.kernel.elements.iter().filter(|p| p.degree().is_some_and(|d| d + 2 <= t)) {
        for i in 0..n {
            let q = p.mul_monomial(&Exponent::unit(n, i), &1.0);
            worst = worst.max(relative_residual(&m, &q, &index)?);
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpanningCheck {
    pub distinct_leading: bool,
    pub size: usize,
    pub corank: usize,
    pub max_residual: f64,
}

impl SpanningCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.distinct_leading && self.size == self.corank && self.max_residual <= tol
    }
}

/// The degree ≤ t−2 kernel elements together with their multiplicative
/// prolongations `x_i·g`, `i ≤ cls(g)`, of the degree-(t−2) ones: leading
/// monomials, size against `crk M_{t−1}` and kernel residuals.
pub fn prolongation_spanning(a: &OrderAnalysis) -> Result<SpanningCheck, PipelineError> {
    let t = a.record.t;
    let corank = a.decisions[1].corank;
    let Some(n) = a.kernel.elements.first().map(Polynomial::nvars) else {
        return Ok(SpanningCheck { distinct_leading: true, size: 0, corank, max_residual: 0.0 });
    };
    let low: Vec<&Polynomial<f64>> = a.kernel.elements.iter().filter(|p| p.degree().is_some_and(|d| d + 2 <= t)).collect();
    let mut set: Vec<Polynomial<f64>> = low.iter().map(|p| (*p).clone()).collect();
    for g in low.iter().filter(|p| p.degree() == Some(t - 2)) {
        let cls = g.leading_exponent().expect("nonzero").class();
        for i in 0..cls {
            set.push(g.mul_monomial(&Exponent::unit(n, i), &1.0));
        }
    }
    let leads: BTreeSet<Exponent> = set.iter().filter_map(|p| p.leading_exponent().cloned()).collect();
    let index = build_index(n, t - 1);
    let m = a.moment.leading(index.len());
    let mut max_residual = 0.0f64;
    for p in &set {
        max_residual = max_residual.max(relative_residual(&m, p, &index)?);
    }
    Ok(SpanningCheck { distinct_leading: leads.len() == set.len(), size: set.len(), corank, max_residual })
}
