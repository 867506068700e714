//! Reduced bases of truncated moment-matrix kernels.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::linalg::{rank_and_nullspace, reduce_rows, LinalgError, RankDecision, SymMatrix};
use crate::moment::MonomialIndex;
use crate::polycore::{Exponent, Polynomial};

/// Kernel polynomials with unit leading coefficients and pairwise distinct
/// leading monomials, sorted by grevlex-descending leading monomial.
#[derive(Clone, Debug)]
pub struct ReducedBasis {
    pub order: u32,
    pub elements: Vec<Polynomial<f64>>,
    pub decision: RankDecision,
}

/// Pivot threshold for reducing noisy kernel vectors at tolerance `tau`.
pub fn pivot_tolerance(tau: f64) -> f64 {
    (0.1 * tau.sqrt()).clamp(1e-7, 1e-3)
}

/// Reduced basis of the numerical kernel of `m = M_s(y)`, whose rows and
/// columns follow `index` (only its first `m.dim()` monomials are used).
pub fn reduced_kernel_basis(m: &SymMatrix, index: &MonomialIndex, tau: f64) -> Result<ReducedBasis, LinalgError> {
    let dim = m.dim();
    let order = index.monomials().get(dim.saturating_sub(1)).map_or(0, Exponent::degree);
    let (decision, null) = rank_and_nullspace(m, tau)?;
    let elements = reduce_kernel_vectors(&null, index, tau);
    if elements.len() != decision.corank {
        log::warn!("reduction kept {} of {} kernel vectors", elements.len(), decision.corank);
    }
    Ok(ReducedBasis { order, elements, decision })
}

/// Row-reduce kernel vectors (columns of `null`) with columns in
/// grevlex-descending order.
pub fn reduce_kernel_vectors(null: &DMatrix<f64>, index: &MonomialIndex, tau: f64) -> Vec<Polynomial<f64>> {
    let dim = null.nrows();
    let n = index.nvars();
    let column_order: Vec<usize> = (0..dim).rev().collect();
    let red = reduce_rows(&null.transpose(), &column_order, pivot_tolerance(tau), 1e-2 * tau);
    let mut elements: Vec<Polynomial<f64>> = (0..red.rows.nrows())
        .map(|k| {
            let terms = (0..dim).filter(|&j| red.rows[(k, j)] != 0.0).map(|j| (index.get(j).clone(), red.rows[(k, j)]));
            Polynomial::from_terms(n, terms)
        })
        .collect();
    elements.sort_by(|a, b| b.leading_exponent().cmp(&a.leading_exponent()));
    elements
}

impl ReducedBasis {
    pub fn corank(&self) -> usize {
        self.elements.len()
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.elements.iter().filter_map(|p| p.leading_exponent().cloned()).collect()
    }

    /// Elements of exact degree `d`.
    pub fn of_degree(&self, d: u32) -> impl Iterator<Item = &Polynomial<f64>> {
        self.elements.iter().filter(move |p| p.degree() == Some(d))
    }
}

/// Elements of degree ≤ `s`: the reduced basis of `ker M_s(y)`.
pub fn truncate_basis(b: &ReducedBasis, s: u32) -> ReducedBasis {
    let elements: Vec<Polynomial<f64>> = b.elements.iter().filter(|p| p.degree().is_some_and(|d| d <= s)).cloned().collect();
    let mut decision = b.decision.clone();
    decision.corank = elements.len();
    decision.singular_values.clear();
    decision.rank = 0;
    ReducedBasis { order: s.min(b.order), elements, decision }
}

/// Number of basis elements per exact degree.
pub fn corank_profile(b: &ReducedBasis) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for p in &b.elements {
        if let Some(d) = p.degree() {
            *out.entry(d).or_insert(0) += 1;
        }
    }
    out
}
