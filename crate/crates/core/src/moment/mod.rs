//! Truncated monomial indexing and assembly of moment and localizing matrices.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SymMatrix;
use crate::polycore::{Coeff, Exponent, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("degree {degree} exceeds the index order {order}")]
    DegreeOverflow { degree: u32, order: u32 },
    #[error("order {needed} exceeds the moment vector order {available}")]
    OrderOverflow { needed: u32, available: u32 },
}

/// All exponents of degree ≤ t in grevlex-ascending order.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    n: usize,
    t: u32,
    monos: Vec<Exponent>,
    pos: HashMap<Exponent, usize>,
}

/// Exponents of exact degree `d` in `n` variables, grevlex-ascending.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(Exponent::new(cur.clone()));
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

pub fn build_index(n: usize, t: u32) -> MonomialIndex {
    assert!(n >= 1);
    let monos: Vec<Exponent> = (0..=t).flat_map(|d| exponents_of_degree(n, d)).collect();
    let pos = monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    MonomialIndex { n, t, monos, pos }
}

/// `C(n + t, n)`.
pub fn index_size(n: usize, t: u32) -> usize {
    let mut v: u128 = 1;
    for k in 1..=n as u128 {
        v = v * (t as u128 + k) / k;
    }
    v as usize
}

impl MonomialIndex {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monos
    }

    pub fn get(&self, i: usize) -> &Exponent {
        &self.monos[i]
    }

    pub fn position(&self, e: &Exponent) -> Option<usize> {
        self.pos.get(e).copied()
    }

    /// Number of monomials of degree ≤ s (a prefix of this index).
    pub fn prefix_len(&self, s: u32) -> usize {
        index_size(self.n, s.min(self.t))
    }
}

/// Truncated moment sequence `y_α`, `|α| ≤ order`, in grevlex position order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    pub nvars: usize,
    pub order: u32,
    pub values: Vec<f64>,
}

impl MomentVector {
    pub fn new(nvars: usize, order: u32, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), index_size(nvars, order));
        MomentVector { nvars, order, values }
    }

    /// Moments `[v]_{order}` of the Dirac measure at `v`.
    pub fn dirac(point: &[f64], order: u32) -> Self {
        let idx = build_index(point.len(), order);
        let values = idx
            .monomials()
            .iter()
            .map(|e| e.entries().iter().zip(point).map(|(&k, x)| x.powi(k as i32)).product())
            .collect();
        MomentVector { nvars: point.len(), order, values }
    }

    pub fn is_normalized(&self) -> bool {
        self.values.first() == Some(&1.0)
    }
}

/// Dense coefficient vector of `h` over `index`.
pub fn vect<C: Coeff>(h: &Polynomial<C>, index: &MonomialIndex) -> Result<Vec<f64>, MomentError> {
    let mut v = vec![0.0; index.len()];
    for (e, c) in h.terms() {
        let i = index.position(e).ok_or(MomentError::DegreeOverflow { degree: e.degree(), order: index.order() })?;
        v[i] = c.to_f64();
    }
    Ok(v)
}

/// Linear map `y ↦ M_s(f·y)` kept symbolically: for each upper-triangle
/// entry the list of `(moment position, coefficient)` pairs.
#[derive(Clone, Debug)]
pub struct BlockMap {
    pub order: u32,
    dim: usize,
    entries: Vec<(usize, usize, usize, f64)>,
}

impl BlockMap {
    /// Entry `(α, β)` is `Σ_γ f_γ y_{α+β+γ}` for `α, β` of degree ≤ `s`;
    /// positions refer to an index of order ≥ `2s + deg f`.
    pub fn localizer<C: Coeff>(f: &Polynomial<C>, s: u32, moments: &MonomialIndex) -> Result<Self, MomentError> {
        let deg = f.degree().unwrap_or(0);
        if 2 * s + deg > moments.order() {
            return Err(MomentError::OrderOverflow { needed: 2 * s + deg, available: moments.order() });
        }
        let dim = moments.prefix_len(s);
        let terms: Vec<(Exponent, f64)> = f.terms().map(|(e, c)| (e.clone(), c.to_f64())).collect();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let ab = moments.get(i).add(moments.get(j));
                for (g, c) in &terms {
                    let p = moments.position(&ab.add(g)).expect("degree checked");
                    entries.push((i, j, p, *c));
                }
            }
        }
        Ok(BlockMap { order: s, dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `B(y)` as a dense symmetric matrix.
    pub fn evaluate(&self, y: &[f64]) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for &(i, j, p, c) in &self.entries {
            out[(i, j)] += c * y[p];
        }
        for i in 0..self.dim {
            for j in 0..i {
                out[(i, j)] = out[(j, i)];
            }
        }
        out
    }

    /// `tr B(y)` as a linear form: coefficients per moment position.
    pub fn trace_form(&self, nmoments: usize) -> Vec<f64> {
        let mut out = vec![0.0; nmoments];
        for &(i, j, p, c) in &self.entries {
            if i == j {
                out[p] += c;
            }
        }
        out
    }
}

/// `M_s(y) = (y_{α+β})`.
pub fn assemble_moment(y: &MomentVector, s: u32) -> Result<SymMatrix, MomentError> {
    assemble_localizer(&Polynomial::constant(y.nvars, 1.0), y, s)
}

/// `M_s(f·y)`, entry `(α, β) = Σ_γ f_γ y_{α+β+γ}`.
pub fn assemble_localizer<C: Coeff>(f: &Polynomial<C>, y: &MomentVector, s: u32) -> Result<SymMatrix, MomentError> {
    let index = build_index(y.nvars, y.order);
    let map = BlockMap::localizer(f, s, &index)?;
    Ok(SymMatrix::from_dmatrix(&map.evaluate(&y.values)))
}
