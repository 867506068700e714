//! Feasibility SDP over the moment relaxation: find a moment vector in the
//! relative interior of the feasible set, i.e. one of maximal rank.
//!
//! The solver reduces the problem to its minimal face and then centers.
//! Equalities are eliminated once with an SVD. Whenever a block is singular
//! on the whole affine set (found from the pencil SVD) or a phase-I barrier
//! problem shows that no strictly feasible point exists, the offending
//! directions are imposed as new linear equalities and the block is
//! compressed. On the final face the log-det barrier plus a trace penalty
//! is maximized by damped Newton.

mod facial;

use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rank_and_nullspace, LinalgError, SymMatrix};
use crate::moment::{build_index, BlockMap, MomentError, MomentVector, MonomialIndex};
use crate::polycore::{Coeff, Exponent, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("relaxation order {t} is below the half-degree {needed} of a constraint")]
    OrderTooLow { t: u32, needed: u32 },
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A PSD constraint `M_s(f·y) ⪰ 0`.
#[derive(Clone, Debug)]
pub struct PsdBlock {
    pub label: String,
    pub map: BlockMap,
}

/// The spectrahedron: `y_0 = 1`, linear equalities, PSD blocks.
/// Block 0 is always the moment matrix `M_t(y)`.
#[derive(Clone, Debug)]
pub struct RelaxationProblem {
    n: usize,
    t: u32,
    index: MonomialIndex,
    eq_rows: Vec<Vec<(usize, f64)>>,
    seen: HashSet<Vec<i64>>,
    psd_blocks: Vec<PsdBlock>,
}

/// `⌈deg/2⌉`.
pub fn half_degree(deg: u32) -> u32 {
    deg.div_ceil(2)
}

impl RelaxationProblem {
    pub fn new(n: usize, t: u32) -> Self {
        let index = build_index(n, 2 * t);
        let one = Polynomial::constant(n, 1.0);
        let map = BlockMap::localizer(&one, t, &index).expect("order 2t index");
        RelaxationProblem {
            n,
            t,
            index,
            eq_rows: Vec::new(),
            seen: HashSet::new(),
            psd_blocks: vec![PsdBlock { label: "moment".into(), map }],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.t
    }

    /// Index of all moments `y_α`, `|α| ≤ 2t`.
    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn nmoments(&self) -> usize {
        self.index.len()
    }

    /// Sparse, normalized equality rows `Σ a_α y_α = 0` (the `y_0 = 1` row is implicit).
    pub fn eq_rows(&self) -> &[Vec<(usize, f64)>] {
        &self.eq_rows
    }

    pub fn psd_blocks(&self) -> &[PsdBlock] {
        &self.psd_blocks
    }

    /// Rows of `M_{t−d}(h·y) = 0`, `d = ⌈deg h / 2⌉`: `(h·y)_δ = 0` for `|δ| ≤ 2(t−d)`.
    pub fn add_localizing_equalities<C: Coeff>(&mut self, h: &Polynomial<C>) -> Result<(), SolveError> {
        let d = half_degree(h.degree().unwrap_or(0));
        if d > self.t {
            return Err(SolveError::OrderTooLow { t: self.t, needed: d });
        }
        let terms: Vec<(Exponent, f64)> = h.terms().map(|(e, c)| (e.clone(), c.to_f64())).collect();
        let count = self.index.prefix_len(2 * (self.t - d));
        for k in 0..count {
            let delta = self.index.get(k).clone();
            let mut row: Vec<(usize, f64)> = terms
                .iter()
                .map(|(g, c)| (self.index.position(&delta.add(g)).expect("degree within 2t"), *c))
                .collect();
            row.sort_by_key(|&(p, _)| p);
            self.push_row(row);
        }
        Ok(())
    }

    fn push_row(&mut self, mut row: Vec<(usize, f64)>) {
        row.retain(|&(_, c)| c != 0.0);
        let Some(big) = row.iter().map(|&(_, c)| c.abs()).reduce(f64::max) else {
            return;
        };
        let sign = if row[0].1 < 0.0 { -1.0 } else { 1.0 };
        for entry in &mut row {
            entry.1 *= sign / big;
        }
        let key: Vec<i64> =
            row.iter().flat_map(|&(p, c)| [p as i64, (c * 1e9).round() as i64]).collect();
        if self.seen.insert(key) {
            self.eq_rows.push(row);
        }
    }

    /// PSD block `M_{t−d}(f·y) ⪰ 0`, `d = ⌈deg f / 2⌉`.
    pub fn add_psd_localizer<C: Coeff>(&mut self, label: &str, f: &Polynomial<C>) -> Result<(), SolveError> {
        let d = half_degree(f.degree().unwrap_or(0));
        if d > self.t {
            return Err(SolveError::OrderTooLow { t: self.t, needed: d });
        }
        let map = BlockMap::localizer(f, self.t - d, &self.index)?;
        self.psd_blocks.push(PsdBlock { label: label.into(), map });
        Ok(())
    }

    /// Largest `|a·y|` over the equality rows, including `y_0 = 1`.
    pub fn equality_residual(&self, y: &[f64]) -> f64 {
        let rows = self.eq_rows.iter().map(|row| row.iter().map(|&(p, c)| c * y[p]).sum::<f64>().abs());
        rows.fold((y[0] - 1.0).abs(), f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Newton iterations per barrier stage.
    pub max_iter: usize,
    pub feas_tol: f64,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_iter: 200, feas_tol: 1e-8, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    GenericPoint,
    Infeasible,
    NumericalFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// ∞-norm of the equality violation.
    pub equality: f64,
    /// Smallest eigenvalue of each PSD block, in block order.
    pub min_eigenvalues: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub y: MomentVector,
    pub status: SolveStatus,
    pub residuals: Residuals,
    pub iterations: usize,
    pub seed: u64,
    /// Number of facial reduction steps taken.
    pub reductions: usize,
}

/// A maximal-rank point of the relaxation.
pub fn solve_generic(problem: &RelaxationProblem, opts: &SolveOptions) -> SolveResult {
    solve_weighted(problem, opts, None)
}

fn solve_weighted(problem: &RelaxationProblem, opts: &SolveOptions, weight: Option<&DMatrix<f64>>) -> SolveResult {
    let out = facial::solve(problem, opts, weight);
    let y = MomentVector::new(problem.n, 2 * problem.t, out.y);
    let min_eigenvalues: Vec<f64> = problem
        .psd_blocks
        .iter()
        .map(|b| {
            let m = SymMatrix::from_dmatrix(&b.map.evaluate(&y.values));
            crate::linalg::sym_eigen(&m).map_or(f64::NAN, |e| e.values.first().copied().unwrap_or(0.0))
        })
        .collect();
    let equality = problem.equality_residual(&y.values);
    let mut status = out.status;
    if status == SolveStatus::GenericPoint
        && (equality > opts.feas_tol || min_eigenvalues.iter().any(|&l| l.is_nan() || l < -opts.feas_tol))
    {
        log::warn!("solver point violates tolerances: equality {equality:.2e}, eigenvalues {min_eigenvalues:?}");
        status = SolveStatus::NumericalFailure;
    }
    SolveResult {
        y,
        status,
        residuals: Residuals { equality, min_eigenvalues },
        iterations: out.iterations,
        seed: opts.seed,
        reductions: out.reductions,
    }
}

/// Re-solve `trials` times with random positive definite weights in the
/// centering objective and check that none of those points has larger rank
/// than `y` or leaves a kernel vector of `y`.
pub fn certify_genericity(
    problem: &RelaxationProblem,
    y: &MomentVector,
    trials: usize,
    tau: f64,
    opts: &SolveOptions,
) -> Result<bool, SolveError> {
    let moment = &problem.psd_blocks[0].map;
    let m_y = SymMatrix::from_dmatrix(&moment.evaluate(&y.values));
    let (dec, kernel) = rank_and_nullspace(&m_y, tau)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let dim = moment.dim();
    for _ in 0..trials {
        let g = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        let w = &g * g.transpose() / dim as f64 + DMatrix::identity(dim, dim);
        let other = solve_weighted(problem, opts, Some(&w));
        if other.status != SolveStatus::GenericPoint {
            continue;
        }
        let m_z = SymMatrix::from_dmatrix(&moment.evaluate(&other.y.values));
        let (dz, _) = rank_and_nullspace(&m_z, tau)?;
        if dz.rank > dec.rank {
            return Ok(false);
        }
        let scale = dz.singular_values.first().copied().unwrap_or(0.0).max(1.0);
        let res = (m_z.to_dmatrix() * &kernel).norm();
        if res > 10.0 * tau * scale * (dim as f64).sqrt() {
            return Ok(false);
        }
    }
    Ok(true)
}
