use serde::{Deserialize, Serialize};

use crate::polycore::{parse_polynomial, ParseError, Polynomial, Rational, VariableOrder};
use crate::sdpsolve::{Residuals, SolveStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RunStatus {
    Certified,
    ExhaustedT,
    Infeasible,
}

/// Everything computed at one relaxation order `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub t: u32,
    /// Ranks of `M_t`, `M_{t−1}`, `M_{t−2}`.
    pub rank: [usize; 3],
    pub corank: [usize; 3],
    pub alpha: Vec<usize>,
    pub weighted_sum: usize,
    pub corank_diff: i64,
    pub pass: bool,
    /// `t` is at or above the start order guaranteed by the theory.
    pub admissible: bool,
    /// Number of reduced-basis elements of `ker M_{t−1}` per degree `0..t−1`.
    pub degree_profile: Vec<usize>,
    pub one_in_kernel: bool,
    pub solver_status: SolveStatus,
    pub equality_residual: f64,
    pub min_eigenvalues: Vec<f64>,
    pub iterations: usize,
    pub reductions: usize,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub residuals: Residuals,
    pub iterations: usize,
    pub seed: u64,
}

/// Result of a full sweep. Polynomials are stored in their canonical text
/// form so that a serialized report reads back unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub status: RunStatus,
    pub certified_t: Option<u32>,
    pub records: Vec<OrderRecord>,
    pub weak_basis: Vec<String>,
    pub strong_basis: Vec<String>,
    pub rationalized: bool,
    pub solver: SolverSummary,
    /// Variable names, largest first.
    pub order: Vec<String>,
    pub tau: f64,
    /// Matrix `A` of the coordinate change `x̃ = A·x` the run was made in.
    pub coordinate_change: Option<Vec<Vec<String>>>,
    pub attempts: usize,
    pub diagnostic: Option<String>,
}

impl CertificateReport {
    pub fn variable_order(&self) -> VariableOrder {
        VariableOrder::from_descending(self.order.clone()).expect("distinct names")
    }

    /// Strong basis read back as exact polynomials (decimal coefficients
    /// are converted exactly when the basis was not rationalized).
    pub fn strong_basis_polys(&self) -> Result<Vec<Polynomial<Rational>>, ParseError> {
        let order = self.variable_order();
        self.strong_basis.iter().map(|s| parse_polynomial(s, &order)).collect()
    }

    pub fn weak_basis_polys(&self) -> Result<Vec<Polynomial<f64>>, ParseError> {
        let order = self.variable_order();
        self.weak_basis.iter().map(|s| parse_polynomial(s, &order)).collect()
    }

    pub fn certified_record(&self) -> Option<&OrderRecord> {
        self.certified_t.and_then(|t| self.records.iter().find(|r| r.t == t))
    }

    pub fn record(&self, t: u32) -> Option<&OrderRecord> {
        self.records.iter().find(|r| r.t == t)
    }

    /// Human-readable table: per order the rank row, the corank row and the
    /// class profile with its weighted sum, then the basis.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let row = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let mark = match (r.pass, r.admissible) {
                (true, true) => "  pass",
                (true, false) => "  pass (below start order)",
                (false, _) => "",
            };
            out.push_str(&format!(
                "t={}: {} / {} / α: {} → {}  [Δcrk = {}]{}\n",
                r.t,
                row(&r.rank),
                row(&r.corank),
                row(&r.alpha),
                r.weighted_sum,
                r.corank_diff,
                mark
            ));
            if let Some(d) = &r.diagnostic {
                out.push_str(&format!("      note: {d}\n"));
            }
        }
        let status = match self.status {
            RunStatus::Certified => format!("CERTIFIED at t={}", self.certified_t.unwrap_or(0)),
            RunStatus::ExhaustedT => "EXHAUSTED_T".to_string(),
            RunStatus::Infeasible => "INFEASIBLE".to_string(),
        };
        out.push_str(&format!("status: {status}\n"));
        if let Some(d) = &self.diagnostic {
            out.push_str(&format!("note: {d}\n"));
        }
        if !self.strong_basis.is_empty() {
            let kind = if self.rationalized { "exact" } else { "floating point" };
            out.push_str(&format!("strong Pommaret basis ({kind}):\n"));
            for p in &self.strong_basis {
                out.push_str(&format!("  {p}\n"));
            }
        }
        out
    }
}
