//! The order sweep: build the relaxation at order `t`, solve for a generic
//! point, test the corank certificate on its kernel and, on success, extract
//! weak, strong and exact bases.

mod checks;
mod coords;
mod rational;
mod report;

pub use checks::{multiplication_closure, subspace_gap, prolongation_spanning, relative_residual, truncation_identity, SpanningCheck, TruncationCheck};
pub use coords::{apply_coordinate_change, interreduce, invert, matrix_strings, parse_matrix, random_invertible, RationalMatrix};
pub use rational::{max_denominator, primitive_part, rationalize, rationalize_basis, rationalize_polynomial, simplest_between, Rationalized};
pub use report::{CertificateReport, OrderRecord, RunStatus, SolverSummary};

use thiserror::Error;

use crate::kernelbasis::{corank_profile, reduced_kernel_basis, ReducedBasis};
use crate::linalg::{rank_and_nullspace, LinalgError, RankDecision, SymMatrix};
use crate::moment::{assemble_moment, index_size, MomentError};
use crate::pommaret::{certificate_check, class_profile, strong_from_weak};
use crate::polycore::{parse_system, Exponent, ParseError, ParsedSystem, Polynomial, Rational, VariableOrder};
use crate::sdpsolve::{half_degree, solve_generic, RelaxationProblem, Residuals, SolveError, SolveOptions, SolveResult, SolveStatus};

/// Products of more inequalities than this are not formed.
pub const MAX_INEQUALITIES: usize = 6;
/// Retries with random coordinates after an exhausted sweep.
pub const MAX_RETRIES: usize = 3;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("{0} inequalities given, at most {MAX_INEQUALITIES} are supported")]
    TooManyInequalities(usize),
    #[error("relaxation order {t} is below the generator half-degree {d}")]
    OrderBelowDegree { t: u32, d: u32 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error("coordinate change: {0}")]
    Matrix(String),
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    /// Numerical rank tolerance.
    pub tau: f64,
    pub t_start: Option<u32>,
    pub t_max: Option<u32>,
    /// Radius of an optional ball constraint `R² − Σx² ≥ 0`.
    pub ball: Option<f64>,
    pub seed: u64,
    pub rational_tol: f64,
    pub auto_retry: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tau: 1e-8, t_start: None, t_max: None, ball: None, seed: 0, rational_tol: 1e-6, auto_retry: false }
    }
}

/// A polynomial system `h_1 = … = h_m = 0`, `f_1 ≥ 0, …, f_s ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    /// Names in the order of the `vars:` line.
    pub variables: Vec<String>,
    pub order: VariableOrder,
    pub generators: Vec<Polynomial<Rational>>,
    pub inequalities: Vec<Polynomial<Rational>>,
    pub options: RunOptions,
    pub coordinate_change: Option<RationalMatrix>,
}

impl ProblemSpec {
    pub fn new(system: ParsedSystem, options: RunOptions) -> Result<Self, PipelineError> {
        let spec = ProblemSpec {
            variables: system.variables,
            order: system.order,
            generators: system.generators,
            inequalities: system.inequalities,
            options,
            coordinate_change: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn parse(text: &str, options: RunOptions) -> Result<Self, PipelineError> {
        Self::new(parse_system(text)?, options)
    }

    fn validate(&self) -> Result<(), PipelineError> {
        if self.generators.is_empty() {
            return Err(PipelineError::Invalid("no generators".into()));
        }
        if self.generators.iter().chain(&self.inequalities).any(Polynomial::is_zero) {
            return Err(PipelineError::Invalid("zero polynomial".into()));
        }
        if self.inequalities.len() > MAX_INEQUALITIES {
            return Err(PipelineError::TooManyInequalities(self.inequalities.len()));
        }
        let tau = self.options.tau;
        if !(tau > 0.0 && tau < 0.1) {
            return Err(PipelineError::Invalid(format!("tolerance {tau} outside (0, 0.1)")));
        }
        if let Some(r) = self.options.ball {
            if !(r > 0.0 && r.is_finite()) {
                return Err(PipelineError::Invalid(format!("ball radius {r} must be positive")));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    /// `d = max_j ⌈deg h_j / 2⌉`.
    pub fn half_degree(&self) -> u32 {
        self.generators.iter().map(|h| half_degree(h.degree().unwrap_or(0))).max().unwrap_or(0).max(1)
    }

    /// First order of the sweep: `2d`, raised so that every generator has
    /// degree at most `t − 2` and can show up in the kernel of `M_{t−2}`.
    pub fn natural_start(&self) -> u32 {
        let maxdeg = self.generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        (2 * self.half_degree()).max(maxdeg + 2)
    }

    pub fn start_order(&self) -> u32 {
        self.options.t_start.unwrap_or_else(|| self.natural_start())
    }

    pub fn max_order(&self) -> u32 {
        self.options.t_max.unwrap_or(2 * self.half_degree() + 8).max(self.start_order())
    }

    /// Products `f^ν = Π f_i^{ν_i}` for `ν ∈ {0,1}^s \ {0}`, with labels.
    pub fn inequality_products(&self) -> Vec<(String, Polynomial<Rational>)> {
        let s = self.inequalities.len();
        (1u32..1 << s)
            .map(|mask| {
                let mut f = Polynomial::constant(self.nvars(), Rational::from_integer(1.into()));
                let mut label = Vec::new();
                for (i, g) in self.inequalities.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        f = f.mul(g);
                        label.push(format!("f{}", i + 1));
                    }
                }
                (label.join("*"), f)
            })
            .collect()
    }
}

/// Moment block `M_t`, localizing equalities for each generator, a PSD
/// localizer for every product of inequalities and the optional ball.
pub fn build_relaxation(spec: &ProblemSpec, t: u32) -> Result<RelaxationProblem, PipelineError> {
    spec.validate()?;
    let d = spec.half_degree();
    if t < d {
        return Err(PipelineError::OrderBelowDegree { t, d });
    }
    let n = spec.nvars();
    let mut problem = RelaxationProblem::new(n, t);
    for h in &spec.generators {
        problem.add_localizing_equalities(h)?;
    }
    for (label, f) in spec.inequality_products() {
        problem.add_psd_localizer(&label, &f)?;
    }
    if let Some(r) = spec.options.ball {
        let mut f = Polynomial::constant(n, r * r);
        for i in 0..n {
            f.add_term(Exponent::new((0..n).map(|j| if j == i { 2 } else { 0 }).collect()), -1.0);
        }
        problem.add_psd_localizer("ball", &f)?;
    }
    Ok(problem)
}

/// Everything computed at one order, kept for inspection.
#[derive(Clone, Debug)]
pub struct OrderAnalysis {
    pub record: OrderRecord,
    pub solve: SolveResult,
    pub moment: SymMatrix,
    /// Rank decisions for `M_t`, `M_{t−1}`, `M_{t−2}`.
    pub decisions: Vec<RankDecision>,
    /// Reduced basis of `ker M_{t−1}`.
    pub kernel: ReducedBasis,
}

impl OrderAnalysis {
    /// Elements of degree ≤ `t − 2`: the weak basis candidate.
    pub fn weak_basis(&self) -> Vec<Polynomial<f64>> {
        let t = self.record.t;
        self.kernel.elements.iter().filter(|p| p.degree().is_some_and(|d| d + 2 <= t)).cloned().collect()
    }
}

/// Solve at order `t` and evaluate the certificate there.
pub fn analyze_order(spec: &ProblemSpec, t: u32) -> Result<OrderAnalysis, PipelineError> {
    if t < 2 {
        return Err(PipelineError::Invalid(format!("order {t} is below 2")));
    }
    let problem = build_relaxation(spec, t)?;
    let opts = SolveOptions { seed: spec.options.seed, ..SolveOptions::default() };
    let solve = solve_generic(&problem, &opts);
    let n = spec.nvars();
    let tau = spec.options.tau;
    let moment = assemble_moment(&solve.y, t)?;
    let mut decisions = Vec::with_capacity(3);
    let mut kernel = None;
    for l in 0..3 {
        let m = moment.leading(index_size(n, t - l));
        if l == 1 {
            let b = reduced_kernel_basis(&m, problem.index(), tau)?;
            decisions.push(b.decision.clone());
            kernel = Some(b);
        } else {
            decisions.push(rank_and_nullspace(&m, tau)?.0);
        }
    }
    let kernel = kernel.expect("computed at l = 1");
    let profile = class_profile(&kernel.elements, n, t - 2);
    let by_degree = corank_profile(&kernel);
    let degree_profile: Vec<usize> = (0..t).map(|d| by_degree.get(&d).copied().unwrap_or(0)).collect();
    let top = degree_profile[(t - 1) as usize];
    let lower = kernel.corank() - top;
    let check = certificate_check(&profile, kernel.corank(), lower);
    let one_in_kernel = kernel.elements.iter().any(|p| p.degree() == Some(0));

    let mut notes = Vec::new();
    if let Some(d) = check.diagnostic.clone() {
        notes.push(d);
    }
    if kernel.corank() != decisions[1].corank {
        notes.push(format!("kernel reduction kept {} of {} vectors", kernel.corank(), decisions[1].corank));
    }
    let direct = decisions[1].corank as i64 - decisions[2].corank as i64;
    if direct != check.corank_diff {
        notes.push(format!("corank jump {direct} from the rank decisions, {} from the kernel basis", check.corank_diff));
    }
    if solve.status != SolveStatus::GenericPoint {
        notes.push(format!("solver status {:?}", solve.status));
    }
    if one_in_kernel {
        notes.push("the constant 1 lies in the kernel".into());
    }
    let pass = check.pass && solve.status == SolveStatus::GenericPoint && !one_in_kernel;
    let record = OrderRecord {
        t,
        rank: [decisions[0].rank, decisions[1].rank, decisions[2].rank],
        corank: [decisions[0].corank, decisions[1].corank, decisions[2].corank],
        alpha: profile.alpha,
        weighted_sum: profile.weighted_sum,
        corank_diff: check.corank_diff,
        pass,
        admissible: t >= spec.natural_start(),
        degree_profile,
        one_in_kernel,
        solver_status: solve.status,
        equality_residual: solve.residuals.equality,
        min_eigenvalues: solve.residuals.min_eigenvalues.clone(),
        iterations: solve.iterations,
        reductions: solve.reductions,
        diagnostic: (!notes.is_empty()).then(|| notes.join("; ")),
    };
    Ok(OrderAnalysis { record, solve, moment, decisions, kernel })
}

/// The order sweep on `spec` as given (no retries).
pub fn run_once(spec: &ProblemSpec) -> Result<CertificateReport, PipelineError> {
    spec.validate()?;
    let order = spec.order.clone();
    let mut descending = order.names().to_vec();
    descending.reverse();
    let mut report = CertificateReport {
        status: RunStatus::ExhaustedT,
        certified_t: None,
        records: Vec::new(),
        weak_basis: Vec::new(),
        strong_basis: Vec::new(),
        rationalized: false,
        solver: SolverSummary {
            residuals: Residuals { equality: 0.0, min_eigenvalues: Vec::new() },
            iterations: 0,
            seed: spec.options.seed,
        },
        order: descending,
        tau: spec.options.tau,
        coordinate_change: spec.coordinate_change.as_ref().map(matrix_strings),
        attempts: 1,
        diagnostic: None,
    };
    for t in spec.start_order().max(2)..=spec.max_order() {
        log::info!("order t = {t}");
        let a = analyze_order(spec, t)?;
        report.solver.iterations += a.solve.iterations;
        report.solver.residuals = a.solve.residuals.clone();
        let record = a.record.clone();
        report.records.push(record.clone());
        if a.solve.status == SolveStatus::Infeasible || record.one_in_kernel {
            report.status = RunStatus::Infeasible;
            report.diagnostic = Some(format!("no real point satisfies the constraints (order {t})"));
            return Ok(report);
        }
        if !(record.pass && record.admissible) {
            continue;
        }
        let weak = a.weak_basis();
        report.status = RunStatus::Certified;
        report.certified_t = Some(t);
        report.weak_basis = weak.iter().map(|p| p.display(&order)).collect();
        let strong = match strong_from_weak(&weak) {
            Ok(s) => s.elements,
            Err(e) => {
                report.diagnostic = Some(format!("strong basis: {e}"));
                return Ok(report);
            }
        };
        match rationalize_basis(&strong, &spec.generators, spec.options.rational_tol) {
            Rationalized::Exact(exact) => {
                report.rationalized = true;
                report.strong_basis = exact.iter().map(|p| p.display(&order)).collect();
            }
            Rationalized::Rejected { reason } => {
                report.strong_basis = strong.iter().map(|p| p.display(&order)).collect();
                report.diagnostic = Some(format!("kept floating-point basis: {reason}"));
            }
        }
        return Ok(report);
    }
    report.diagnostic = Some(format!(
        "certificate not satisfied up to t = {}; the coordinates may not be δ-regular, try a coordinate change",
        spec.max_order()
    ));
    Ok(report)
}

/// The order sweep, followed (when enabled) by up to three retries in
/// seeded random coordinates if no order passes.
pub fn run(spec: &ProblemSpec) -> Result<CertificateReport, PipelineError> {
    let mut report = run_once(spec)?;
    if report.status != RunStatus::ExhaustedT || !spec.options.auto_retry {
        return Ok(report);
    }
    for k in 1..=MAX_RETRIES {
        let a = random_invertible(spec.nvars(), spec.options.seed.wrapping_add(k as u64));
        let changed = apply_coordinate_change(spec, &a)?;
        log::info!("retry {k} in random coordinates");
        report = run_once(&changed)?;
        report.attempts = k + 1;
        if report.status != RunStatus::ExhaustedT {
            break;
        }
    }
    Ok(report)
}
