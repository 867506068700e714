use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::{RelaxationProblem, SolveOptions, SolveStatus};
use crate::linalg::{orthogonal_complement, solve_affine, svd_nullspace, sym_eigen, SymMatrix};

const MAX_REDUCTIONS: usize = 64;
/// Singular values below this (relative) are exact zeros of the pencil.
const PENCIL_ZERO: f64 = 1e-11;

pub(super) struct Outcome {
    pub y: Vec<f64>,
    pub status: SolveStatus,
    pub iterations: usize,
    pub reductions: usize,
}

/// Block restricted to its current face: `S(z) = s0 + Σ z_a si[a]`.
struct Pencil {
    s0: DMatrix<f64>,
    si: Vec<DMatrix<f64>>,
}

impl Pencil {
    fn dim(&self) -> usize {
        self.s0.nrows()
    }

    fn at(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let mut x = self.s0.clone();
        for (a, s) in self.si.iter().enumerate() {
            if z[a] != 0.0 {
                x += s * z[a];
            }
        }
        x
    }
}

/// Affine parametrization `y = yp + nz·z` plus per-block face bases.
struct Face {
    yp: DVector<f64>,
    nz: DMatrix<f64>,
    us: Vec<DMatrix<f64>>,
}

impl Face {
    fn pencils(&self, problem: &RelaxationProblem) -> Vec<Pencil> {
        problem
            .psd_blocks
            .iter()
            .zip(&self.us)
            .map(|(b, u)| {
                let ut = u.transpose();
                let s0 = &ut * b.map.evaluate(self.yp.as_slice()) * u;
                let si = (0..self.nz.ncols())
                    .map(|a| {
                        let col: Vec<f64> = self.nz.column(a).iter().copied().collect();
                        &ut * b.map.evaluate(&col) * u
                    })
                    .collect();
                Pencil { s0, si }
            })
            .collect()
    }

    /// Impose `S_k(z) V_k = 0` for every `(k, V_k)`, keeping the affine set
    /// through `zs` as far as the new equations allow, and shrink the faces.
    fn impose(&mut self, pencils: &[Pencil], cons: &[(usize, DMatrix<f64>)], zs: &DVector<f64>) {
        let p = self.nz.ncols();
        if p > 0 {
            let nrows: usize = cons.iter().map(|(k, v)| pencils[*k].dim() * v.ncols()).sum();
            let mut m = DMatrix::zeros(nrows, p);
            let mut c = DVector::zeros(nrows);
            let mut scale = 1.0f64;
            let mut off = 0;
            for (k, v) in cons {
                let pen = &pencils[*k];
                let r = pen.dim();
                let s0v = &pen.s0 * v;
                for (a, s) in pen.si.iter().enumerate() {
                    scale = scale.max(s.amax());
                    let sv = s * v;
                    for q in 0..v.ncols() {
                        for i in 0..r {
                            m[(off + q * r + i, a)] = sv[(i, q)];
                        }
                    }
                }
                for q in 0..v.ncols() {
                    for i in 0..r {
                        c[off + q * r + i] = -s0v[(i, q)];
                    }
                }
                off += r * v.ncols();
            }
            let rhs = &c - &m * zs;
            let sol = solve_affine(&m, &rhs, |_| PENCIL_ZERO * scale);
            let zp = zs + &sol.particular;
            log::debug!(
                "imposed {} directions, rank {}, residual {:.1e}",
                cons.iter().map(|(_, v)| v.ncols()).sum::<usize>(),
                sol.rank,
                (&m * &zp - &c).amax()
            );
            self.yp = &self.yp + &self.nz * zp;
            self.nz = &self.nz * sol.null;
        }
        for (k, v) in cons {
            self.us[*k] = &self.us[*k] * orthogonal_complement(v);
        }
    }
}

pub(super) fn solve(problem: &RelaxationProblem, opts: &SolveOptions, weight: Option<&DMatrix<f64>>) -> Outcome {
    let nm = problem.nmoments();
    let fail = |status, iterations, reductions| Outcome { y: vec![0.0; nm], status, iterations, reductions };

    // y_0 = 1 together with the equality rows
    let rows = problem.eq_rows.len() + 1;
    let mut a = DMatrix::zeros(rows, nm);
    let mut b = DVector::zeros(rows);
    a[(0, 0)] = 1.0;
    b[0] = 1.0;
    for (i, row) in problem.eq_rows.iter().enumerate() {
        let norm = row.iter().map(|&(_, c)| c * c).sum::<f64>().sqrt();
        for &(p, c) in row {
            a[(i + 1, p)] = c / norm;
        }
    }
    let sol = solve_affine(&a, &b, |smax| 1e-11 * smax);
    if (&a * &sol.particular - &b).amax() > 1e-9 {
        return fail(SolveStatus::Infeasible, 0, 0);
    }
    let mut face = Face {
        yp: sol.particular,
        nz: sol.null,
        us: problem.psd_blocks.iter().map(|b| DMatrix::identity(b.map.dim(), b.map.dim())).collect(),
    };

    let mut iterations = 0;
    for reductions in 0..MAX_REDUCTIONS {
        let pencils = face.pencils(problem);
        let p = face.nz.ncols();

        // directions on which a block vanishes identically over the affine set
        let mut lin = Vec::new();
        for (k, pen) in pencils.iter().enumerate() {
            let r = pen.dim();
            if r == 0 {
                continue;
            }
            let mut stacked = DMatrix::zeros((p + 1) * r, r);
            stacked.view_mut((0, 0), (r, r)).copy_from(&pen.s0);
            for (a, s) in pen.si.iter().enumerate() {
                stacked.view_mut(((a + 1) * r, 0), (r, r)).copy_from(s);
            }
            let ns = svd_nullspace(&stacked, |smax| PENCIL_ZERO * smax.max(1.0));
            if ns.basis.ncols() > 0 {
                log::debug!("block {k}: {} directions vanish on the affine set", ns.basis.ncols());
                lin.push((k, ns.basis));
            }
        }
        if !lin.is_empty() {
            face.impose(&pencils, &lin, &DVector::zeros(p));
            continue;
        }

        let mut t_bound = None;
        let mut aux = phase_one(&pencils, opts, t_bound);
        iterations += aux.iterations;
        for _ in 0..4 {
            if aux.status == AuxStatus::Strict || !aux.trace_active {
                break;
            }
            t_bound = Some(aux.t_bound * 100.0);
            aux = phase_one(&pencils, opts, t_bound);
            iterations += aux.iterations;
        }
        log::debug!("phase one: s = {:.3e} ({:?})", aux.s, aux.status);
        match aux.status {
            AuxStatus::Strict => {
                let (z, it) = center(problem, &face, aux.z, opts, weight);
                iterations += it;
                let y = &face.yp + &face.nz * z;
                return Outcome { y: y.iter().copied().collect(), status: SolveStatus::GenericPoint, iterations, reductions };
            }
            AuxStatus::Infeasible => return fail(SolveStatus::Infeasible, iterations, reductions),
            AuxStatus::Face => {}
        }

        // exposing step: the near-zero eigenvalue cluster at the phase-one point
        let mut cons = Vec::new();
        for (k, pen) in pencils.iter().enumerate() {
            if pen.dim() == 0 {
                continue;
            }
            let x = SymMatrix::from_dmatrix(&pen.at(&aux.z));
            let Ok(eig) = sym_eigen(&x) else {
                return fail(SolveStatus::NumericalFailure, iterations, reductions);
            };
            let w = &eig.values;
            let lw: Vec<f64> = w.iter().map(|v| v.abs().max(1e-300).log10()).collect();
            let top = *w.last().expect("nonempty block");
            let best = (0..w.len().saturating_sub(1))
                .max_by(|&i, &j| (lw[i + 1] - lw[i]).total_cmp(&(lw[j + 1] - lw[j])));
            if let Some(j) = best {
                if lw[j + 1] - lw[j] > 3.0 && w[j] < 1e-6 * top {
                    let v = eig.vectors.columns(0, j + 1).into_owned();
                    log::debug!("block {k}: exposing {} directions", j + 1);
                    cons.push((k, v));
                }
            }
        }
        if cons.is_empty() {
            return fail(SolveStatus::NumericalFailure, iterations, reductions);
        }
        face.impose(&pencils, &cons, &aux.z);
    }
    fail(SolveStatus::NumericalFailure, iterations, MAX_REDUCTIONS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AuxStatus {
    Strict,
    Face,
    Infeasible,
}

struct AuxOutcome {
    status: AuxStatus,
    z: DVector<f64>,
    s: f64,
    t_bound: f64,
    trace_active: bool,
    iterations: usize,
}

/// `L⁻¹` for the Cholesky factor `L`; congruences then become two products.
fn inverse_factor(chol: &Cholesky<f64, Dyn>) -> DMatrix<f64> {
    let l = chol.l();
    let r = l.nrows();
    l.solve_lower_triangular(&DMatrix::identity(r, r)).expect("nonsingular factor")
}

/// Add `μ·⟨G_a, G_b⟩` to `h` and `−μ·tr G_a` to `grad`, with
/// `G_a = L⁻¹ E_a L⁻ᵀ`. The Gram matrix is one dense product.
fn accumulate_barrier(linv: &DMatrix<f64>, es: &[&DMatrix<f64>], mu: f64, grad: &mut DVector<f64>, h: &mut DMatrix<f64>) {
    let r = linv.nrows();
    let mut g = DMatrix::zeros(r * r, es.len());
    for (a, e) in es.iter().enumerate() {
        let ga = linv * *e * linv.transpose();
        grad[a] -= mu * ga.trace();
        g.column_mut(a).copy_from_slice(ga.as_slice());
    }
    h.gemm_tr(mu, &g, &g, 1.0);
}

fn log_det(chol: &Cholesky<f64, Dyn>) -> f64 {
    2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>()
}

fn frob_dot(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn solve_newton(h: DMatrix<f64>, grad: &DVector<f64>) -> DVector<f64> {
    let n = h.nrows();
    if let Some(ch) = Cholesky::new(h.clone()) {
        return -ch.solve(grad);
    }
    let ridge = 1e-12 * h.diagonal().amax().max(1e-300);
    let h2 = h + DMatrix::identity(n, n) * ridge;
    match Cholesky::new(h2.clone()) {
        Some(ch) => -ch.solve(grad),
        None => -h2.lu().solve(grad).unwrap_or_else(|| grad.clone()),
    }
}

/// Minimize `−s − μ(Σ log det(S_k(z) − sI) + log(T − tr S_0(z)))` along a
/// decreasing `μ`. A positive optimum means a strictly feasible point.
fn phase_one(pencils: &[Pencil], opts: &SolveOptions, t_fix: Option<f64>) -> AuxOutcome {
    let active: Vec<&Pencil> = pencils.iter().filter(|p| p.dim() > 0).collect();
    let p = pencils[0].si.len();
    let mut z = DVector::zeros(p);
    let mats = |z: &DVector<f64>| -> Vec<DMatrix<f64>> { active.iter().map(|pen| pen.at(z)).collect() };
    let min_eig = |xs: &[DMatrix<f64>]| -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for x in xs {
            if let Ok(e) = sym_eigen(&SymMatrix::from_dmatrix(x)) {
                lo = lo.min(e.values[0]);
                hi = hi.max(*e.values.last().expect("nonempty"));
            }
        }
        (lo, hi)
    };
    let x0 = mats(&z);
    let (lo, _) = min_eig(&x0);
    let mut s = lo - 1.0;
    let tr0 = pencils[0].s0.trace();
    let t_bound = t_fix.unwrap_or_else(|| (10.0 * tr0.abs()).max(10.0 * pencils[0].dim() as f64));
    let trv: DVector<f64> = DVector::from_iterator(p + 1, pencils[0].si.iter().map(|s| s.trace()).chain([0.0]));
    let nb: usize = active.iter().map(|p| p.dim()).sum::<usize>() + 1;

    let objective = |z: &DVector<f64>, s: f64, mu: f64| -> f64 {
        let mut tot = -s;
        for pen in &active {
            let mut x = pen.at(z);
            for i in 0..x.nrows() {
                x[(i, i)] -= s;
            }
            match Cholesky::new(x) {
                Some(ch) => tot -= mu * log_det(&ch),
                None => return f64::INFINITY,
            }
        }
        let g = t_bound - pencils[0].at(z).trace();
        if g <= 0.0 {
            return f64::INFINITY;
        }
        tot - mu * g.ln()
    };

    let mut mu = 1.0;
    let mut iterations = 0;
    let mut status = None;
    for _outer in 0..200 {
        for _ in 0..opts.max_iter.max(1) {
            iterations += 1;
            let mut grad = DVector::zeros(p + 1);
            grad[p] = -1.0;
            let mut h = DMatrix::zeros(p + 1, p + 1);
            for pen in &active {
                let r = pen.dim();
                let mut x = pen.at(&z);
                for i in 0..r {
                    x[(i, i)] -= s;
                }
                let Some(ch) = Cholesky::new(x) else { break };
                let neg_id = -DMatrix::<f64>::identity(r, r);
                let es: Vec<&DMatrix<f64>> = pen.si.iter().chain([&neg_id]).collect();
                accumulate_barrier(&inverse_factor(&ch), &es, mu, &mut grad, &mut h);
            }
            let g = t_bound - pencils[0].at(&z).trace();
            grad += &trv * (mu / g);
            h += &trv * trv.transpose() * (mu / (g * g));
            let d = solve_newton(h, &grad);
            let dec = -grad.dot(&d);
            let f0 = objective(&z, s, mu);
            let slope = grad.dot(&d);
            let mut step = 1.0;
            loop {
                let zn = &z + d.rows(0, p) * step;
                if objective(&zn, s + step * d[p], mu) <= f0 + 0.25 * step * slope {
                    break;
                }
                step *= 0.5;
                if step < 1e-12 {
                    break;
                }
            }
            if step >= 1e-12 {
                z += d.rows(0, p) * step;
                s += step * d[p];
            }
            log::trace!("phase one: mu {mu:.1e} s {s:.3e} dec {dec:.3e} step {step:.1e}");
            if dec < 1e-9 || step < 1e-12 {
                break;
            }
        }
        let xs = mats(&z);
        let (_, hi) = min_eig(&xs);
        // any margin clear of rounding is a strict point; centering does the rest
        if t_fix.is_none() && s > 1e-8 * hi.max(1.0) {
            status = Some(AuxStatus::Strict);
            break;
        }
        if mu * (nb as f64) < 1e-13 {
            break;
        }
        mu *= 0.2;
    }
    let xs = mats(&z);
    let (_, hi) = min_eig(&xs);
    let status = status.unwrap_or(if s > 1e-12 * hi.max(1.0) {
        AuxStatus::Strict
    } else if s < -1e-7 * hi.max(1.0) {
        AuxStatus::Infeasible
    } else {
        AuxStatus::Face
    });
    let slack = t_bound - pencils[0].at(&z).trace();
    AuxOutcome { status, z, s, t_bound, trace_active: slack < 1e-2 * t_bound, iterations }
}

/// Maximize `Σ_k log det S_k(z) − ⟨W, M_t(y)⟩` (W = I by default) from a
/// strictly feasible start.
fn center(
    problem: &RelaxationProblem,
    face: &Face,
    z0: DVector<f64>,
    opts: &SolveOptions,
    weight: Option<&DMatrix<f64>>,
) -> (DVector<f64>, usize) {
    let pencils = face.pencils(problem);
    let active: Vec<&Pencil> = pencils.iter().filter(|p| p.dim() > 0).collect();
    let p = face.nz.ncols();
    let moment = &problem.psd_blocks[0].map;
    let lin = |v: &[f64]| -> f64 {
        let b = moment.evaluate(v);
        match weight {
            Some(w) => frob_dot(w, &b),
            None => b.trace(),
        }
    };
    let c = DVector::from_iterator(
        p,
        (0..p).map(|a| {
            let col: Vec<f64> = face.nz.column(a).iter().copied().collect();
            lin(&col)
        }),
    );
    let objective = |z: &DVector<f64>| -> f64 {
        let mut tot = c.dot(z);
        for pen in &active {
            match Cholesky::new(pen.at(z)) {
                Some(ch) => tot -= log_det(&ch),
                None => return f64::INFINITY,
            }
        }
        tot
    };
    let mut z = z0;
    let mut iterations = 0;
    for _ in 0..opts.max_iter.max(1) {
        iterations += 1;
        let mut grad = c.clone();
        let mut h = DMatrix::zeros(p, p);
        for pen in &active {
            let Some(ch) = Cholesky::new(pen.at(&z)) else { break };
            let es: Vec<&DMatrix<f64>> = pen.si.iter().collect();
            accumulate_barrier(&inverse_factor(&ch), &es, 1.0, &mut grad, &mut h);
        }
        if p == 0 {
            break;
        }
        let d = solve_newton(h, &grad);
        let dec = -grad.dot(&d);
        let f0 = objective(&z);
        let slope = grad.dot(&d);
        let mut step = 1.0;
        while objective(&(&z + &d * step)) > f0 + 0.25 * step * slope {
            step *= 0.5;
            if step < 1e-14 {
                break;
            }
        }
        if step < 1e-14 {
            break;
        }
        z += &d * step;
        log::trace!("center: dec {dec:.3e} step {step:.1e}");
        // past 1e-12 a damped step only means rounding has taken over
        if dec < 1e-20 || (dec < 1e-12 && step < 1.0) {
            break;
        }
    }
    (z, iterations)
}
