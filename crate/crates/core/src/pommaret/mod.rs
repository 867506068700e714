//! Pommaret division, the corank certificate, strong bases and involutive
//! normal forms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{Coeff, Exponent, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PommaretError {
    #[error("two basis elements share the leading exponent {0:?}")]
    DuplicateLeading(Vec<u32>),
    #[error("Gröbner verification needs exact coefficients")]
    InexactCoefficients,
    #[error("zero polynomial in basis")]
    ZeroElement,
}

/// Multiplicative variables of `e` (1-based internal indices): `{1, …, cls(e)}`.
pub fn multiplicative_variables(e: &Exponent) -> Vec<usize> {
    (1..=e.class()).collect()
}

/// `d` is a Pommaret divisor of `m`: `m − d ∈ ℕⁿ` and it only involves
/// variables `x_j` with `j ≤ cls(d)`.
pub fn involutively_divides(d: &Exponent, m: &Exponent) -> bool {
    let cls = d.class();
    d.entries().iter().zip(m.entries()).enumerate().all(|(j, (a, b))| a <= b && (j < cls || a == b))
}

/// `α_j` = number of degree-`deg` elements of class `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub alpha: Vec<usize>,
    pub weighted_sum: usize,
}

pub fn class_profile<C: Coeff>(elements: &[Polynomial<C>], nvars: usize, deg: u32) -> ClassProfile {
    let mut alpha = vec![0; nvars];
    for p in elements {
        if let Some(e) = p.leading_exponent() {
            if e.degree() == deg {
                alpha[e.class() - 1] += 1;
            }
        }
    }
    let weighted_sum = alpha.iter().enumerate().map(|(j, a)| (j + 1) * a).sum();
    ClassProfile { alpha, weighted_sum }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub pass: bool,
    pub corank_diff: i64,
    pub diagnostic: Option<String>,
}

/// `Σ j·α_j = crk M_{t−1} − crk M_{t−2}`.
pub fn certificate_check(profile: &ClassProfile, crk_tm1: usize, crk_tm2: usize) -> CertificateCheck {
    let diff = crk_tm1 as i64 - crk_tm2 as i64;
    if diff < 0 {
        return CertificateCheck {
            pass: false,
            corank_diff: diff,
            diagnostic: Some(format!("corank decreased from {crk_tm2} to {crk_tm1}: inconsistent numerical ranks")),
        };
    }
    CertificateCheck { pass: profile.weighted_sum as i64 == diff, corank_diff: diff, diagnostic: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strength {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PommaretBasis<C: Coeff> {
    pub elements: Vec<Polynomial<C>>,
    pub strength: Strength,
}

impl<C: Coeff> PommaretBasis<C> {
    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.elements.iter().filter_map(|p| p.leading_exponent().cloned()).collect()
    }

    pub fn multiplicative_sets(&self) -> Vec<Vec<usize>> {
        self.leading_exponents().iter().map(multiplicative_variables).collect()
    }

    /// No leading exponent involutively divides another one.
    pub fn cones_disjoint(&self) -> bool {
        let lead = self.leading_exponents();
        for (i, a) in lead.iter().enumerate() {
            for (j, b) in lead.iter().enumerate() {
                if i != j && involutively_divides(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

fn remove_leading_exact<C: Coeff>(p: &mut Polynomial<C>, e: &Exponent) {
    let c = p.coeff(e);
    if !c.is_zero() {
        p.add_term(e.clone(), c.neg());
    }
}

/// One reduction step `p ← p − (c/lc h)·x^{m − lee h}·h` cancelling the term at `m`.
fn cancel<C: Coeff>(p: &Polynomial<C>, m: &Exponent, c: &C, h: &Polynomial<C>) -> Polynomial<C> {
    let (lee, lc) = h.leading_term().expect("nonzero divisor");
    let mu = m.checked_sub(lee).expect("divisible");
    let mut out = p.sub(&h.mul_monomial(&mu, &c.div(lc)));
    remove_leading_exact(&mut out, m);
    out
}

/// Involutive normal form: cancel terms involutively divisible by a leading
/// exponent of `basis`, largest first, until none is left.
pub fn involutive_normal_form<C: Coeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    normal_form_by(f, basis, involutively_divides)
}

/// Ordinary (non-involutive) multivariate division remainder.
pub fn normal_form<C: Coeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    normal_form_by(f, basis, |d, m| d.divides(m))
}

fn normal_form_by<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
    divides: impl Fn(&Exponent, &Exponent) -> bool,
) -> Polynomial<C> {
    let lead: Vec<Exponent> = basis.iter().filter_map(|h| h.leading_exponent().cloned()).collect();
    let mut p = f.clone();
    let mut rest = Polynomial::zero(f.nvars());
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match lead.iter().position(|d| divides(d, &m)) {
            Some(k) => p = cancel(&p, &m, &c, &basis[k]),
            None => {
                rest.add_term(m.clone(), c);
                remove_leading_exact(&mut p, &m);
            }
        }
    }
    rest
}

/// Drop elements whose leading exponent is involutively divided by another
/// one, then reduce every tail involutively.
pub fn strong_from_weak<C: Coeff>(weak: &[Polynomial<C>]) -> Result<PommaretBasis<C>, PommaretError> {
    let mut elems: Vec<Polynomial<C>> = Vec::with_capacity(weak.len());
    for p in weak {
        if p.is_zero() {
            return Err(PommaretError::ZeroElement);
        }
        elems.push(p.monic());
    }
    elems.sort_by(|a, b| b.leading_exponent().cmp(&a.leading_exponent()));
    for w in elems.windows(2) {
        if w[0].leading_exponent() == w[1].leading_exponent() {
            let e = w[0].leading_exponent().expect("nonzero");
            return Err(PommaretError::DuplicateLeading(e.entries().to_vec()));
        }
    }
    let lead: Vec<Exponent> = elems.iter().map(|p| p.leading_exponent().expect("nonzero").clone()).collect();
    let keep: Vec<Polynomial<C>> = elems
        .iter()
        .zip(&lead)
        .filter(|(_, e)| !lead.iter().any(|d| d != *e && involutively_divides(d, e)))
        .map(|(p, _)| p.clone())
        .collect();
    let mut out = keep.clone();
    for i in 0..out.len() {
        let (lee, lc) = out[i].leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
        let mut tail = out[i].clone();
        remove_leading_exact(&mut tail, &lee);
        let mut reduced = involutive_normal_form(&tail, &out);
        reduced.add_term(lee, lc);
        out[i] = reduced;
    }
    Ok(PommaretBasis { elements: out, strength: Strength::Strong })
}

fn s_polynomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let (ef, cf) = f.leading_term().expect("nonzero");
    let (eg, cg) = g.leading_term().expect("nonzero");
    let l = ef.lcm(eg);
    let a = f.mul_monomial(&l.checked_sub(ef).expect("lcm"), &C::one().div(cf));
    let b = g.mul_monomial(&l.checked_sub(eg).expect("lcm"), &C::one().div(cg));
    let mut s = a.sub(&b);
    remove_leading_exact(&mut s, &l);
    s
}

/// Buchberger's criterion: every S-polynomial reduces to zero. Pairs with
/// coprime leading monomials are skipped.
pub fn groebner_verify<C: Coeff>(basis: &[Polynomial<C>]) -> Result<bool, PommaretError> {
    if !C::is_exact() {
        return Err(PommaretError::InexactCoefficients);
    }
    if basis.iter().any(Polynomial::is_zero) {
        return Err(PommaretError::ZeroElement);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (basis[i].leading_exponent().expect("nonzero"), basis[j].leading_exponent().expect("nonzero"));
            if a.is_coprime(b) {
                continue;
            }
            if !normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
