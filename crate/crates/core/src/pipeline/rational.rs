use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::pommaret::{groebner_verify, involutive_normal_form, strong_from_weak};
use crate::polycore::{Polynomial, Rational};

/// The rational with smallest denominator (then numerator) in `[lo, hi]`, `lo ≤ hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(Rational::one() / (hi - &fl)), &(Rational::one() / (lo - &fl)));
    fl + Rational::one() / inner
}

/// Simplest rational within `tol` of `x`.
pub fn rationalize(x: f64, tol: f64) -> Option<Rational> {
    let c = Rational::from_float(x)?;
    let t = Rational::from_float(tol)?;
    Some(simplest_between(&(&c - &t), &(&c + &t)))
}

/// Largest denominator accepted at tolerance `tol`: `tol^(−1/3)`. Almost
/// every real has an approximation within `tol` with denominator near
/// `tol^(−1/2)`, so those carry no information.
pub fn max_denominator(tol: f64) -> u64 {
    tol.powf(-1.0 / 3.0).round().max(1.0) as u64
}

/// Replace every coefficient by its simplest rational approximation;
/// `None` if some coefficient needs a denominator above [`max_denominator`].
pub fn rationalize_polynomial(p: &Polynomial<f64>, tol: f64) -> Option<Polynomial<Rational>> {
    let bound = BigInt::from(max_denominator(tol));
    let mut terms = Vec::with_capacity(p.len());
    for (e, c) in p.terms() {
        let q = rationalize(*c, tol)?;
        if q.denom() > &bound {
            return None;
        }
        terms.push((e.clone(), q));
    }
    Some(Polynomial::from_terms(p.nvars(), terms))
}

#[derive(Clone, Debug)]
pub enum Rationalized {
    /// Exact strong basis: generators reduce to zero and it is a Gröbner basis.
    Exact(Vec<Polynomial<Rational>>),
    /// Checks failed; the floating basis is kept.
    Rejected { reason: String },
}

/// Rationalize a floating strong basis and accept it only if every generator
/// has involutive normal form zero and Buchberger's criterion holds.
pub fn rationalize_basis(basis: &[Polynomial<f64>], generators: &[Polynomial<Rational>], tol: f64) -> Rationalized {
    let mut exact = Vec::with_capacity(basis.len());
    let mut failed = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        match rationalize_polynomial(p, tol) {
            Some(q) if !q.is_zero() => exact.push(q),
            _ => failed.push(k + 1),
        }
    }
    if !failed.is_empty() {
        let list = failed.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Rationalized::Rejected { reason: format!("no small-denominator rational form for element(s) {list}") };
    }
    // re-run the strong reduction in exact arithmetic so tails are consistent
    let strong = match strong_from_weak(&exact) {
        Ok(s) => s.elements,
        Err(e) => return Rationalized::Rejected { reason: e.to_string() },
    };
    for h in generators {
        if !involutive_normal_form(h, &strong).is_zero() {
            return Rationalized::Rejected { reason: "a generator has nonzero normal form".into() };
        }
    }
    match groebner_verify(&strong) {
        Ok(true) => Rationalized::Exact(strong),
        Ok(false) => Rationalized::Rejected { reason: "S-polynomial with nonzero remainder".into() },
        Err(e) => Rationalized::Rejected { reason: e.to_string() },
    }
}

/// Scale an exact polynomial to coprime integer coefficients with positive
/// leading coefficient.
pub fn primitive_part(p: &Polynomial<Rational>) -> Polynomial<Rational> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    for (_, c) in p.terms() {
        gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
    }
    if gcd.is_zero() {
        return p.clone();
    }
    let mut f = Rational::new(lcm, gcd);
    if p.leading_coeff().is_some_and(|c| c.is_negative()) {
        f = -f;
    }
    p.scale(&f)
}
