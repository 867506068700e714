use std::collections::BTreeMap;

use super::coeff::Coeff;
use super::exponent::Exponent;
use super::order::VariableOrder;

/// Sparse polynomial: exponent → nonzero coefficient, keyed in grevlex order,
/// so the leading term is the last entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let nvars = e.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { nvars, terms }
    }

    /// The variable with internal index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), C::one())
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.nvars(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in grevlex-ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).filter(|(_, v)| !v.is_zero());
        Polynomial { nvars: self.nvars, terms: terms.collect() }
    }

    /// `c·x^e·self`.
    pub fn mul_monomial(&self, e: &Exponent, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (f, v) in &self.terms {
            let w = v.mul(c);
            if !w.is_zero() {
                out.terms.insert(f.add(e), w);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &other.terms {
            for (f, v) in &self.terms {
                out.add_term(f.add(e), v.mul(c));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, C::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = C::one().div(lc);
                let mut out = self.scale(&inv);
                if let Some((e, _)) = self.leading_term() {
                    out.terms.insert(e.clone(), C::one());
                }
                out
            }
            None => self.clone(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).filter(|(_, c)| !c.is_zero());
        Polynomial { nvars: self.nvars, terms: terms.collect() }
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map_coeffs(C::to_f64)
    }

    /// Substitute polynomial `images[i]` for the variable with internal index `i`.
    pub fn compose(&self, images: &[Polynomial<C>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let out_n = images.first().map_or(self.nvars, Polynomial::nvars);
        let mut out = Polynomial::zero(out_n);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(out_n, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Largest absolute coefficient, as a double.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Canonical text form in user variable names, terms grevlex-descending.
    pub fn display(&self, order: &VariableOrder) -> String {
        super::parse::format_polynomial(self, order)
    }
}
