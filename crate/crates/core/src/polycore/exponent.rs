use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Multi-index `ν ∈ ℕⁿ` of a monomial, stored in internal variable order
/// (index 0 is the grevlex-smallest variable).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent {
    entries: Vec<u32>,
    degree: u32,
}

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        let degree = entries.iter().sum();
        Exponent { entries, degree }
    }

    pub fn zero(n: usize) -> Self {
        Exponent { entries: vec![0; n], degree: 0 }
    }

    /// The exponent of the single variable with internal index `i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut entries = vec![0; n];
        entries[i] = 1;
        Exponent { entries, degree: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Exponent { entries, degree: self.degree + other.degree }
    }

    /// `self − other` when it stays in ℕⁿ.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(a.checked_sub(*b)?);
        }
        Some(Exponent { entries, degree: self.degree - other.degree })
    }

    /// Ordinary divisibility `x^self | x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent::new(self.entries.iter().zip(&other.entries).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Class of the multi index: the smallest 1-based `k` with `ν_k ≠ 0`.
    /// The zero exponent has class `n`, so every variable is multiplicative for it.
    pub fn class(&self) -> usize {
        self.entries
            .iter()
            .position(|&e| e != 0)
            .map_or(self.entries.len(), |k| k + 1)
    }
}

/// Graded reverse lexicographic comparison.
///
/// `a ≺ b` iff `|a| < |b|`, or the degrees agree and the first non-vanishing
/// entry of `a − b` is positive.
pub fn grevlex_compare(a: &Exponent, b: &Exponent) -> Result<Ordering, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::DimensionMismatch { left: a.nvars(), right: b.nvars() });
    }
    Ok(grevlex_unchecked(a, b))
}

fn grevlex_unchecked(a: &Exponent, b: &Exponent) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.entries.iter().zip(&b.entries) {
        if x != y {
            // a larger entry in an earlier (smaller) variable makes the monomial smaller
            return if x > y { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.nvars().cmp(&other.nvars()) {
            Ordering::Equal => grevlex_unchecked(self, other),
            other => other,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}
