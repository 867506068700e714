use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PipelineError, ProblemSpec};
use crate::polycore::{Coeff, Exponent, Polynomial, Rational};

/// Square rational matrix, rows and columns in the order of the `vars:` line.
pub type RationalMatrix = Vec<Vec<Rational>>;

/// Parse a whitespace-separated matrix; `#` starts a comment. Entries are
/// integers, decimals or fractions `p/q`.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix, PipelineError> {
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PipelineError::Matrix(format!("line {}: bad entry", lineno + 1)))?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PipelineError::Matrix("matrix must be square and nonempty".into()));
    }
    Ok(rows)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let q = match body.split_once('/') {
        Some((a, b)) => {
            let den = Rational::parse_literal(b)?;
            if den.is_zero() {
                return None;
            }
            Rational::parse_literal(a)? / den
        }
        None => Rational::parse_literal(body)?,
    };
    Some(if neg { -q } else { q })
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn invert(a: &RationalMatrix) -> Option<RationalMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for v in &mut m[col] {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rewrite the system in the coordinates `x̃ = A·x` (vectors in `vars:` order):
/// every `p(x)` becomes `p(A⁻¹x̃)`. The new variables keep the old names and
/// order. Generators are interreduced afterwards.
pub fn apply_coordinate_change(spec: &ProblemSpec, a: &RationalMatrix) -> Result<ProblemSpec, PipelineError> {
    let n = spec.order.nvars();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(PipelineError::Matrix(format!("expected a {n}×{n} matrix")));
    }
    let inv = invert(a).ok_or(PipelineError::SingularMatrix)?;
    let internal: Vec<usize> = spec
        .variables
        .iter()
        .map(|v| spec.order.index_of(v).expect("variables belong to the order"))
        .collect();
    let mut images = vec![Polynomial::zero(n); n];
    for (i, row) in inv.iter().enumerate() {
        let terms = row.iter().enumerate().map(|(j, c)| (Exponent::unit(n, internal[j]), c.clone()));
        images[internal[i]] = Polynomial::from_terms(n, terms);
    }
    let generators: Vec<Polynomial<Rational>> = spec.generators.iter().map(|h| h.compose(&images)).collect();
    let inequalities = spec.inequalities.iter().map(|f| f.compose(&images)).collect();
    let mut out = spec.clone();
    out.generators = interreduce(&generators);
    if out.generators.is_empty() {
        return Err(PipelineError::Invalid("generators vanish after the coordinate change".into()));
    }
    out.inequalities = inequalities;
    out.coordinate_change = Some(a.clone());
    Ok(out)
}

/// Linear interreduction: reduced row echelon form of the coefficient
/// vectors, columns grevlex-descending, unit leading coefficients.
pub fn interreduce(polys: &[Polynomial<Rational>]) -> Vec<Polynomial<Rational>> {
    let mut rows: Vec<Polynomial<Rational>> = Vec::new();
    for p in polys {
        let mut r = p.clone();
        for b in &rows {
            let (e, _) = b.leading_term().expect("nonzero");
            let c = r.coeff(e);
            if !c.is_zero() {
                r = r.sub(&b.scale(&c));
            }
        }
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let e = r.leading_exponent().expect("nonzero").clone();
        for b in &mut rows {
            let c = b.coeff(&e);
            if !c.is_zero() {
                *b = b.sub(&r.scale(&c));
            }
        }
        rows.push(r);
    }
    rows.sort_by(|a, b| b.leading_exponent().cmp(&a.leading_exponent()));
    rows
}

/// Seeded random invertible integer matrix with entries in `-2..=2`.
pub fn random_invertible(n: usize, seed: u64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: RationalMatrix =
            (0..n).map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect()).collect();
        if invert(&m).is_some() {
            return m;
        }
    }
}

/// Matrix entries as strings, for reports.
pub fn matrix_strings(a: &RationalMatrix) -> Vec<Vec<String>> {
    a.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}
