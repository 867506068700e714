use std::fmt;

use thiserror::Error;

use super::coeff::{Coeff, Rational};
use super::exponent::Exponent;
use super::order::VariableOrder;
use super::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

/// An input system: variables in the order of the `vars:` line, the variable
/// order, generators and inequalities (`f ≥ 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSystem {
    pub variables: Vec<String>,
    pub order: VariableOrder,
    pub generators: Vec<Polynomial<Rational>>,
    pub inequalities: Vec<Polynomial<Rational>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |i: usize, message: String| ParseError { line, col: col0 + i, message };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() || c == '.' => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                toks.push((Tok::Num(chars[start..i].iter().collect()), col0 + start));
                continue;
            }
            _ if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col0 + start));
                continue;
            }
            _ => return Err(err(i, format!("unexpected character '{c}'"))),
        };
        toks.push((tok, col0 + i));
        i += 1;
    }
    Ok(Lexed { toks, end_col: col0 + chars.len() })
}

struct Parser<'a, C: Coeff> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    order: &'a VariableOrder,
    _c: std::marker::PhantomData<C>,
}

impl<C: Coeff> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col(), message: message.into() }
    }

    fn expr(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unary()?;
                    let c = match d.leading_term() {
                        Some((e, c)) if d.len() == 1 && e.is_zero() => c.clone(),
                        _ => {
                            return Err(ParseError {
                                line: self.line,
                                col,
                                message: "division only by a nonzero constant".into(),
                            })
                        }
                    };
                    acc = acc.scale(&C::one().div(&c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<C>, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<C>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    let k: u32 = s.parse().map_err(|_| self.error(format!("bad exponent '{s}'")))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.error("expected a non-negative integer exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<C>, ParseError> {
        let n = self.order.nvars();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let c = C::parse_literal(&s).ok_or_else(|| self.error(format!("bad number '{s}'")))?;
                self.pos += 1;
                Ok(Polynomial::constant(n, c))
            }
            Some(Tok::Ident(name)) => {
                let i = self.order.index_of(&name).ok_or_else(|| self.error(format!("unknown variable '{name}'")))?;
                self.pos += 1;
                Ok(Polynomial::var(n, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(self.error(format!("unexpected {}", describe(&t)))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(s) | Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

fn parse_at<C: Coeff>(text: &str, order: &VariableOrder, line: usize, col0: usize) -> Result<Polynomial<C>, ParseError> {
    let lexed = lex(text, line, col0)?;
    let mut p = Parser::<C> {
        toks: lexed.toks,
        pos: 0,
        line,
        end_col: lexed.end_col,
        order,
        _c: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error(format!("unexpected {}", describe(&p.toks[p.pos].0))));
    }
    Ok(out)
}

/// Parse one polynomial in the variables of `order`.
pub fn parse_polynomial<C: Coeff>(text: &str, order: &VariableOrder) -> Result<Polynomial<C>, ParseError> {
    parse_at(text, order, 1, 1)
}

fn split_names(rest: &str) -> Vec<String> {
    rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect()
}

/// Parse an input system (`vars:`, `order:`, `gen:`, `ineq:` lines, `#` comments).
/// Without an `order:` line the `vars:` listing is taken smallest first.
pub fn parse_system(text: &str) -> Result<ParsedSystem, ParseError> {
    let mut variables: Option<Vec<String>> = None;
    let mut order_line: Option<(usize, usize, String)> = None;
    let mut bodies = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let err = |col: usize, message: String| ParseError { line, col, message };
        let Some((key, rest)) = content.split_once(':') else {
            return Err(err(lead + 1, "expected 'key: value'".into()));
        };
        let rest_col = key.chars().count() + 2;
        match key.trim() {
            "vars" => {
                let names = split_names(rest);
                if names.is_empty() {
                    return Err(err(rest_col, "no variables listed".into()));
                }
                for name in &names {
                    let mut cs = name.chars();
                    let ok = cs.next().is_some_and(|c| c.is_alphabetic() || c == '_')
                        && cs.all(|c| c.is_alphanumeric() || c == '_');
                    if !ok {
                        return Err(err(rest_col, format!("invalid variable name '{name}'")));
                    }
                }
                if variables.is_some() {
                    return Err(err(lead + 1, "duplicate 'vars' line".into()));
                }
                variables = Some(names);
            }
            "order" => order_line = Some((line, rest_col, rest.to_string())),
            "gen" | "ineq" => bodies.push((key.trim() == "gen", line, rest_col, rest.to_string())),
            other => return Err(err(lead + 1, format!("unknown key '{other}'"))),
        }
    }
    let variables = match variables {
        Some(v) => v,
        None => return Err(ParseError { line: 1, col: 1, message: "missing 'vars:' line".into() }),
    };
    let order = match order_line {
        None => VariableOrder::from_ascending(variables.clone()),
        Some((line, col, rest)) => {
            let err = |message: String| ParseError { line, col, message };
            let (names, descending) = if rest.contains('>') && rest.contains('<') {
                return Err(err("mix of '>' and '<' in order line".into()));
            } else if rest.contains('<') {
                (rest.split('<').map(|s| s.trim().to_string()).collect::<Vec<_>>(), false)
            } else {
                (rest.split('>').map(|s| s.trim().to_string()).collect::<Vec<_>>(), true)
            };
            let mut sorted = names.clone();
            sorted.sort();
            let mut expect = variables.clone();
            expect.sort();
            if sorted != expect {
                return Err(err("order line must list each variable exactly once".into()));
            }
            if descending {
                VariableOrder::from_descending(names)
            } else {
                VariableOrder::from_ascending(names)
            }
        }
    }
    .map_err(|message| ParseError { line: 1, col: 1, message })?;
    let mut generators = Vec::new();
    let mut inequalities = Vec::new();
    for (is_gen, line, col, body) in bodies {
        let p = parse_at::<Rational>(&body, &order, line, col)?;
        if p.is_zero() {
            return Err(ParseError { line, col, message: "polynomial is zero".into() });
        }
        if is_gen {
            generators.push(p);
        } else {
            inequalities.push(p);
        }
    }
    if generators.is_empty() {
        return Err(ParseError { line: 1, col: 1, message: "no 'gen:' lines".into() });
    }
    Ok(ParsedSystem { variables, order, generators, inequalities })
}

/// Canonical text: terms grevlex-descending, variables largest first.
pub(crate) fn format_polynomial<C: Coeff>(p: &Polynomial<C>, order: &VariableOrder) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = format_monomial(e, order);
        if mono.is_empty() {
            out.push_str(&c.format_abs());
        } else if c.is_unit_magnitude() {
            out.push_str(&mono);
        } else {
            out.push_str(&c.format_abs());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_monomial(e: &Exponent, order: &VariableOrder) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.entries().iter().enumerate().rev() {
        match k {
            0 => {}
            1 => parts.push(order.name(i).to_string()),
            _ => parts.push(format!("{}^{}", order.name(i), k)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64) -> Rational {
        Rational::from_integer(BigInt::from(a))
    }

    #[test]
    fn simple_polynomial() {
        let order = VariableOrder::identity(2);
        let p: Polynomial<Rational> = parse_polynomial("x1^2 - x2", &order).unwrap();
        assert_eq!(p.coeff(&Exponent::new(vec![2, 0])), q(1));
        assert_eq!(p.coeff(&Exponent::new(vec![0, 1])), q(-1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn trailing_operator_is_an_error() {
        let order = VariableOrder::identity(2);
        let e = parse_polynomial::<Rational>("x1*x2*", &order).unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
    }

    #[test]
    fn unknown_variable() {
        let order = VariableOrder::identity(2);
        let e = parse_polynomial::<Rational>("x1 + y", &order).unwrap_err();
        assert!(e.message.contains("unknown variable"));
        assert_eq!(e.col, 6);
    }

    #[test]
    fn rationals_and_parentheses() {
        let order = VariableOrder::identity(2);
        let p: Polynomial<Rational> = parse_polynomial("(x1 - x2)^2/2 + 0.5", &order).unwrap();
        let expect: Polynomial<Rational> = parse_polynomial("1/2*x1^2 - x1*x2 + 1/2*x2^2 + 1/2", &order).unwrap();
        assert_eq!(p, expect);
        assert!(parse_polynomial::<Rational>("x1/x2", &order).is_err());
    }

    #[test]
    fn system_with_order_line() {
        let text = "# twisted cubic\nvars: x1 x2 x3\norder: x2 > x1 > x3\ngen: x1^2 - x2\ngen: x1*x2 - x3\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.order.index_of("x3"), Some(0));
        assert_eq!(sys.order.index_of("x1"), Some(1));
        assert_eq!(sys.order.index_of("x2"), Some(2));
        assert_eq!(sys.generators.len(), 2);
        let classes: Vec<usize> = ["x1", "x2", "x3"]
            .iter()
            .map(|v| Exponent::unit(3, sys.order.index_of(v).unwrap()).class())
            .collect();
        assert_eq!(classes, vec![2, 3, 1]);
    }

    #[test]
    fn system_errors_carry_positions() {
        let e = parse_system("vars: x y\ngen: x*y*\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_system("vars: x y\norder: x > z\ngen: x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_system("vars: x\n").is_err());
    }

    #[test]
    fn print_then_parse_is_identity() {
        let order = VariableOrder::from_descending(vec!["b".into(), "a".into()]).unwrap();
        let p: Polynomial<Rational> = parse_polynomial("-3/2*a^2*b + b - 7 + a*b^3", &order).unwrap();
        let text = p.display(&order);
        assert_eq!(text, "b^3*a - 3/2*b*a^2 + b - 7");
        assert_eq!(parse_polynomial::<Rational>(&text, &order).unwrap(), p);
    }
}
