//! Recursive-descent parser for homogeneous polynomial input.
//!
//! Grammar: integer and rational (`p/q`) literals, variables from the declared
//! set, `+ - * ^` with explicit multiplication, parentheses, unary minus;
//! exponents are nonnegative integer literals; whitespace is insignificant.
//!
//! Ternary input uses variables {x, y, z} plus optionally the deformation
//! variable t; binary input uses {u, v} or {a, b} (not mixed). Homogeneity in
//! the geometric variables is enforced and the degree recorded.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::binary::BinaryForm;
use crate::error::{Error, Result};
use crate::scalar::{Int, Rat};
use crate::ternary::TernaryForm;
use crate::tjet::TJet;

/// Sparse exponent-vector polynomial used only during parsing.
/// Exponents are indexed by the fixed variable order of the set.
type Terms = BTreeMap<Vec<usize>, Rat>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarSet {
    /// x, y, z, t
    Ternary,
    /// u, v
    BinaryUV,
    /// a, b
    BinaryAB,
}

impl VarSet {
    fn arity(self) -> usize {
        match self {
            VarSet::Ternary => 4,
            _ => 2,
        }
    }

    fn index(self, c: char) -> Option<usize> {
        let names: &[char] = match self {
            VarSet::Ternary => &['x', 'y', 'z', 't'],
            VarSet::BinaryUV => &['u', 'v'],
            VarSet::BinaryAB => &['a', 'b'],
        };
        names.iter().position(|&n| n == c)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str, vars: VarSet) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: Int = text[start..i].parse().unwrap();
                // a slash directly after an integer starts a rational literal
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(err(dstart, "expected denominator digits after `/`"));
                    }
                    let denom: Int = text[dstart..i].parse().unwrap();
                    if denom.is_zero() {
                        return Err(err(dstart, "zero denominator"));
                    }
                    toks.push((start, Tok::Num(Rat::new(numer, denom))));
                } else {
                    toks.push((start, Tok::Num(Rat::from_integer(numer))));
                }
            }
            c if c.is_ascii_alphabetic() => {
                match vars.index(c) {
                    Some(k) => toks.push((i, Tok::Var(k))),
                    None => return Err(Error::UnknownVariable(c.to_string())),
                }
                i += 1;
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    arity: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn constant(&self, c: Rat) -> Terms {
        if c.is_zero() {
            return Terms::new();
        }
        let mut m = Terms::new();
        m.insert(vec![0; self.arity], c);
        m
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg(self.term()?)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = add(acc, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = add(acc, neg(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(neg(self.factor()?));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let p = self.here();
            match self.bump() {
                Some(Tok::Num(n)) if n.is_integer() && !n.numer().is_negative() => {
                    let e: usize = n
                        .numer()
                        .try_into()
                        .map_err(|_| err(p, "exponent too large"))?;
                    let mut acc = self.constant(Rat::from_integer(1.into()));
                    for _ in 0..e {
                        acc = mul(&acc, &base);
                    }
                    return Ok(acc);
                }
                _ => return Err(err(p, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms> {
        let p = self.here();
        match self.bump() {
            Some(Tok::Num(c)) => Ok(self.constant(c)),
            Some(Tok::Var(k)) => {
                let mut e = vec![0; self.arity];
                e[k] = 1;
                let mut m = Terms::new();
                m.insert(e, Rat::from_integer(1.into()));
                Ok(m)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(self.here(), "expected `)`")),
                }
            }
            _ => Err(err(p, "expected a number, variable, or `(`")),
        }
    }
}

fn add(mut a: Terms, b: Terms) -> Terms {
    for (e, c) in b {
        *a.entry(e).or_insert_with(Rat::zero) += c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn neg(a: Terms) -> Terms {
    a.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e).or_insert_with(Rat::zero);
            *v += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn parse_terms(text: &str, vars: VarSet) -> Result<Terms> {
    let toks = lex(text, vars)?;
    let mut p = Parser {
        toks,
        pos: 0,
        arity: vars.arity(),
        end: text.len(),
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.here(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parse a homogeneous form in x, y, z whose coefficients may involve t.
pub fn parse_ternary(text: &str) -> Result<TernaryForm> {
    let terms = parse_terms(text, VarSet::Ternary)?;
    if terms.is_empty() {
        return Ok(TernaryForm::zero(0));
    }
    let mut degree: Option<usize> = None;
    for e in terms.keys() {
        let d = e[0] + e[1] + e[2];
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => return Err(Error::NonHomogeneous(d0, d)),
            _ => {}
        }
    }
    let degree = degree.unwrap();
    let mut f = TernaryForm::zero(degree);
    for (e, c) in terms {
        let cur = f.coeff(e[0], e[1]).add(&TJet::monomial(c, e[3]));
        f.set_coeff(e[0], e[1], cur);
    }
    Ok(f)
}

/// Parse a t-free homogeneous form in x, y, z.
pub fn parse_ternary_plane(text: &str) -> Result<TernaryForm> {
    let f = parse_ternary(text)?;
    if !f.is_plane() {
        return Err(Error::DegenerateInput(
            "the deformation variable t is not allowed here".into(),
        ));
    }
    Ok(f)
}

/// Parse a homogeneous binary form in u, v (or a, b — whichever the text
/// uses; the sets cannot be mixed).
pub fn parse_binary(text: &str) -> Result<BinaryForm> {
    let uses_ab = text.contains('a') || text.contains('b');
    let uses_uv = text.contains('u') || text.contains('v');
    if uses_ab && uses_uv {
        return Err(Error::UnknownVariable(
            "mixed parameter variable sets (u,v) and (a,b)".into(),
        ));
    }
    let set = if uses_ab { VarSet::BinaryAB } else { VarSet::BinaryUV };
    let terms = parse_terms(text, set)?;
    if terms.is_empty() {
        return Ok(BinaryForm::zero(0));
    }
    let mut degree: Option<usize> = None;
    for e in terms.keys() {
        let d = e[0] + e[1];
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => return Err(Error::NonHomogeneous(d0, d)),
            _ => {}
        }
    }
    let degree = degree.unwrap();
    let mut coeffs = vec![Rat::zero(); degree + 1];
    for (e, c) in terms {
        coeffs[e[0]] = c;
    }
    Ok(BinaryForm::new(coeffs, degree))
}
