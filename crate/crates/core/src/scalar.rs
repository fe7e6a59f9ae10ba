//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; `num_rational::BigRational` maintains both
//! invariants on construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse "p" or "p/q" with optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational literal `{s}`"),
    };
    match s.split_once('/') {
        None => s.parse::<Int>().map(Rat::from_integer).map_err(|_| mk_err()),
        Some((p, q)) => {
            let p = p.trim().parse::<Int>().map_err(|_| mk_err())?;
            let q = q.trim().parse::<Int>().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Serialize as "p" or "p/q" (exact; used everywhere rationals cross an
/// external interface).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A projective point (p : q) on a parameter line, normalized so that the
/// coordinates are coprime integers and the first nonzero one is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub p: Int,
    pub q: Int,
}

impl ProjPoint {
    pub fn new(p: Rat, q: Rat) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::DegenerateInput("(0:0) is not a projective point".into()));
        }
        // clear denominators, divide by gcd, fix sign
        let d = p.denom() * q.denom();
        let mut a = p.numer() * &d / p.denom();
        let mut b = q.numer() * &d / q.denom();
        let g = num_integer::gcd(a.clone(), b.clone());
        if !g.is_zero() {
            a = &a / &g;
            b = &b / &g;
        }
        let lead_neg = if a.is_zero() { b.is_negative() } else { a.is_negative() };
        if lead_neg {
            a = -a;
            b = -b;
        }
        Ok(ProjPoint { p: a, q: b })
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(rat_i(p), rat_i(q)).expect("nonzero point")
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{})", self.p, self.q)
    }
}
