//! Truncated power series in the deformation variable `t` ("t-jets").
//!
//! A `TJet` is known modulo `t^prec`. Exact polynomials (the component
//! equations, the perturbation) carry `prec == EXACT`. Arithmetic tracks the
//! minimum of the operand precisions; any consumer that needs more precision
//! than is available must fail loudly with `Error::PrecisionExhausted`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Sentinel precision for exact (polynomial) jets.
pub const EXACT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TJet {
    /// Coefficient of t^i at index i. Trailing zeros are trimmed.
    coeffs: Vec<Rat>,
    /// Values are known modulo t^prec.
    prec: usize,
}

impl TJet {
    pub fn new(mut coeffs: Vec<Rat>, prec: usize) -> Self {
        if prec != EXACT {
            coeffs.truncate(prec);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TJet { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        TJet { coeffs: vec![], prec }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c], EXACT)
    }

    /// c * t^k, exact.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v, EXACT)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True when every known coefficient vanishes. For finite precision this
    /// only means "zero modulo t^prec".
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest index with a nonzero coefficient; `None` when the jet is zero
    /// up to its precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), prec.min(self.prec))
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(v, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.prec)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec);
        }
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(prec);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let bound = if prec == EXACT { n } else { n.min(prec) };
        let mut v = vec![Rat::zero(); bound];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= bound {
                    break;
                }
                v[i + j] += a * b;
            }
        }
        Self::new(v, prec)
    }

    /// Multiply by t^k. Precision increases by k: knowing x mod t^p determines
    /// t^k x mod t^(p+k).
    pub fn shift_up(&self, k: usize) -> Self {
        let prec = if self.prec == EXACT { EXACT } else { self.prec + k };
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, prec)
    }

    /// Exact division by t^k; errors if any of the first k coefficients is
    /// nonzero or if the precision window cannot certify them.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.prec != EXACT && self.prec < k {
            return Err(Error::PrecisionExhausted { available: self.prec });
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::ExactDivision(format!(
                "jet has valuation {:?} < {k}",
                self.valuation()
            )));
        }
        let prec = if self.prec == EXACT { EXACT } else { self.prec - k };
        let v = self.coeffs.iter().skip(k).cloned().collect();
        Ok(Self::new(v, prec))
    }

    /// Multiplicative inverse of a unit (valuation 0), to this jet's precision.
    pub fn invert(&self, out_prec: usize) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::ExactDivision("inverting a non-unit jet".into()));
        }
        let prec = self.prec.min(out_prec);
        if prec == EXACT {
            // exact inversion only possible for constants
            if self.coeffs.len() > 1 {
                return Err(Error::ExactDivision(
                    "cannot invert a non-constant jet exactly; pass a finite precision".into(),
                ));
            }
            return Ok(Self::constant(a0.recip()));
        }
        let mut inv = vec![Rat::zero(); prec];
        inv[0] = a0.recip();
        for m in 1..prec {
            // sum_{i=0..m} a_i * inv_{m-i} = 0
            let mut s = Rat::zero();
            for i in 1..=m {
                s += self.coeff(i) * &inv[m - i];
            }
            inv[m] = -s / &a0;
        }
        Ok(Self::new(inv, prec))
    }

    /// Divide by another jet inside the Laurent field; the quotient must lie
    /// in the power-series ring (valuation(self) >= valuation(other)).
    pub fn div(&self, other: &Self, out_prec: usize) -> Result<Self> {
        let vo = other.valuation().ok_or_else(|| {
            Error::ExactDivision("division by a jet that is zero within precision".into())
        })?;
        let num = self.shift_down(vo)?;
        let den_prec = if other.prec == EXACT { EXACT } else { other.prec - vo };
        let den = Self::new(other.coeffs[vo..].to_vec(), den_prec);
        let p = out_prec.min(num.prec).min(den.prec);
        Ok(num.mul(&den.invert(p)?))
    }
}

impl std::fmt::Display for TJet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn jet(cs: &[i64], prec: usize) -> TJet {
        TJet::new(cs.iter().map(|&c| rat_i(c)).collect(), prec)
    }

    #[test]
    fn valuation_multiplicative() {
        let a = jet(&[0, 2, 1], 8);
        let b = jet(&[0, 0, 5], 8);
        let p = a.mul(&b);
        assert_eq!(p.valuation(), Some(3));
        assert_eq!(a.valuation().unwrap() + b.valuation().unwrap(), 3);
    }

    #[test]
    fn precision_tracks_minimum() {
        let a = jet(&[1, 1, 1, 1], 4);
        let b = jet(&[1], 2);
        assert_eq!(a.mul(&b).prec(), 2);
        assert_eq!(a.add(&b).prec(), 2);
    }

    #[test]
    fn shift_down_requires_divisibility() {
        let a = jet(&[0, 0, 3], 6);
        assert_eq!(a.shift_down(2).unwrap(), jet(&[3], 4));
        assert!(jet(&[1, 2], 6).shift_down(1).is_err());
        assert!(jet(&[], 1).shift_down(2).is_err()); // cannot certify
    }

    #[test]
    fn inversion_and_division() {
        let a = jet(&[1, -1], 6); // 1 - t
        let inv = a.invert(6).unwrap();
        assert_eq!(inv, jet(&[1, 1, 1, 1, 1, 1], 6)); // geometric series
        let b = jet(&[0, 2, -2], 6); // 2t(1-t)
        let q = b.div(&a, 6).unwrap();
        assert_eq!(q, jet(&[0, 2], 6));
    }
}
