//! Homogeneous ternary forms in (x, y, z) whose coefficients are t-jets.
//!
//! The total space of a family lives in this ring: a form of plane degree d
//! with coefficients known modulo t^N. Exact (t-free) forms such as component
//! equations keep coefficient precision `EXACT`; see [`crate::tjet`].
//!
//! Monomial layout: degree-d coefficients are stored as a flat vector indexed
//! by (i, j) with x^i y^j z^(d-i-j), i outermost ascending.

use num_traits::{One, Zero};

use crate::binary::BinaryForm;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::tjet::{TJet, EXACT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    degree: usize,
    coeffs: Vec<TJet>,
}

fn idx(d: usize, i: usize, j: usize) -> usize {
    // offset of block i plus j; block i holds d - i + 1 entries
    i * (2 * d + 3 - i) / 2 + j
}

fn n_monomials(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// All exponent triples (i, j, l) of total degree d, in storage order.
pub fn monomials(d: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::with_capacity(n_monomials(d));
    for i in 0..=d {
        for j in 0..=(d - i) {
            v.push((i, j, d - i - j));
        }
    }
    v
}

impl TernaryForm {
    pub fn zero(degree: usize) -> Self {
        TernaryForm {
            degree,
            coeffs: vec![TJet::zero(EXACT); n_monomials(degree)],
        }
    }

    pub fn from_terms(degree: usize, terms: &[(usize, usize, TJet)]) -> Self {
        let mut f = Self::zero(degree);
        for (i, j, c) in terms {
            assert!(i + j <= degree);
            let cur = f.coeffs[idx(degree, *i, *j)].add(c);
            f.coeffs[idx(degree, *i, *j)] = cur;
        }
        f
    }

    pub fn from_plane_terms(degree: usize, terms: &[(usize, usize, Rat)]) -> Self {
        Self::from_terms(
            degree,
            &terms
                .iter()
                .map(|(i, j, c)| (*i, *j, TJet::constant(c.clone())))
                .collect::<Vec<_>>(),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> &TJet {
        &self.coeffs[idx(self.degree, i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: TJet) {
        self.coeffs[idx(self.degree, i, j)] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Minimum coefficient precision.
    pub fn prec(&self) -> usize {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(EXACT)
    }

    /// True when every coefficient is t-free and exact.
    pub fn is_plane(&self) -> bool {
        self.coeffs.iter().all(|c| c.prec() == EXACT && c.coeffs().len() <= 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn scale_jet(&self, c: &TJet) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree + other.degree;
        let mut out = Self::zero(d);
        for (ai, aj, _) in monomials(self.degree) {
            let a = self.coeff(ai, aj);
            if a.is_zero() && a.prec() == EXACT {
                continue;
            }
            for (bi, bj, _) in monomials(other.degree) {
                let b = other.coeff(bi, bj);
                let cur = out.coeffs[idx(d, ai + bi, aj + bj)].add(&a.mul(b));
                out.coeffs[idx(d, ai + bi, aj + bj)] = cur;
            }
        }
        out
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.shift_up(k)).collect(),
        }
    }

    /// Exact division by t^k, coefficientwise.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        let coeffs: Result<Vec<TJet>> = self.coeffs.iter().map(|c| c.shift_down(k)).collect();
        Ok(TernaryForm {
            degree: self.degree,
            coeffs: coeffs?,
        })
    }

    /// Truncate every coefficient to the given precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.with_prec(prec)).collect(),
        }
    }

    /// The fibre at t = 0 as an exact plane form. Errors when some coefficient
    /// has precision 0, i.e. its constant term is not certified.
    pub fn at_t0(&self) -> Result<TernaryForm> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.prec() == 0 {
                return Err(Error::PrecisionExhausted { available: 0 });
            }
            coeffs.push(TJet::constant(c.coeff(0)));
        }
        Ok(TernaryForm {
            degree: self.degree,
            coeffs,
        })
    }

    /// Rational coefficient grid of a t-free form.
    fn plane_coeffs(&self) -> Result<Vec<Rat>> {
        if !self.is_plane() {
            return Err(Error::DegenerateInput(
                "expected a t-free form".into(),
            ));
        }
        Ok(self.coeffs.iter().map(|c| c.coeff(0)).collect())
    }

    /// Evaluate a t-free form at a rational plane point.
    pub fn eval_plane(&self, p: &[Rat; 3]) -> Result<Rat> {
        let cs = self.plane_coeffs()?;
        let mut s = Rat::zero();
        for (k, (i, j, l)) in monomials(self.degree).into_iter().enumerate() {
            if cs[k].is_zero() {
                continue;
            }
            let mut term = cs[k].clone();
            for _ in 0..i {
                term *= &p[0];
            }
            for _ in 0..j {
                term *= &p[1];
            }
            for _ in 0..l {
                term *= &p[2];
            }
            s += term;
        }
        Ok(s)
    }

    /// Exact division of t-free homogeneous forms; errors if not divisible.
    /// Leading-term reduction in lex order (x > y > z) — for homogeneous f and
    /// a single divisor this terminates with zero remainder exactly when f is
    /// a multiple of g.
    pub fn div_exact_plane(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.degree.saturating_sub(g.degree)));
        }
        if self.degree < g.degree {
            return Err(Error::ExactDivision("divisor degree too large".into()));
        }
        let dq = self.degree - g.degree;
        let mut rem = self.plane_coeffs()?;
        let gc = g.plane_coeffs()?;
        let rmons = monomials(self.degree);
        let gmons = monomials(g.degree);
        // lex-leading nonzero term of g
        let mut lead: Option<(usize, (usize, usize, usize))> = None;
        for (k, m) in gmons.iter().enumerate() {
            if gc[k].is_zero() {
                continue;
            }
            match lead {
                Some((_, lm)) if (lm.0, lm.1) >= (m.0, m.1) => {}
                _ => lead = Some((k, *m)),
            }
        }
        let (gk, (gi, gj, _)) = lead.ok_or(Error::ZeroInput)?;
        let glc = gc[gk].clone();

        let mut quot = vec![Rat::zero(); n_monomials(dq)];
        loop {
            // lex-leading nonzero term of the remainder
            let mut rl: Option<(usize, (usize, usize, usize))> = None;
            for (k, m) in rmons.iter().enumerate() {
                if rem[k].is_zero() {
                    continue;
                }
                match rl {
                    Some((_, lm)) if (lm.0, lm.1) >= (m.0, m.1) => {}
                    _ => rl = Some((k, *m)),
                }
            }
            let Some((rk, (ri, rj, _))) = rl else {
                break; // zero remainder
            };
            if ri < gi || rj < gj || (ri - gi) + (rj - gj) > dq {
                return Err(Error::ExactDivision("ternary form not divisible".into()));
            }
            let (qi, qj) = (ri - gi, rj - gj);
            let c = rem[rk].clone() / &glc;
            quot[idx(dq, qi, qj)] += &c;
            // rem -= c * x^qi y^qj z^ql * g
            for (k, (i, j, _)) in gmons.iter().enumerate() {
                if gc[k].is_zero() {
                    continue;
                }
                rem[idx(self.degree, i + qi, j + qj)] -= &c * &gc[k];
            }
        }
        let mut out = Self::zero(dq);
        for (k, (i, j, _)) in monomials(dq).into_iter().enumerate() {
            if !quot[k].is_zero() {
                out.set_coeff(i, j, TJet::constant(quot[k].clone()));
            }
        }
        Ok(out)
    }

    /// Pull back a t-free form along a parametrization (three binary forms of
    /// a common degree e); the result is a binary form of degree (deg f) * e.
    pub fn pullback(&self, phi: &[BinaryForm; 3]) -> Result<BinaryForm> {
        let e = phi[0].degree();
        assert!(phi.iter().all(|f| f.degree() == e));
        let cs = self.plane_coeffs()?;
        // cache powers
        let cache = |f: &BinaryForm, top: usize| -> Vec<BinaryForm> {
            let mut v = Vec::with_capacity(top + 1);
            v.push(BinaryForm::new(vec![Rat::one()], 0));
            for k in 1..=top {
                v.push(v[k - 1].mul(f));
            }
            v
        };
        let px = cache(&phi[0], self.degree);
        let py = cache(&phi[1], self.degree);
        let pz = cache(&phi[2], self.degree);
        let mut out = BinaryForm::zero(self.degree * e);
        for (k, (i, j, l)) in monomials(self.degree).into_iter().enumerate() {
            if cs[k].is_zero() {
                continue;
            }
            out = out.add(&px[i].mul(&py[j]).mul(&pz[l]).scale(&cs[k]));
        }
        Ok(out)
    }

    /// Render with variables x, y, z (and t inside coefficients).
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = vec![];
        for (k, (i, j, l)) in monomials(self.degree).into_iter().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = {
                let mut m: Vec<String> = vec![];
                for (name, e) in [("x", i), ("y", j), ("z", l)] {
                    match e {
                        0 => {}
                        1 => m.push(name.into()),
                        _ => m.push(format!("{name}^{e}")),
                    }
                }
                m.join("*")
            };
            let cs = if c.coeffs().len() == 1 && c.coeff(0).denom().is_one() {
                let v = c.coeff(0);
                if v.is_one() && !mono.is_empty() {
                    String::new()
                } else if v == -Rat::one() && !mono.is_empty() {
                    "-".into()
                } else {
                    format!("{v}")
                }
            } else {
                format!("({c})")
            };
            let term = match (cs.as_str(), mono.as_str()) {
                ("", m) => m.to_string(),
                ("-", m) => format!("-{m}"),
                (c, "") => c.to_string(),
                (c, m) => format!("{c}*{m}"),
            };
            parts.push(term);
        }
        let mut s = String::new();
        for (n, p) in parts.iter().enumerate() {
            if n > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn plane(d: usize, terms: &[(usize, usize, i64)]) -> TernaryForm {
        TernaryForm::from_plane_terms(
            d,
            &terms.iter().map(|&(i, j, c)| (i, j, rat_i(c))).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn mul_and_div_round_trip() {
        // (y^2 + x^2 - z^2) * x
        let q = plane(2, &[(0, 2, 1), (2, 0, 1), (0, 0, -1)]);
        let m = plane(1, &[(1, 0, 1)]);
        let p = q.mul(&m);
        assert_eq!(p.div_exact_plane(&m).unwrap(), q);
        assert_eq!(p.div_exact_plane(&q).unwrap(), m);
        // not divisible
        let y = plane(1, &[(0, 1, 1)]);
        assert!(p.div_exact_plane(&y).is_err());
    }

    #[test]
    fn pullback_conic() {
        // q = y^2 + x^2 - z^2 pulled back along (2uv : v^2-u^2 : v^2+u^2) is 0
        let q = plane(2, &[(0, 2, 1), (2, 0, 1), (0, 0, -1)]);
        let phi = [
            BinaryForm::from_ints(&[0, 2, 0]),
            BinaryForm::from_ints(&[1, 0, -1]),
            BinaryForm::from_ints(&[1, 0, 1]),
        ];
        assert!(q.pullback(&phi).unwrap().is_zero());
        // x pulls back to 2uv
        let x = plane(1, &[(1, 0, 1)]);
        assert_eq!(x.pullback(&phi).unwrap(), BinaryForm::from_ints(&[0, 2, 0]));
    }

    #[test]
    fn eval_plane_point() {
        let q = plane(2, &[(0, 2, 1), (2, 0, 1), (0, 0, -1)]);
        let p = [rat_i(0), rat_i(1), rat_i(1)];
        assert!(q.eval_plane(&p).unwrap().is_zero());
        let p2 = [rat_i(1), rat_i(0), rat_i(0)];
        assert_eq!(q.eval_plane(&p2).unwrap(), rat_i(1));
    }

    #[test]
    fn t_shift_round_trip() {
        let f = plane(1, &[(1, 0, 3)]);
        let up = f.shift_up(2);
        assert_eq!(up.shift_down(2).unwrap(), f);
        assert!(f.shift_down(1).is_err());
    }

    #[test]
    fn at_t0_strips_t() {
        let mut f = TernaryForm::zero(1);
        f.set_coeff(1, 0, TJet::new(vec![rat_i(1), rat_i(5)], EXACT)); // (1+5t) x
        let f0 = f.at_t0().unwrap();
        assert_eq!(f0, plane(1, &[(1, 0, 1)]));
    }
}
