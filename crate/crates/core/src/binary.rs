//! Homogeneous binary forms in (u, v) with exact rational coefficients, the
//! divisors they cut out on the projective parameter line, and the intrinsic
//! Wronskian of a family of forms.
//!
//! Divisor support is kept exact: rational points appear as normalized
//! projective points, irrational loci as primitive irreducible factors with
//! multiplicities, never as floating approximations.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{irreducible_factors, squarefree_decomposition};
use crate::scalar::{ProjPoint, Rat};
use crate::unipoly::QPoly;

/// Homogeneous form of recorded degree `e`; `coeffs[i]` multiplies u^i v^(e-i).
/// The zero form keeps its degree tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
    degree: usize,
}

impl BinaryForm {
    pub fn new(mut coeffs: Vec<Rat>, degree: usize) -> Self {
        coeffs.resize(degree + 1, Rat::zero());
        BinaryForm { coeffs, degree }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![], degree)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        let d = cs.len().saturating_sub(1);
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect(), d)
    }

    /// The linear form vanishing exactly at `p = (a:b)`: b*u - a*v.
    pub fn vanishing_at(p: &ProjPoint) -> Self {
        Self::new(
            vec![Rat::from_integer(-p.p.clone()), Rat::from_integer(p.q.clone())],
            1,
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch in BinaryForm::add");
        Self::new(
            (0..=self.degree).map(|i| self.coeff(i) + other.coeff(i)).collect(),
            self.degree,
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.degree)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree + other.degree;
        let mut v = vec![Rat::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v, d)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = BinaryForm::new(vec![Rat::one()], 0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, p: &ProjPoint) -> Rat {
        let (a, b) = (Rat::from_integer(p.p.clone()), Rat::from_integer(p.q.clone()));
        let mut s = Rat::zero();
        let mut ap = Rat::one();
        for i in 0..=self.degree {
            // a^i b^(e-i)
            let mut term = self.coeff(i) * &ap;
            if !term.is_zero() {
                for _ in 0..(self.degree - i) {
                    term *= &b;
                }
                s += term;
            }
            ap *= &a;
        }
        s
    }

    /// Dehomogenization in the chart v = 1 (a polynomial in u).
    pub fn in_u_chart(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    /// Dehomogenization in the chart u = 1 (a polynomial in v).
    pub fn in_v_chart(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenize a polynomial in u to a form of the given degree.
    pub fn from_u_poly(p: &QPoly, degree: usize) -> Self {
        assert!(p.degree().map_or(true, |d| d <= degree));
        Self::new(p.coeffs().to_vec(), degree)
    }

    /// Multiplicity of the linear factor vanishing at `p`.
    pub fn ord_at(&self, p: &ProjPoint) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let lin = Self::vanishing_at(p);
        let mut f = self.clone();
        let mut ord = 0;
        while f.eval(p).is_zero() {
            f = f.div_exact(&lin)?;
            ord += 1;
        }
        Ok(ord)
    }

    /// Exact division of homogeneous forms; errors on nonzero remainder.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.degree < g.degree {
            return Err(Error::ExactDivision("divisor degree too large".into()));
        }
        let dq = self.degree - g.degree;
        if self.is_zero() {
            return Ok(Self::zero(dq));
        }
        let fu = self.in_u_chart();
        let gu = g.in_u_chart();
        let q = fu.div_exact(&gu)?;
        if q.degree().unwrap_or(0) > dq {
            // the u-chart quotient needs more u-degree than the form allows,
            // i.e. g has a higher power of v than f
            return Err(Error::ExactDivision("v-multiplicity too small".into()));
        }
        Ok(Self::from_u_poly(&q, dq))
    }

    /// Taylor coefficients of the local expansion at a rational point, in the
    /// standard local parameter (u - a/b in the v-chart, v in the u-chart).
    pub fn taylor_at(&self, p: &ProjPoint) -> Vec<Rat> {
        if p.is_infinity() {
            return (0..=self.degree).map(|i| self.coeff(self.degree - i)).collect();
        }
        let alpha = Rat::new(p.p.clone(), p.q.clone());
        // f(u + alpha) coefficients via iterated synthetic division
        let mut rem: Vec<Rat> = self.coeffs.clone();
        let mut out = Vec::with_capacity(self.degree + 1);
        for _ in 0..=self.degree {
            // evaluate and deflate at alpha
            let mut acc = Rat::zero();
            let mut next = vec![Rat::zero(); rem.len().saturating_sub(1)];
            for i in (0..rem.len()).rev() {
                acc = acc * &alpha + &rem[i];
                if i > 0 {
                    next[i - 1] = acc.clone();
                }
            }
            out.push(acc);
            rem = next;
        }
        out
    }

    /// Normalize to a primitive integer form with positive leading coefficient;
    /// returns the unit with `unit * primitive == self`. Errors on zero.
    pub fn primitive(&self) -> Result<(Rat, BinaryForm)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (c, prim) = QPoly::new(self.coeffs.clone()).content_primitive();
        Ok((
            c,
            Self::new(prim.into_iter().map(Rat::from_integer).collect(), self.degree),
        ))
    }

    /// Render with the given variable names, highest u-power first.
    pub fn render(&self, u: &str, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for i in (0..=self.degree).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push('-');
            } else {
                s.push('+');
            }
            let mut parts: Vec<String> = vec![];
            if !mag.is_one() || (i == 0 && self.degree == 0) {
                parts.push(crate::scalar::fmt_rat(&mag));
            }
            let pow = |name: &str, e: usize| -> Option<String> {
                match e {
                    0 => None,
                    1 => Some(name.to_string()),
                    _ => Some(format!("{name}^{e}")),
                }
            };
            if let Some(t) = pow(u, i) {
                parts.push(t);
            }
            if let Some(t) = pow(v, self.degree - i) {
                parts.push(t);
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

/// Support element of an exact divisor on the parameter line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorPoint {
    Rational(ProjPoint),
    /// An irreducible (over Q) primitive form of degree >= 2.
    Irreducible(BinaryForm),
}

impl DivisorPoint {
    pub fn locus_degree(&self) -> usize {
        match self {
            DivisorPoint::Rational(_) => 1,
            DivisorPoint::Irreducible(f) => f.degree(),
        }
    }
}

/// An effective divisor on P^1 with exact support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinaryDivisor {
    pub entries: Vec<(DivisorPoint, usize)>,
}

impl BinaryDivisor {
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|(p, w)| p.locus_degree() * w).sum()
    }

    pub fn weight_at(&self, p: &ProjPoint) -> usize {
        self.entries
            .iter()
            .find_map(|(q, w)| match q {
                DivisorPoint::Rational(r) if r == p => Some(*w),
                _ => None,
            })
            .unwrap_or(0)
    }

    pub fn remove_point(&mut self, p: &ProjPoint) -> usize {
        let w = self.weight_at(p);
        self.entries.retain(|(q, _)| !matches!(q, DivisorPoint::Rational(r) if r == p));
        w
    }

    pub fn add_weight(&mut self, p: DivisorPoint, w: usize) {
        if w == 0 {
            return;
        }
        for (q, wq) in &mut self.entries {
            if *q == p {
                *wq += w;
                return;
            }
        }
        self.entries.push((p, w));
    }

    /// Deterministic ordering: rational points first (lexicographic), then
    /// irreducible factors by degree and coefficients.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            use DivisorPoint::*;
            match (&a.0, &b.0) {
                (Rational(p), Rational(q)) => p.cmp(q),
                (Rational(_), Irreducible(_)) => std::cmp::Ordering::Less,
                (Irreducible(_), Rational(_)) => std::cmp::Ordering::Greater,
                (Irreducible(f), Irreducible(g)) => f
                    .degree()
                    .cmp(&g.degree())
                    .then_with(|| f.coeffs().cmp(g.coeffs())),
            }
        });
    }

    /// The divisor cut out by a nonzero form.
    pub fn of_form(f: &BinaryForm) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut div = BinaryDivisor::default();
        let fu = f.in_u_chart();
        let v_ord = f.degree() - fu.degree().unwrap();
        if v_ord > 0 {
            div.add_weight(DivisorPoint::Rational(ProjPoint::from_ints(1, 0)), v_ord);
        }
        let (_, facs) = irreducible_factors(&fu)?;
        for (q, m) in facs {
            div.add_weight(factor_to_point(&q), m);
        }
        div.sort();
        Ok(div)
    }
}

fn factor_to_point(q: &QPoly) -> DivisorPoint {
    if q.degree() == Some(1) {
        // c1 u + c0 vanishes at (-c0 : c1)
        let p = ProjPoint::new(-q.coeff(0), q.coeff(1)).expect("nonzero linear factor");
        DivisorPoint::Rational(p)
    } else {
        DivisorPoint::Irreducible(BinaryForm::from_u_poly(q, q.degree().unwrap()))
    }
}

/// Squarefree factorization of a binary form: pairwise-coprime irreducible
/// primitive factors with multiplicities, deterministically ordered, together
/// with the unit making the product reproduce the input exactly.
pub fn squarefree_factor(f: &BinaryForm) -> Result<(Rat, Vec<(BinaryForm, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let fu = f.in_u_chart();
    let v_ord = f.degree() - fu.degree().unwrap();
    let (unit, facs) = irreducible_factors(&fu)?;
    let mut out: Vec<(BinaryForm, usize)> = facs
        .into_iter()
        .map(|(q, m)| (BinaryForm::from_u_poly(&q, q.degree().unwrap()), m))
        .collect();
    if v_ord > 0 {
        out.push((BinaryForm::new(vec![Rat::one()], 1), v_ord)); // the form v
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok((unit, out))
}

/// The divisor of the intrinsic Wronskian of `r+1` independent forms of equal
/// degree `e`. Computed in the chart v = 1 with ordinary derivatives; the
/// weight at (1:0) is recovered from the degree identity and cross-checked in
/// the chart u = 1. Total degree is always (r+1)e - r(r+1).
pub fn wronskian_divisor(forms: &[BinaryForm]) -> Result<BinaryDivisor> {
    let rp1 = forms.len();
    assert!(rp1 >= 1);
    let e = forms[0].degree();
    assert!(forms.iter().all(|f| f.degree() == e), "unequal degrees");
    let r = rp1 - 1;
    let intrinsic_degree = rp1
        .checked_mul(e)
        .and_then(|x| x.checked_sub(r * rp1))
        .ok_or(Error::DependentForms)?;

    let w_u = wronskian_det(&forms.iter().map(|f| f.in_u_chart()).collect::<Vec<_>>())?;
    if w_u.is_zero() {
        return Err(Error::DependentForms);
    }
    let finite_deg = w_u.degree().unwrap();
    if finite_deg > intrinsic_degree {
        return Err(Error::IdentityFailure(
            "Wronskian degree exceeds the intrinsic bound".into(),
        ));
    }
    let w_inf = intrinsic_degree - finite_deg;
    // cross-check the infinity weight in the other chart
    let w_v = wronskian_det(&forms.iter().map(|f| f.in_v_chart()).collect::<Vec<_>>())?;
    if w_v.is_zero() {
        return Err(Error::DependentForms);
    }
    if w_v.ord_at(&Rat::zero()) != w_inf {
        return Err(Error::IdentityFailure(format!(
            "chart disagreement on infinity weight: {} vs {}",
            w_v.ord_at(&Rat::zero()),
            w_inf
        )));
    }

    let mut div = BinaryDivisor::default();
    if w_inf > 0 {
        div.add_weight(DivisorPoint::Rational(ProjPoint::from_ints(1, 0)), w_inf);
    }
    let (_, facs) = irreducible_factors(&w_u)?;
    for (q, m) in facs {
        div.add_weight(factor_to_point(&q), m);
    }
    div.sort();
    debug_assert_eq!(div.total_degree(), intrinsic_degree);
    Ok(div)
}

fn wronskian_det(fs: &[QPoly]) -> Result<QPoly> {
    let n = fs.len();
    let mut rows: Vec<Vec<QPoly>> = Vec::with_capacity(n);
    let mut current: Vec<QPoly> = fs.to_vec();
    for _ in 0..n {
        rows.push(current.clone());
        current = current.iter().map(|f| f.derivative()).collect();
    }
    // columns are the functions, rows the derivative orders
    Ok(poly_det(&rows))
}

fn poly_det(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = QPoly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = entry.mul(&poly_det(&minor));
        det = if j % 2 == 0 { det.add(&cof) } else { det.sub(&cof) };
    }
    det
}

// squarefree_decomposition is re-exported at form level for callers who only
// need multiplicities
pub fn squarefree_form_decomposition(f: &BinaryForm) -> Result<(Rat, Vec<(BinaryForm, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let fu = f.in_u_chart();
    let v_ord = f.degree() - fu.degree().unwrap();
    let (unit, parts) = squarefree_decomposition(&fu)?;
    let mut out: Vec<(BinaryForm, usize)> = parts
        .into_iter()
        .map(|(q, m)| (BinaryForm::from_u_poly(&q, q.degree().unwrap()), m))
        .collect();
    if v_ord > 0 {
        out.push((BinaryForm::new(vec![Rat::one()], 1), v_ord));
    }
    Ok((unit, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    // u * v^2
    fn uv2() -> BinaryForm {
        BinaryForm::new(vec![Rat::zero(), Rat::one()], 3)
    }

    #[test]
    fn squarefree_factor_examples() {
        // u v^2 -> [(v,2),(u,1)] in (degree, coeff) order: u=(0,1) vs v=(1,0)
        let (unit, facs) = squarefree_factor(&uv2()).unwrap();
        assert!(unit.is_one());
        assert_eq!(facs.len(), 2);
        let names: Vec<(usize, usize)> = facs.iter().map(|(f, m)| (f.degree(), *m)).collect();
        assert_eq!(names, vec![(1, 1), (1, 2)]);

        // u^2 - v^2 -> (u-v)(u+v)
        let f = BinaryForm::from_ints(&[-1, 0, 1]);
        let (_, facs) = squarefree_factor(&f).unwrap();
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().all(|(_, m)| *m == 1));

        // H at c=(1,1): u^3+3u^2 v+3u v^2+v^3 = (u+v)^3
        let h = BinaryForm::from_ints(&[1, 3, 3, 1]);
        let (_, facs) = squarefree_factor(&h).unwrap();
        assert_eq!(facs, vec![(BinaryForm::from_ints(&[1, 1]), 3)]);
    }

    #[test]
    fn reconstruction_is_exact() {
        let f = BinaryForm::from_ints(&[0, -2, 0, 2]); // 2u(u-v)(u+v) with v^0... = 2u^3 - 2uv^2
        let (unit, facs) = squarefree_factor(&f).unwrap();
        let mut prod = BinaryForm::new(vec![unit], 0);
        for (q, m) in &facs {
            prod = prod.mul(&q.pow(*m));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn ord_at_examples() {
        // f = u^2 (u - v)
        let f = BinaryForm::from_ints(&[0, 0, -1, 1]);
        assert_eq!(f.ord_at(&ProjPoint::from_ints(0, 1)).unwrap(), 2);
        assert_eq!(f.ord_at(&ProjPoint::from_ints(1, 1)).unwrap(), 1);
        assert_eq!(f.ord_at(&ProjPoint::from_ints(2, 1)).unwrap(), 0);
        // f = v^3 at (1:0)
        let v3 = BinaryForm::new(vec![Rat::one()], 3);
        assert_eq!(v3.ord_at(&ProjPoint::from_ints(1, 0)).unwrap(), 3);
    }

    #[test]
    fn ord_sum_bounded_by_degree() {
        let f = BinaryForm::from_ints(&[1, 3, 3, 1]); // (u+v)^3
        let pts = [
            ProjPoint::from_ints(-1, 1),
            ProjPoint::from_ints(0, 1),
            ProjPoint::from_ints(1, 0),
        ];
        let total: usize = pts.iter().map(|p| f.ord_at(p).unwrap()).sum();
        assert!(total <= f.degree());
    }

    #[test]
    fn wronskian_pencil_unramified() {
        // {v, u}: full degree-1 system, no ramification
        let forms = vec![BinaryForm::from_ints(&[1, 0]), BinaryForm::from_ints(&[0, 1])];
        let div = wronskian_divisor(&forms).unwrap();
        assert_eq!(div.total_degree(), 0);
    }

    #[test]
    fn wronskian_squares() {
        // {v^2, u^2}: weight 1 at (0:1) and (1:0)
        let forms = vec![
            BinaryForm::from_ints(&[1, 0, 0]),
            BinaryForm::from_ints(&[0, 0, 1]),
        ];
        let div = wronskian_divisor(&forms).unwrap();
        assert_eq!(div.total_degree(), 2);
        assert_eq!(div.weight_at(&ProjPoint::from_ints(0, 1)), 1);
        assert_eq!(div.weight_at(&ProjPoint::from_ints(1, 0)), 1);
    }

    #[test]
    fn wronskian_rejects_dependent() {
        let forms = vec![BinaryForm::from_ints(&[1, 1]), BinaryForm::from_ints(&[2, 2])];
        assert!(matches!(wronskian_divisor(&forms), Err(Error::DependentForms)));
    }

    #[test]
    fn wronskian_degree_identity_random() {
        // a few fixed pseudo-random independent triples of cubics
        let cases: Vec<Vec<[i64; 4]>> = vec![
            vec![[1, 0, 0, 0], [0, 1, 2, 0], [0, 0, 1, 1]],
            vec![[2, -1, 0, 3], [0, 1, 0, 0], [1, 1, 1, 1]],
        ];
        for c in cases {
            let forms: Vec<BinaryForm> = c.iter().map(|a| BinaryForm::from_ints(a)).collect();
            let div = wronskian_divisor(&forms).unwrap();
            assert_eq!(div.total_degree(), 3 * 3 - 2 * 3); // (r+1)e - r(r+1)
        }
    }

    #[test]
    fn div_exact_v_powers() {
        let u = BinaryForm::from_ints(&[0, 1]);
        let v = BinaryForm::from_ints(&[1, 0]);
        assert!(u.div_exact(&v).is_err());
        let f = u.mul(&v); // uv
        assert_eq!(f.div_exact(&v).unwrap(), u);
        assert_eq!(f.div_exact(&u).unwrap(), v);
    }

    #[test]
    fn taylor_matches_eval() {
        let f = BinaryForm::from_ints(&[1, -2, 1]); // (u - v)^2
        let p = ProjPoint::from_ints(1, 1);
        let t = f.taylor_at(&p);
        assert!(t[0].is_zero() && t[1].is_zero());
        assert_eq!(t[2], rat_i(1));
        let inf = ProjPoint::from_ints(1, 0);
        let t = f.taylor_at(&inf);
        assert_eq!(t[0], rat_i(1)); // value at infinity in u=1 chart
    }
}
