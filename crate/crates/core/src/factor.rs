//! Complete factorization of univariate polynomials over the rationals.
//!
//! Squarefree decomposition is Yun's algorithm. Irreducible splitting of a
//! squarefree primitive integer polynomial goes through the classical
//! monic-Zassenhaus route: Berlekamp over a small prime field, linear Hensel
//! lifting past the Mignotte bound, then subset recombination. Input degrees
//! here are small (bounded by the divisor degrees of the models), so the
//! exponential recombination worst case is irrelevant in practice.
//!
//! Factor ordering is deterministic: by degree, then lexicographically on the
//! coefficient sequence from the leading coefficient down.

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Int, Rat};
use crate::unipoly::QPoly;

/// Squarefree decomposition: returns `(unit, [(squarefree factor, multiplicity)])`
/// with `unit * prod factor^mult == f`. Factors are primitive with positive
/// leading coefficient.
pub fn squarefree_decomposition(f: &QPoly) -> Result<(Rat, Vec<(QPoly, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree() == Some(0) {
        return Ok((f.coeff(0), vec![]));
    }
    let mut parts: Vec<(QPoly, usize)> = vec![];
    // Yun
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut b = f.div_exact(&g)?;
    let mut c = df.div_exact(&g)?;
    let mut d = c.sub(&b.derivative());
    let mut i = 1usize;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            parts.push((a.clone(), i));
        }
        b = b.div_exact(&a)?;
        c = d.div_exact(&a)?;
        d = c.sub(&b.derivative());
        i += 1;
    }
    // normalize each part to primitive with positive lead, collect unit
    let mut unit = f.leading().unwrap().clone();
    let mut out = vec![];
    for (p, m) in parts {
        let (_, prim) = p.content_primitive();
        let prim = QPoly::new(prim.into_iter().map(Rat::from_integer).collect());
        for _ in 0..m {
            unit /= prim.leading().unwrap();
        }
        out.push((prim, m));
    }
    Ok((unit, out))
}

/// Full irreducible factorization over Q: `(unit, [(irreducible, multiplicity)])`
/// with `unit * prod factor^mult == f`; factors are primitive integer
/// polynomials with positive leading coefficient, deterministically ordered.
pub fn irreducible_factors(f: &QPoly) -> Result<(Rat, Vec<(QPoly, usize)>)> {
    let (_, sqf) = squarefree_decomposition(f)?;
    let mut out: Vec<(QPoly, usize)> = vec![];
    for (part, mult) in sqf {
        let (_, prim) = part.content_primitive();
        for irr in factor_squarefree_primitive(&prim)? {
            let q = QPoly::new(irr.into_iter().map(Rat::from_integer).collect());
            out.push((q, mult));
        }
    }
    // the factors are primitive, so the unit is the ratio of leading coefficients
    let mut prod = QPoly::constant(Rat::one());
    for (q, m) in &out {
        for _ in 0..*m {
            prod = prod.mul(q);
        }
    }
    let unit = f.leading().unwrap() / prod.leading().unwrap();
    // sanity: exact reconstruction
    if prod.scale(&unit) != *f {
        return Err(Error::IdentityFailure(
            "factorization does not reproduce input".into(),
        ));
    }
    out.sort_by(|a, b| factor_order(&a.0, &b.0));
    Ok((unit, out))
}

fn factor_order(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            let d = a.degree().unwrap_or(0);
            for i in (0..=d).rev() {
                let o = a.coeff(i).cmp(&b.coeff(i));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// Factor a squarefree primitive integer polynomial into primitive irreducible
/// integer polynomials (positive leading coefficients).
fn factor_squarefree_primitive(f: &[Int]) -> Result<Vec<Vec<Int>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    // monic transform: g(x) = L^(n-1) f(x/L); g_i = f_i L^(n-1-i), g_n = 1
    let lead = f[n].clone();
    let mut monic: Vec<Int> = Vec::with_capacity(n + 1);
    for (i, c) in f.iter().enumerate() {
        if i == n {
            monic.push(Int::one());
        } else {
            monic.push(c * lead.pow((n - 1 - i) as u32));
        }
    }
    let monic_factors = factor_monic_squarefree(&monic)?;
    let mut out = vec![];
    for h in monic_factors {
        // map back: primitive part of h(L x)
        let mapped: Vec<Int> = h
            .iter()
            .enumerate()
            .map(|(j, c)| c * lead.pow(j as u32))
            .collect();
        out.push(primitive_part(&mapped));
    }
    Ok(out)
}

fn primitive_part(c: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in c {
        g = num_integer::gcd(g, x.clone());
    }
    if c.last().unwrap().is_negative() {
        g = -g;
    }
    c.iter().map(|x| x / &g).collect()
}

// ---------------------------------------------------------------------------
// Zassenhaus for monic squarefree integer polynomials
// ---------------------------------------------------------------------------

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

fn factor_monic_squarefree(f: &[Int]) -> Result<Vec<Vec<Int>>> {
    let n = f.len() - 1;
    debug_assert!(f[n].is_one());
    // choose a prime keeping f squarefree
    let p = PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let fp = reduce_mod(f, p);
            if fp.len() != f.len() {
                return false;
            }
            let dfp = mp_derivative(&fp, p);
            mp_gcd(&fp, &dfp, p).len() == 1
        })
        .ok_or_else(|| Error::DegenerateInput("no suitable small prime for factorization".into()))?;
    let fp = reduce_mod(f, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }
    // Mignotte-style bound on factor coefficients; lift to p^k > 2B
    let norm2: f64 = f
        .iter()
        .map(|c| {
            let v: f64 = approx_f64(c);
            v * v
        })
        .sum::<f64>()
        .sqrt();
    let bound = 2f64.powi(n as i32) * (norm2 + 1.0);
    let mut k = 1usize;
    let mut pk = Int::from(p);
    let two_b = 2.0 * bound + 1.0;
    while approx_f64(&pk) < two_b {
        pk *= Int::from(p);
        k += 1;
    }
    let lifted = hensel_multi(f, &modular, p, k)?;
    Ok(recombine(f, lifted, &pk))
}

fn approx_f64(x: &Int) -> f64 {
    // magnitude estimate good enough for choosing a lifting height
    let (_, digits) = x.to_radix_be(16);
    let mut v = 0f64;
    for d in digits.iter().take(16) {
        v = v * 16.0 + *d as f64;
    }
    v * 16f64.powi(digits.len().saturating_sub(16) as i32)
}

/// Hensel-lift a mod-p factorization of monic `f` to mod p^k, recursively
/// splitting the factor list in two.
fn hensel_multi(f: &[Int], facs: &[Vec<u64>], p: u64, k: usize) -> Result<Vec<Vec<Int>>> {
    let pk = Int::from(p).pow(k as u32);
    if facs.len() == 1 {
        return Ok(vec![f.iter().map(|c| modp_int(c, &pk)).collect()]);
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, h| mp_mul(&acc, h, p));
    let h0 = right.iter().fold(vec![1u64], |acc, h| mp_mul(&acc, h, p));
    let (g, h) = hensel_pair(f, &g0, &h0, p, k)?;
    let mut out = hensel_multi(&g, left, p, k)?;
    out.extend(hensel_multi(&h, right, p, k)?);
    Ok(out)
}

/// Lift monic f ≡ g0 h0 (mod p) to f ≡ g h (mod p^k) with g, h monic.
fn hensel_pair(f: &[Int], g0: &[u64], h0: &[u64], p: u64, k: usize) -> Result<(Vec<Int>, Vec<Int>)> {
    let pk = Int::from(p).pow(k as u32);
    // Bezout: a g0 + b h0 = 1 mod p
    let (_, b) = mp_bezout(g0, h0, p)?;
    let mut g: Vec<Int> = g0.iter().map(|&c| Int::from(c)).collect();
    let mut h: Vec<Int> = h0.iter().map(|&c| Int::from(c)).collect();
    let mut pj = Int::from(p);
    while pj < pk {
        // c = (f - g h)/p^j mod p
        let prod = zmul(&g, &h);
        let mut c: Vec<Int> = Vec::with_capacity(f.len());
        for i in 0..f.len().max(prod.len()) {
            let fi = f.get(i).cloned().unwrap_or_else(Int::zero);
            let gi = prod.get(i).cloned().unwrap_or_else(Int::zero);
            let diff = modp_int(&(fi - gi), &pk);
            // diff divisible by p^j by construction
            c.push(modp_int(&(diff / &pj), &Int::from(p)));
        }
        let cp: Vec<u64> = c
            .iter()
            .map(|x| x.to_u64_digits().1.first().copied().unwrap_or(0))
            .collect();
        let cp = mp_trim(cp);
        // u = b*c mod g0 ; v = (c - u h0)/g0   (all in F_p[x])
        let u = mp_rem(&mp_mul(&b, &cp, p), g0, p);
        let uh = mp_mul(&u, h0, p);
        let num = mp_sub(&cp, &uh, p);
        let v = mp_div_exact(&num, g0, p)?;
        for (i, ui) in u.iter().enumerate() {
            if *ui != 0 {
                g[i] = modp_int(&(&g[i] + Int::from(*ui) * &pj), &pk);
            }
        }
        for (i, vi) in v.iter().enumerate() {
            if *vi != 0 {
                h[i] = modp_int(&(&h[i] + Int::from(*vi) * &pj), &pk);
            }
        }
        pj *= Int::from(p);
    }
    Ok((g, h))
}

/// Try subsets of lifted modular factors, in deterministic order, against f.
fn recombine(f: &[Int], mut mods: Vec<Vec<Int>>, pk: &Int) -> Vec<Vec<Int>> {
    let mut remaining = f.to_vec();
    let mut out = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= mods.len() {
        let idxs: Vec<usize> = (0..mods.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand = vec![Int::one()];
            for &i in &combo {
                cand = zmul_mod(&cand, &mods[i], pk);
            }
            let cand: Vec<Int> = cand.iter().map(|c| symmetric(c, pk)).collect();
            if let Some(q) = zdiv_exact(&remaining, &cand) {
                out.push(cand);
                remaining = q;
                let mut keep = vec![];
                for (i, m) in mods.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(m);
                    }
                }
                mods = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.len() > 1 {
        out.push(remaining);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            let mut v = vec![x];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

// --- integer polynomial helpers ---

fn zmul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut v = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn zmul_mod(a: &[Int], b: &[Int], m: &Int) -> Vec<Int> {
    zmul(a, b).into_iter().map(|c| modp_int(&c, m)).collect()
}

/// Monic-divisor exact division over Z; `None` if not exact.
fn zdiv_exact(f: &[Int], g: &[Int]) -> Option<Vec<Int>> {
    if g.len() > f.len() {
        return None;
    }
    let mut rem: Vec<Int> = f.to_vec();
    let dg = g.len() - 1;
    let lead = &g[dg];
    let mut quot = vec![Int::zero(); f.len() - dg];
    for i in (dg..f.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = num_integer::div_rem(rem[i].clone(), lead.clone());
        if !r.is_zero() {
            return None;
        }
        quot[i - dg] = q.clone();
        for j in 0..=dg {
            let s = &g[j] * &q;
            rem[i - dg + j] -= s;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

fn modp_int(x: &Int, m: &Int) -> Int {
    let r = x % m;
    if r.sign() == Sign::Minus {
        r + m
    } else {
        r
    }
}

fn symmetric(x: &Int, m: &Int) -> Int {
    let r = modp_int(x, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

// --- F_p[x] helpers (p < 2^31, ascending coefficient vectors) ---

fn reduce_mod(f: &[Int], p: u64) -> Vec<u64> {
    mp_trim(
        f.iter()
            .map(|c| {
                let r = modp_int(c, &Int::from(p));
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

fn mp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    mp_trim(
        (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p
            })
            .collect(),
    )
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    mp_trim(v)
}

fn mp_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    mp_trim(a.iter().map(|&x| x * c % p).collect())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended euclid
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    (((s0 % p as i128) + p as i128) % p as i128) as u64
}

fn mp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i] * inv % p;
        if c != 0 {
            quot[i - db] = c;
            for j in 0..=db {
                rem[i - db + j] = (rem[i - db + j] + p - b[j] * c % p) % p;
            }
        }
    }
    (mp_trim(quot), mp_trim(rem))
}

fn mp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    mp_divrem(a, b, p).1
}

fn mp_div_exact(a: &[u64], b: &[u64], p: u64) -> Result<Vec<u64>> {
    let (q, r) = mp_divrem(a, b, p);
    if !r.is_empty() {
        return Err(Error::ExactDivision("mod-p division not exact".into()));
    }
    Ok(q)
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = mp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        if l != 1 {
            let inv = inv_mod(l, p);
            return mp_scale(&a, inv, p);
        }
    }
    a
}

fn mp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    mp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

/// Extended gcd in F_p[x]: returns (s, t) with s a + t b = 1; errors if a, b
/// are not coprime.
fn mp_bezout(a: &[u64], b: &[u64], p: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let ns = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let nt = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    if r0.len() != 1 {
        return Err(Error::DegenerateInput("mod-p factors not coprime".into()));
    }
    let inv = inv_mod(r0[0], p);
    Ok((mp_scale(&s0, inv, p), mp_scale(&t0, inv, p)))
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // rows of Q: x^(i p) mod f
    let xp = mp_powmod(&[0, 1], p, f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut padded = cur.clone();
        padded.resize(n, 0);
        rows.push(padded);
        cur = mp_rem(&mp_mul(&cur, &xp, p), f, p);
    }
    // nullspace of (Q^T - I): vectors v with sum_i v_i x^{ip} = sum_i v_i x^i
    let mut mat = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            mat[j][i] = rows[i][j];
        }
        mat[i][i] = (mat[i][i] + p - 1) % p;
    }
    let basis = mp_nullspace(mat, p);
    let r = basis.len();
    let mut factors = vec![f.to_vec()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = mp_trim(v.clone());
        if vp.len() <= 1 {
            continue; // constant vector splits nothing
        }
        for s in 0..p {
            if factors.len() == r {
                break;
            }
            let mut shifted = vp.clone();
            shifted[0] = (shifted[0] + p - s % p) % p;
            let shifted = mp_trim(shifted);
            let mut next = vec![];
            for w in factors.drain(..) {
                if w.len() <= 2 {
                    next.push(w);
                    continue;
                }
                let g = mp_gcd(&w, &shifted, p);
                if g.len() > 1 && g.len() < w.len() {
                    let q = mp_div_exact(&w, &g, p).expect("gcd divides");
                    next.push(g);
                    next.push(q);
                } else {
                    next.push(w);
                }
            }
            factors = next;
        }
    }
    // normalize monic
    factors
        .into_iter()
        .map(|w| {
            let l = *w.last().unwrap();
            if l != 1 {
                mp_scale(&w, inv_mod(l, p), p)
            } else {
                w
            }
        })
        .collect()
}

fn mp_powmod(base: &[u64], e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = mp_rem(base, f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mp_rem(&mp_mul(&result, &b, p), f, p);
        }
        b = mp_rem(&mp_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    result
}

fn mp_nullspace(mut mat: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut pivot_of_col = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        if let Some(r) = (row..n).find(|&r| mat[r][col] != 0) {
            mat.swap(row, r);
            let inv = inv_mod(mat[row][col], p);
            for j in 0..n {
                mat[row][j] = mat[row][j] * inv % p;
            }
            for r2 in 0..n {
                if r2 != row && mat[r2][col] != 0 {
                    let c = mat[r2][col];
                    for j in 0..n {
                        mat[r2][j] = (mat[r2][j] + p - mat[row][j] * c % p) % p;
                    }
                }
            }
            pivot_of_col[col] = row;
            row += 1;
        }
    }
    let mut basis = vec![];
    for col in 0..n {
        if pivot_of_col[col] == usize::MAX {
            let mut v = vec![0u64; n];
            v[col] = 1;
            for c2 in 0..n {
                let pr = pivot_of_col[c2];
                if pr != usize::MAX {
                    v[c2] = (p - mat[pr][col]) % p;
                }
            }
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    fn check(f: &QPoly) {
        let (unit, facs) = irreducible_factors(f).unwrap();
        let mut prod = QPoly::constant(unit);
        for (q, m) in &facs {
            for _ in 0..*m {
                prod = prod.mul(q);
            }
        }
        assert_eq!(&prod, f, "reconstruction failed for {f}");
    }

    #[test]
    fn splits_difference_of_squares() {
        let f = poly(&[-1, 0, 1]); // x^2 - 1
        let (_, facs) = irreducible_factors(&f).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(facs[0].0, poly(&[-1, 1]));
        assert_eq!(facs[1].0, poly(&[1, 1]));
    }

    #[test]
    fn keeps_irreducibles_whole() {
        for f in [poly(&[1, 0, 1]), poly(&[1, 1, 1, 1, 1]), poly(&[2, 0, 0, 1])] {
            let (_, facs) = irreducible_factors(&f).unwrap();
            assert_eq!(facs.len(), 1, "{f} should be irreducible");
            check(&f);
        }
    }

    #[test]
    fn binomial_cube() {
        // (x+1)^3 with a content
        let f = poly(&[2, 6, 6, 2]);
        let (unit, facs) = irreducible_factors(&f).unwrap();
        assert_eq!(unit, rat_i(2));
        assert_eq!(facs, vec![(poly(&[1, 1]), 3)]);
    }

    #[test]
    fn mixed_multiplicities_and_leads() {
        // 6 (x-1)^2 (x^2+x+1) (2x+3)
        let f = poly(&[-1, 1])
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[1, 1, 1]))
            .mul(&poly(&[3, 2]))
            .scale(&rat_i(6));
        check(&f);
        let (_, facs) = irreducible_factors(&f).unwrap();
        assert_eq!(facs.len(), 3);
        assert_eq!(facs.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![2, 1, 1]);
    }

    #[test]
    fn higher_degree_products() {
        // (x^4+x+1)(x^3-2)(x^2-2)  — degrees 4,3,2, all irreducible over Q
        let f = poly(&[1, 1, 0, 0, 1]).mul(&poly(&[-2, 0, 0, 1])).mul(&poly(&[-2, 0, 1]));
        let (_, facs) = irreducible_factors(&f).unwrap();
        assert_eq!(
            facs.iter().map(|(q, _)| q.degree().unwrap()).collect::<Vec<_>>(),
            vec![2, 3, 4]
        );
        check(&f);
    }

    #[test]
    fn squarefree_parts() {
        let f = poly(&[0, 1]).mul(&poly(&[0, 1])).mul(&poly(&[-1, 1])); // x^2 (x-1)
        let (_, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts.len(), 2);
    }
}
