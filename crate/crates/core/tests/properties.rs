//! Randomized algebraic properties of the exact-arithmetic layers.

use num_traits::Zero;
use proptest::prelude::*;

use limitram::binary::BinaryForm;
use limitram::examples;
use limitram::parse::parse_binary;
use limitram::scalar::{rat_i, Rat};
use limitram::ternary::TernaryForm;
use limitram::tjet::{TJet, EXACT};
use limitram::unipoly::QPoly;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn qpoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(QPoly::new)
}

fn binary_form(deg: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(small_rat(), deg + 1).prop_map(move |c| BinaryForm::new(c, deg))
}

fn jet(prec: usize) -> impl Strategy<Value = TJet> {
    prop::collection::vec(small_rat(), 1..=prec).prop_map(|c| TJet::new(c, EXACT))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unipoly_divrem_inverts_mul(a in qpoly(4), b in qpoly(3)) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b);
        let (q, r) = prod.divrem(&b).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, a);
    }

    #[test]
    fn factorization_reconstructs(a in qpoly(3), b in qpoly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = a.mul(&b);
        let (unit, facs) = limitram::factor::irreducible_factors(&prod).unwrap();
        let mut back = QPoly::new(vec![unit]);
        for (f, m) in &facs {
            for _ in 0..*m {
                back = back.mul(f);
            }
        }
        prop_assert_eq!(back, prod);
    }

    #[test]
    fn binary_render_parse_round_trip(f in binary_form(3)) {
        prop_assume!(!f.is_zero());
        let back = parse_binary(&f.render("u", "v")).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn jet_mul_div_round_trip(a in jet(5), b in jet(5)) {
        prop_assume!(!b.is_zero() && !b.coeff(0).is_zero());
        let prod = a.mul(&b);
        let q = prod.div(&b, 5).unwrap();
        for k in 0..5 {
            prop_assert_eq!(q.coeff(k), a.coeff(k));
        }
    }

    #[test]
    fn valuation_shifts_with_t(k in 0usize..3, c1 in 1i64..5, c2 in -4i64..5) {
        let m = examples::case11(&rat_i(c1), &rat_i(c2)).unwrap().to_model().unwrap();
        let elems = ["x", "y", "z", "x+y", "y-z"];
        for s in elems {
            let e: TernaryForm = limitram::parse::parse_ternary(s).unwrap();
            for i in 0..2 {
                let v = m.valuation(&e, i).unwrap();
                let shifted = m.valuation(&e.shift_up(k), i).unwrap();
                prop_assert_eq!(shifted, v + k);
            }
        }
    }

    #[test]
    fn restriction_is_linear(a in small_rat(), b in small_rat()) {
        let m = examples::case11(&rat_i(1), &rat_i(2)).unwrap().to_model().unwrap();
        let x = limitram::parse::parse_ternary("x").unwrap();
        let y = limitram::parse::parse_ternary("y").unwrap();
        let combo = x.scale(&a).add(&y.scale(&b));
        for n in [[0i64, 0], [1, 1]] {
            for i in 0..2 {
                let rx = m.restrict_section(&x, &n, i).unwrap();
                let ry = m.restrict_section(&y, &n, i).unwrap();
                let rc = m.restrict_section(&combo, &n, i).unwrap();
                prop_assert_eq!(rc, rx.scale(&a).add(&ry.scale(&b)));
            }
        }
    }
}
