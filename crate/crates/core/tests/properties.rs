use proptest::prelude::*;

use fstirling::convpoly::fixed_point_series;
use fstirling::exactnum::rational::{frac, int};
use fstirling::exactnum::{poly_product_expand, CyclotomicElem, LaurentPoly, Rational, Symbol, TruncSeries};
use fstirling::factorial::pochhammer_poly;
use fstirling::fharmonic::{fharmonic_direct, isobaric_expansion};
use fstirling::fspec::FSpec;
use fstirling::stirling::Triangle;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !num_traits::Zero::is_zero(r))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, rational()), 0..5).prop_map(|terms| LaurentPoly::from_terms(Symbol::T, terms))
}

/// Evaluates a coefficient vector in ascending powers at `x`.
fn horner(coeffs: &[LaurentPoly], x: &LaurentPoly) -> LaurentPoly {
    coeffs.iter().rev().fold(LaurentPoly::zero(), |acc, c| acc * x.clone() + c.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }
}

proptest! {
    #[test]
    fn product_expansion_vanishes_at_roots(roots in prop::collection::vec(rational(), 0..7)) {
        let lifted: Vec<LaurentPoly> = roots.iter().cloned().map(LaurentPoly::constant).collect();
        let coeffs = poly_product_expand(&lifted);
        prop_assert_eq!(coeffs.len(), roots.len() + 1);
        prop_assert_eq!(coeffs.last().unwrap(), &LaurentPoly::one());
        for r in &roots {
            prop_assert!(horner(&coeffs, &LaurentPoly::constant(-r.clone())).is_zero());
        }
    }

    #[test]
    fn series_division_undoes_multiplication(
        a in prop::collection::vec(rational(), 1..8),
        b0 in nonzero_rational(),
        b in prop::collection::vec(rational(), 0..7),
    ) {
        let order = 6;
        let sa = TruncSeries::from_rationals('z', order, a);
        let sb = TruncSeries::from_rationals('z', order, std::iter::once(b0).chain(b));
        let back = sa.mul(&sb).unwrap().div(&sb).unwrap();
        prop_assert_eq!(back, sa);
    }

    #[test]
    fn cyclotomic_norm_is_rational(c in rational(), d in rational(), which in 0usize..3) {
        let p = [2usize, 3, 5][which];
        let scalar = CyclotomicElem::from_scalar(p, LaurentPoly::constant(c)).unwrap();
        let mut prod = CyclotomicElem::from_scalar(p, LaurentPoly::one()).unwrap();
        for m in 0..p {
            let factor = scalar.sub(&CyclotomicElem::monomial(p, LaurentPoly::constant(d.clone()), m).unwrap()).unwrap();
            prod = prod.mul(&factor).unwrap();
        }
        prop_assert!(prod.is_scalar(), "{}", prod);
    }

    #[test]
    fn fspec_text_round_trip(
        alpha in rational(),
        beta in rational(),
        coeffs in prop::collection::vec(rational(), 1..5),
        base in nonzero_rational(),
        offset in -5i64..=5,
    ) {
        let mut poly = coeffs;
        while poly.len() > 1 && poly.last().is_some_and(num_traits::Zero::is_zero) {
            poly.pop();
        }
        let specs = [
            FSpec::Linear { alpha, beta },
            FSpec::Poly(poly),
            FSpec::QPow { base: None, offset },
            FSpec::QPow { base: Some(base), offset },
        ];
        for spec in specs {
            prop_assert_eq!(FSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn pochhammer_vanishes_at_offsets(a in 1i64..6, b in 0i64..4, t in nonzero_rational(), n in 1usize..8) {
        let f = FSpec::linear(int(a), int(b));
        let tp = LaurentPoly::constant(t);
        let poly = pochhammer_poly(&f, &tp, n).unwrap();
        for j in 1..n {
            let x = f.eval(j).unwrap() * tp.pow(-(j as i64)).unwrap();
            prop_assert!(horner(&poly.coeffs, &(-x)).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn linear_evaluation_is_exact(alpha in rational(), beta in rational(), n in 1usize..10_000) {
        let want = &alpha * int(n as i64) + &beta;
        let f = FSpec::linear(alpha, beta);
        match f.eval(n) {
            Ok(v) => prop_assert_eq!(v, LaurentPoly::constant(want)),
            Err(_) => prop_assert!(num_traits::Zero::is_zero(&want)),
        }
    }
}

#[test]
fn harmonic_numbers_telescope() {
    let specs = ["linear:1,0", "linear:2,1", "qpow:1", "poly:1,1,1"];
    let ts = [LaurentPoly::one(), LaurentPoly::constant(frac(3, 2)), LaurentPoly::var_pow(Symbol::T, 1)];
    for spec in specs {
        let f = FSpec::parse(spec).unwrap();
        for t in &ts {
            if f.is_symbolic() && !t.is_constant() {
                continue;
            }
            for p in 1..=3 {
                let mut prev = fharmonic_direct(&f, p, 0, t).unwrap();
                for n in 1..=20 {
                    let cur = fharmonic_direct(&f, p, n, t).unwrap();
                    let step =
                        t.pow(n as i64).unwrap().checked_div(&f.eval(n).unwrap().pow(p as i64).unwrap()).unwrap();
                    assert_eq!(&cur - &prev, step, "{spec} p={p} n={n}");
                    prev = cur;
                }
            }
        }
    }
}

#[test]
fn isobaric_monomials_have_weight_two_p() {
    for p in 1..=6 {
        let poly = isobaric_expansion(p).unwrap();
        assert_eq!(poly.weight, 2 * p);
        for mono in poly.terms.keys() {
            assert_eq!(mono.iter().sum::<usize>(), 2 * p, "p={p} {mono:?}");
        }
    }
}

#[test]
fn q_case_entries_have_nonnegative_integer_coefficients() {
    let tri = Triangle::first_kind(&FSpec::parse("qpow:1").unwrap(), &LaurentPoly::one(), 10).unwrap();
    for row in tri.rows() {
        for entry in row {
            for (e, c) in entry.terms() {
                assert!(e >= 0 && c.is_integer() && *c >= int(0), "{entry}");
            }
        }
    }
}

#[test]
fn fixed_point_coefficients_settle() {
    let s = TruncSeries::from_rationals('z', 6, [int(1), frac(1, 2), int(-1), frac(2, 3)]);
    for t_shift in 0..=2 {
        let sol = fixed_point_series(&s, t_shift).unwrap();
        let again = s.compose(&sol.pow(t_shift as u64).shift(1).truncate(6)).unwrap();
        assert_eq!(again, sol, "t = {t_shift}");
    }
}

#[test]
fn table_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"["3/2", -2, "5"]"#).unwrap();
    let spec = FSpec::parse(&format!("table:{}", path.display())).unwrap();
    assert_eq!(FSpec::parse(&spec.to_string()).unwrap(), spec);
    assert_eq!(spec.eval_rational(2).unwrap(), int(-2));
    assert!(spec.eval(4).is_err());
}
