use super::*;
use crate::arith::{int, rat, Rational};
use proptest::prelude::*;

fn e1() -> WeierstrassModel {
    WeierstrassModel::from_ints([1, 0, 1, -141, 624])
}
fn e2() -> WeierstrassModel {
    WeierstrassModel::from_ints([1, 1, 1, -55238, 4974531])
}
fn e3() -> WeierstrassModel {
    WeierstrassModel::from_ints([1, 0, 0, 543, 10026])
}

#[test]
fn first_curve() {
    let prof = conductor(&e1()).unwrap();
    assert_eq!(prof.conductor, int(10082));
    let at2 = prof.at(&int(2)).unwrap();
    assert_eq!(at2.class, ReductionClass::NonsplitMultiplicative);
    assert_eq!(at2.ord_delta, 3);
    let at71 = prof.at(&int(71)).unwrap();
    assert_eq!(at71.class, ReductionClass::Additive);
    assert_eq!(at71.conductor_exponent, 2);
    assert!(at71.potentially_good);
    assert!(hypothesis_check(&prof, &int(2)).passed());
}

#[test]
fn second_curve() {
    let prof = conductor(&e2()).unwrap();
    assert_eq!(prof.conductor, int(15650));
    assert_eq!(prof.minimal_discriminant, -(num_traits::pow(int(2), 19) * num_traits::pow(int(5), 6) * int(313)));
    let at2 = prof.at(&int(2)).unwrap();
    assert_eq!(at2.class, ReductionClass::SplitMultiplicative);
    assert_eq!(at2.ord_delta, 19);
    assert_eq!(at2.kodaira, Kodaira::I(19));
    let at313 = prof.at(&int(313)).unwrap();
    assert_eq!(at313.class, ReductionClass::NonsplitMultiplicative);
    assert_eq!(at313.ord_delta, 1);
    assert_eq!(split_or_nonsplit(at313).unwrap(), Splitting::Nonsplit);
    assert_eq!(split_or_nonsplit(at2).unwrap(), Splitting::Split);
    assert!(prof.at(&int(5)).unwrap().potentially_good);
    assert!(hypothesis_check(&prof, &int(2)).passed());
}

#[test]
fn third_curve() {
    let prof = conductor(&e3()).unwrap();
    assert_eq!(prof.conductor, int(13467));
    let at3 = prof.at(&int(3)).unwrap();
    assert!(at3.class.is_multiplicative());
    assert_eq!(at3.ord_delta, 11);
    assert_eq!(split_or_nonsplit(at3).unwrap() == Splitting::Split, at3.class == ReductionClass::SplitMultiplicative);
    assert!(hypothesis_check(&prof, &int(3)).passed());
}

#[test]
fn known_conductors() {
    let cases: [([i64; 5], i64); 9] = [
        ([0, 0, 0, 1, 0], 64),
        ([0, -1, 1, -10, -20], 11),
        ([0, 0, 1, -1, 0], 37),
        ([0, 0, 0, -1, 0], 32),
        ([0, 0, 0, 0, 1], 36),
        ([0, 0, 1, 0, -7], 27),
        ([0, 1, 1, -2, 0], 389),
        ([0, 0, 1, -7, 6], 5077),
        ([1, -1, 1, -1, -14], 17),
    ];
    for (a, n) in cases {
        let prof = conductor(&WeierstrassModel::from_ints(a)).unwrap();
        assert_eq!(prof.conductor, int(n), "{a:?}");
    }
}

#[test]
fn split_and_nonsplit_examples() {
    // 11a1 is split at 11, 37a1 nonsplit at 37.
    let d = tate_algorithm(&WeierstrassModel::from_ints([0, -1, 1, -10, -20]), &int(11)).unwrap();
    assert_eq!(d.class, ReductionClass::SplitMultiplicative);
    assert_eq!(d.kodaira, Kodaira::I(5));
    let d = tate_algorithm(&WeierstrassModel::from_ints([0, 0, 1, -1, 0]), &int(37)).unwrap();
    assert_eq!(d.class, ReductionClass::NonsplitMultiplicative);
    assert!(split_or_nonsplit(&tate_algorithm(&e1(), &int(71)).unwrap()).is_err());
}

#[test]
fn non_minimal_input_is_minimised() {
    let iso = crate::curve::Isomorphism::scale(rat(1, 6));
    let big = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).transform(&iso);
    let prof = conductor(&big).unwrap();
    assert_eq!(prof.conductor, int(11));
    assert_eq!(prof.minimal_discriminant, -num_traits::pow(int(11), 5));
    let scaled = e2().transform(&crate::curve::Isomorphism::new(rat(1, 2), rat(3, 1), rat(1, 1), rat(-2, 1)));
    let p2 = conductor(&scaled).unwrap();
    assert_eq!(p2.conductor, int(15650));
    let d = p2.at(&int(2)).unwrap();
    assert_eq!(scaled.transform(&d.to_minimal), d.minimal_model);
}

#[test]
fn additive_at_p_fails_hypothesis() {
    let prof = conductor(&e1()).unwrap();
    let rep = hypothesis_check(&prof, &int(71));
    assert!(!rep.passed());
    assert!(rep.failures()[0].reason.contains("not multiplicative at p"));
    let rep = hypothesis_check(&prof, &int(3));
    assert!(!rep.passed());
}

#[test]
fn minimal_model_is_idempotent() {
    for e in [e1(), e2(), e3()] {
        let prof = conductor(&e).unwrap();
        for (p, d) in &prof.local {
            let again = tate_algorithm(&d.minimal_model, p).unwrap();
            assert_eq!(again.ord_delta, d.ord_delta);
            assert_eq!(again.kodaira, d.kodaira);
            assert_eq!(again.conductor_exponent, d.conductor_exponent);
        }
    }
}

#[test]
fn multiplicative_iff_negative_j_valuation() {
    for e in [e1(), e2(), e3()] {
        for d in conductor(&e).unwrap().local.values() {
            let neg = d.ord_j < Valuation::Finite(0);
            assert_eq!(d.class.is_multiplicative(), neg && d.conductor_exponent == 1, "{}", d.prime);
        }
    }
}

fn short(a: i64, b: i64) -> WeierstrassModel {
    let z = Rational::zero();
    WeierstrassModel::new(z.clone(), z.clone(), z, rat(a, 1), rat(b, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ogg_formula_at_tame_primes(a in prop::array::uniform5(-30i64..30)) {
        let e = WeierstrassModel::from_ints(a);
        prop_assume!(!e.discriminant().is_zero());
        let prof = conductor(&e).unwrap();
        for (p, d) in &prof.local {
            if p >= &int(5) {
                prop_assert_eq!(d.conductor_exponent + d.kodaira.components() - 1, d.ord_delta);
            }
            if d.class.is_multiplicative() {
                prop_assert_eq!(d.kodaira, Kodaira::I(d.ord_delta as u32));
                prop_assert_eq!(d.conductor_exponent, 1);
            } else {
                prop_assert!(d.conductor_exponent >= 2);
            }
            let s = split_or_nonsplit(d);
            if d.class.is_multiplicative() {
                prop_assert_eq!(s.unwrap() == Splitting::Split, d.class == ReductionClass::SplitMultiplicative);
            }
        }
    }

    #[test]
    fn twist_swaps_splitting(a in -40i64..40, b in -40i64..40, d in prop::sample::select(vec![2i64, 3, 5, 6, 7, -1, -2])) {
        let e = short(a, b);
        prop_assume!(!e.discriminant().is_zero());
        let tw = short(a * d * d, b * d * d * d);
        let prof = conductor(&e).unwrap();
        for (p, data) in &prof.local {
            if p < &int(5) || !data.class.is_multiplicative() || (int(d) % p).is_zero() {
                continue;
            }
            let twisted = tate_algorithm(&tw, p).unwrap();
            let chi = kronecker_symbol(&int(d), p).unwrap();
            let same = twisted.class == data.class;
            prop_assert_eq!(same, chi == 1);
        }
    }
}
