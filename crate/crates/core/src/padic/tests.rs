use super::*;
use crate::arith::{int, rat};
use proptest::prelude::*;

fn pa(n: i64, d: i64, p: i64) -> Padic {
    Padic::from_rational(&rat(n, d), &int(p), 20)
}

#[test]
fn basic_values() {
    let x = pa(12, 1, 2);
    assert_eq!(x.valuation(), Some(2));
    assert_eq!(x.residue(5), Some(int(12)));
    let y = pa(1, 6, 3);
    assert_eq!(y.valuation(), Some(-1));
    assert_eq!(y.residue(1), None);
    assert!(Padic::exact_zero(&int(5)).is_exact_zero());
}

#[test]
fn cancellation_loses_precision() {
    let p = int(3);
    let a = Padic::from_integer(&int(1), &p, 5);
    let b = Padic::from_integer(&int(1 + 243), &p, 10);
    let d = &b - &a;
    assert!(d.is_zero());
    assert_eq!(d.abs_prec(), 5);
    let e = &Padic::from_integer(&int(10), &p, 5) - &a;
    assert_eq!(e.valuation(), Some(2));
    assert_eq!(e.rel_prec(), 3);
}

#[test]
fn division_by_inexact_zero_poisons() {
    let p = int(2);
    let z = Padic::zero_to(&p, 4);
    let w = &pa(3, 1, 2) / &z;
    assert!(w.abs_prec() < -1_000_000);
    assert!(!w.agrees_to(&pa(3, 1, 2), 0));
}

#[test]
fn square_roots() {
    let p2 = int(2);
    assert!(pa(17, 1, 2).sqrt().is_some());
    assert!(pa(5, 1, 2).sqrt().is_none());
    assert!(pa(2, 1, 2).sqrt().is_none());
    let r = pa(-7, 1, 2).sqrt().unwrap();
    assert!((&r * &r).agrees_to(&pa(-7, 1, 2), 19));
    let r = pa(4 * 7, 9, 3).sqrt().unwrap();
    assert!((&r * &r).agrees_to(&pa(28, 9, 3), 18));
    assert!(pa(2, 1, 3).sqrt().is_none());
    let _ = p2;
}

#[test]
fn omega_choices() {
    assert_eq!(Omega::for_prime(&int(2)), Omega { t: 1, n: 1 });
    assert_eq!(Omega::for_prime(&int(2)).radicand(), 5);
    assert_eq!(Omega::for_prime(&int(3)).radicand(), 2);
    assert_eq!(Omega::for_prime(&int(5)).radicand(), 2);
    assert_eq!(Omega::for_prime(&int(7)).radicand(), 3);
    assert_eq!(Omega::for_prime(&int(313)).radicand(), 5);
}

#[test]
fn quadratic_generator_relations() {
    for p in [2i64, 3, 5, 313] {
        let pp = int(p);
        let w = Omega::for_prime(&pp);
        let om = LocalElem::new(Padic::exact_zero(&pp), Padic::from_i64(1, &pp, 30), w);
        let lhs = &om * &om;
        let rhs = &om.scale(&Padic::from_i64(w.t, &pp, 30)) + &LocalElem::from_i64(w.n, &pp, 30, Some(w));
        assert!(lhs.agrees_to(&rhs, 30));
        let s = LocalElem::sqrt_radicand(&pp, 30, w);
        assert!((&s * &s).agrees_to(&LocalElem::from_i64(w.radicand(), &pp, 30, Some(w)), 29));
    }
    // epsilon = w - 1 has norm -1.
    let p = int(2);
    let w = Omega::for_prime(&p);
    let eps = LocalElem::new(Padic::from_i64(-1, &p, 30), Padic::from_i64(1, &p, 30), w);
    assert!(eps.norm().agrees_to(&Padic::from_i64(-1, &p, 30), 30));
}

fn nonzero_rat() -> impl Strategy<Value = (i64, i64)> {
    (-5000i64..5000, 1i64..5000).prop_filter("nonzero", |(n, _)| *n != 0)
}

proptest! {
    #[test]
    fn field_ops_match_rationals((a, b) in nonzero_rat(), (c, d) in nonzero_rat(), pi in 0usize..4) {
        let p = [2i64, 3, 5, 7][pi];
        let x = rat(a, b);
        let y = rat(c, d);
        let px = |r: &Rational| Padic::from_rational(r, &int(p), 25);
        let (u, v) = (px(&x), px(&y));
        let k = u.abs_prec().min(v.abs_prec()) ;
        prop_assert!((&u + &v).agrees_to(&px(&(&x + &y)), k));
        prop_assert!((&u - &v).agrees_to(&px(&(&x - &y)), k));
        let km = u.val_or_prec() + v.val_or_prec() + 25;
        prop_assert!((&u * &v).agrees_to(&px(&(&x * &y)), km));
        let kd = u.val_or_prec() - v.val_or_prec() + 25;
        prop_assert!((&u / &v).agrees_to(&px(&(&x / &y)), kd));
        prop_assert_eq!((&u * &v).valuation(), px(&(&x * &y)).valuation());
    }

    #[test]
    fn quadratic_norm_is_multiplicative(a in -200i64..200, b in -200i64..200, c in -200i64..200, d in -200i64..200, pi in 0usize..4) {
        let p = int([2i64, 3, 5, 313][pi]);
        prop_assume!(a != 0 || b != 0);
        prop_assume!(c != 0 || d != 0);
        let w = Omega::for_prime(&p);
        let mk = |x: i64, y: i64| LocalElem::new(Padic::from_i64(x, &p, 30), Padic::from_i64(y, &p, 30), w);
        let (x, y) = (mk(a, b), mk(c, d));
        let lhs = (&x * &y).norm();
        let rhs = &x.norm() * &y.norm();
        prop_assert!(lhs.agrees_to(&rhs, 28));
        let one = &x * &x.inv();
        let k = 28 - 2 * x.valuation().unwrap();
        prop_assert!(one.agrees_to(&LocalElem::from_i64(1, &p, 30, Some(w)), k));
        prop_assert!(x.conj().conj().agrees_to(&x, 30));
        prop_assert_eq!(x.norm().valuation().unwrap(), 2 * x.valuation().unwrap());
    }
}
