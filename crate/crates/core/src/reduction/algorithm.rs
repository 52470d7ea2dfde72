//! Tate's algorithm, following the usual step numbering.

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{Kodaira, LocalReductionData, ReductionClass};
use crate::arith::{int, mod_inverse, ord_rat, rat_int, Integer, Rational, Valuation};
use crate::curve::{Isomorphism, WeierstrassModel};
use crate::error::Result;

fn v(x: &Integer, p: &Integer) -> u64 {
    if x.is_zero() {
        u64::MAX
    } else {
        crate::arith::ord_int(x, p)
    }
}

fn divides(p: &Integer, x: &Integer) -> bool {
    (x % p).is_zero()
}

fn coeffs(m: &WeierstrassModel) -> [Integer; 5] {
    let c = m.coefficients();
    [0, 1, 2, 3, 4].map(|i| {
        debug_assert!(c[i].is_integer());
        c[i].to_integer()
    })
}

fn ri(x: &Integer) -> Rational {
    rat_int(x)
}

/// Points of the reduction where both partial derivatives vanish.
pub(crate) fn singular_point_mod(m: &WeierstrassModel, p: &Integer) -> Option<(Integer, Integer)> {
    let [a1, a2, a3, a4, a6] = coeffs(m);
    let pu = p.to_u64()?;
    if pu <= 3 {
        for x in 0..pu {
            for y in 0..pu {
                let (x, y) = (int(x as i64), int(y as i64));
                let f = &y * &y + &a1 * &x * &y + &a3 * &y - &x * &x * &x - &a2 * &x * &x - &a4 * &x - &a6;
                let fy = int(2) * &y + &a1 * &x + &a3;
                let fx = &a1 * &y - int(3) * &x * &x - int(2) * &a2 * &x - &a4;
                if divides(p, &f) && divides(p, &fy) && divides(p, &fx) {
                    return Some((x, y));
                }
            }
        }
        return None;
    }
    let b2 = m.b_invariants()[0].to_integer();
    let (c4, c6) = m.c4_c6();
    let (c4, c6) = (c4.to_integer(), c6.to_integer());
    let r = if divides(p, &c4) {
        -&b2 * mod_inverse(&int(12), p)?
    } else {
        -(&c6 + &b2 * &c4) * mod_inverse(&(int(12) * &c4), p)?
    }
    .mod_floor(p);
    let t = (-(&a1 * &r + &a3) * mod_inverse(&int(2), p)?).mod_floor(p);
    Some((r, t))
}

/// A root mod `p` of `a T^2 + b T + c` known to be a double root.
fn double_root_quadratic(a: &Integer, b: &Integer, c: &Integer, p: &Integer) -> Integer {
    if p == &int(2) {
        for t in 0..2 {
            let t = int(t);
            if divides(p, &(a * &t * &t + b * &t + c)) {
                return t;
            }
        }
        unreachable!("quadratic mod 2 with a double root has a root");
    }
    (-b * mod_inverse(&(int(2) * a), p).expect("leading coefficient is a unit")).mod_floor(p)
}

/// The repeated root mod `p` of `T^3 + b T^2 + c T + d`.
fn repeated_root_cubic(b: &Integer, c: &Integer, d: &Integer, p: &Integer, triple: bool) -> Integer {
    if p <= &int(3) {
        let pu = p.to_i64().expect("small");
        for t in 0..pu {
            let t = int(t);
            let f = &t * &t * &t + b * &t * &t + c * &t + d;
            let df = int(3) * &t * &t + int(2) * b * &t + c;
            if divides(p, &f) && divides(p, &df) {
                return t;
            }
        }
        unreachable!("repeated root must exist");
    }
    if triple {
        (-b * mod_inverse(&int(3), p).expect("p > 3")).mod_floor(p)
    } else {
        let x = int(3) * c - b * b;
        ((b * c - int(9) * d) * mod_inverse(&(int(2) * x), p).expect("simple root differs")).mod_floor(p)
    }
}

/// Tangent-cone test at a node translated to the origin.
pub(crate) fn tangent_cone_splits(m: &WeierstrassModel, p: &Integer) -> bool {
    let [a1, a2, ..] = coeffs(m);
    if p == &int(2) {
        (0..2).any(|t| divides(p, &(int(t * t) + &a1 * int(t) - &a2)))
    } else {
        let disc = (&a1 * &a1 + int(4) * &a2).mod_floor(p);
        crate::arith::kronecker_symbol(&disc, p).expect("odd prime") == 1
    }
}

pub(crate) fn run(model: &WeierstrassModel, p: &Integer) -> Result<LocalReductionData> {
    let inv = model.invariants()?;
    let ord_j = ord_rat(&inv.j, p);
    let (mut cur, mut iso) = model.integral_model();
    let apply = |cur: &mut WeierstrassModel, iso: &mut Isomorphism, step: Isomorphism| {
        *cur = cur.transform(&step);
        *iso = iso.then(&step);
    };
    let zero = Rational::zero;
    loop {
        let disc = cur.discriminant().to_integer();
        let vd = v(&disc, p);
        let finish = |cur: WeierstrassModel, iso: Isomorphism, kodaira: Kodaira, f: u64, class: ReductionClass| {
            let potentially_good = class == ReductionClass::Additive && ord_j >= Valuation::Finite(0);
            LocalReductionData {
                prime: p.clone(),
                minimal_model: cur,
                to_minimal: iso,
                ord_delta: vd,
                kodaira,
                conductor_exponent: f,
                class,
                potentially_good,
                ord_j,
            }
        };
        if vd == 0 {
            return Ok(finish(cur, iso, Kodaira::I(0), 0, ReductionClass::Good));
        }
        // Step 1: move the singular point to (0,0).
        let (r, t) = singular_point_mod(&cur, p).expect("bad reduction has a singular point");
        apply(&mut cur, &mut iso, Isomorphism::shift(ri(&r), zero(), ri(&t)));
        let [b2, _, b6, b8] = cur.b_invariants().map(|b| b.to_integer());
        // Step 2: multiplicative.
        if !divides(p, &b2) {
            let class = if tangent_cone_splits(&cur, p) {
                ReductionClass::SplitMultiplicative
            } else {
                ReductionClass::NonsplitMultiplicative
            };
            return Ok(finish(cur, iso, Kodaira::I(vd as u32), 1, class));
        }
        let [_, _, _, _, a6] = coeffs(&cur);
        if v(&a6, p) < 2 {
            return Ok(finish(cur, iso, Kodaira::II, vd, ReductionClass::Additive));
        }
        if v(&b8, p) < 3 {
            return Ok(finish(cur, iso, Kodaira::III, vd - 1, ReductionClass::Additive));
        }
        if v(&b6, p) < 3 {
            return Ok(finish(cur, iso, Kodaira::IV, vd - 2, ReductionClass::Additive));
        }
        // Step 6: p | a1, a2; p^2 | a3, a4; p^3 | a6.
        let [a1, a2, a3, _, a6] = coeffs(&cur);
        let (s, t) = if p == &int(2) {
            (a2.mod_floor(p), int(2) * (&a6 / int(4)).mod_floor(p))
        } else if p == &int(3) {
            (a1.clone(), a3.clone())
        } else {
            // Not reduced mod p: a3 + 2t = -p a3 must pick up the extra p.
            let h = (p + 1) / int(2);
            (-&a1 * &h, -&a3 * &h)
        };
        apply(&mut cur, &mut iso, Isomorphism::shift(zero(), ri(&s), ri(&t)));
        let [a1, a2, a3, a4, a6] = coeffs(&cur);
        let p2 = p * p;
        let p3 = &p2 * p;
        debug_assert!(divides(p, &a1) && divides(p, &a2) && divides(&p2, &a3) && divides(&p2, &a4) && divides(&p3, &a6));
        let b = &a2 / p;
        let c = &a4 / &p2;
        let d = &a6 / &p3;
        let w = int(27) * &d * &d - &b * &b * &c * &c + int(4) * &b * &b * &b * &d - int(18) * &b * &c * &d
            + int(4) * &c * &c * &c;
        let x = int(3) * &c - &b * &b;
        if !divides(p, &w) {
            return Ok(finish(cur, iso, Kodaira::IStar(0), vd - 4, ReductionClass::Additive));
        }
        if !divides(p, &x) {
            // Step 7: I_n^*, double root moved to 0.
            let r = p * repeated_root_cubic(&b, &c, &d, p, false);
            apply(&mut cur, &mut iso, Isomorphism::shift(ri(&r), zero(), zero()));
            let (mut ix, mut iy) = (3u64, 3u64);
            let mut mx = p2.clone();
            let mut my = p2.clone();
            loop {
                let [_, a2, a3, _, a6] = coeffs(&cur);
                let a2t = &a2 / p;
                let a3t = &a3 / &my;
                let a6t = &a6 / (&mx * &my);
                if !divides(p, &(&a3t * &a3t + int(4) * &a6t)) {
                    break;
                }
                let t = &my * double_root_quadratic(&Integer::one(), &a3t, &-&a6t, p);
                apply(&mut cur, &mut iso, Isomorphism::shift(zero(), zero(), ri(&t)));
                my *= p;
                iy += 1;
                let [_, _, _, a4, a6] = coeffs(&cur);
                let a4t = &a4 / (p * &mx);
                let a6t = &a6 / (&mx * &my);
                if !divides(p, &(&a4t * &a4t - int(4) * &a6t * &a2t)) {
                    break;
                }
                let r = &mx * double_root_quadratic(&a2t, &a4t, &a6t, p);
                apply(&mut cur, &mut iso, Isomorphism::shift(ri(&r), zero(), zero()));
                mx *= p;
                ix += 1;
            }
            let n = ix + iy - 5;
            return Ok(finish(cur, iso, Kodaira::IStar(n as u32), vd - ix - iy + 1, ReductionClass::Additive));
        }
        // Step 8: triple root moved to 0.
        let r = p * repeated_root_cubic(&b, &c, &d, p, true);
        apply(&mut cur, &mut iso, Isomorphism::shift(ri(&r), zero(), zero()));
        let [_, _, a3, _, a6] = coeffs(&cur);
        let p4 = &p2 * &p2;
        let a3t = &a3 / &p2;
        let a6t = &a6 / &p4;
        if !divides(p, &(&a3t * &a3t + int(4) * &a6t)) {
            return Ok(finish(cur, iso, Kodaira::IVStar, vd - 6, ReductionClass::Additive));
        }
        // Step 9.
        let t = &p2 * double_root_quadratic(&Integer::one(), &a3t, &-&a6t, p);
        apply(&mut cur, &mut iso, Isomorphism::shift(zero(), zero(), ri(&t)));
        let [_, _, _, a4, a6] = coeffs(&cur);
        if v(&a4, p) < 4 {
            return Ok(finish(cur, iso, Kodaira::IIIStar, vd - 7, ReductionClass::Additive));
        }
        if v(&a6, p) < 6 {
            return Ok(finish(cur, iso, Kodaira::IIStar, vd - 8, ReductionClass::Additive));
        }
        // Step 11: not minimal.
        apply(&mut cur, &mut iso, Isomorphism::scale(ri(p)));
        debug_assert!(cur.is_integral());
    }
}
