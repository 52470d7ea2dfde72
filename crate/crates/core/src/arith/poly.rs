use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, factor, int, rat_int, Integer, Rational};
use crate::error::{domain, Result};

/// Rational roots of `c[0] + c[1] t + ... + c[d] t^d`, sorted and without
/// repetition. Uses the rational root theorem on the primitive integral model.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    let Some(deg) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return domain("zero polynomial has no finite root set");
    };
    let den = common_denominator(&coeffs[..=deg]);
    let ints: Vec<Integer> = coeffs[..=deg]
        .iter()
        .map(|c| (c * rat_int(&den)).to_integer())
        .collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let reduced = &ints[low..];
    if reduced.len() > 1 {
        let content = reduced.iter().fold(Integer::zero(), |g, c| g.gcd(c));
        let reduced: Vec<Integer> = reduced.iter().map(|c| c / &content).collect();
        let lead = reduced.last().unwrap();
        let constant = &reduced[0];
        let nums = factor(constant)?.divisors();
        let dens = factor(lead)?.divisors();
        for d in &dens {
            for n in &nums {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for s in [n.clone(), -n.clone()] {
                    if homogeneous_eval(&reduced, &s, d).is_zero() {
                        roots.push(Rational::new(s, d.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// `sum c_i n^i d^(deg-i)`, zero exactly when `n/d` is a root.
fn homogeneous_eval(c: &[Integer], n: &Integer, d: &Integer) -> Integer {
    let mut acc = Integer::zero();
    let mut dpow = Integer::one();
    // Horner in n with the d powers pushed onto lower coefficients.
    let deg = c.len() - 1;
    let mut dpows = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        dpows.push(dpow.clone());
        dpow *= d;
    }
    for (i, ci) in c.iter().enumerate().rev() {
        acc = acc * n + ci * &dpows[deg - i];
    }
    acc
}

fn eval_cubic(b: &Integer, c: &Integer, d: &Integer, x: &Integer) -> Integer {
    ((x + b) * x + c) * x + d
}

/// Zero of a monotone integer function on `[lo, hi]`.
fn bisect(f: &dyn Fn(&Integer) -> Integer, mut lo: Integer, mut hi: Integer, increasing: bool) -> Option<Integer> {
    if lo > hi {
        return None;
    }
    let sign = |x: &Integer| {
        let v = f(x);
        if increasing { v } else { -v }
    };
    if sign(&lo).is_positive() || sign(&hi).is_negative() {
        return None;
    }
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&int(2));
        if sign(&mid).is_negative() {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    f(&lo).is_zero().then_some(lo)
}

/// Integer roots of `x^3 + b x^2 + c x + d`, by bisection on the monotone
/// pieces; no factoring of `d` is needed.
pub fn integer_roots_monic_cubic(b: &Integer, c: &Integer, d: &Integer) -> Vec<Integer> {
    let f = |x: &Integer| eval_cubic(b, c, d, x);
    let bound = Integer::one() + b.abs().max(c.abs()).max(d.abs());
    let mut roots = Vec::new();
    let disc = int(4) * b * b - int(12) * c;
    if !disc.is_positive() {
        roots.extend(bisect(&f, -bound.clone(), bound, true));
    } else {
        let s = disc.sqrt();
        let six = int(6);
        let one = Integer::one();
        let minus_lo = (-(int(2) * b) - &s - &one).div_floor(&six);
        let minus_hi = -((int(2) * b + &s).div_floor(&six));
        let plus_lo = (-(int(2) * b) + &s).div_floor(&six);
        let plus_hi = -((int(2) * b - &s - &one).div_floor(&six));
        roots.extend(bisect(&f, -bound.clone(), minus_lo.clone(), true));
        roots.extend(bisect(&f, minus_hi.clone(), plus_lo.clone(), false));
        roots.extend(bisect(&f, plus_hi.clone(), bound, true));
        let mut x = minus_lo + 1;
        while x < minus_hi {
            if f(&x).is_zero() {
                roots.push(x.clone());
            }
            x += 1;
        }
        let mut x = plus_lo + 1;
        while x < plus_hi {
            if f(&x).is_zero() {
                roots.push(x.clone());
            }
            x += 1;
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn simple_roots() {
        assert_eq!(rational_roots(&[r(-1), r(0), r(1)]).unwrap(), vec![r(-1), r(1)]);
        assert!(rational_roots(&[r(0), r(0)]).is_err());
        assert_eq!(rational_roots(&[r(5)]).unwrap(), vec![]);
        assert_eq!(rational_roots(&[r(0), r(0), r(3)]).unwrap(), vec![r(0)]);
    }

    #[test]
    fn three_halves_times_irreducible_quadratic() {
        // (t - 3/2)(t^2 + 1) = t^3 - 3/2 t^2 + t - 3/2
        let c = [rat(-3, 2), r(1), rat(-3, 2), r(1)];
        let roots = rational_roots(&c).unwrap();
        assert_eq!(roots, vec![rat(3, 2)]);
        // substitution check
        let t = rat(3, 2);
        let v = &c[0] + &c[1] * &t + &c[2] * &t * &t + &c[3] * &t * &t * &t;
        assert!(v.is_zero());
    }

    #[test]
    fn quartic_with_large_j_has_no_root() {
        // 4 t^4 + 4 t^3 + 5^3 19^3 / 2^3
        let j = Rational::new(int(5).pow(3) * int(19).pow(3), int(8));
        assert!(rational_roots(&[j, r(0), r(0), r(4), r(4)]).unwrap().is_empty());
    }

    #[test]
    fn cubic_integer_roots() {
        // (x-3)(x+5)(x-1000)
        let b = int(-3 + 5 - 1000);
        let c = int(-15 + 3000 - 5000);
        let d = int(15000);
        assert_eq!(integer_roots_monic_cubic(&b, &c, &d), vec![int(-5), int(3), int(1000)]);
        // double root
        assert_eq!(
            integer_roots_monic_cubic(&int(0), &int(-3), &int(2)),
            vec![int(-2), int(1)]
        );
        assert!(integer_roots_monic_cubic(&int(0), &int(0), &int(-2)).is_empty());
    }

    proptest! {
        #[test]
        fn finds_exactly_the_rational_roots(
            lin in prop::collection::vec((-12i64..12, 1i64..6), 0..3),
            quad in prop::collection::vec((-5i64..5, 1i64..6), 0..2),
        ) {
            // product of (d t - n) and irreducible (t^2 + a t + b) with a^2-4b < 0
            let mut poly: Vec<Rational> = vec![r(1)];
            let mul = |p: &Vec<Rational>, q: &[Rational]| {
                let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in q.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                out
            };
            let mut expected: Vec<Rational> = Vec::new();
            for &(n, d) in &lin {
                poly = mul(&poly, &[r(-n), r(d)]);
                expected.push(rat(n, d));
            }
            for &(a, b) in &quad {
                let b = (a * a) / 4 + b; // forces a^2 - 4b < 0
                poly = mul(&poly, &[r(b), r(a), r(1)]);
            }
            expected.sort();
            expected.dedup();
            if poly.len() > 1 {
                prop_assert_eq!(rational_roots(&poly).unwrap(), expected);
            }
        }

        #[test]
        fn monic_cubic_roots_match_brute_force(b in -30i64..30, c in -200i64..200, d in -500i64..500) {
            let got = integer_roots_monic_cubic(&int(b), &int(c), &int(d));
            let bound = 1 + b.abs().max(c.abs()).max(d.abs());
            let brute: Vec<Integer> = (-bound..=bound)
                .filter(|&x| x * x * x + b * x * x + c * x + d == 0)
                .map(int)
                .collect();
            prop_assert_eq!(got, brute);
        }
    }
}
