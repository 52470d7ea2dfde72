//! Exact integer and rational arithmetic: valuations, symbols, modular square
//! roots and rational root finding. Everything above this module is built on
//! `BigInt`/`BigRational` from the `num` family.

mod factor;
mod modular;
mod poly;

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

pub use factor::{factor, is_prime, Factorization};
pub use modular::{mod_inverse, mod_pow, sqrt_mod_prime, sqrt_mod_prime_power};
pub use poly::{integer_roots_monic_cubic, rational_roots};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// p-adic valuation; zero has valuation `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &Integer) -> Rational {
    BigRational::from_integer(n.clone())
}

/// Multiplicity of `p` in the nonzero integer `n`. No primality check.
pub(crate) fn ord_int(n: &Integer, p: &Integer) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Valuation of a rational without the primality check.
pub(crate) fn ord_rat(x: &Rational, p: &Integer) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(ord_int(x.numer(), p) as i64 - ord_int(x.denom(), p) as i64)
}

/// `ord_p(x)` for a rational `x` and prime `p`.
pub fn valuation(x: &Rational, p: &Integer) -> Result<Valuation> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(ord_rat(x, p))
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker_symbol(a: &Integer, n: &Integer) -> Result<i32> {
    if n.is_zero() {
        return domain("kronecker symbol with n = 0");
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let two = int(2);
    let mut twos = 0u64;
    while n.is_even() {
        n /= &two;
        twos += 1;
    }
    if twos > 0 {
        if a.is_even() {
            return Ok(0);
        }
        let a8 = a.mod_floor(&int(8));
        if twos % 2 == 1 && (a8 == int(3) || a8 == int(5)) {
            result = -result;
        }
    }
    // n is odd and positive: Jacobi symbol.
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let n8 = n.mod_floor(&int(8));
            if n8 == int(3) || n8 == int(5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&int(4)) == int(3) && n.mod_floor(&int(4)) == int(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { result } else { 0 })
}

/// Least common multiple of the denominators of `xs`.
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_legendre(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn valuation_examples() {
        let x = rat_int(&(int(8) * int(71).pow(3)));
        assert_eq!(valuation(&x, &int(71)).unwrap(), Valuation::Finite(3));
        assert_eq!(valuation(&rat(1, 1), &int(5)).unwrap(), Valuation::Finite(0));
        assert_eq!(valuation(&rat(0, 1), &int(5)).unwrap(), Valuation::Infinite);
        assert!(valuation(&rat(3, 1), &int(6)).is_err());
        assert_eq!(valuation(&rat(3, 40), &int(2)).unwrap(), Valuation::Finite(-3));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(&int(2), &int(7)).unwrap(), 1);
        assert_eq!(kronecker_symbol(&int(12345), &int(1)).unwrap(), 1);
        assert_eq!(
            kronecker_symbol(&int(5), &int(313)).unwrap(),
            brute_legendre(5, 313)
        );
        assert!(kronecker_symbol(&int(5), &int(0)).is_err());
        // (a/2) depends on a mod 8.
        assert_eq!(kronecker_symbol(&int(3), &int(2)).unwrap(), -1);
        assert_eq!(kronecker_symbol(&int(7), &int(2)).unwrap(), 1);
        assert_eq!(kronecker_symbol(&int(-1), &int(-1)).unwrap(), -1);
    }

    #[test]
    fn kronecker_matches_legendre_table() {
        for p in [3i64, 5, 7, 11, 13, 67, 71, 313] {
            for a in -30..30 {
                assert_eq!(
                    kronecker_symbol(&int(a), &int(p)).unwrap(),
                    brute_legendre(a, p),
                    "({a}/{p})"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in -10_000i64..10_000, b in 1i64..10_000,
                                 c in -10_000i64..10_000, d in 1i64..10_000,
                                 pi in 0usize..4) {
            let p = int([2, 3, 5, 7][pi]);
            let x = rat(a, b);
            let y = rat(c, d);
            let vx = ord_rat(&x, &p);
            let vy = ord_rat(&y, &p);
            prop_assert_eq!(ord_rat(&(&x * &y), &p), vx + vy);
            let vs = ord_rat(&(&x + &y), &p);
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }
}
