//! p-adic numbers with relative precision, and elements of `Q_p` or its
//! unramified quadratic extension.

mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inverse, ord_int, sqrt_mod_prime_power, Integer, Rational};

pub use quad::{LocalElem, Omega};

/// Absolute precision marking a value whose digits were all lost.
const LOST: i64 = i64::MIN / 4;

/// `p^val * unit + O(p^(val + prec))`. A zero stores its absolute
/// precision in `val` (`i64::MAX` for an exact zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    p: Integer,
    val: i64,
    unit: Integer,
    prec: u32,
}

pub(crate) fn ppow(p: &Integer, k: i64) -> Integer {
    debug_assert!(k >= 0);
    num_traits::pow(p.clone(), k as usize)
}

impl Padic {
    pub fn exact_zero(p: &Integer) -> Padic {
        Padic { p: p.clone(), val: i64::MAX, unit: Integer::zero(), prec: 0 }
    }

    /// `O(p^abs)`.
    pub fn zero_to(p: &Integer, abs: i64) -> Padic {
        Padic { p: p.clone(), val: abs, unit: Integer::zero(), prec: 0 }
    }

    fn make(p: &Integer, x: Integer, val: i64, abs: i64) -> Padic {
        if abs <= val || x.is_zero() {
            return Padic::zero_to(p, abs.max(LOST));
        }
        let k = ord_int(&x, p) as i64;
        let v = val + k;
        if v >= abs {
            return Padic::zero_to(p, abs);
        }
        let prec = (abs - v) as u32;
        let unit = (x / ppow(p, k)).mod_floor(&ppow(p, prec as i64));
        Padic { p: p.clone(), val: v, unit, prec }
    }

    pub fn from_integer(x: &Integer, p: &Integer, prec: u32) -> Padic {
        if x.is_zero() {
            return Padic::exact_zero(p);
        }
        let v = ord_int(x, p) as i64;
        Padic::make(p, x.clone(), 0, v + prec as i64)
    }

    /// `x` with `prec` digits of relative precision.
    pub fn from_rational(x: &Rational, p: &Integer, prec: u32) -> Padic {
        if x.is_zero() {
            return Padic::exact_zero(p);
        }
        let vn = ord_int(x.numer(), p) as i64;
        let vd = ord_int(x.denom(), p) as i64;
        let m = ppow(p, prec as i64);
        let num = x.numer() / ppow(p, vn);
        let den = x.denom() / ppow(p, vd);
        let unit = (num * mod_inverse(&den, &m).expect("unit denominator")).mod_floor(&m);
        Padic { p: p.clone(), val: vn - vd, unit, prec }
    }

    pub fn from_i64(x: i64, p: &Integer, prec: u32) -> Padic {
        Padic::from_integer(&Integer::from(x), p, prec)
    }

    pub fn prime(&self) -> &Integer {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.val == i64::MAX
    }

    /// Valuation of a nonzero element.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation, or the absolute precision for a zero.
    pub fn val_or_prec(&self) -> i64 {
        self.val
    }

    pub fn abs_prec(&self) -> i64 {
        if self.is_zero() {
            self.val
        } else {
            self.val.saturating_add(self.prec as i64)
        }
    }

    pub fn rel_prec(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &Integer {
        &self.unit
    }

    /// Drops digits beyond absolute precision `abs`.
    pub fn truncate(&self, abs: i64) -> Padic {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() {
            return Padic::zero_to(&self.p, abs);
        }
        Padic::make(&self.p, self.unit.clone(), self.val, abs)
    }

    /// Multiplication by an exact integer.
    pub fn mul_int(&self, k: i64) -> Padic {
        if k == 0 {
            return Padic::exact_zero(&self.p);
        }
        let k = Integer::from(k);
        let v = ord_int(&k, &self.p) as i64;
        if self.is_zero() {
            return Padic::zero_to(&self.p, self.val.saturating_add(v));
        }
        let m = ppow(&self.p, self.prec as i64);
        let unit = (&self.unit * (k / ppow(&self.p, v))).mod_floor(&m);
        Padic { p: self.p.clone(), val: self.val + v, unit, prec: self.prec }
    }

    pub fn inv(&self) -> Padic {
        if self.is_zero() {
            assert!(!self.is_exact_zero(), "division by exact zero");
            return Padic::zero_to(&self.p, LOST);
        }
        let m = ppow(&self.p, self.prec as i64);
        let unit = mod_inverse(&self.unit, &m).expect("unit");
        Padic { p: self.p.clone(), val: -self.val, unit, prec: self.prec }
    }

    pub fn pow(&self, e: i64) -> Padic {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Padic::from_i64(1, &self.p, self.prec.max(1));
        if e == 0 {
            return acc;
        }
        let mut base = self.clone();
        let mut k = e;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                acc = if first { base.clone() } else { &acc * &base };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A square root, if one exists at the available precision.
    pub fn sqrt(&self) -> Option<Padic> {
        if self.is_zero() {
            let half = if self.val == i64::MAX { i64::MAX } else { self.val.div_euclid(2) };
            return Some(Padic::zero_to(&self.p, half));
        }
        if self.val.rem_euclid(2) != 0 {
            return None;
        }
        let two = Integer::from(2);
        let (root, prec) = if self.p == two {
            if self.prec >= 3 && !(&self.unit % 8u32).is_one() {
                return None;
            }
            if self.prec < 3 {
                return None;
            }
            (sqrt_mod_prime_power(&self.unit, &self.p, self.prec).ok()??, self.prec - 1)
        } else {
            (sqrt_mod_prime_power(&self.unit, &self.p, self.prec).ok()??, self.prec)
        };
        let m = ppow(&self.p, prec as i64);
        Some(Padic { p: self.p.clone(), val: self.val / 2, unit: root.mod_floor(&m), prec })
    }

    /// The value modulo `p^k` as an integer in `[0, p^k)`; `None` if it is
    /// not integral or not known to that precision.
    pub fn residue(&self, k: i64) -> Option<Integer> {
        if self.abs_prec() < k {
            return None;
        }
        if self.is_zero() || self.val >= k {
            return Some(Integer::zero());
        }
        if self.val < 0 {
            return None;
        }
        let m = ppow(&self.p, k);
        Some((&self.unit * ppow(&self.p, self.val)).mod_floor(&m))
    }

    /// True when `self - other` vanishes to absolute precision `k`.
    pub fn agrees_to(&self, other: &Padic, k: i64) -> bool {
        let d = self - other;
        d.abs_prec() >= k && (d.is_zero() || d.val >= k)
    }

    /// A rational representative (`unit * p^val`).
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let u = Rational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * Rational::from_integer(ppow(&self.p, self.val))
        } else {
            u / Rational::from_integer(ppow(&self.p, -self.val))
        }
    }
}

impl Add for &Padic {
    type Output = Padic;

    fn add(self, rhs: &Padic) -> Padic {
        if self.is_exact_zero() {
            return rhs.clone();
        }
        if rhs.is_exact_zero() {
            return self.clone();
        }
        let abs = self.abs_prec().min(rhs.abs_prec());
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => return Padic::zero_to(&self.p, abs),
            (true, false) => return rhs.truncate(abs),
            (false, true) => return self.truncate(abs),
            _ => {}
        }
        let m = self.val.min(rhs.val);
        if abs <= m {
            return Padic::zero_to(&self.p, abs);
        }
        let x = &self.unit * ppow(&self.p, self.val - m) + &rhs.unit * ppow(&self.p, rhs.val - m);
        Padic::make(&self.p, x, m, abs)
    }
}

impl Neg for &Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(&self.p, self.prec as i64);
        Padic { p: self.p.clone(), val: self.val, unit: (-&self.unit).mod_floor(&m), prec: self.prec }
    }
}

impl Sub for &Padic {
    type Output = Padic;

    fn sub(self, rhs: &Padic) -> Padic {
        self + &(-rhs)
    }
}

impl Mul for &Padic {
    type Output = Padic;

    fn mul(self, rhs: &Padic) -> Padic {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Padic::exact_zero(&self.p);
        }
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => return Padic::zero_to(&self.p, (self.val + rhs.val).max(LOST)),
            (true, false) => return Padic::zero_to(&self.p, (self.val + rhs.val).max(LOST)),
            (false, true) => return Padic::zero_to(&self.p, (self.val + rhs.val).max(LOST)),
            _ => {}
        }
        let prec = self.prec.min(rhs.prec);
        let m = ppow(&self.p, prec as i64);
        let unit = (&self.unit * &rhs.unit).mod_floor(&m);
        Padic { p: self.p.clone(), val: self.val + rhs.val, unit, prec }
    }
}

impl std::ops::Div for &Padic {
    type Output = Padic;

    fn div(self, rhs: &Padic) -> Padic {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl std::ops::$tr for Padic {
            type Output = Padic;
            fn $f(self, rhs: Padic) -> Padic { (&self).$f(&rhs) }
        }
        impl std::ops::$tr<&Padic> for Padic {
            type Output = Padic;
            fn $f(self, rhs: &Padic) -> Padic { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        -&self
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.val);
        }
        let sign = if self.unit.is_negative() { "-" } else { "" };
        write!(f, "{sign}{}*{}^{} + O({}^{})", self.unit.abs(), self.p, self.val, self.p, self.abs_prec())
    }
}

#[cfg(test)]
mod tests;
