use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use super::Padic;
use crate::arith::{kronecker_symbol, Integer, Rational};

/// Generator `w` of the unramified quadratic extension, `w^2 = t w + n`,
/// chosen so that `{1, w}` is an integral basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Omega {
    pub t: i64,
    pub n: i64,
}

impl Omega {
    /// `w = sqrt(D)` with `D` the least positive nonresidue for odd `p`;
    /// `w = (1 + sqrt 5)/2` for `p = 2`.
    pub fn for_prime(p: &Integer) -> Omega {
        if p == &Integer::from(2) {
            return Omega { t: 1, n: 1 };
        }
        let d = (2i64..)
            .find(|&d| kronecker_symbol(&Integer::from(d), p).expect("odd prime") == -1)
            .expect("nonresidue exists");
        Omega { t: 0, n: d }
    }

    /// The square-free `D` with the extension equal to `Q_p(sqrt D)`.
    pub fn radicand(&self) -> i64 {
        if self.t == 0 {
            self.n
        } else {
            self.t * self.t + 4 * self.n
        }
    }
}

/// `a + b w` in `M`, or an element of `Q_p` when `omega` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElem {
    pub a: Padic,
    pub b: Padic,
    pub omega: Option<Omega>,
}

impl LocalElem {
    pub fn from_padic(a: Padic, omega: Option<Omega>) -> LocalElem {
        let b = Padic::exact_zero(a.prime());
        LocalElem { a, b, omega }
    }

    pub fn new(a: Padic, b: Padic, omega: Omega) -> LocalElem {
        LocalElem { a, b, omega: Some(omega) }
    }

    pub fn from_rational(x: &Rational, p: &Integer, prec: u32, omega: Option<Omega>) -> LocalElem {
        LocalElem::from_padic(Padic::from_rational(x, p, prec), omega)
    }

    pub fn from_i64(x: i64, p: &Integer, prec: u32, omega: Option<Omega>) -> LocalElem {
        LocalElem::from_padic(Padic::from_i64(x, p, prec), omega)
    }

    /// `sqrt(D)` for the radicand of `omega`.
    pub fn sqrt_radicand(p: &Integer, prec: u32, omega: Omega) -> LocalElem {
        let z = Padic::exact_zero(p);
        if omega.t == 0 {
            LocalElem::new(z, Padic::from_i64(1, p, prec), omega)
        } else {
            // 2w - t squares to t^2 + 4n.
            LocalElem::new(Padic::from_i64(-omega.t, p, prec), Padic::from_i64(2, p, prec), omega)
        }
    }

    pub fn prime(&self) -> &Integer {
        self.a.prime()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.a.val_or_prec().min(self.b.val_or_prec()))
    }

    pub fn abs_prec(&self) -> i64 {
        self.a.abs_prec().min(self.b.abs_prec())
    }

    pub fn conj(&self) -> LocalElem {
        match self.omega {
            None => self.clone(),
            Some(w) => LocalElem::new(&self.a + &self.b.mul_int(w.t), -&self.b, w),
        }
    }

    pub fn norm(&self) -> Padic {
        let prod = self * &self.conj();
        prod.a
    }

    pub fn inv(&self) -> LocalElem {
        match self.omega {
            None => LocalElem::from_padic(self.a.inv(), None),
            Some(_) => {
                let c = self.conj();
                let ninv = self.norm().inv();
                LocalElem { a: &c.a * &ninv, b: &c.b * &ninv, omega: self.omega }
            }
        }
    }

    pub fn scale(&self, k: &Padic) -> LocalElem {
        LocalElem { a: &self.a * k, b: &self.b * k, omega: self.omega }
    }

    pub fn pow(&self, e: i64) -> LocalElem {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let prec = self.a.rel_prec().max(self.b.rel_prec()).max(1);
        let mut acc = LocalElem::from_i64(1, self.prime(), prec, self.omega);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn agrees_to(&self, other: &LocalElem, k: i64) -> bool {
        self.a.agrees_to(&other.a, k) && self.b.agrees_to(&other.b, k)
    }

    /// Coordinates modulo `p^k`, when integral and known to that precision.
    pub fn residue(&self, k: i64) -> Option<(Integer, Integer)> {
        Some((self.a.residue(k)?, self.b.residue(k)?))
    }

    /// Whether this lies in `Q_p` (second coordinate vanishes).
    pub fn in_base(&self) -> bool {
        self.b.is_zero()
    }
}

impl Add for &LocalElem {
    type Output = LocalElem;

    fn add(self, rhs: &LocalElem) -> LocalElem {
        LocalElem { a: &self.a + &rhs.a, b: &self.b + &rhs.b, omega: self.omega.or(rhs.omega) }
    }
}

impl Sub for &LocalElem {
    type Output = LocalElem;

    fn sub(self, rhs: &LocalElem) -> LocalElem {
        LocalElem { a: &self.a - &rhs.a, b: &self.b - &rhs.b, omega: self.omega.or(rhs.omega) }
    }
}

impl Neg for &LocalElem {
    type Output = LocalElem;

    fn neg(self) -> LocalElem {
        LocalElem { a: -&self.a, b: -&self.b, omega: self.omega }
    }
}

impl Mul for &LocalElem {
    type Output = LocalElem;

    fn mul(self, rhs: &LocalElem) -> LocalElem {
        let omega = self.omega.or(rhs.omega);
        let Some(w) = omega else {
            return LocalElem::from_padic(&self.a * &rhs.a, None);
        };
        if self.b.is_exact_zero() && rhs.b.is_exact_zero() {
            return LocalElem::new(&self.a * &rhs.a, Padic::exact_zero(self.prime()), w);
        }
        let bd = &self.b * &rhs.b;
        let a = &(&self.a * &rhs.a) + &bd.mul_int(w.n);
        let b = &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) + &bd.mul_int(w.t);
        LocalElem::new(a, b, w)
    }
}

impl std::ops::Div for &LocalElem {
    type Output = LocalElem;

    fn div(self, rhs: &LocalElem) -> LocalElem {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl std::ops::$tr for LocalElem {
            type Output = LocalElem;
            fn $f(self, rhs: LocalElem) -> LocalElem { (&self).$f(&rhs) }
        }
        impl std::ops::$tr<&LocalElem> for LocalElem {
            type Output = LocalElem;
            fn $f(self, rhs: &LocalElem) -> LocalElem { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.omega.is_none() || self.b.is_exact_zero() {
            return write!(f, "{}", self.a);
        }
        write!(f, "({}) + ({})w", self.a, self.b)
    }
}

