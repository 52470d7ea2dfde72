//! Weierstrass models over `Q`: invariants, coordinate changes, the group
//! law, torsion and point counts modulo primes.

mod count;
mod parse;
mod point;
mod torsion;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{common_denominator, rat, rat_int, Rational};
use crate::error::{domain, Result};

pub use count::{count_points, count_points_mod};
pub use parse::{parse_model, parse_points};
pub use point::{MordellWeilInput, Point, DEFAULT_DIGIT_BUDGET};
pub use torsion::{torsion_subgroup, TorsionData};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub discriminant: Rational,
    pub j: Rational,
}

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Isomorphism {
            u: Rational::one(),
            r: Rational::zero(),
            s: Rational::zero(),
            t: Rational::zero(),
        }
    }

    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Self {
        assert!(!u.is_zero(), "scaling must be nonzero");
        Isomorphism { u, r, s, t }
    }

    pub fn shift(r: Rational, s: Rational, t: Rational) -> Self {
        Isomorphism::new(Rational::one(), r, s, t)
    }

    pub fn scale(u: Rational) -> Self {
        Isomorphism::new(u, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        let u2 = &self.u * &self.u;
        Isomorphism {
            u: &self.u * &next.u,
            r: &u2 * &next.r + &self.r,
            s: &self.u * &next.s + &self.s,
            t: &u2 * &self.u * &next.t + &self.s * &u2 * &next.r + &self.t,
        }
    }
}

impl WeierstrassModel {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        let r = |v: i64| rat(v, 1);
        WeierstrassModel::new(r(a[0]), r(a[1]), r(a[2]), r(a[3]), r(a[4]))
    }

    pub fn coefficients(&self) -> [&Rational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn b_invariants(&self) -> [Rational; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + rat(4, 1) * a2;
        let b4 = rat(2, 1) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat(4, 1) * a6;
        let b8 = a1 * a1 * a6 + rat(4, 1) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4_c6(&self) -> (Rational, Rational) {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = &b2 * &b2 - rat(24, 1) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + rat(36, 1) * &b2 * &b4 - rat(216, 1) * &b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> Rational {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - rat(8, 1) * &b4 * &b4 * &b4 - rat(27, 1) * &b6 * &b6
            + rat(9, 1) * &b2 * &b4 * &b6
    }

    /// Standard invariants; fails on a singular model.
    pub fn invariants(&self) -> Result<CurveInvariants> {
        let [b2, b4, b6, b8] = self.b_invariants();
        let (c4, c6) = self.c4_c6();
        let discriminant = self.discriminant();
        if discriminant.is_zero() {
            return domain("singular model: discriminant is zero");
        }
        let j = &c4 * &c4 * &c4 / &discriminant;
        Ok(CurveInvariants { b2, b4, b6, b8, c4, c6, discriminant, j })
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|a| a.is_integer())
    }

    /// The model obtained by the change of variables `iso`.
    pub fn transform(&self, iso: &Isomorphism) -> WeierstrassModel {
        let Isomorphism { u, r, s, t } = iso;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = rat(2, 1);
        let three = rat(3, 1);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        WeierstrassModel {
            a1: (a1 + &two * s) / u,
            a2: (a2 - s * a1 + &three * r - s * s) / &u2,
            a3: (a3 + r * a1 + &two * t) / &u3,
            a4: (a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t) / &u4,
            a6: (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / &u6,
        }
    }

    /// An integral model together with the scaling that produces it.
    pub fn integral_model(&self) -> (WeierstrassModel, Isomorphism) {
        let d = common_denominator(self.coefficients());
        let iso = Isomorphism::scale(Rational::one() / rat_int(&d));
        (self.transform(&iso), iso)
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}
