use num_traits::Zero;

use super::{Isomorphism, WeierstrassModel};
use crate::arith::{rat, Rational};
use crate::error::{domain, Error, Result};

/// Decimal digits allowed in a coordinate before `multiply` gives up.
pub const DEFAULT_DIGIT_BUDGET: u64 = 4000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(Rational, Rational),
}

impl Point {
    pub fn affine(x: Rational, y: Rational) -> Point {
        Point::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }

    fn digits(&self) -> u64 {
        match self {
            Point::Infinity => 0,
            Point::Affine(x, y) => [x.numer(), x.denom(), y.numer(), y.denom()]
                .iter()
                .map(|v| v.bits())
                .max()
                .unwrap_or(0)
                * 30103
                / 100000,
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl Isomorphism {
    /// Image of a point of the source model on the transformed model.
    pub fn map_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                let xr = x - &self.r;
                let xn = &xr / &u2;
                let yn = (y - &self.s * &xr - &self.t) / (&u2 * &self.u);
                Point::Affine(xn, yn)
            }
        }
    }

    /// Inverse of `map_point`.
    pub fn pull_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                let xo = &u2 * x + &self.r;
                let yo = &u2 * &self.u * y + &self.s * &u2 * x + &self.t;
                Point::Affine(xo, yo)
            }
        }
    }
}

impl WeierstrassModel {
    pub fn on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.contains(x, y),
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            domain(format!("point {p} is not on {self}"))
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    /// Chord-tangent addition; no on-curve check.
    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            let denom = rat(2, 1) * y1 + &self.a1 * x1 + &self.a3;
            if denom.is_zero() || y1 != y2 {
                return Point::Infinity;
            }
            (rat(3, 1) * x1 * x1 + rat(2, 1) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / denom
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        Point::Affine(x3, y3)
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// `[m]P` by double-and-add, refusing to grow coordinates beyond
    /// `digit_budget` decimal digits.
    pub fn multiply_with_budget(&self, m: i64, p: &Point, digit_budget: u64) -> Result<Point> {
        self.check(p)?;
        let base = if m < 0 { self.negate(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut run = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &run);
                if acc.digits() > digit_budget {
                    return Err(Error::Capability(format!(
                        "multiple [{m}] exceeds {digit_budget} digits"
                    )));
                }
            }
            k >>= 1;
            if k > 0 {
                run = self.add_unchecked(&run, &run);
                if run.digits() > digit_budget {
                    return Err(Error::Capability(format!(
                        "multiple [{m}] exceeds {digit_budget} digits"
                    )));
                }
            }
        }
        Ok(acc)
    }

    pub fn multiply(&self, m: i64, p: &Point) -> Result<Point> {
        self.multiply_with_budget(m, p, DEFAULT_DIGIT_BUDGET)
    }

    /// Order of `p` if it is at most `bound`, else `None`.
    pub fn small_order(&self, p: &Point, bound: u32) -> Option<u32> {
        let mut acc = Point::Infinity;
        for k in 1..=bound {
            acc = self.add_unchecked(&acc, p);
            if acc.is_infinity() {
                return Some(k);
            }
            if acc.digits() > DEFAULT_DIGIT_BUDGET {
                return None;
            }
        }
        None
    }
}

/// Rank and generators of the free part, taken as input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MordellWeilInput {
    pub rank: usize,
    pub generators: Vec<Point>,
    pub torsion_order: Option<u32>,
}

impl MordellWeilInput {
    /// Checks that every generator lies on `model` and has no order `<= 12`.
    pub fn new(model: &WeierstrassModel, generators: Vec<Point>, torsion_order: Option<u32>) -> Result<Self> {
        for g in &generators {
            if g.is_infinity() {
                return domain("the identity cannot be a generator");
            }
            model.check(g)?;
            if let Some(k) = super::torsion::torsion_order_of(model, g)? {
                return domain(format!("generator {g} is torsion of order {k}"));
            }
        }
        Ok(MordellWeilInput { rank: generators.len(), generators, torsion_order })
    }
}
