use num_traits::{One, Zero};

use super::{Isomorphism, Point, WeierstrassModel};
use crate::arith::{factor, int, integer_roots_monic_cubic, rat, rat_int, Integer, Rational};
use crate::error::Result;

/// Largest order of a rational torsion point.
const MAX_TORSION_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionData {
    pub order: u32,
    /// Invariant factors, e.g. `[2, 4]` for `Z/2 x Z/4`; empty when trivial.
    pub structure: Vec<u32>,
    pub points: Vec<Point>,
}

/// `Y^2 = X^3 + A X + B` with integral `A`, `B` and no prime `p` having
/// `p^4 | A` and `p^6 | B`, plus the map from `model`.
struct ShortModel {
    a: Integer,
    b: Integer,
    iso: Isomorphism,
}

fn short_model(model: &WeierstrassModel) -> Result<ShortModel> {
    let (integral, to_integral) = model.integral_model();
    let [b2, ..] = integral.b_invariants();
    let (c4, c6) = integral.c4_c6();
    let to_short = Isomorphism::new(
        rat(1, 6),
        -&b2 / rat(12, 1),
        -&integral.a1 / rat(2, 1),
        &integral.a1 * &b2 / rat(24, 1) - &integral.a3 / rat(2, 1),
    );
    let mut a = -(c4 * rat(27, 1)).to_integer();
    let mut b = -(c6 * rat(54, 1)).to_integer();
    let mut iso = to_integral.then(&to_short);
    let disc = int(4) * &a * &a * &a + int(27) * &b * &b;
    for p in factor(&disc)?.primes() {
        let p4 = num_traits::pow(p.clone(), 4);
        let p6 = num_traits::pow(p.clone(), 6);
        while (&a % &p4).is_zero() && (&b % &p6).is_zero() {
            a /= &p4;
            b /= &p6;
            iso = iso.then(&Isomorphism::scale(rat_int(p)));
        }
    }
    Ok(ShortModel { a, b, iso })
}

impl ShortModel {
    fn model(&self) -> WeierstrassModel {
        let z = Rational::zero();
        WeierstrassModel::new(z.clone(), z.clone(), z, rat_int(&self.a), rat_int(&self.b))
    }
}

fn is_integral_point(p: &Point) -> bool {
    p.coords().map_or(true, |(x, y)| x.is_integer() && y.is_integer())
}

/// Order of `g` if it is torsion, `None` otherwise.
pub(crate) fn torsion_order_of(model: &WeierstrassModel, g: &Point) -> Result<Option<u32>> {
    let short = short_model(model)?;
    let e = short.model();
    let g = short.iso.map_point(g);
    let mut acc = Point::Infinity;
    for k in 1..=MAX_TORSION_ORDER {
        acc = e.add_unchecked(&acc, &g);
        if acc.is_infinity() {
            return Ok(Some(k));
        }
        if !is_integral_point(&acc) {
            return Ok(None);
        }
    }
    Ok(None)
}

/// Rational torsion by Lutz-Nagell on an integral short model.
pub fn torsion_subgroup(model: &WeierstrassModel) -> Result<TorsionData> {
    model.invariants()?;
    let short = short_model(model)?;
    let e = short.model();
    let disc = int(4) * &short.a * &short.a * &short.a + int(27) * &short.b * &short.b;
    let fac = factor(&disc)?;
    let mut ys = vec![Integer::zero()];
    let mut halves: Vec<Integer> = vec![Integer::one()];
    for (p, k) in &fac.factors {
        let mut next = Vec::new();
        for d in &halves {
            let mut pe = Integer::one();
            for _ in 0..=(k / 2) {
                next.push(d * &pe);
                pe *= p;
            }
        }
        halves = next;
    }
    for y in halves {
        ys.push(-&y);
        ys.push(y);
    }
    let mut points = vec![Point::Infinity];
    for y in &ys {
        for x in integer_roots_monic_cubic(&Integer::zero(), &short.a, &(&short.b - y * y)) {
            let p = Point::Affine(rat_int(&x), rat_int(y));
            if let Some(_k) = torsion_order_of(&e, &p)? {
                points.push(short.iso.pull_point(&p));
            }
        }
    }
    points.sort_by_key(|p| p.to_string());
    points.dedup();
    let order = points.len() as u32;
    let two_torsion = points
        .iter()
        .filter(|p| model.small_order(p, 2) == Some(2))
        .count();
    let structure = match (order, two_torsion) {
        (1, _) => vec![],
        (n, 3) => vec![2, n / 2],
        (n, _) => vec![n],
    };
    Ok(TorsionData { order, structure, points })
}
