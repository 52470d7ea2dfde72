use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use super::WeierstrassModel;
use crate::arith::{int, is_prime, mod_inverse, Integer, Rational};
use crate::error::{domain, Error, Result};

/// Primes above this are refused; the count is a linear scan.
pub const MAX_COUNT_PRIME: u64 = 100_000;

fn reduce(x: &Rational, ell: &Integer) -> Result<u64> {
    let inv = mod_inverse(x.denom(), ell)
        .ok_or_else(|| Error::Domain(format!("coefficient {x} is not {ell}-integral")))?;
    Ok((x.numer() * inv).mod_floor(ell).to_u64().expect("reduced below ell"))
}

/// `#E(F_ell)` including the point at infinity, for the reduction of `model`
/// (which may be singular).
pub fn count_points(model: &WeierstrassModel, ell: u64) -> Result<u64> {
    let l = int(ell as i64);
    if !is_prime(&l) {
        return domain(format!("{ell} is not prime"));
    }
    if ell > MAX_COUNT_PRIME {
        return Err(Error::Capability(format!("point count mod {ell} exceeds {MAX_COUNT_PRIME}")));
    }
    let a: Vec<u64> = model
        .coefficients()
        .iter()
        .map(|c| reduce(c, &l))
        .collect::<Result<_>>()?;
    let [a1, a2, a3, a4, a6] = [a[0], a[1], a[2], a[3], a[4]];
    let count = if ell == 2 {
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        n
    } else {
        let mut chi = vec![-1i8; ell as usize];
        chi[0] = 0;
        for y in 1..ell {
            chi[(y * y % ell) as usize] = 1;
        }
        let m = |u: u64, v: u64| u * v % ell;
        let b2 = (m(a1, a1) + 4 * a2) % ell;
        let b4 = (2 * a4 + m(a1, a3)) % ell;
        let b6 = (m(a3, a3) + 4 * a6) % ell;
        let mut total: i64 = 1 + ell as i64;
        for x in 0..ell {
            let f = (m(m(4, x), m(x, x)) + m(b2, m(x, x)) + m(2 * b4 % ell, x) + b6) % ell;
            total += chi[f as usize] as i64;
        }
        total as u64
    };
    Ok(count)
}

/// `a_ell = ell + 1 - #E(F_ell)` at a prime of good reduction of `model`.
pub fn count_points_mod(model: &WeierstrassModel, ell: u64) -> Result<i64> {
    let count = count_points(model, ell)?;
    let disc = model.discriminant();
    if (disc.numer() % int(ell as i64)).is_zero() {
        return domain(format!("{model} has bad reduction at {ell}"));
    }
    let ap = ell as i64 + 1 - count as i64;
    assert!((ap * ap) as u64 <= 4 * ell, "Hasse bound violated mod {ell}");
    Ok(ap)
}
