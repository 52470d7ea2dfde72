//! Integer q-expansions for the Tate curve and its parametrisation.

use num_traits::{One, Zero};

use crate::arith::Integer;
use crate::padic::{LocalElem, Padic};

/// Truncated power series with integer coefficients.
type Series = Vec<Integer>;

fn mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![Integer::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a series with constant term 1.
fn inverse(a: &Series, len: usize) -> Series {
    assert!(a[0].is_one());
    let mut out = vec![Integer::zero(); len];
    out[0] = Integer::one();
    for k in 1..len {
        let mut s = Integer::zero();
        for i in 1..=k.min(a.len() - 1) {
            s += &a[i] * &out[k - i];
        }
        out[k] = -s;
    }
    out
}

fn sigma(k: u32, n: u64) -> Integer {
    (1..=n).filter(|d| n % d == 0).map(|d| num_traits::pow(Integer::from(d), k as usize)).sum()
}

/// `1 + c * sum sigma_k(m) q^m`.
fn eisenstein(c: i64, k: u32, len: usize) -> Series {
    let mut s = vec![Integer::one()];
    s.extend((1..len as u64).map(|m| Integer::from(c) * sigma(k, m)));
    s
}

/// `prod_{m>=1} (1 - q^m)^24`.
fn eta24(len: usize) -> Series {
    let mut p: Series = vec![Integer::zero(); len];
    p[0] = Integer::one();
    for m in 1..len {
        let mut f = vec![Integer::zero(); len];
        f[0] = Integer::one();
        f[m] = -Integer::one();
        p = mul(&p, &f, len);
    }
    let p2 = mul(&p, &p, len);
    let p4 = mul(&p2, &p2, len);
    let p8 = mul(&p4, &p4, len);
    let p16 = mul(&p8, &p8, len);
    mul(&p16, &p8, len)
}

/// Coefficients of `q j(q) = E4^3 / prod (1-q^m)^24`, indices `0..len`.
pub fn q_times_j(len: usize) -> Series {
    let e4 = eisenstein(240, 3, len);
    let e4c = mul(&mul(&e4, &e4, len), &e4, len);
    mul(&e4c, &inverse(&eta24(len), len), len)
}

/// Discriminant `q prod (1 - q^m)^24`, shifted: coefficients of `Delta / q`.
pub fn delta_over_q(len: usize) -> Series {
    eta24(len)
}

/// `c4(E_q) = E4`.
pub fn c4(len: usize) -> Series {
    eisenstein(240, 3, len)
}

/// `c6(E_q) = -E6`.
pub fn c6(len: usize) -> Series {
    eisenstein(-504, 5, len).into_iter().map(|c| -c).collect()
}

/// `a4(q) = -5 s3(q)`.
pub fn a4(len: usize) -> Series {
    (0..len as u64).map(|m| if m == 0 { Integer::zero() } else { Integer::from(-5) * sigma(3, m) }).collect()
}

/// `a6(q) = -(5 s3(q) + 7 s5(q)) / 12`.
pub fn a6(len: usize) -> Series {
    (0..len as u64)
        .map(|m| {
            if m == 0 {
                Integer::zero()
            } else {
                let n = Integer::from(5) * sigma(3, m) + Integer::from(7) * sigma(5, m);
                debug_assert!((&n % 12u32).is_zero());
                -(n / Integer::from(12))
            }
        })
        .collect()
}

/// `sum c_k q^k` for a p-adic `q`.
pub fn eval(c: &[Integer], q: &Padic, prec: u32) -> Padic {
    let p = q.prime();
    let mut acc = Padic::exact_zero(p);
    for coef in c.iter().rev() {
        acc = &(&acc * q) + &Padic::from_integer(coef, p, prec);
    }
    acc
}

/// Number of `q`-terms needed so that omitted terms are below `p^abs`.
pub fn terms_for(abs: i64, vq: i64) -> usize {
    ((abs.max(1) + vq - 1) / vq + 2) as usize
}

fn geom_pieces(z: &LocalElem) -> (LocalElem, LocalElem) {
    let one = LocalElem::from_i64(1, z.prime(), z.a.rel_prec().max(z.b.rel_prec()).max(1), z.omega);
    let d = &one - z;
    let dinv = d.inv();
    (z * &dinv, dinv)
}

/// `X(u, q)` and `Y(u, q)` summed over the fundamental domain, with
/// `m` running to `terms`.
pub fn tate_xy(u: &LocalElem, q: &Padic, terms: usize) -> (LocalElem, LocalElem) {
    let p = q.prime();
    let prec = u.a.rel_prec().max(u.b.rel_prec()).max(q.rel_prec());
    let omega = u.omega;
    let qe = LocalElem::from_padic(q.clone(), omega);
    let uinv = u.inv();
    // u/(1-u)^2 and u^2/(1-u)^3.
    let (r, dinv) = geom_pieces(u);
    let mut x = &r * &dinv;
    let mut y = &(&r * &r) * &dinv;
    let mut qm = qe.clone();
    for m in 1..=terms as i64 {
        let a = &qm * u;
        let b = &qm * &uinv;
        let (ra, da) = geom_pieces(&a);
        let (rb, db) = geom_pieces(&b);
        let (rq, _) = geom_pieces(&qm);
        let mq = rq.scale(&Padic::from_i64(m, p, prec));
        x = &(&(&x + &(&ra * &da)) + &(&rb * &db)) - &mq.scale(&Padic::from_i64(2, p, prec));
        y = &(&(&y + &(&(&ra * &ra) * &da)) - &(&rb * &(&db * &db))) + &mq;
        qm = &qm * &qe;
    }
    (x, y)
}
