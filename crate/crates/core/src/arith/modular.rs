use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{int, is_prime, kronecker_symbol, ord_int, Integer};
use crate::error::{domain, Result};

/// `base^exp mod m` with the result in `[0, m)`; `exp >= 0`.
pub fn mod_pow(base: &Integer, exp: &Integer, m: &Integer) -> Integer {
    base.mod_floor(m).modpow(exp, m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Tonelli-Shanks square root of `a` modulo an odd prime `p`.
pub fn sqrt_mod_prime(a: &Integer, p: &Integer) -> Option<Integer> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(Integer::zero());
    }
    if *p == int(2) {
        return Some(a);
    }
    if kronecker_symbol(&a, p).ok()? != 1 {
        return None;
    }
    let one = Integer::one();
    let p1: Integer = p - &one;
    let s = ord_int(&p1, &int(2));
    let q = &p1 >> s;
    let mut z = int(2);
    while kronecker_symbol(&z, p).ok()? != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(&z, &q, p);
    let mut t = mod_pow(&a, &q, p);
    let mut r = mod_pow(&a, &((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt).mod_floor(p);
            i += 1;
        }
        let b = mod_pow(&c, &(Integer::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

/// Square root of a unit modulo `2^k`.
fn sqrt_unit_mod_two_power(a: &Integer, k: u32) -> Option<Integer> {
    let m = Integer::one() << k;
    let a = a.mod_floor(&m);
    match k {
        1 => return Some(Integer::one()),
        2 => return (a.mod_floor(&int(4)) == int(1)).then(Integer::one),
        _ => {}
    }
    if a.mod_floor(&int(8)) != int(1) {
        return None;
    }
    // r^2 = a mod 2^i, lift to 2^(i+1) by flipping bit i-1.
    let mut r = Integer::one();
    for i in 3..k {
        let mi = Integer::one() << (i + 1);
        if (&r * &r - &a).mod_floor(&mi) != Integer::zero() {
            r += Integer::one() << (i - 1);
        }
    }
    Some(r.mod_floor(&m))
}

/// Square root of a unit modulo `p^k`, `p` odd.
fn sqrt_unit_mod_odd_prime_power(a: &Integer, p: &Integer, k: u32) -> Option<Integer> {
    let mut r = sqrt_mod_prime(a, p)?;
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = num_traits::pow(p.clone(), prec as usize);
        let inv = mod_inverse(&(int(2) * &r), &m)?;
        r = (&r - (&r * &r - a) * inv).mod_floor(&m);
    }
    Some(r.mod_floor(&num_traits::pow(p.clone(), k as usize)))
}

/// Some `r` with `r^2 = a (mod p^k)`, or `None` when `a` is not a square
/// modulo `p^k`.
pub fn sqrt_mod_prime_power(a: &Integer, p: &Integer, k: u32) -> Result<Option<Integer>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if k == 0 {
        return domain("precision must be at least 1");
    }
    let m = num_traits::pow(p.clone(), k as usize);
    let a = a.mod_floor(&m);
    if a.is_zero() {
        return Ok(Some(Integer::zero()));
    }
    let v = ord_int(&a, p) as u32;
    if v % 2 == 1 {
        return Ok(None);
    }
    let unit = &a / num_traits::pow(p.clone(), v as usize);
    let rest = k - v;
    let root = if *p == int(2) {
        sqrt_unit_mod_two_power(&unit, rest)
    } else {
        sqrt_unit_mod_odd_prime_power(&unit, p, rest)
    };
    Ok(root.map(|r| (r * num_traits::pow(p.clone(), (v / 2) as usize)).mod_floor(&m)))
}
