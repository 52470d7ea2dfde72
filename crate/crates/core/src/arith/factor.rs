use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{int, Integer};
use crate::error::{domain, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Signed prime factorization of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Integer {
        let mut acc = int(self.sign as i64);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &Integer) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// All positive divisors, in increasing order.
    pub fn divisors(&self) -> Vec<Integer> {
        let mut out = vec![Integer::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                let mut pk = d.clone();
                for _ in 0..=*e {
                    next.push(pk.clone());
                    pk *= p;
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        let body = if body.is_empty() { "1".to_string() } else { body.join("*") };
        if self.sign < 0 {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

fn miller_rabin_witness(n: &BigUint, d: &BigUint, s: u32, a: u64) -> bool {
    let a = BigUint::from(a) % n;
    if a.is_zero() {
        return true;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &Integer) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let n = n.magnitude();
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in small_primes().iter().take(100) {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    } else {
        for &p in small_primes().iter().take(100) {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0) as u32;
    let d = &n1 >> s;
    const BASES: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    BASES.iter().all(|&a| miller_rabin_witness(n, &d, s, a))
}

/// Brent's variant of Pollard rho; `n` must be composite and odd.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = 1u64;
    loop {
        let cc = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cc) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_large(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        factor_large(r.clone(), out);
        factor_large(r, out);
        return;
    }
    let d = pollard_rho(&n);
    factor_large(&n / &d, out);
    factor_large(d, out);
}

/// Trial division up to 10^6 followed by Pollard rho on the cofactor.
pub fn factor(n: &Integer) -> Result<Factorization> {
    if n.is_zero() {
        return domain("cannot factor zero");
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pp = BigUint::from(p);
        if &pp * &pp > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pp);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.push((int(p as i64), e));
        }
    }
    if !m.is_one() {
        let mut rest = Vec::new();
        factor_large(m, &mut rest);
        rest.sort();
        for p in rest {
            let p = BigInt::from(p);
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { sign, factors })
}
