//! Lower bounds for `kappa_n`, the exact formula for prime conductor, and
//! the resulting divisibility claims.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::Integer;
use crate::error::{contract, Result};
use crate::reduction::{GlobalReductionProfile, LocalReductionData, ReductionClass};

fn ord_p_u64(mut k: u64, p: u64) -> u32 {
    let mut v = 0;
    while k > 0 && k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

fn small_prime(p: &Integer) -> Result<u64> {
    match p.to_u64() {
        Some(v) if v >= 2 => Ok(v),
        _ => contract(format!("unsupported prime {p}")),
    }
}

/// The per-prime deduction `nu_ell` at a bad prime `ell != p`.
pub fn nu_ell(data: &LocalReductionData, p: &Integer, n: u32) -> Result<u32> {
    if &data.prime == p {
        return contract(format!("nu_ell is defined only for ell != p = {p}"));
    }
    let pp = small_prime(p)?;
    let split = || ord_p_u64(data.ord_delta, pp).min(n);
    Ok(match (pp, data.class) {
        (_, ReductionClass::SplitMultiplicative) => split(),
        (2, ReductionClass::NonsplitMultiplicative) if data.ord_delta % 2 == 0 => 1,
        (2, ReductionClass::Additive) if data.potentially_good && n == 1 => 1,
        _ => 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuEntry {
    pub ell: String,
    pub reduction: String,
    pub ord_delta: u64,
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuTable {
    pub n: u32,
    pub entries: Vec<NuEntry>,
    pub s: u32,
}

pub fn nu_table(profile: &GlobalReductionProfile, p: &Integer, n: u32) -> Result<NuTable> {
    let mut entries = Vec::new();
    for (ell, d) in &profile.local {
        if ell == p {
            continue;
        }
        entries.push(NuEntry {
            ell: ell.to_string(),
            reduction: d.class.label().to_string(),
            ord_delta: d.ord_delta,
            nu: nu_ell(d, p, n)?,
        });
    }
    let s = entries.iter().map(|e| e.nu).sum();
    Ok(NuTable { n, entries, s })
}

/// Exponent `e` with `|I_p| = p^e` (odd `p`) or `|I_p| <= 2^e` (`p = 2`).
pub fn inertia_bound_p(p: &Integer, n: u32, nu: u32, r2n: Option<u8>, delta2: Option<u8>) -> Result<u32> {
    if small_prime(p)? == 2 {
        let (Some(r), Some(d)) = (r2n, delta2) else {
            return contract("p = 2 needs r_{2,n} and delta_2");
        };
        Ok(2 * (n + u32::from(r) - 2) + u32::from(d))
    } else {
        Ok(if n > nu { 2 * (n - nu) } else { 0 })
    }
}

/// Exponent bound `2 nu_ell` for `|I_ell|`.
pub fn inertia_bound_ell(nu_ell: u32) -> u32 {
    2 * nu_ell
}

/// Exact `kappa_n` when the conductor is `p`.
pub fn corollary_exact(p: &Integer, conductor: &Integer, n: u32, r: u32, nu: u32) -> Result<i64> {
    if conductor != p {
        return contract(format!("conductor {conductor} is not the prime {p}"));
    }
    Ok(corollary_formula(n, r, nu))
}

pub fn corollary_formula(n: u32, r: u32, nu: u32) -> i64 {
    let (n, r, nu) = (i64::from(n), i64::from(r), i64::from(nu));
    if n > nu {
        2 * n * (r - 1) + 2 * nu
    } else {
        2 * n * r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub n: u32,
    pub r: u32,
    pub nu_table: NuTable,
    pub r2n: Option<u8>,
    pub delta2: Option<u8>,
    pub nu: u32,
    pub headline: i64,
    /// Odd `p` only.
    pub refined: Option<i64>,
    /// `max(headline, refined)`, not clamped.
    pub kappa_lower_bound: i64,
    pub claim_exponent: u32,
    /// Terms of the chosen bound; they sum to `kappa_lower_bound`.
    pub terms: Vec<Term>,
    pub inertia_p_exponent: u32,
    pub inertia_ell_exponents: Vec<(String, u32)>,
    pub exact: Option<i64>,
    pub claim: String,
    pub vacuous: bool,
}

impl BoundReport {
    /// Recomputes the bound from the recorded terms.
    pub fn audit(&self) -> bool {
        self.terms.iter().map(|t| t.value).sum::<i64>() == self.kappa_lower_bound
            && self.claim_exponent as i64 == self.kappa_lower_bound.max(0)
    }
}

pub fn divisibility_claim(p: u64, n: u32, k: u32) -> String {
    format!("{p}^{k} | h(Q(E[{p}^{n}]))")
}

fn term(label: &str, value: i64) -> Term {
    Term { label: label.into(), value }
}

/// Assembles the headline bound and, for odd `p`, the refinement by `nu`.
pub fn kappa_lower_bound(
    p: &Integer,
    n: u32,
    r: u32,
    table: NuTable,
    r2n: Option<u8>,
    delta2: Option<u8>,
    nu: u32,
) -> Result<BoundReport> {
    let pp = small_prime(p)?;
    if table.n != n {
        return contract(format!("nu table is for n = {}, not {n}", table.n));
    }
    let (ni, ri, s) = (i64::from(n), i64::from(r), i64::from(table.s));
    let mut terms = vec![term("2n(r-1)", 2 * ni * (ri - 1))];
    let refined;
    if pp == 2 {
        let (Some(r2), Some(d2)) = (r2n, delta2) else {
            return contract("p = 2 needs r_{2,n} and delta_2");
        };
        terms.push(term("-2(r2n-2)", -2 * (i64::from(r2) - 2)));
        terms.push(term("-delta2", -i64::from(d2)));
        terms.push(term("-2s", -2 * s));
        refined = None;
    } else {
        terms.push(term("-2s", -2 * s));
        refined = Some(2 * ni * (ri - 1) - 2 * s + 2 * i64::from(nu.min(n)));
    }
    let headline: i64 = terms.iter().map(|t| t.value).sum();
    if let Some(rf) = refined {
        if rf > headline {
            terms.push(term("+2min(nu,n)", rf - headline));
        }
    }
    let kappa = refined.map_or(headline, |rf| rf.max(headline));
    let claim_exponent = kappa.max(0) as u32;
    let inertia_p_exponent = inertia_bound_p(p, n, nu, r2n, delta2)?;
    let inertia_ell_exponents = table
        .entries
        .iter()
        .map(|e| (e.ell.clone(), inertia_bound_ell(e.nu)))
        .collect();
    Ok(BoundReport {
        p: pp,
        n,
        r,
        r2n,
        delta2,
        nu,
        headline,
        refined,
        kappa_lower_bound: kappa,
        claim_exponent,
        terms,
        inertia_p_exponent,
        inertia_ell_exponents,
        exact: None,
        claim: divisibility_claim(pp, n, claim_exponent),
        vacuous: claim_exponent == 0,
        nu_table: table,
    })
}

/// The `p = 2` bound with `nu_ell = 1` kept at potentially good primes for
/// every `n`, as in the prose of one worked example.
pub fn prose_variant(report: &BoundReport) -> Option<i64> {
    if report.p != 2 || report.n == 1 {
        return None;
    }
    let extra: i64 = report
        .nu_table
        .entries
        .iter()
        .filter(|e| e.reduction == ReductionClass::Additive.label())
        .map(|e| 1 - i64::from(e.nu))
        .sum();
    (extra > 0).then(|| report.headline - 2 * extra)
}
