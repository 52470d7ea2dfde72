//! Evidence for a surjective `p`-adic Galois image, and exhaustive checks
//! of the finite group statements used for `p = 2`.

mod groups;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_prime, rat, rational_roots, Integer, Rational};
use crate::curve::{count_points_mod, WeierstrassModel};
use crate::error::{contract, Result};

pub use groups::{
    gl2_elements, gl2_order, named_submodules, verify_h_structure, verify_inertia_matrices, verify_submodule_lattice,
    GroupTheoryReport, HStructureReport, InertiaReport, LatticeReport, Mat2,
};

/// Galois group of the 2-division cubic, up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mod2Image {
    S3,
    C3,
    C2,
    C1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithSurjective,
    Obstructed,
    Inconclusive,
}

fn is_rational_square(x: &Rational) -> bool {
    if x.is_negative() {
        return false;
    }
    let sq = |n: &Integer| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(x.numer()) && sq(x.denom())
}

/// `4x^3 + b2 x^2 + 2 b4 x + b6`, constant term first.
fn two_division_cubic(model: &WeierstrassModel) -> [Rational; 4] {
    let [b2, b4, b6, _] = model.b_invariants();
    [b6, rat(2, 1) * b4, b2, rat(4, 1)]
}

pub fn mod2_division_galois(model: &WeierstrassModel) -> Result<Mod2Image> {
    let f = two_division_cubic(model);
    let roots = rational_roots(&f)?;
    Ok(match roots.len() {
        0 => {
            // disc(4x^3 + ...) = 16 * Delta
            if is_rational_square(&model.discriminant()) {
                Mod2Image::C3
            } else {
                Mod2Image::S3
            }
        }
        1 => Mod2Image::C2,
        _ => Mod2Image::C1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticCriterion {
    pub obstructed: bool,
    /// Rational `t` with `4 t^3 (t + 1) + j = 0`, if any.
    pub witness: Option<String>,
}

pub fn quartic_criterion(j: &Rational) -> Result<QuarticCriterion> {
    let z = Rational::zero();
    let roots = rational_roots(&[j.clone(), z.clone(), z, rat(4, 1), rat(4, 1)])?;
    Ok(QuarticCriterion {
        obstructed: !roots.is_empty(),
        witness: roots.first().map(|t| t.to_string()),
    })
}

/// Level `p^{n0}` at which surjectivity propagates to every level.
pub fn n0_for(p: u64) -> u32 {
    match p {
        2 => 3,
        3 => 2,
        _ => 1,
    }
}

/// Set of `(trace, det)` pairs realised by `GL_2(Z/m)`.
pub fn realized_trace_det(m: u64) -> BTreeSet<(u64, u64)> {
    if m.pow(4) <= 1 << 20 {
        gl2_elements(m)
            .iter()
            .map(|g| ((g[0] + g[3]) % m, (g[0] * g[3] + m * m - g[1] * g[2] % m) % m))
            .collect()
    } else {
        // Companion matrices realise every pair with unit determinant.
        let units: Vec<u64> = (1..m).filter(|d| num_integer::gcd(*d, m) == 1).collect();
        (0..m).flat_map(|t| units.iter().map(move |&d| (t, d))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCoverage {
    pub modulus: u64,
    pub primes_used: usize,
    pub observed: usize,
    pub realized: usize,
    pub complete: bool,
    /// Observed pairs outside the realised set (never expected).
    pub stray: usize,
}

/// Frobenius `(a_ell, ell)` modulo `p^{n0}` over good primes `ell <= budget`.
pub fn trace_coverage(model: &WeierstrassModel, p: u64, n0: u32, budget: u64) -> Result<TraceCoverage> {
    if !is_prime(&int(p as i64)) {
        return contract(format!("{p} is not prime"));
    }
    let m = p.pow(n0);
    let realized = realized_trace_det(m);
    let (model, _) = model.integral_model();
    let disc = model.discriminant().to_integer();
    let primes: Vec<u64> = (2..=budget.min(100_000))
        .filter(|&l| l != p && is_prime(&int(l as i64)) && !(&disc % l).is_zero())
        .collect();
    let mut seen = BTreeSet::new();
    let mut used = 0;
    for chunk in primes.chunks(64) {
        let pairs = chunk
            .par_iter()
            .map(|&l| count_points_mod(&model, l).map(|a| (a.rem_euclid(m as i64) as u64, l % m)))
            .collect::<Result<Vec<_>>>()?;
        used += pairs.len();
        seen.extend(pairs);
        if realized.is_subset(&seen) {
            break;
        }
    }
    let stray = seen.difference(&realized).count();
    Ok(TraceCoverage {
        modulus: m,
        primes_used: used,
        observed: seen.len() - stray,
        realized: realized.len(),
        complete: realized.is_subset(&seen),
        stray,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageDiagnostic {
    pub p: u64,
    pub n0: u32,
    pub mod2: Mod2Image,
    pub quartic: Option<QuarticCriterion>,
    pub coverage: TraceCoverage,
    pub verdict: Verdict,
    /// Why the verdict is not "consistent".
    pub witness: Option<String>,
}

pub fn image_diagnostic(model: &WeierstrassModel, p: u64, budget: u64) -> Result<ImageDiagnostic> {
    let n0 = n0_for(p);
    let mod2 = mod2_division_galois(model)?;
    let quartic = if p == 2 {
        Some(quartic_criterion(&model.invariants()?.j)?)
    } else {
        None
    };
    let coverage = trace_coverage(model, p, n0, budget)?;
    let mut witness = None;
    if p == 2 && mod2 != Mod2Image::S3 {
        witness = Some(format!("2-division cubic has Galois group {mod2:?}"));
    }
    if let Some(QuarticCriterion { witness: Some(t), .. }) = &quartic {
        witness = Some(format!("4t^3(t+1)+j has the rational root t = {t}"));
    }
    let verdict = if witness.is_some() {
        Verdict::Obstructed
    } else if coverage.complete {
        Verdict::ConsistentWithSurjective
    } else {
        witness = Some(format!(
            "{} of {} (trace, det) pairs mod {} seen",
            coverage.observed, coverage.realized, coverage.modulus
        ));
        Verdict::Inconclusive
    };
    Ok(ImageDiagnostic { p, n0, mod2, quartic, coverage, verdict, witness })
}

#[cfg(test)]
mod tests;
