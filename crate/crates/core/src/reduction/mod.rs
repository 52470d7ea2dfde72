//! Local reduction data at each bad prime, the conductor, and the
//! hypothesis checks on a curve and a prime `p`.

mod algorithm;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{factor, is_prime, kronecker_symbol, Integer, Valuation};
use crate::curve::{Isomorphism, WeierstrassModel};
use crate::error::{contract, domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionClass {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionClass {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionClass::SplitMultiplicative | ReductionClass::NonsplitMultiplicative)
    }

    pub fn label(self) -> &'static str {
        match self {
            ReductionClass::Good => "good",
            ReductionClass::SplitMultiplicative => "split-multiplicative",
            ReductionClass::NonsplitMultiplicative => "nonsplit-multiplicative",
            ReductionClass::Additive => "additive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Nonsplit,
}

/// Kodaira symbol; `I(0)` is good reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fibre.
    pub fn components(self) -> u64 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n as u64,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n as u64 + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReductionData {
    pub prime: Integer,
    pub minimal_model: WeierstrassModel,
    /// Change of variables from the input model to `minimal_model`.
    pub to_minimal: Isomorphism,
    pub ord_delta: u64,
    pub kodaira: Kodaira,
    pub conductor_exponent: u64,
    pub class: ReductionClass,
    pub potentially_good: bool,
    pub ord_j: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalReductionProfile {
    pub conductor: Integer,
    pub minimal_discriminant: Integer,
    pub local: BTreeMap<Integer, LocalReductionData>,
}

impl GlobalReductionProfile {
    pub fn at(&self, p: &Integer) -> Option<&LocalReductionData> {
        self.local.get(p)
    }
}

pub fn tate_algorithm(model: &WeierstrassModel, ell: &Integer) -> Result<LocalReductionData> {
    if !is_prime(ell) {
        return domain(format!("{ell} is not prime"));
    }
    algorithm::run(model, ell)
}

/// Split or nonsplit, decided afresh from the minimal model.
pub fn split_or_nonsplit(data: &LocalReductionData) -> Result<Splitting> {
    if !data.class.is_multiplicative() {
        return contract(format!("reduction at {} is {}, not multiplicative", data.prime, data.class.label()));
    }
    let p = &data.prime;
    let split = if p > &Integer::from(3) {
        let (_, c6) = data.minimal_model.c4_c6();
        kronecker_symbol(&-c6.to_integer(), p)? == 1
    } else {
        let (r, t) = algorithm::singular_point_mod(&data.minimal_model, p).expect("node exists");
        let shifted = data.minimal_model.transform(&Isomorphism::shift(
            crate::arith::rat_int(&r),
            Default::default(),
            crate::arith::rat_int(&t),
        ));
        algorithm::tangent_cone_splits(&shifted, p)
    };
    Ok(if split { Splitting::Split } else { Splitting::Nonsplit })
}

pub fn conductor(model: &WeierstrassModel) -> Result<GlobalReductionProfile> {
    let (integral, _) = model.integral_model();
    let disc = integral.discriminant().to_integer();
    if disc.is_zero() {
        return domain("singular model: discriminant is zero");
    }
    let primes: Vec<Integer> = factor(&disc)?.primes().cloned().collect();
    let mut local = BTreeMap::new();
    let mut n = Integer::one();
    let mut dmin = if disc.is_negative() { -Integer::one() } else { Integer::one() };
    for p in primes {
        let data = tate_algorithm(model, &p)?;
        n *= num_traits::pow(p.clone(), data.conductor_exponent as usize);
        dmin *= num_traits::pow(p.clone(), data.ord_delta as usize);
        if data.class != ReductionClass::Good {
            local.insert(p, data);
        }
    }
    Ok(GlobalReductionProfile { conductor: n, minimal_discriminant: dmin, local })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub check: String,
    pub passed: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub prime: Integer,
    pub diagnostics: Vec<Diagnostic>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.diagnostics.iter().all(|d| d.passed)
    }

    pub fn failures(&self) -> Vec<&Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.passed).collect()
    }
}

/// The three standing assumptions on `(E, p)`.
pub fn hypothesis_check(profile: &GlobalReductionProfile, p: &Integer) -> HypothesisReport {
    let mut diagnostics = Vec::new();
    let at_p = profile.at(p);
    let mult = at_p.map_or(false, |d| d.class.is_multiplicative());
    diagnostics.push(Diagnostic {
        check: "multiplicative-at-p".into(),
        passed: mult,
        reason: match at_p {
            Some(d) if mult => format!("{} at {p}", d.class.label()),
            Some(d) => format!("not multiplicative at p: {} ({})", d.class.label(), d.kodaira),
            None => "not multiplicative at p: good reduction".into(),
        },
    });
    let bad_others: Vec<String> = profile
        .local
        .iter()
        .filter(|(l, d)| *l != p && !d.class.is_multiplicative() && !d.potentially_good)
        .map(|(l, d)| format!("{l} ({})", d.kodaira))
        .collect();
    diagnostics.push(Diagnostic {
        check: "other-primes".into(),
        passed: bad_others.is_empty(),
        reason: if bad_others.is_empty() {
            "every other bad prime is multiplicative or potentially good".into()
        } else {
            format!("potentially multiplicative additive reduction at {}", bad_others.join(", "))
        },
    });
    let ord = at_p.map_or(0, |d| d.ord_delta);
    let coprime = ord > 0 && !(Integer::from(ord) % p).is_zero();
    diagnostics.push(Diagnostic {
        check: "p-does-not-divide-ord-delta".into(),
        passed: coprime,
        reason: format!("ord_p(Delta_min) = {ord}"),
    });
    HypothesisReport { prime: p.clone(), diagnostics }
}

#[cfg(test)]
mod tests;
