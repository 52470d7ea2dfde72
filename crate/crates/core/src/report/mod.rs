//! The end-to-end pipeline and its serialisable report.

mod corpus;
mod text;

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime, Integer, Rational};
use crate::bound::{self, BoundReport};
use crate::curve::{torsion_subgroup, MordellWeilInput, Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::galois::{image_diagnostic, GroupTheoryReport, ImageDiagnostic};
use crate::reduction::{conductor, hypothesis_check, GlobalReductionProfile};
use crate::tate::{ell_adic_mu, local_field_labels, local_image, LocalFieldLabels, TateUniformization, GUARD_DIGITS};

pub use corpus::{
    observables, parse_corpus, parse_level_range, run_corpus, run_corpus_entries, CorpusEntry, CorpusOutcome, EntryOutcome,
    Mismatch,
};
pub use text::render_text;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub model: WeierstrassModel,
    pub generators: Vec<Point>,
    pub p: Integer,
    pub n_min: u32,
    pub n_max: u32,
    pub precision_guard: u32,
    pub prime_budget: u64,
    pub verify_group_theory: bool,
}

impl RunConfig {
    pub fn new(model: WeierstrassModel, generators: Vec<Point>, p: u64, n_min: u32, n_max: u32) -> Self {
        RunConfig {
            model,
            generators,
            p: Integer::from(p),
            n_min,
            n_max,
            precision_guard: GUARD_DIGITS,
            prime_budget: 10_000,
            verify_group_theory: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(Error::Contract(format!("bad level range {}..{}", self.n_min, self.n_max)));
        }
        if !is_prime(&self.p) {
            return Err(Error::Contract(format!("{} is not prime", self.p)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    HypothesesNotMet,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub stage: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSection {
    pub model: String,
    pub discriminant: String,
    pub minimal_discriminant: String,
    pub conductor: String,
    pub conductor_factored: String,
    pub j: String,
    pub j_factored: String,
    pub torsion_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReduction {
    pub prime: String,
    pub reduction: String,
    pub kodaira: String,
    pub ord_delta: u64,
    pub conductor_exponent: u64,
    pub potentially_good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisLine {
    pub check: String,
    pub passed: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub n: u32,
    /// `(t, e)` per generator: the class `(-1)^t g^e`.
    pub classes: Vec<(u8, u64)>,
    pub distinguished: usize,
    pub nu: u32,
    pub nu_stable: bool,
    pub r2n: Option<u8>,
    pub delta2: Option<u8>,
    pub image_order: u64,
    /// `mu` at split multiplicative primes `ell != p`.
    pub mu: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldLabels {
    pub q_class: i64,
    pub k1_completion: String,
    pub generator_classes: Vec<i64>,
    pub zeta4_in_l1: bool,
}

impl From<LocalFieldLabels> for FieldLabels {
    fn from(l: LocalFieldLabels) -> Self {
        FieldLabels {
            q_class: l.q_class,
            k1_completion: l.k1_completion,
            generator_classes: l.generator_classes,
            zeta4_in_l1: l.zeta4_in_l1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSection {
    pub field: String,
    pub ord_q: i64,
    pub digits: u32,
    pub levels: Vec<LevelData>,
    pub labels: Option<FieldLabels>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Level {
    #[serde(flatten)]
    pub bound: BoundReport,
    /// Bound with `nu_ell = 1` at potentially good primes for all `n`.
    pub prose_variant: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollarySection {
    pub applicable: bool,
    pub reason: String,
    pub kappa: BTreeMap<u32, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub status: Status,
    pub p: u64,
    pub n_min: u32,
    pub n_max: u32,
    pub rank: usize,
    pub generators: Vec<String>,
    pub stages: Vec<Stage>,
    pub invariants: Option<InvariantsSection>,
    pub reduction: Vec<PrimeReduction>,
    pub hypotheses: Vec<HypothesisLine>,
    pub local: Option<LocalSection>,
    pub theorem1: Vec<Theorem1Level>,
    pub corollary1: Option<CorollarySection>,
    pub galois_image: Option<ImageDiagnostic>,
    pub group_theory: Option<GroupTheoryReport>,
    pub warnings: Vec<String>,
}

impl RunReport {
    fn empty(cfg: &RunConfig) -> Self {
        RunReport {
            schema: SCHEMA,
            status: Status::Ok,
            p: cfg.p.to_u64().unwrap_or(0),
            n_min: cfg.n_min,
            n_max: cfg.n_max,
            rank: cfg.generators.len(),
            generators: cfg.generators.iter().map(|g| g.to_string()).collect(),
            stages: Vec::new(),
            invariants: None,
            reduction: Vec::new(),
            hypotheses: Vec::new(),
            local: None,
            theorem1: Vec::new(),
            corollary1: None,
            galois_image: None,
            group_theory: None,
            warnings: Vec::new(),
        }
    }

    fn stage<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.stages.push(Stage { stage: name.into(), ok: true, detail: String::new() });
                Some(v)
            }
            Err(e) => {
                self.stages.push(Stage { stage: name.into(), ok: false, detail: e.to_string() });
                if self.status == Status::Ok {
                    self.status = Status::Error;
                }
                None
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::HypothesesNotMet => 2,
            Status::Error => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn level(&self, n: u32) -> Option<&LevelData> {
        self.local.as_ref()?.levels.iter().find(|l| l.n == n)
    }

    pub fn bound(&self, n: u32) -> Option<&Theorem1Level> {
        self.theorem1.iter().find(|b| b.bound.n == n)
    }
}

/// `2^-3*5^3*19^3`-style factorisation of a nonzero rational.
pub fn factor_rational(x: &Rational) -> Result<String> {
    let num = factor(x.numer())?;
    let den = factor(x.denom())?;
    let mut parts: Vec<(Integer, i64)> = num.factors.iter().map(|(p, e)| (p.clone(), i64::from(*e))).collect();
    parts.extend(den.factors.iter().map(|(p, e)| (p.clone(), -i64::from(*e))));
    parts.sort();
    let body: Vec<String> = parts
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    let body = if body.is_empty() { "1".to_string() } else { body.join("*") };
    Ok(if x.is_negative() { format!("-{body}") } else { body })
}

fn invariants_section(model: &WeierstrassModel, g: &GlobalReductionProfile, torsion: u32) -> Result<InvariantsSection> {
    let inv = model.invariants()?;
    Ok(InvariantsSection {
        model: model.to_string(),
        discriminant: factor_rational(&inv.discriminant)?,
        minimal_discriminant: factor(&g.minimal_discriminant)?.to_string(),
        conductor: g.conductor.to_string(),
        conductor_factored: factor(&g.conductor)?.to_string(),
        j: inv.j.to_string(),
        j_factored: factor_rational(&inv.j)?,
        torsion_order: torsion,
    })
}

/// Builds the Tate uniformisation, doubling the digit count on precision loss.
fn uniformize(model: &WeierstrassModel, p: &Integer, digits: u32) -> Result<TateUniformization> {
    let mut d = digits;
    loop {
        match TateUniformization::new(model, p, d) {
            Err(Error::Precision(_)) if d < 8 * digits => d *= 2,
            r => return r,
        }
    }
}

fn with_retry<T>(
    model: &WeierstrassModel,
    p: &Integer,
    tu: &mut TateUniformization,
    f: impl Fn(&TateUniformization) -> Result<T>,
) -> Result<T> {
    for _ in 0..3 {
        match f(tu) {
            Err(Error::Precision(_)) => *tu = uniformize(model, p, 2 * tu.working_digits())?,
            r => return r,
        }
    }
    f(tu)
}

fn local_section(
    cfg: &RunConfig,
    profile: &GlobalReductionProfile,
    torsion: &[Point],
    warnings: &mut Vec<String>,
) -> Result<LocalSection> {
    let digits = cfg.n_max + 2 + cfg.precision_guard;
    let mut tu = uniformize(&cfg.model, &cfg.p, digits)?;
    let gens = &cfg.generators;
    let mut levels = Vec::new();
    // Uniformisations at the other split multiplicative primes, for mu.
    let mut aux = Vec::new();
    for (ell, d) in &profile.local {
        if ell != &cfg.p && d.class == crate::reduction::ReductionClass::SplitMultiplicative {
            match uniformize(&cfg.model, ell, cfg.precision_guard + 4) {
                Ok(t) => aux.push((ell.clone(), t)),
                Err(e) => warnings.push(format!("no Tate parameter at {ell}: {e}")),
            }
        }
    }
    for n in cfg.n_min..=cfg.n_max {
        let li = with_retry(&cfg.model, &cfg.p, &mut tu, |t| local_image(t, gens, torsion, n))?;
        let mut mu = BTreeMap::new();
        if let Some(p1) = gens.get(li.distinguished) {
            for (ell, t) in &aux {
                match ell_adic_mu(t, p1, &cfg.p, n) {
                    Ok(m) => {
                        mu.insert(ell.to_string(), m);
                    }
                    Err(e) => warnings.push(format!("mu at {ell}, n = {n}: {e}")),
                }
            }
        }
        levels.push(LevelData {
            n,
            classes: li.classes.iter().map(|c| (c.t, c.e)).collect(),
            distinguished: li.distinguished,
            nu: li.nu,
            nu_stable: li.nu_stable,
            r2n: li.r2n,
            delta2: li.delta2,
            image_order: li.image_order,
            mu,
        });
    }
    let labels = if cfg.p == Integer::from(2) {
        Some(with_retry(&cfg.model, &cfg.p, &mut tu, |t| local_field_labels(t, gens, torsion, 1))?.into())
    } else {
        None
    };
    Ok(LocalSection {
        field: tu.field().label().replace("Q_p", &format!("Q_{}", cfg.p)),
        ord_q: tu.param.ord_q(),
        digits: tu.working_digits(),
        levels,
        labels,
    })
}

/// Runs the whole pipeline. Failures are recorded per stage; only a
/// malformed configuration is returned as an error.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let mut rep = RunReport::empty(cfg);
    let model = &cfg.model;
    let Some(mw) = rep.stage("mordell-weil", MordellWeilInput::new(model, cfg.generators.clone(), None)) else {
        return Ok(rep);
    };
    let torsion = rep.stage("torsion", torsion_subgroup(model));
    let torsion_points: Vec<Point> = torsion.as_ref().map(|t| t.points.clone()).unwrap_or_default();
    if torsion.as_ref().is_some_and(|t| t.order > 1) {
        rep.warnings.push(format!(
            "nontrivial rational torsion of order {}; r_(2,n) uses the full Mordell-Weil group",
            torsion.as_ref().map_or(1, |t| t.order)
        ));
    }
    let Some(profile) = rep.stage("conductor", conductor(model)) else {
        return Ok(rep);
    };
    let torsion_order = torsion.as_ref().map_or(1, |t| t.order);
    rep.invariants = rep.stage("invariants", invariants_section(model, &profile, torsion_order));
    rep.reduction = profile
        .local
        .iter()
        .map(|(l, d)| PrimeReduction {
            prime: l.to_string(),
            reduction: d.class.label().into(),
            kodaira: d.kodaira.to_string(),
            ord_delta: d.ord_delta,
            conductor_exponent: d.conductor_exponent,
            potentially_good: d.potentially_good,
        })
        .collect();
    let hyp = hypothesis_check(&profile, &cfg.p);
    rep.hypotheses = hyp
        .diagnostics
        .iter()
        .map(|d| HypothesisLine { check: d.check.clone(), passed: d.passed, reason: d.reason.clone() })
        .collect();
    rep.galois_image = rep.stage("galois-image", image_diagnostic(model, rep.p, cfg.prime_budget));
    if cfg.verify_group_theory {
        rep.group_theory = Some(GroupTheoryReport::run());
    }
    if !hyp.passed() {
        rep.status = Status::HypothesesNotMet;
        rep.stages.push(Stage {
            stage: "hypotheses".into(),
            ok: false,
            detail: hyp.failures().iter().map(|d| d.reason.clone()).collect::<Vec<_>>().join("; "),
        });
        return Ok(rep);
    }
    let mut warnings = Vec::new();
    let local = rep.stage("local", local_section(cfg, &profile, &torsion_points, &mut warnings));
    rep.warnings.extend(warnings);
    let Some(local) = local else {
        return Ok(rep);
    };
    let r = mw.rank as u32;
    let cor_ok = profile.conductor == cfg.p;
    let mut cor = CorollarySection {
        applicable: cor_ok,
        reason: if cor_ok {
            "conductor equals p".into()
        } else {
            format!("conductor {} is not {}", profile.conductor, cfg.p)
        },
        kappa: BTreeMap::new(),
    };
    for lv in &local.levels {
        let table = rep.stage("nu-table", bound::nu_table(&profile, &cfg.p, lv.n));
        let Some(table) = table else { continue };
        let b = bound::kappa_lower_bound(&cfg.p, lv.n, r, table, lv.r2n, lv.delta2, lv.nu);
        if let Some(mut b) = rep.stage("kappa", b) {
            if cor_ok {
                let k = bound::corollary_exact(&cfg.p, &profile.conductor, lv.n, r, lv.nu).ok();
                b.exact = k;
                if let Some(k) = k {
                    cor.kappa.insert(lv.n, k);
                }
            }
            let prose_variant = bound::prose_variant(&b);
            rep.theorem1.push(Theorem1Level { bound: b, prose_variant });
        }
    }
    rep.local = Some(local);
    rep.corollary1 = Some(cor);
    rep.stages.dedup_by(|a, b| a.ok && b.ok && a.stage == b.stage);
    Ok(rep)
}
