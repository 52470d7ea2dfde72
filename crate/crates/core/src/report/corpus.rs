use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{run, RunConfig, RunReport};
use crate::curve::{parse_model, parse_points};
use crate::error::{Error, Result};

/// One line of a corpus file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub curve: String,
    #[serde(default)]
    pub gens: String,
    pub p: u64,
    /// `"a..b"` or a single level.
    pub n: String,
    #[serde(default)]
    pub expect: BTreeMap<String, Value>,
    /// Where each expectation comes from; missing keys read as "unspecified".
    #[serde(default)]
    pub source: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    pub actual: Value,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub label: String,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusOutcome {
    pub entries: Vec<EntryOutcome>,
    pub warnings: Vec<String>,
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryOutcome::passed)
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let mark = if e.passed() { "PASS" } else { "FAIL" };
            s.push_str(&format!("{mark} {} ({} checks)\n", e.label, e.checked));
            if let Some(err) = &e.error {
                s.push_str(&format!("     error: {err}\n"));
            }
            for m in &e.mismatches {
                s.push_str(&format!(
                    "     {}: expected {} got {} [{}]\n",
                    m.field, m.expected, m.actual, m.source
                ));
            }
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

pub fn parse_level_range(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse { pos: 0, msg: format!("bad level range {s:?}") };
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let n = num(s)?;
            Ok((n, n))
        }
    }
}

/// Parses JSON lines; blank lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            let e: CorpusEntry = serde_json::from_str(t).map_err(|e| Error::Parse {
                pos: offset,
                msg: format!("corpus line {}: {e}", i + 1),
            })?;
            out.push(e);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

/// Flat view of a report, keyed like corpus expectations.
pub fn observables(r: &RunReport) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    let mut put = |k: String, v: Value| {
        m.insert(k, v);
    };
    put("status".into(), serde_json::to_value(r.status).expect("status"));
    put("rank".into(), r.rank.into());
    if let Some(inv) = &r.invariants {
        put("discriminant".into(), inv.discriminant.clone().into());
        put("minimal_discriminant".into(), inv.minimal_discriminant.clone().into());
        let cond = inv.conductor.parse::<u64>().map(Value::from).unwrap_or_else(|_| inv.conductor.clone().into());
        put("conductor".into(), cond);
        put("conductor_factored".into(), inv.conductor_factored.clone().into());
        put("j".into(), inv.j_factored.clone().into());
        put("torsion_order".into(), inv.torsion_order.into());
    }
    for red in &r.reduction {
        put(format!("reduction.{}", red.prime), red.reduction.clone().into());
        put(format!("kodaira.{}", red.prime), red.kodaira.clone().into());
        put(format!("ord_delta.{}", red.prime), red.ord_delta.into());
        put(format!("potentially_good.{}", red.prime), red.potentially_good.into());
    }
    if let Some(g) = &r.galois_image {
        put("galois_verdict".into(), serde_json::to_value(g.verdict).expect("verdict"));
        put("mod2".into(), serde_json::to_value(g.mod2).expect("mod2"));
        if let Some(q) = &g.quartic {
            put("quartic_obstructed".into(), q.obstructed.into());
        }
    }
    if let Some(l) = &r.local {
        put("field".into(), l.field.clone().into());
        put("ord_q".into(), l.ord_q.into());
        if let Some(lab) = &l.labels {
            put("k1_completion".into(), lab.k1_completion.clone().into());
            put("zeta4_in_l1".into(), lab.zeta4_in_l1.into());
        }
        for lv in &l.levels {
            put(format!("nu.{}", lv.n), lv.nu.into());
            if let Some(v) = lv.r2n {
                put(format!("r2n.{}", lv.n), v.into());
            }
            if let Some(v) = lv.delta2 {
                put(format!("delta2.{}", lv.n), v.into());
            }
        }
    }
    for t in &r.theorem1 {
        let b = &t.bound;
        for e in &b.nu_table.entries {
            put(format!("nu_ell.{}.{}", b.n, e.ell), e.nu.into());
        }
        put(format!("kappa.{}", b.n), b.kappa_lower_bound.into());
        put(format!("claim_exponent.{}", b.n), b.claim_exponent.into());
        put(format!("claim.{}", b.n), b.claim.clone().into());
        if let Some(v) = t.prose_variant {
            put(format!("prose_variant.{}", b.n), v.into());
        }
        if let Some(v) = b.exact {
            put(format!("exact.{}", b.n), v.into());
        }
    }
    m
}

fn run_entry(e: &CorpusEntry, budget: u64) -> EntryOutcome {
    let mut out = EntryOutcome { label: e.label.clone(), checked: 0, mismatches: Vec::new(), error: None };
    let report = (|| {
        let model = parse_model(&e.curve)?;
        let gens = parse_points(&e.gens)?;
        let (a, b) = parse_level_range(&e.n)?;
        let mut cfg = RunConfig::new(model, gens, e.p, a, b);
        cfg.prime_budget = budget;
        run(&cfg)
    })();
    let report = match report {
        Ok(r) => r,
        Err(err) => {
            out.error = Some(err.to_string());
            return out;
        }
    };
    let obs = observables(&report);
    for (k, want) in &e.expect {
        out.checked += 1;
        let got = obs.get(k).cloned().unwrap_or(Value::Null);
        if &got != want {
            out.mismatches.push(Mismatch {
                field: k.clone(),
                expected: want.clone(),
                actual: got,
                source: e.source.get(k).cloned().unwrap_or_else(|| "unspecified".into()),
            });
        }
    }
    out
}

pub fn run_corpus_entries(entries: &[CorpusEntry], budget: u64, workers: usize) -> CorpusOutcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let results = pool.install(|| entries.par_iter().map(|e| run_entry(e, budget)).collect());
    let mut warnings = Vec::new();
    if entries.is_empty() {
        warnings.push("corpus has no entries".into());
    }
    CorpusOutcome { entries: results, warnings }
}

pub fn run_corpus(path: &Path, budget: u64) -> Result<CorpusOutcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let entries = parse_corpus(&text)?;
    Ok(run_corpus_entries(&entries, budget, 4))
}
