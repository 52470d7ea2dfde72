use std::fmt::Write;

use super::{RunReport, Status};

/// Plain-text rendering of a report.
pub fn render_text(r: &RunReport) -> String {
    let mut s = String::new();
    let status = match r.status {
        Status::Ok => "ok",
        Status::HypothesesNotMet => "hypotheses-not-met",
        Status::Error => "error",
    };
    let _ = writeln!(s, "p = {}, n = {}..{}, rank = {}  [{status}]", r.p, r.n_min, r.n_max, r.rank);
    if let Some(inv) = &r.invariants {
        let _ = writeln!(s, "curve        {}", inv.model);
        let _ = writeln!(s, "Delta        {}", inv.discriminant);
        let _ = writeln!(s, "Delta_min    {}", inv.minimal_discriminant);
        let _ = writeln!(s, "N            {} = {}", inv.conductor, inv.conductor_factored);
        let _ = writeln!(s, "j            {}", inv.j_factored);
        let _ = writeln!(s, "torsion      {}", inv.torsion_order);
    }
    for red in &r.reduction {
        let pg = if red.potentially_good && red.reduction == "additive" { ", potentially good" } else { "" };
        let _ = writeln!(
            s,
            "  {:>8}: {} {} ord(Delta) = {} f = {}{pg}",
            red.prime, red.reduction, red.kodaira, red.ord_delta, red.conductor_exponent
        );
    }
    for h in &r.hypotheses {
        let _ = writeln!(s, "hypothesis {:<28} {} ({})", h.check, if h.passed { "pass" } else { "FAIL" }, h.reason);
    }
    if let Some(g) = &r.galois_image {
        let _ = writeln!(
            s,
            "galois image mod {}: {:?}; mod-2 {:?}; coverage {}/{} from {} primes",
            g.coverage.modulus, g.verdict, g.mod2, g.coverage.observed, g.coverage.realized, g.coverage.primes_used
        );
    }
    if let Some(l) = &r.local {
        let _ = writeln!(s, "local field  {} (ord q = {}, {} digits)", l.field, l.ord_q, l.digits);
        if let Some(lab) = &l.labels {
            let _ = writeln!(
                s,
                "  K_1 completion {}; zeta_4 in L_1: {}",
                lab.k1_completion,
                if lab.zeta4_in_l1 { "yes" } else { "no" }
            );
        }
        for lv in &l.levels {
            let cls: Vec<String> = lv.classes.iter().map(|(t, e)| format!("({t},{e})")).collect();
            let _ = write!(s, "  n = {}: classes {} nu = {}", lv.n, cls.join(" "), lv.nu);
            if let (Some(r2), Some(d2)) = (lv.r2n, lv.delta2) {
                let _ = write!(s, " r2n = {r2} delta2 = {d2}");
            }
            for (ell, mu) in &lv.mu {
                let _ = write!(s, " mu_{ell} = {mu}");
            }
            s.push('\n');
        }
    }
    for t in &r.theorem1 {
        let b = &t.bound;
        let nus: Vec<String> = b.nu_table.entries.iter().map(|e| format!("nu_{} = {}", e.ell, e.nu)).collect();
        let _ = write!(s, "n = {}: kappa >= {} [{}]; {}", b.n, b.kappa_lower_bound, nus.join(", "), b.claim);
        if b.vacuous {
            s.push_str(" (vacuous)");
        }
        if let Some(k) = b.exact {
            let _ = write!(s, "; exact kappa = {k}");
        }
        if let Some(v) = t.prose_variant {
            let _ = write!(s, "; with nu = 1 at potentially good primes: {v}");
        }
        s.push('\n');
    }
    if let Some(g) = &r.group_theory {
        let _ = writeln!(
            s,
            "group theory: {} submodules, [H2:H] = {}, [H1:H] = {}, span meets V2(1) in {:?}: {}",
            g.lattice.nontrivial_proper,
            g.h_structure.index_h2,
            g.h_structure.index_h1,
            g.inertia.meet_v2_1,
            if g.passed() { "pass" } else { "FAIL" }
        );
    }
    for st in r.stages.iter().filter(|st| !st.ok) {
        let _ = writeln!(s, "stage {} failed: {}", st.stage, st.detail);
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}
