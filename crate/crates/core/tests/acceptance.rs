//! One pass/fail line per acceptance criterion.

use std::time::{Duration, Instant};

use divclass::arith::{int, Integer};
use divclass::bound::corollary_formula;
use divclass::curve::{parse_model, parse_points, WeierstrassModel};
use divclass::galois::GroupTheoryReport;
use divclass::padic::{LocalElem, Omega, Padic};
use divclass::reduction::{conductor, split_or_nonsplit, tate_algorithm, ReductionClass, Splitting};
use divclass::report::{observables, run, RunConfig, RunReport};
use divclass::tate::{
    j_of_q, quotient_structure, tate_forward, tate_inverse, tate_parameter, tate_parameter_q, BaseField,
    GroupDescriptor, QuotientClass, TateParameter,
};
use num_traits::{One, ToPrimitive, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn run_curve(curve: &str, gens: &str, p: u64, n: (u32, u32)) -> Result<(RunReport, Duration), String> {
    let model = parse_model(curve).map_err(|e| e.to_string())?;
    let gens = parse_points(gens).map_err(|e| e.to_string())?;
    let cfg = RunConfig::new(model, gens, p, n.0, n.1);
    let t = Instant::now();
    let r = run(&cfg).map_err(|e| e.to_string())?;
    Ok((r, t.elapsed()))
}

fn expect_all(r: &RunReport, want: &[(&str, Value)]) -> Result<(), String> {
    let obs = observables(r);
    for (k, v) in want {
        let got = obs.get(*k).cloned().unwrap_or(Value::Null);
        check(&got == v, format!("{k}: expected {v}, got {got}"))?;
    }
    Ok(())
}

fn criterion1() -> Outcome {
    let (r, dt) = run_curve("1,0,1,-141,624", "(-6,38);(6,-1)", 2, (1, 5))?;
    expect_all(
        &r,
        &[
            ("discriminant", json!("2^3*71^3")),
            ("minimal_discriminant", json!("2^3*71^3")),
            ("conductor", json!(10082)),
            ("conductor_factored", json!("2*71^2")),
            ("j", json!("2^-3*5^3*19^3")),
            ("reduction.2", json!("nonsplit-multiplicative")),
            ("reduction.71", json!("additive")),
            ("potentially_good.71", json!(true)),
            ("nu_ell.1.71", json!(1)),
            ("zeta4_in_l1", json!(true)),
            ("kappa.1", json!(0)),
        ],
    )?;
    for n in 2..=5u32 {
        let k = format!("kappa.{n}");
        expect_all(&r, &[(k.as_str(), json!(2 * n))])?;
    }
    check(dt < Duration::from_secs(5), format!("took {dt:?}"))?;
    Ok(format!("table bound kappa_n >= 2n for n = 2..5, {dt:.2?}"))
}

fn criterion2() -> Outcome {
    let (r, dt) = run_curve("1,1,1,-55238,4974531", "(37305/64,-6849551/512);(-75,2987)", 2, (1, 5))?;
    expect_all(
        &r,
        &[
            ("discriminant", json!("-2^19*5^6*313")),
            ("conductor", json!(15650)),
            ("reduction.2", json!("split-multiplicative")),
            ("reduction.313", json!("nonsplit-multiplicative")),
            ("potentially_good.5", json!(true)),
            ("nu_ell.1.5", json!(1)),
            ("k1_completion", json!("Q_2(sqrt(-2))")),
        ],
    )?;
    for n in 1..=5u32 {
        let keys = [format!("r2n.{n}"), format!("nu_ell.{n}.313")];
        expect_all(&r, &[(keys[0].as_str(), json!(1)), (keys[1].as_str(), json!(0))])?;
    }
    for n in 2..=5u32 {
        let keys = [format!("nu_ell.{n}.5"), format!("kappa.{n}"), format!("claim.{n}")];
        expect_all(
            &r,
            &[
                (keys[0].as_str(), json!(0)),
                (keys[1].as_str(), json!(2 * n + 2)),
                (keys[2].as_str(), json!(format!("2^{} | h(Q(E[2^{n}]))", 2 * n + 2))),
            ],
        )?;
    }
    check(dt < Duration::from_secs(10), format!("took {dt:?}"))?;
    Ok(format!("kappa_n >= 2n+2 for n = 2..5, {dt:.2?}"))
}

fn criterion3() -> Outcome {
    let (r, dt) = run_curve("1,0,0,543,10026", "(-13,35);(39,282)", 3, (1, 5))?;
    expect_all(
        &r,
        &[("discriminant", json!("-3^11*67^3")), ("conductor", json!(13467))],
    )?;
    for n in 1..=5u32 {
        let keys = [format!("nu_ell.{n}.67"), format!("kappa.{n}"), format!("claim.{n}")];
        expect_all(
            &r,
            &[
                (keys[0].as_str(), json!(0)),
                (keys[1].as_str(), json!(2 * n)),
                (keys[2].as_str(), json!(format!("3^{} | h(Q(E[3^{n}]))", 2 * n))),
            ],
        )?;
    }
    check(dt < Duration::from_secs(5), format!("took {dt:?}"))?;
    Ok(format!("kappa_n >= 2n for n = 1..5, {dt:.2?}"))
}

fn criterion4() -> Outcome {
    let t = Instant::now();
    let g = GroupTheoryReport::run();
    let dt = t.elapsed();
    check(g.lattice.nontrivial_proper == 4, format!("{} submodules", g.lattice.nontrivial_proper))?;
    check(g.h_structure.h1_order == 256, "H1/H3 does not have 256 classes")?;
    check(g.passed(), format!("{g:?}"))?;
    check(dt < Duration::from_secs(1), format!("took {dt:?}"))?;
    Ok(format!("4 submodules, [H2:H] = 2, [H1:H] = 32, {dt:.2?}"))
}

fn random_unit(rng: &mut StdRng, p: &Integer, digits: u32, om: Option<Omega>) -> LocalElem {
    let m = num_traits::pow(p.clone(), digits as usize);
    let top = m.to_u64().unwrap_or(u64::MAX);
    loop {
        let a = Integer::from(rng.gen_range(0..top));
        let b = Integer::from(rng.gen_range(0..top));
        let u = match om {
            None => LocalElem::from_padic(Padic::from_integer(&a, p, digits), None),
            Some(w) => LocalElem::new(Padic::from_integer(&a, p, digits), Padic::from_integer(&b, p, digits), w),
        };
        if u.valuation() == Some(0) {
            return u;
        }
    }
}

fn round_trips(model: &WeierstrassModel, p: i64, rng: &mut StdRng, count: usize) -> Result<usize, String> {
    let p = int(p);
    let data = tate_algorithm(model, &p).map_err(|e| e.to_string())?;
    let digits = 12;
    let param = tate_parameter(&data, 40).map_err(|e| e.to_string())?;
    let vq = param.ord_q();
    let om = param.field.omega();
    for i in 0..count {
        let v = rng.gen_range(0..vq);
        let unit = random_unit(rng, &p, 30, om);
        let pv = LocalElem::from_padic(Padic::from_integer(&p, &p, 40).pow(v), om);
        let u = &unit * &pv;
        let (x, y) = tate_forward(&u, &param, digits).map_err(|e| format!("forward #{i}: {e}"))?;
        let back = tate_inverse(&x, &y, &param, digits).map_err(|e| format!("inverse #{i}: {e}"))?;
        check(back.agrees_to(&u, v + i64::from(digits)), format!("{p}, point #{i}: {u} -> {back}"))?;
    }
    let j = model.invariants().map_err(|e| e.to_string())?.j;
    let q = tate_parameter_q(&j, &p, 30).map_err(|e| e.to_string())?;
    let jp = Padic::from_rational(&j, &p, 60);
    check(j_of_q(&q, 30).agrees_to(&jp, 30 - vq), format!("j(q(j)) != j at {p}"))?;
    Ok(count)
}

fn criterion5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7a7e);
    let e = |a: [i64; 5]| WeierstrassModel::from_ints(a);
    let cases = [
        (e([1, 0, 1, -141, 624]), 2),
        (e([1, 1, 1, -55238, 4974531]), 2),
        (e([1, 0, 0, 543, 10026]), 3),
        (e([0, -1, 1, -10, -20]), 11),
        (e([1, 0, 1, 4, -6]), 7),
    ];
    for (m, l) in &cases[3..] {
        let d = tate_algorithm(m, &int(*l)).map_err(|e| e.to_string())?;
        check(
            d.class == ReductionClass::SplitMultiplicative && split_or_nonsplit(&d) == Ok(Splitting::Split),
            format!("{l} is not split multiplicative"),
        )?;
    }
    let mut total = 0;
    for (m, l) in &cases {
        total += round_trips(m, *l, &mut rng, 100)?;
    }
    Ok(format!("{total} random round trips at 2, 2, 3, 11, 7; j(q(j)) = j"))
}

fn unit_residues(p: u64, k: u32, split: bool) -> Vec<(Integer, Integer)> {
    let m = p.pow(k);
    let mut out = Vec::new();
    for a in 0..m {
        if split {
            if a % p != 0 {
                out.push((Integer::from(a), Integer::zero()));
            }
            continue;
        }
        for b in 0..m {
            if a % p != 0 || b % p != 0 {
                out.push((Integer::from(a), Integer::from(b)));
            }
        }
    }
    out
}

fn quotient_oracle(p: u64, n: u32, field: BaseField) -> Result<(), String> {
    let pi = Integer::from(p);
    let param = TateParameter { q: Padic::from_integer(&pi, &pi, 20), field };
    let g = quotient_structure(&pi, n, &param).map_err(|e| e.to_string())?;
    let want = if p == 2 { GroupDescriptor::TwoTimesCyclic { n } } else { GroupDescriptor::Cyclic { p, n } };
    check(g.descriptor == want, format!("descriptor {:?}", g.descriptor))?;
    let pn = p.pow(n);
    let k = if p == 2 { n + 2 } else { n + 1 };
    // The cyclic generator has exact order p^n.
    let gr = g.generator_residue().clone();
    let cls = |z: &(Integer, Integer)| g.class_of_unit(z).map_err(|e| e.to_string());
    check(cls(&g.pow_res(&gr, pn))? == QuotientClass::zero(), "g^(p^n) is not trivial")?;
    check(cls(&g.pow_res(&gr, pn / p))? != QuotientClass::zero(), "g^(p^(n-1)) is trivial")?;
    let split = field.is_split();
    let size = if split { p.pow(k) } else { p.pow(2 * k) };
    if size > 70_000 {
        return Ok(());
    }
    // Exhaustive: every unit of H mod p^k lands in a class, all classes are
    // hit, and fibres have equal size.
    let mut counts = std::collections::BTreeMap::new();
    for z in unit_residues(p, k, split) {
        match g.class_of_unit(&z) {
            Ok(c) => *counts.entry(c).or_insert(0u64) += 1,
            Err(divclass::Error::Contract(_)) if !split => {}
            Err(e) => return Err(format!("{z:?}: {e}")),
        }
    }
    let order = want.order() as usize;
    check(counts.len() == order, format!("{} classes, expected {order}", counts.len()))?;
    let first = *counts.values().next().expect("nonempty");
    check(counts.values().all(|c| *c == first), "unequal fibres")?;
    if p == 2 {
        let pm = Integer::from(2).pow(k) - Integer::one();
        check(cls(&(pm, Integer::zero()))?.t == 1, "-1 is not the sign generator")?;
    }
    Ok(())
}

fn criterion6() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for n in 1..=4 {
            quotient_oracle(p, n, BaseField::Split).map_err(|e| format!("p = {p}, n = {n}, split: {e}"))?;
            quotient_oracle(p, n, BaseField::Unramified(Omega::for_prime(&Integer::from(p))))
                .map_err(|e| format!("p = {p}, n = {n}, nonsplit: {e}"))?;
            cases += 2;
        }
    }
    Ok(format!("{cases} (p, n, field) cases"))
}

fn criterion7() -> Outcome {
    let mut checks = 0;
    for r in 0..=5u32 {
        for nu in 0..=5u32 {
            for n in 1..=10u32 {
                let (ri, vi, ni) = (i64::from(r), i64::from(nu), i64::from(n));
                let k = corollary_formula(n, r, nu);
                if n <= nu {
                    check(k == 2 * ni * ri && k == 2 * ni * (ri - 1) + 2 * ni, format!("{r} {nu} {n}"))?;
                } else {
                    check(k == 2 * ni * (ri - 1) + 2 * vi, format!("{r} {nu} {n}"))?;
                }
                if n == nu + 1 {
                    check(k == 2 * (vi + 1) * ri - 2, format!("continuity at {r} {nu}"))?;
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (r, nu, n) triples"))
}

fn criterion8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut curves = 0;
    let mut primes = 0;
    while curves < 50 {
        let a: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-30..=30));
        let m = WeierstrassModel::from_ints(a);
        if m.discriminant().is_zero() {
            continue;
        }
        let g = conductor(&m).map_err(|e| e.to_string())?;
        for (l, d) in &g.local {
            if l > &int(3) {
                let comps = u64::from(d.kodaira.components());
                check(
                    d.ord_delta == d.conductor_exponent + comps - 1,
                    format!("Ogg fails for {m} at {l}"),
                )?;
                primes += 1;
            }
            let again = tate_algorithm(&d.minimal_model, l).map_err(|e| e.to_string())?;
            check(
                again.minimal_model == d.minimal_model && again.kodaira == d.kodaira,
                format!("not idempotent for {m} at {l}"),
            )?;
            if d.class.is_multiplicative() && l >= &int(5) {
                let inv = m.invariants().map_err(|e| e.to_string())?;
                // quadratic twist by a nonresidue d: c4 -> d^2 c4, c6 -> d^3 c6
                let nr = (2..).find(|x: &i64| divclass::arith::kronecker_symbol(&int(*x), l).ok() == Some(-1)).unwrap();
                let tw = twist(&inv.c4, &inv.c6, nr);
                let t = tate_algorithm(&tw, l).map_err(|e| e.to_string())?;
                check(t.class.is_multiplicative() && t.class != d.class, format!("twist does not flip at {l} for {m}"))?;
            }
        }
        curves += 1;
    }
    Ok(format!("{curves} curves, {primes} tame primes"))
}

fn twist(c4: &divclass::arith::Rational, c6: &divclass::arith::Rational, d: i64) -> WeierstrassModel {
    use divclass::arith::rat;
    let d2 = rat(d * d, 1);
    let d3 = rat(d * d * d, 1);
    WeierstrassModel::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(-27, 1) * c4 * d2, rat(-54, 1) * c6 * d3)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("first p = 2 example (nonsplit at 2)", criterion1),
        ("second p = 2 example (split at 2)", criterion2),
        ("p = 3 example", criterion3),
        ("finite group suite", criterion4),
        ("Tate round trips", criterion5),
        ("quotient structure oracle", criterion6),
        ("prime-conductor formula identities", criterion7),
        ("reduction-theory properties", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
