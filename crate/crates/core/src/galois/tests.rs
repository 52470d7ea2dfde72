use super::*;
use crate::arith::rat;

fn e1() -> WeierstrassModel {
    WeierstrassModel::from_ints([1, 0, 1, -141, 624])
}

#[test]
fn mod2_types() {
    assert_eq!(mod2_division_galois(&e1()).unwrap(), Mod2Image::S3);
    assert_eq!(mod2_division_galois(&WeierstrassModel::from_ints([0, 0, 0, -1, 0])).unwrap(), Mod2Image::C1);
    assert_eq!(mod2_division_galois(&WeierstrassModel::from_ints([0, 0, 0, 0, -2])).unwrap(), Mod2Image::S3);
    // x^3 - 3x + 1 has square discriminant 81
    assert_eq!(mod2_division_galois(&WeierstrassModel::from_ints([0, 0, 0, -3, 1])).unwrap(), Mod2Image::C3);
    // y^2 = x^3 + 8: one rational 2-torsion point
    assert_eq!(mod2_division_galois(&WeierstrassModel::from_ints([0, 0, 0, 0, 8])).unwrap(), Mod2Image::C2);
}

#[test]
fn quartic_cases() {
    let j1 = e1().invariants().unwrap().j;
    assert!(!quartic_criterion(&j1).unwrap().obstructed);
    let j2 = WeierstrassModel::from_ints([1, 1, 1, -55238, 4974531]).invariants().unwrap().j;
    assert!(!quartic_criterion(&j2).unwrap().obstructed);
    let q = quartic_criterion(&rat(-8, 1)).unwrap();
    assert!(q.obstructed);
    assert_eq!(q.witness.as_deref(), Some("1"));
}

#[test]
fn gl2_orders() {
    assert_eq!(gl2_elements(2).len(), 6);
    assert_eq!(gl2_elements(4).len(), 96);
    assert_eq!(gl2_elements(8).len(), 1536);
    assert_eq!(gl2_elements(9).len() as u64, gl2_order(3, 2));
    assert_eq!(gl2_elements(5).len() as u64, gl2_order(5, 1));
}

#[test]
fn realized_pairs_symmetric_under_minus_identity() {
    for m in [8, 9, 5, 7] {
        let s = realized_trace_det(m);
        assert!(s.iter().all(|&(t, d)| s.contains(&((m - t) % m, d))));
        // every unit determinant occurs
        assert_eq!(s.len() as u64, m * (1..m).filter(|d| num_integer::gcd(*d, m) == 1).count() as u64);
    }
}

#[test]
fn coverage_full_image_and_cm() {
    let e3 = WeierstrassModel::from_ints([1, 0, 0, 543, 10026]);
    let c = trace_coverage(&e3, 3, 2, 10_000).unwrap();
    assert!(c.complete, "{c:?}");
    assert_eq!(c.stray, 0);
    let cm = WeierstrassModel::from_ints([0, 0, 0, -1, 0]);
    let c = trace_coverage(&cm, 3, 2, 3_000).unwrap();
    assert!(!c.complete && c.observed < c.realized);
    let c = trace_coverage(&e1(), 2, 3, 0).unwrap();
    assert_eq!((c.primes_used, c.complete), (0, false));
}

#[test]
fn corpus_diagnostics() {
    let d = image_diagnostic(&e1(), 2, 10_000).unwrap();
    assert_eq!(d.verdict, Verdict::ConsistentWithSurjective, "{d:?}");
    let d = image_diagnostic(&WeierstrassModel::from_ints([0, 0, 0, -1, 0]), 2, 2000).unwrap();
    assert_eq!(d.verdict, Verdict::Obstructed);
}

#[test]
fn submodule_lattice() {
    let r = verify_submodule_lattice();
    assert_eq!(r.nontrivial_proper, 4);
    assert!(r.matches_named && r.v1_in_v2_1 && r.v2_2_in_v3 && r.direct_sum);
    assert_eq!(r.v4_over_v3, 2);
}

#[test]
fn h_structure() {
    let r = verify_h_structure();
    assert_eq!((r.h1_order, r.h2_order), (256, 16));
    assert!(r.matches_det_description && r.det_square_is_one && r.normal_in_gl2);
    assert_eq!((r.index_h2, r.index_h1), (2, 32));
}

#[test]
fn inertia_span() {
    let r = verify_inertia_matrices();
    assert_eq!(r.span.len(), 4);
    assert_eq!(r.meet_v2_1, vec![0]);
    // V2(2) meets the span trivially as well
    assert_eq!(r.meet_v2_2, vec![0]);
    assert!(GroupTheoryReport::run().passed());
}
