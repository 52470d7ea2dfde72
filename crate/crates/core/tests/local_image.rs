use divclass::arith::{int, rat, Integer};
use divclass::curve::{torsion_subgroup, Point, WeierstrassModel};
use divclass::tate::{ell_adic_mu, local_image, TateUniformization};
use num_traits::Zero;
use proptest::prelude::*;

fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
    Point::Affine(rat(x.0, x.1), rat(y.0, y.1))
}

fn combine(m: &WeierstrassModel, g: &[Point], row: (i64, i64)) -> Point {
    let a = m.multiply(row.0, &g[0]).unwrap();
    let b = m.multiply(row.1, &g[1]).unwrap();
    m.add(&a, &b).unwrap()
}

fn invariants_after(m: &WeierstrassModel, p: i64, g: &[Point], mat: [i64; 4], n: u32) -> (u32, Option<u8>, u64) {
    let h = [combine(m, g, (mat[0], mat[1])), combine(m, g, (mat[2], mat[3]))];
    let tu = TateUniformization::new(m, &int(p), n + 12).unwrap();
    let li = local_image(&tu, &h, &[], n).unwrap();
    (li.nu, li.r2n, li.image_order)
}

fn unimodular() -> impl Strategy<Value = [i64; 4]> {
    (-2i64..=2, -2i64..=2, -1i64..=1).prop_map(|(a, b, k)| {
        // (1 a; 0 1)(1 0; b 1) times a sign flip
        let m = [1 + a * b, a, b, 1];
        if k < 0 {
            [m[2], m[3], m[0], m[1]]
        } else {
            m
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nu_invariant_under_basis_change(mat in unimodular(), n in 1u32..4) {
        let e3 = WeierstrassModel::from_ints([1, 0, 0, 543, 10026]);
        let g3 = [pt((-13, 1), (35, 1)), pt((39, 1), (282, 1))];
        prop_assert_eq!(invariants_after(&e3, 3, &g3, mat, n), invariants_after(&e3, 3, &g3, [1, 0, 0, 1], n));
        let e2 = WeierstrassModel::from_ints([1, 1, 1, -55238, 4974531]);
        let g2 = [pt((37305, 64), (-6849551, 512)), pt((-75, 1), (2987, 1))];
        prop_assert_eq!(invariants_after(&e2, 2, &g2, mat, n), invariants_after(&e2, 2, &g2, [1, 0, 0, 1], n));
    }
}

#[test]
fn single_generator_of_full_order() {
    // rank-one input whose image generates Z/3^n
    let e3 = WeierstrassModel::from_ints([1, 0, 0, 543, 10026]);
    let tu = TateUniformization::new(&e3, &int(3), 16).unwrap();
    for n in 1..=4 {
        let li = local_image(&tu, &[pt((39, 1), (282, 1))], &[], n).unwrap();
        if li.image_order == 3u64.pow(n) {
            assert_eq!(li.nu, 0);
        } else {
            assert!(li.nu > 0);
        }
    }
}

#[test]
fn mu_at_auxiliary_split_prime() {
    // split multiplicative at 7 with ord_7(Delta) = 3
    let m = WeierstrassModel::from_ints([1, 0, 1, 4, -6]);
    let tu = TateUniformization::new(&m, &int(7), 12).unwrap();
    let tors = torsion_subgroup(&m).unwrap();
    assert_eq!(tors.order, 6);
    let seven = int(7);
    for p in tors.points.iter().filter(|p| !p.is_infinity()) {
        let (x, y) = p.coords().unwrap();
        let (x, y) = (x.to_integer(), y.to_integer());
        // singular mod 7 iff both partials vanish
        let fy: Integer = int(2) * &y + &x + int(1);
        let fx: Integer = int(3) * &x * &x + int(4) - &y;
        let singular = (&fy % &seven).is_zero() && (&fx % &seven).is_zero();
        for n in 1..=3 {
            let mu = ell_adic_mu(&tu, p, &int(2), n).unwrap();
            if !singular {
                assert_eq!(mu, n, "{p}");
            } else {
                assert!(mu <= n);
            }
        }
        let k = tu.unit_of_point(p).unwrap().valuation().unwrap();
        assert_eq!(k != 0, singular, "{p}: k = {k}");
    }
}
