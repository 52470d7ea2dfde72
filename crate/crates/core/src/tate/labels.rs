use num_integer::Integer as _;
use num_traits::ToPrimitive;

use super::TateUniformization;
use crate::arith::Integer;
use crate::curve::Point;
use crate::error::{contract, Error, Result};
use crate::padic::{LocalElem, Padic};

/// Square-class data at `p = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldLabels {
    /// `d` with `Q_2(sqrt q) = Q_2(sqrt d)`; `1` when `q` is a square.
    pub q_class: i64,
    pub k1_completion: String,
    /// Square classes `d` of the generator units (split case only).
    pub generator_classes: Vec<i64>,
    /// Whether `zeta_4` lies in `M L_1 = M(sqrt q, sqrt u_j)`.
    pub zeta4_in_l1: bool,
}

/// Representative `d` of the class `2^v * unit` in `Q_2^* / Q_2^*2`.
pub fn square_class_label(v: i64, unit_mod8: u32) -> i64 {
    let base = match unit_mod8 % 8 {
        1 => 1,
        3 => 3,
        5 => -3,
        7 => -1,
        _ => panic!("not a 2-adic unit"),
    };
    if v.rem_euclid(2) == 0 {
        base
    } else {
        match base {
            1 => 2,
            3 => 6,
            -3 => -6,
            _ => -2,
        }
    }
}

fn field_name(d: i64) -> String {
    if d == 1 {
        "Q_2".into()
    } else {
        format!("Q_2(sqrt({d}))")
    }
}

fn class_of_padic(x: &Padic) -> Result<i64> {
    let v = x.valuation().ok_or_else(|| Error::Precision("zero has no square class".into()))?;
    if x.rel_prec() < 3 {
        return Err(Error::Precision("need three digits for a 2-adic square class".into()));
    }
    let u = (x.unit() % 8u32).to_u32().expect("small");
    Ok(square_class_label(v, u))
}

/// Whether a nonzero element of `Q_2` or `Q_2(sqrt 5)` is a square.
fn is_square_2adic(x: &LocalElem) -> Result<bool> {
    let v = x.valuation().ok_or_else(|| Error::Precision("zero".into()))?;
    if v.rem_euclid(2) != 0 {
        return Ok(false);
    }
    let p = x.prime().clone();
    let two_v = Padic::from_integer(&Integer::from(2), &p, 8).pow(v);
    let unit = x / &LocalElem::from_padic(two_v, x.omega);
    let (a, b) = unit
        .residue(3)
        .ok_or_else(|| Error::Precision("need three digits for a square test".into()))?;
    let Some(w) = x.omega else {
        return Ok((a % 8u32).to_u32() == Some(1));
    };
    // Units of O/8 that are squares, with O = Z_2[w], w^2 = w + 1.
    for c in 0..8i64 {
        for d in 0..8i64 {
            let sa = (c * c + w.n * d * d).rem_euclid(8);
            let sb = (2 * c * d + w.t * d * d).rem_euclid(8);
            if Integer::from(sa) == a && Integer::from(sb) == b {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `Q_2(sqrt q)` and the `zeta_4` test for `L_1`.
pub fn local_field_labels(
    tu: &TateUniformization,
    generators: &[Point],
    torsion: &[Point],
    n: u32,
) -> Result<LocalFieldLabels> {
    if tu.prime() != &Integer::from(2) || !(1..=2).contains(&n) {
        return Err(Error::Capability(format!("field labels need p = 2 and n <= 2, got p = {}, n = {n}", tu.prime())));
    }
    let q_class = class_of_padic(tu.q())?;
    let om = tu.omega();
    let mut units = Vec::new();
    for pt in generators.iter().chain(torsion) {
        if !pt.is_infinity() {
            units.push(tu.unit_of_point(pt)?);
        }
    }
    let generator_classes = if om.is_none() {
        units[..generators.len().min(units.len())]
            .iter()
            .map(|u| class_of_padic(&u.a))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let mut span = vec![LocalElem::from_padic(tu.q().clone(), om)];
    span.extend(units);
    let minus_one = LocalElem::from_i64(-1, tu.prime(), 8, om);
    let mut zeta4 = false;
    for mask in 0u32..(1 << span.len()) {
        let mut prod = minus_one.clone();
        for (i, s) in span.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = &prod * s;
            }
        }
        if is_square_2adic(&prod)? {
            zeta4 = true;
            break;
        }
    }
    Ok(LocalFieldLabels {
        q_class,
        k1_completion: field_name(q_class),
        generator_classes,
        zeta4_in_l1: zeta4,
    })
}

/// `min(n, ord_p(k))`, `k = ord_ell(u(P))` in `[0, ord_ell(q))`, at a split
/// multiplicative `ell`. `k = 0` gives `n`.
pub fn ell_adic_mu(tu: &TateUniformization, pt: &Point, p: &Integer, n: u32) -> Result<u32> {
    if !tu.field().is_split() {
        return contract(format!("reduction at {} is not split multiplicative", tu.prime()));
    }
    let u = tu.unit_of_point(pt)?;
    let k = u.valuation().ok_or_else(|| Error::Precision("unit lost".into()))?;
    if k == 0 {
        return Ok(n);
    }
    let mut k = Integer::from(k);
    let mut mu = 0;
    while mu < n && k.is_multiple_of(p) {
        k /= p;
        mu += 1;
    }
    Ok(mu)
}
