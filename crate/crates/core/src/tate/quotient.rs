use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{BaseField, TateParameter, TateUniformization};
use crate::arith::{mod_inverse, Integer, Rational};
use crate::curve::Point;
use crate::error::{Error, Result};
use crate::padic::{LocalElem, Omega, Padic};

/// Abstract type of `H / <H^(p^n), q>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    /// `Z/p^n`.
    Cyclic { p: u64, n: u32 },
    /// `Z/2 x Z/2^n`.
    TwoTimesCyclic { n: u32 },
}

impl GroupDescriptor {
    pub fn order(self) -> u64 {
        match self {
            GroupDescriptor::Cyclic { p, n } => p.pow(n),
            GroupDescriptor::TwoTimesCyclic { n } => 2u64.pow(n + 1),
        }
    }
}

/// `(-1)^t g^e` in the quotient; `t = 0` for odd `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientClass {
    pub t: u8,
    pub e: u64,
}

impl QuotientClass {
    pub fn zero() -> Self {
        QuotientClass { t: 0, e: 0 }
    }

    fn add(self, o: QuotientClass, pn: u64) -> QuotientClass {
        QuotientClass { t: (self.t + o.t) % 2, e: (self.e + o.e) % pn }
    }

    /// `ord_p` of the cyclic component, capped at `n` (so `e = 0` gives `n`).
    pub fn depth(self, p: u64, n: u32) -> u32 {
        if self.e == 0 {
            return n;
        }
        let mut e = self.e;
        let mut k = 0;
        while e % p == 0 && k < n {
            e /= p;
            k += 1;
        }
        k
    }
}

/// `H / <H^(p^n), q>` with explicit generators.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub p: Integer,
    pub n: u32,
    pub field: BaseField,
    pub descriptor: GroupDescriptor,
    /// `1+p` or `exp(p sqrt D)` for odd `p`; `(-1, 5)` or `(-1, eps^2)` for `p = 2`.
    pub generators: Vec<LocalElem>,
    /// Residues of the cyclic generator mod `p^k`, `k = n+1` (odd) or `n+2`.
    gen_res: (Integer, Integer),
    modulus: Integer,
}

fn pu64(p: &Integer) -> u64 {
    p.to_u64().expect("prime fits in u64")
}

fn exp_p_sqrt_d(p: &Integer, d: i64, k: u32) -> (Integer, Integer) {
    // exp(p sqrt D) = sum (p sqrt D)^i / i!, terms have valuation >= i/2.
    let m = num_traits::pow(p.clone(), k as usize);
    let (mut a, mut b) = (Rational::zero(), Rational::zero());
    let mut term = Rational::one();
    let pd = Rational::from_integer(p.clone());
    for i in 0..(2 * k as i64 + 4) {
        if i > 0 {
            term = term * &pd / Rational::from_integer(Integer::from(i));
        }
        let dpow = Rational::from_integer(num_traits::pow(Integer::from(d), (i / 2) as usize));
        if i % 2 == 0 {
            a += &term * dpow;
        } else {
            b += &term * dpow;
        }
    }
    let red = |x: &Rational| {
        (x.numer() * mod_inverse(x.denom(), &m).expect("p-integral")).mod_floor(&m)
    };
    (red(&a), red(&b))
}

/// Multiplication of residues `a + b w` modulo `m`.
fn rmul(x: &(Integer, Integer), y: &(Integer, Integer), w: Option<Omega>, m: &Integer) -> (Integer, Integer) {
    match w {
        None => ((&x.0 * &y.0).mod_floor(m), Integer::zero()),
        Some(w) => {
            let bd = &x.1 * &y.1;
            let a = &x.0 * &y.0 + &bd * w.n;
            let b = &x.0 * &y.1 + &x.1 * &y.0 + &bd * w.t;
            (a.mod_floor(m), b.mod_floor(m))
        }
    }
}

fn rpow(x: &(Integer, Integer), mut e: u64, w: Option<Omega>, m: &Integer) -> (Integer, Integer) {
    let mut acc = (Integer::one(), Integer::zero());
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = rmul(&acc, &base, w, m);
        }
        e >>= 1;
        if e > 0 {
            base = rmul(&base, &base, w, m);
        }
    }
    acc
}

fn rinv(x: &(Integer, Integer), w: Option<Omega>, m: &Integer) -> Option<(Integer, Integer)> {
    match w {
        None => Some((mod_inverse(&x.0, m)?, Integer::zero())),
        Some(w) => {
            let conj = (&x.0 + &x.1 * w.t, -&x.1);
            let norm = rmul(x, &conj, Some(w), m).0;
            let ni = mod_inverse(&norm, m)?;
            Some(((conj.0 * &ni).mod_floor(m), (conj.1 * &ni).mod_floor(m)))
        }
    }
}

fn is_one(x: &(Integer, Integer), m: &Integer) -> bool {
    x.0.mod_floor(m).is_one() && x.1.mod_floor(m).is_zero()
}

/// The quotient for `p`, `n` and the field of `q`.
pub fn quotient_structure(p: &Integer, n: u32, q: &TateParameter) -> Result<QuotientGroup> {
    let vq = q.ord_q();
    if (Integer::from(vq) % p).is_zero() {
        return Err(Error::Hypothesis(format!("{p} divides ord_p(q) = {vq}")));
    }
    if n == 0 {
        return Err(Error::Contract("level n must be at least 1".into()));
    }
    let two = p == &Integer::from(2);
    let k = if two { n + 2 } else { n + 1 };
    let modulus = num_traits::pow(p.clone(), k as usize);
    let prec = k + 4;
    let field = q.field;
    let om = field.omega();
    let descriptor = if two {
        GroupDescriptor::TwoTimesCyclic { n }
    } else {
        GroupDescriptor::Cyclic { p: pu64(p), n }
    };
    let (generators, gen_res) = match (two, om) {
        (false, None) => {
            let g = p + Integer::one();
            (vec![LocalElem::from_padic(Padic::from_integer(&g, p, prec), None)], (g, Integer::zero()))
        }
        (false, Some(w)) => {
            let r = exp_p_sqrt_d(p, w.radicand(), k);
            let e = LocalElem::new(Padic::from_integer(&r.0, p, k), Padic::from_integer(&r.1, p, k), w);
            (vec![e], r)
        }
        (true, None) => (
            vec![LocalElem::from_i64(-1, p, prec, None), LocalElem::from_i64(5, p, prec, None)],
            (Integer::from(5), Integer::zero()),
        ),
        (true, Some(w)) => {
            let eps = (Integer::from(-1), Integer::one());
            let e2 = rmul(&eps, &eps, Some(w), &modulus);
            let g = LocalElem::new(Padic::from_integer(&e2.0, p, k), Padic::from_integer(&e2.1, p, k), w);
            (vec![LocalElem::from_i64(-1, p, prec, Some(w)), g], e2)
        }
    };
    Ok(QuotientGroup { p: p.clone(), n, field, descriptor, generators, gen_res, modulus })
}

impl QuotientGroup {
    fn pn(&self) -> u64 {
        pu64(&self.p).pow(self.n)
    }

    fn two(&self) -> bool {
        self.p == Integer::from(2)
    }

    /// Class of a `p`-adic unit (split) or a norm-one unit (nonsplit),
    /// given as a residue modulo `p^k`.
    pub fn class_of_unit(&self, z: &(Integer, Integer)) -> Result<QuotientClass> {
        let m = &self.modulus;
        let om = self.field.omega();
        let pn = self.pn();
        let ginv = rinv(&self.gen_res, om, m).expect("generator is a unit");
        if rinv(z, om, m).is_none() {
            return Err(Error::Contract("class_of_unit needs a unit".into()));
        }
        let p = pu64(&self.p);
        let kill = match (self.two(), om) {
            (false, None) => p - 1,
            (false, Some(_)) => p * p - 1,
            (true, None) => 1,
            (true, Some(_)) => 3,
        };
        let mut found = Vec::new();
        let signs: &[u8] = if self.two() { &[0, 1] } else { &[0] };
        for &t in signs {
            let mut w = if t == 1 { ((-&z.0).mod_floor(m), (-&z.1).mod_floor(m)) } else { z.clone() };
            for e in 0..pn {
                if is_one(&rpow(&w, kill, om, m), m) {
                    found.push(QuotientClass { t, e });
                }
                w = rmul(&w, &ginv, om, m);
            }
        }
        match found.as_slice() {
            [c] => Ok(*c),
            [] => Err(Error::Contract(format!("({}, {}) is not in the unit group H", z.0, z.1))),
            _ => Err(Error::Precision(format!("ambiguous discrete log: {} candidates", found.len()))),
        }
    }

    /// Class of an element `u` of `H`, with `q` the Tate parameter.
    pub fn class_of(&self, u: &LocalElem, q: &Padic) -> Result<QuotientClass> {
        let p = &self.p;
        let pn = self.pn();
        let om = self.field.omega();
        let vq = q.valuation().expect("q nonzero");
        let v = u.valuation().ok_or_else(|| Error::Precision("unit lost all digits".into()))?;
        let k = if self.two() { self.n + 2 } else { self.n + 1 } as i64;
        let (z, halve) = match om {
            None => {
                // u q^-c has valuation divisible by p^n.
                let vqi = mod_inverse(&Integer::from(vq), &Integer::from(pn)).expect("p does not divide ord q");
                let c = (Integer::from(v) * vqi).mod_floor(&Integer::from(pn));
                let c = c.to_i64().expect("small");
                let z = u / &LocalElem::from_padic(q.pow(c), None);
                (z, false)
            }
            Some(_) if self.two() => {
                if v % vq != 0 {
                    return Err(Error::Contract("norm of u is not a power of q".into()));
                }
                (u / &LocalElem::from_padic(q.pow(v / vq), om), false)
            }
            Some(_) => {
                let u2 = u * u;
                let a = 2 * v / vq;
                if (2 * v) % vq != 0 {
                    return Err(Error::Contract("norm of u is not a power of q".into()));
                }
                (&u2 / &LocalElem::from_padic(q.pow(a), om), true)
            }
        };
        let vz = z.valuation().ok_or_else(|| Error::Precision("unit lost all digits".into()))?;
        let unit = if vz == 0 {
            z
        } else {
            let pv = Padic::from_integer(p, p, k as u32 + 4).pow(vz);
            &z / &LocalElem::from_padic(pv, om)
        };
        let res = unit
            .residue(k)
            .ok_or_else(|| Error::Precision(format!("unit known to fewer than {k} digits")))?;
        let mut cls = self.class_of_unit(&res)?;
        if halve {
            let h = mod_inverse(&Integer::from(2), &Integer::from(pn)).expect("odd p").to_u64().expect("small");
            cls.e = ((cls.e as u128 * h as u128) % pn as u128) as u64;
        }
        Ok(cls)
    }

    /// The subgroup generated by `classes`, as a sorted list.
    pub fn span(&self, classes: &[QuotientClass]) -> Vec<QuotientClass> {
        let pn = self.pn();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(QuotientClass::zero());
        let mut frontier = vec![QuotientClass::zero()];
        while let Some(x) = frontier.pop() {
            for c in classes {
                let y = x.add(*c, pn);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Number of elements of order at most 2 in the span.
    pub fn two_torsion_count(&self, classes: &[QuotientClass]) -> usize {
        let pn = self.pn();
        self.span(classes).into_iter().filter(|c| c.add(*c, pn) == QuotientClass::zero()).count()
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn mul_res(&self, x: &(Integer, Integer), y: &(Integer, Integer)) -> (Integer, Integer) {
        rmul(x, y, self.field.omega(), &self.modulus)
    }

    pub fn pow_res(&self, x: &(Integer, Integer), e: u64) -> (Integer, Integer) {
        rpow(x, e, self.field.omega(), &self.modulus)
    }

    pub fn generator_residue(&self) -> &(Integer, Integer) {
        &self.gen_res
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalImageData {
    pub n: u32,
    pub classes: Vec<QuotientClass>,
    pub torsion_classes: Vec<QuotientClass>,
    /// Generator whose class spans the others after renumbering.
    pub distinguished: usize,
    pub nu: u32,
    /// `nu < n`, so the value does not change for larger `n`.
    pub nu_stable: bool,
    /// `p = 2` only.
    pub r2n: Option<u8>,
    pub delta2: Option<u8>,
    pub image_order: u64,
}

/// Classes of the generators (and torsion points) in `H / <H^(p^n), q>`.
pub fn local_image(
    tu: &TateUniformization,
    generators: &[Point],
    torsion: &[Point],
    n: u32,
) -> Result<LocalImageData> {
    let group = quotient_structure(tu.prime(), n, &tu.param)?;
    let p = pu64(tu.prime());
    let class = |pt: &Point| -> Result<QuotientClass> {
        if pt.is_infinity() {
            return Ok(QuotientClass::zero());
        }
        let u = tu.unit_of_point(pt)?;
        group.class_of(&u, tu.q())
    };
    let classes = generators.iter().map(class).collect::<Result<Vec<_>>>()?;
    let torsion_classes = torsion.iter().map(class).collect::<Result<Vec<_>>>()?;
    let depth = |c: &QuotientClass| c.depth(p, n);
    let distinguished = (0..classes.len()).min_by_key(|&i| (depth(&classes[i]), i)).unwrap_or(0);
    let nu = classes.get(distinguished).map_or(n, depth);
    let mut all = classes.clone();
    all.extend(torsion_classes.iter().copied());
    let (r2n, delta2) = if p == 2 {
        let r = if group.two_torsion_count(&all) > 2 { 2 } else { 1 };
        (Some(r), Some(if n == 1 && r == 1 { 2 } else { 0 }))
    } else {
        (None, None)
    };
    let image_order = group.span(&all).len() as u64;
    Ok(LocalImageData {
        n,
        classes,
        torsion_classes,
        distinguished,
        nu,
        nu_stable: nu < n,
        r2n,
        delta2,
        image_order,
    })
}

