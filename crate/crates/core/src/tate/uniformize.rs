
use super::{series, tate_parameter_q, working_precision, BaseField, TateParameter};
use crate::arith::{ord_rat, rat, Integer, Rational};
use crate::curve::{Point, WeierstrassModel};
use crate::error::{domain, Error, Result};
use crate::padic::{LocalElem, Omega, Padic};

/// The isomorphism `E -> E_q` over `M` for a fixed model of `E`.
#[derive(Clone, Debug)]
pub struct TateUniformization {
    pub param: TateParameter,
    /// Digits the caller needs in each unit `u`.
    pub digits: u32,
    work: u32,
    terms: usize,
    model: WeierstrassModel,
    b2: Rational,
    gamma: Padic,
    /// Scaling `u` with `u^2 = gamma`, in `M`.
    scale: LocalElem,
    a4q: Padic,
}

fn padic_of(x: &Rational, p: &Integer, prec: u32) -> Padic {
    Padic::from_rational(x, p, prec)
}

impl TateUniformization {
    /// Sets up `E -> E_q` at `p` for any model (not necessarily minimal)
    /// with multiplicative reduction at `p`.
    pub fn new(model: &WeierstrassModel, p: &Integer, digits: u32) -> Result<Self> {
        let inv = model.invariants()?;
        let vj = ord_rat(&inv.j, p).finite().unwrap_or(0);
        if vj >= 0 {
            return domain(format!("ord_{p}(j) >= 0: not multiplicative at {p}"));
        }
        let vq = -vj;
        let work = working_precision(digits, vq);
        let q = tate_parameter_q(&inv.j, p, work)?;
        let terms = series::terms_for(2 * work as i64 + vq, vq);
        let c4q = series::eval(&series::c4(terms), &q, work);
        let c6q = series::eval(&series::c6(terms), &q, work);
        let gamma = &(&padic_of(&inv.c6, p, work) * &c4q) / &(&padic_of(&inv.c4, p, work) * &c6q);
        let (field, scale) = match gamma.sqrt() {
            Some(u) => (BaseField::Split, LocalElem::from_padic(u, None)),
            None => {
                let w = Omega::for_prime(p);
                let d = Padic::from_i64(w.radicand(), p, work);
                let s = (&gamma / &d).sqrt().ok_or_else(|| {
                    Error::Precision(format!("gamma = {gamma} is not a square up to an unramified twist"))
                })?;
                let root_d = LocalElem::sqrt_radicand(p, work, w);
                (BaseField::Unramified(w), root_d.scale(&s))
            }
        };
        let a4q = series::eval(&series::a4(terms), &q, work);
        Ok(TateUniformization {
            param: TateParameter { q, field },
            digits,
            work,
            terms,
            model: model.clone(),
            b2: inv.b2,
            gamma,
            scale,
            a4q,
        })
    }

    pub fn prime(&self) -> &Integer {
        self.param.q.prime()
    }

    pub fn q(&self) -> &Padic {
        &self.param.q
    }

    pub fn field(&self) -> BaseField {
        self.param.field
    }

    pub fn omega(&self) -> Option<Omega> {
        self.param.field.omega()
    }

    fn elem(&self, x: &Rational) -> LocalElem {
        LocalElem::from_rational(x, self.prime(), self.work, self.omega())
    }

    /// Image of a rational point of `E` on `E_q`.
    pub fn to_tate_curve(&self, pt: &Point) -> Result<(LocalElem, LocalElem)> {
        let Some((x, y)) = pt.coords() else {
            return domain("the identity has no Tate coordinate");
        };
        let m = &self.model;
        let big_x = rat(36, 1) * x + rat(3, 1) * &self.b2;
        let big_y = rat(108, 1) * (rat(2, 1) * y + &m.a1 * x + &m.a3);
        Ok(self.short_to_tate(&self.elem(&big_x), &self.elem(&big_y)))
    }

    fn short_to_tate(&self, big_x: &LocalElem, big_y: &LocalElem) -> (LocalElem, LocalElem) {
        let g = LocalElem::from_padic(self.gamma.clone(), self.omega());
        let xq = big_x / &g;
        let yq = big_y / &(&g * &self.scale);
        let p = self.prime();
        let w = self.work;
        let three = LocalElem::from_i64(3, p, w, self.omega());
        let x = (&xq - &three).scale(&Padic::from_i64(36, p, w).inv());
        let y = (&yq.scale(&Padic::from_i64(108, p, w).inv()) - &x).scale(&Padic::from_i64(2, p, w).inv());
        (x, y)
    }

    /// `X(u), Y(u)` on `E_q`.
    pub fn forward(&self, u: &LocalElem) -> Result<(LocalElem, LocalElem)> {
        let u = self.normalize(u)?;
        if self.is_identity(&u) {
            return domain("u lies in q^Z: the identity");
        }
        Ok(series::tate_xy(&u, self.q(), self.terms))
    }

    fn is_identity(&self, u: &LocalElem) -> bool {
        let one = LocalElem::from_i64(1, self.prime(), self.work, self.omega());
        (u - &one).valuation().map_or(true, |v| v >= self.work as i64 - 2)
    }

    /// Moves `u` into `0 <= ord(u) < ord(q)`.
    pub fn normalize(&self, u: &LocalElem) -> Result<LocalElem> {
        let v = u
            .valuation()
            .ok_or_else(|| Error::Precision("unit indistinguishable from zero".into()))?;
        let vq = self.param.ord_q();
        let k = v.div_euclid(vq);
        if k == 0 {
            return Ok(u.clone());
        }
        let qk = LocalElem::from_padic(self.q().pow(k), self.omega());
        Ok(u / &qk)
    }

    /// Solves `(X(u), Y(u)) = (x, y)` for `u` in the fundamental domain.
    pub fn inverse(&self, x: &LocalElem, y: &LocalElem) -> Result<LocalElem> {
        let p = self.prime();
        let om = self.omega();
        let qe = LocalElem::from_padic(self.q().clone(), om);
        let mut starts = Vec::new();
        let xy = x + y;
        if !xy.is_zero() {
            starts.push(y / &xy);
            starts.push(xy.clone());
        }
        if !x.is_zero() {
            starts.push(x.clone());
            starts.push(&qe / x);
        }
        if !y.is_zero() {
            starts.push(-&(&qe / y));
        }
        starts.push(LocalElem::from_i64(-1, p, self.work, om));
        let mut tried = Vec::new();
        for s in starts {
            if let Some(u) = self.newton(x, y, s) {
                if self.verify(&u, x, y) {
                    return Ok(u);
                }
                tried.push(u);
            }
        }
        // The X-equation may have landed on 1/u; flip before giving up.
        for u in tried {
            let flipped = self.normalize(&u.inv())?;
            if self.verify(&flipped, x, y) {
                return Ok(flipped);
            }
        }
        Err(Error::Precision(format!(
            "Tate inverse did not converge at {} digits",
            self.work
        )))
    }

    fn verify(&self, u: &LocalElem, x: &LocalElem, y: &LocalElem) -> bool {
        let Ok((xu, yu)) = self.forward(u) else { return false };
        let need = self.digits as i64;
        let ok = |a: &LocalElem, b: &LocalElem| {
            let base = b.valuation().unwrap_or(0).min(0);
            a.agrees_to(b, base + need)
        };
        ok(&xu, x) && ok(&yu, y) && u.abs_prec() >= u.valuation().unwrap_or(0) + need
    }

    fn newton(&self, x: &LocalElem, y: &LocalElem, start: LocalElem) -> Option<LocalElem> {
        let p = self.prime();
        let om = self.omega();
        let w = self.work;
        let one = LocalElem::from_i64(1, p, w, om);
        let a4 = LocalElem::from_padic(self.a4q.clone(), om);
        let mut u = self.normalize(&start).ok()?;
        for _ in 0..(2 * w as usize + 20) {
            if u.is_zero() || self.is_identity(&u) {
                return None;
            }
            let (xu, yu) = series::tate_xy(&u, self.q(), self.terms);
            let dx = &(&yu + &yu) + &xu;
            let dy = &(&(&xu * &xu).scale(&Padic::from_i64(3, p, w)) + &a4) - &yu;
            let vdx = dx.valuation().unwrap_or(i64::MAX);
            let vdy = dy.valuation().unwrap_or(i64::MAX);
            let step = if vdx <= vdy {
                if dx.is_zero() {
                    return None;
                }
                &(&xu - x) / &dx
            } else {
                &(&yu - y) / &dy
            };
            let next = self.normalize(&(&u * &(&one - &step))).ok()?;
            let settled = step.is_zero() || step.valuation().map_or(true, |v| v >= w as i64);
            u = next;
            if settled {
                return Some(u);
            }
        }
        None
    }

    /// `u` with `phi(P) = (X(u), Y(u))`.
    pub fn unit_of_point(&self, pt: &Point) -> Result<LocalElem> {
        let (x, y) = self.to_tate_curve(pt)?;
        self.inverse(&x, &y)
    }

    /// Forward map on `E_q` followed by `phi^-1`, returning coordinates on `E`.
    pub fn point_of_unit(&self, u: &LocalElem) -> Result<(LocalElem, LocalElem)> {
        let (xq, yq) = self.forward(u)?;
        let p = self.prime();
        let w = self.work;
        let om = self.omega();
        let g = LocalElem::from_padic(self.gamma.clone(), om);
        let big_x = &(&xq.scale(&Padic::from_i64(36, p, w)) + &LocalElem::from_i64(3, p, w, om)) * &g;
        let big_y = &(&(&yq + &yq) + &xq).scale(&Padic::from_i64(108, p, w)) * &(&g * &self.scale);
        let m = &self.model;
        let x = (&big_x - &self.elem(&(rat(3, 1) * &self.b2))).scale(&Padic::from_i64(36, p, w).inv());
        let y = (&(&big_y.scale(&Padic::from_i64(108, p, w).inv()) - &x.scale(&padic_of(&m.a1, p, w)))
            - &self.elem(&m.a3))
            .scale(&Padic::from_i64(2, p, w).inv());
        Ok((x, y))
    }

    pub fn working_digits(&self) -> u32 {
        self.work
    }
}

/// `(X(u), Y(u))` on `E_q` for a Tate parameter `q`.
pub fn tate_forward(u: &LocalElem, q: &TateParameter, digits: u32) -> Result<(LocalElem, LocalElem)> {
    let vq = q.ord_q();
    let terms = series::terms_for(2 * digits as i64 + vq, vq);
    let v = u.valuation().ok_or_else(|| Error::Domain("u = 0".into()))?;
    let k = v.div_euclid(vq);
    let u = if k == 0 { u.clone() } else { u / &LocalElem::from_padic(q.q.pow(k), u.omega) };
    let one = LocalElem::from_i64(1, q.prime(), digits, u.omega);
    if (&u - &one).valuation().map_or(true, |v| v >= digits as i64) {
        return domain("u lies in q^Z: the identity");
    }
    Ok(series::tate_xy(&u, &q.q, terms))
}

/// Tate unit of a point of `E_q`, given as coordinates on `E_q` itself.
pub fn tate_inverse(x: &LocalElem, y: &LocalElem, q: &TateParameter, digits: u32) -> Result<LocalElem> {
    let tu = TateUniformization::for_tate_curve(q, digits)?;
    tu.inverse(x, y)
}

impl TateUniformization {
    /// The identity uniformisation of `E_q` itself.
    fn for_tate_curve(q: &TateParameter, digits: u32) -> Result<Self> {
        let vq = q.ord_q();
        let work = q.q.rel_prec().max(digits);
        let terms = series::terms_for(2 * work as i64 + vq, vq);
        let p = q.prime();
        let a4q = series::eval(&series::a4(terms), &q.q, work);
        let model = WeierstrassModel::new(rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1));
        Ok(TateUniformization {
            param: q.clone(),
            digits,
            work,
            terms,
            model,
            b2: rat(1, 1),
            gamma: Padic::from_i64(1, p, work),
            scale: LocalElem::from_i64(1, p, work, q.field.omega()),
            a4q,
        })
    }
}
