//! Tate-curve uniformisation at a prime of multiplicative reduction and
//! the local image of Mordell-Weil generators in `H / <H^(p^n), q>`.

mod labels;
mod quotient;
pub mod series;
mod uniformize;



use crate::arith::{ord_rat, Integer, Rational, Valuation};
use crate::error::{contract, domain, Result};
use crate::padic::{Omega, Padic};
use crate::reduction::{LocalReductionData, ReductionClass};

pub use labels::{ell_adic_mu, local_field_labels, square_class_label, LocalFieldLabels};
pub use quotient::{
    local_image, quotient_structure, GroupDescriptor, LocalImageData, QuotientClass, QuotientGroup,
};
pub use uniformize::{tate_forward, tate_inverse, TateUniformization};

/// `M = Q_p` (split) or its unramified quadratic extension (nonsplit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Split,
    Unramified(Omega),
}

impl BaseField {
    pub fn omega(self) -> Option<Omega> {
        match self {
            BaseField::Split => None,
            BaseField::Unramified(w) => Some(w),
        }
    }

    pub fn is_split(self) -> bool {
        matches!(self, BaseField::Split)
    }

    pub fn label(self) -> String {
        match self {
            BaseField::Split => "Q_p".into(),
            BaseField::Unramified(w) => format!("Q_p(sqrt({}))", w.radicand()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateParameter {
    pub q: Padic,
    pub field: BaseField,
}

impl TateParameter {
    pub fn prime(&self) -> &Integer {
        self.q.prime()
    }

    pub fn ord_q(&self) -> i64 {
        self.q.valuation().expect("q is nonzero")
    }
}

/// Default guard digits beyond the level `n`.
pub const GUARD_DIGITS: u32 = 8;

/// Relative precision used internally for a target of `digits`, allowing
/// for cancellation of up to `2 ord(q)` digits near the node.
pub(crate) fn working_precision(digits: u32, ord_q: i64) -> u32 {
    digits + 2 * ord_q as u32 + 4
}

/// Solves `j(q) = j` for `q` by the fixed point `q = 1/(j - R(q))`,
/// `R(q) = j(q) - 1/q`.
pub fn tate_parameter_q(j: &Rational, p: &Integer, prec: u32) -> Result<Padic> {
    let vj = match ord_rat(j, p) {
        Valuation::Finite(v) if v < 0 => v,
        _ => return domain(format!("ord_{p}(j) >= 0: not multiplicative at {p}")),
    };
    let vq = -vj;
    let work = prec + 4;
    let terms = series::terms_for(work as i64 + vq, vq);
    let coeffs = series::q_times_j(terms + 2);
    let r: Vec<Integer> = coeffs[1..].to_vec();
    let jp = Padic::from_rational(j, p, work);
    let mut q = jp.inv();
    for _ in 0..(work as usize + 4) {
        let next = (&jp - &series::eval(&r, &q, work)).inv();
        let done = next.agrees_to(&q, vq + work as i64);
        q = next;
        if done {
            break;
        }
    }
    Ok(q.truncate(vq + prec as i64))
}

/// `j(q) = 1/q + 744 + 196884 q + ...` evaluated p-adically.
pub fn j_of_q(q: &Padic, prec: u32) -> Padic {
    let vq = q.valuation().expect("nonzero q");
    let terms = series::terms_for(prec as i64 + vq, vq);
    let c = series::q_times_j(terms + 2);
    &series::eval(&c, q, prec) / q
}

/// Tate parameter together with the field over which `E = E_q`.
pub fn tate_parameter(data: &LocalReductionData, prec: u32) -> Result<TateParameter> {
    let field = base_field(data)?;
    let inv = data.minimal_model.invariants()?;
    let q = tate_parameter_q(&inv.j, &data.prime, prec)?;
    Ok(TateParameter { q, field })
}

/// `Q_p` when split, the unramified quadratic extension when nonsplit.
pub fn base_field(data: &LocalReductionData) -> Result<BaseField> {
    match data.class {
        ReductionClass::SplitMultiplicative => Ok(BaseField::Split),
        ReductionClass::NonsplitMultiplicative => Ok(BaseField::Unramified(Omega::for_prime(&data.prime))),
        c => contract(format!("reduction at {} is {}, not multiplicative", data.prime, c.label())),
    }
}
