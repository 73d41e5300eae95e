//! Integer relations and recognition of numbers as rational combinations
//! of known constants.

mod constants;
mod lll;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{bigfloat::pow10, fmt_rational, BigFloat, Rational};
use crate::error::{Error, Result};

pub use constants::{bernoulli_even, eval_constant, hurwitz_zeta, Constant, CATALOG};
pub use lll::{lll_reduce, Reduced};

/// Digits of precision needed per value for [`integer_relation`].
pub const DIGITS_PER_VALUE: u32 = 10;

fn tolerance(precision: u32) -> BigFloat {
    BigFloat::from_int(1, precision).div_int(&pow10(precision.saturating_sub(10)))
}

fn weighted_residual(values: &[BigFloat], rel: &[BigInt], precision: u32) -> (BigFloat, BigFloat) {
    let mut sum = BigFloat::zero(precision);
    let mut scale = BigFloat::from_int(1, precision);
    for (x, c) in values.iter().zip(rel) {
        let x = x.with_precision(precision);
        sum = &sum + &x.mul_int(c);
        scale = &scale + &x.abs().mul_int(&c.abs());
    }
    (sum.abs(), scale)
}

/// Find a small integer vector `v` with `Σ v_i x_i ≈ 0`, entries bounded by
/// `max_coeff`, normalized to coprime entries with the first nonzero one
/// positive. `precision` is the number of trusted digits in the inputs.
pub fn integer_relation(values: &[BigFloat], max_coeff: &BigInt, precision: u32) -> Result<Option<Vec<BigInt>>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two values".into()));
    }
    let need = DIGITS_PER_VALUE * n as u32;
    if precision < need {
        return Err(Error::PrecisionTooLow { have: precision, need });
    }
    let scale = precision - 10;
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut r: Vec<BigInt> = (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            r.push(x.with_precision(precision).round_scaled(scale));
            r
        })
        .collect();
    let reduced = lll_reduce(&rows)?;
    let tol = tolerance(precision);
    for row in &reduced.basis {
        let v = &row[..n];
        if v.iter().all(Zero::is_zero) || v.iter().any(|c| c.abs() > *max_coeff) {
            continue;
        }
        let (res, weight) = weighted_residual(values, v, precision);
        if res > &tol * &weight {
            continue;
        }
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut v: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
        if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        return Ok(Some(v));
    }
    Ok(None)
}

/// `Σ q_i c_i` over named constants, with the residual against the
/// recognized value.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicForm {
    pub terms: Vec<(Constant, Rational)>,
    pub residual: BigFloat,
}

impl SymbolicForm {
    pub fn coefficient(&self, c: &Constant) -> Rational {
        self.terms.iter().find(|(k, _)| k == c).map_or_else(Rational::zero, |(_, q)| q.clone())
    }

    pub fn value(&self, digits: u32) -> BigFloat {
        self.terms
            .iter()
            .fold(BigFloat::zero(digits), |acc, (c, q)| &acc + &c.eval(digits).mul_rational(q))
    }
}

impl fmt::Display for SymbolicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match c {
                Constant::One => f.write_str(&fmt_rational(&mag))?,
                _ if mag.is_one() => write!(f, "{c}")?,
                _ => write!(f, "{}*{c}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

/// Fewest digits `recognize_constant` can work with for a basis of `len`
/// constants.
pub fn min_recognition_digits(len: usize) -> u32 {
    (DIGITS_PER_VALUE * (len as u32 + 1) * 3).div_ceil(2)
}

/// Express `value` as a rational combination of `basis`. The relation is
/// discovered at two thirds of the value's precision and confirmed at the
/// full precision; `None` when no confirmed relation exists.
pub fn recognize_constant(value: &BigFloat, basis: &[Constant], max_coeff: &BigInt) -> Option<SymbolicForm> {
    let full = value.precision();
    let discover = full * 2 / 3;
    let m = basis.len() + 1;
    if basis.is_empty() || discover < DIGITS_PER_VALUE * m as u32 {
        return None;
    }
    let mut xs = vec![value.with_precision(discover)];
    xs.extend(basis.iter().map(|c| c.eval(discover)));
    let rel = integer_relation(&xs, max_coeff, discover).ok()??;
    if rel[0].is_zero() {
        return None;
    }
    let lead = Rational::from_integer(rel[0].clone());
    let terms: Vec<(Constant, Rational)> = basis
        .iter()
        .zip(&rel[1..])
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k.clone(), -Rational::from_integer(c.clone()) / &lead))
        .collect();
    let mut form = SymbolicForm { terms, residual: BigFloat::zero(full) };
    let residual = (value - &form.value(full)).abs();
    let bound = &tolerance(full) * &BigFloat::from_int(1, full).max(value.abs());
    if residual > bound {
        return None;
    }
    form.residual = residual;
    Some(form)
}
