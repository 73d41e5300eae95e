//! Linear difference equations with polynomial coefficients,
//! `c_d(n) u(n+d) + ... + c_1(n) u(n+1) + c_0(n) u(n) = 0`.

mod casoratian;
mod charpoly;
mod guess;
pub(crate) mod modp;
mod solution;

pub use casoratian::{casoratian, casoratian_check, casoratian_product, secondary_from_primary};
pub use charpoly::{
    characteristic_polynomial, characteristic_roots, classify_ratio, poincare_classify, CharRoots,
    Classification,
};
pub use guess::{guess_recurrence, required_terms};
pub use solution::{InitialConditions, SolutionTable};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, parse_int_poly, Poly, RatFunc, Rational};
use crate::error::{Error, Result};

/// Coefficients are kept integral and primitive (joint content 1) with the
/// leading coefficient of `c_d` positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<Poly>,
    offset: i64,
}

fn normalize(coeffs: Vec<Poly>) -> Vec<Poly> {
    let all: Vec<Rational> = coeffs.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let l = crate::arith::rational::lcm_denominators(&all);
    let scaled: Vec<Poly> = coeffs.iter().map(|p| p.scale(&Rational::from_integer(l.clone()))).collect();
    let all: Vec<Rational> = scaled.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let mut g = crate::arith::rational::gcd_numerators(&all).abs();
    if g.is_zero() {
        g = BigInt::one();
    }
    if scaled.last().is_some_and(|p| p.leading().is_negative()) {
        g = -g;
    }
    let g = Rational::from_integer(g).recip();
    scaled.iter().map(|p| p.scale(&g)).collect()
}

impl Recurrence {
    /// `coeffs[k]` multiplies `u(n+k)`; the relation is asserted for `n >= offset`.
    pub fn new(coeffs: Vec<Poly>, offset: i64) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter("recurrence order must be at least 1".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidParameter("leading coefficient is the zero polynomial".into()));
        }
        Ok(Recurrence { coeffs: normalize(coeffs), offset })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn with_offset(&self, offset: i64) -> Self {
        Recurrence { coeffs: self.coeffs.clone(), offset }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn leading(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    /// `c_0, ..., c_d` evaluated at `n`.
    pub fn coeffs_at(&self, n: i64) -> Vec<Rational> {
        let n = int(n);
        self.coeffs.iter().map(|c| c.eval(&n)).collect()
    }

    /// `sum_k c_k(n) u(n+k)` for a window `u(n), ..., u(n+d)`.
    pub fn residual(&self, n: i64, window: &[Rational]) -> Rational {
        debug_assert_eq!(window.len(), self.coeffs.len());
        self.coeffs_at(n).iter().zip(window).fold(Rational::zero(), |acc, (c, u)| acc + c * u)
    }

    /// The monic view `p_k(n) = c_k(n) / c_d(n)`.
    pub fn normalized_coeff(&self, k: usize) -> RatFunc {
        RatFunc::new(self.coeffs[k].clone(), self.leading().clone())
    }

    /// Whether both relations agree up to a nonzero constant factor.
    pub fn proportional_to(&self, other: &Recurrence) -> bool {
        self.coeffs == other.coeffs
    }

    /// Divide out a polynomial factor common to every coefficient.
    pub fn remove_common_factor(&self) -> Recurrence {
        let g = self.coeffs.iter().fold(Poly::zero(), |g, c| Poly::gcd(&g, c));
        if g.is_constant() {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|c| c.div_rem(&g).0).collect();
        Recurrence { coeffs: normalize(coeffs), offset: self.offset }
    }

    /// Recurrence satisfied by `f(n) u(n)` where `f(n+1) = ratio(n) f(n)`.
    ///
    /// Each `c_k(n)` is multiplied by `ratio(n+k) ... ratio(n+d-1)`, then
    /// denominators and any common polynomial factor are cleared.
    pub fn rescale(&self, ratio: &RatFunc) -> Result<Recurrence> {
        check_ratio(ratio, self.offset.max(0))?;
        let d = self.order();
        let shifted: Vec<RatFunc> = (0..d).map(|j| ratio.shift(&int(j as i64))).collect();
        let mut rf: Vec<RatFunc> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let prod = shifted[k..].iter().fold(RatFunc::one(), |acc, r| &acc * r);
            rf.push(&RatFunc::from_poly(self.coeffs[k].clone()) * &prod);
        }
        // common denominator
        let mut den = Poly::one();
        for f in &rf {
            let g = Poly::gcd(&den, f.denom());
            den = &den * &f.denom().div_rem(&g).0;
        }
        let coeffs: Vec<Poly> = rf
            .iter()
            .map(|f| &f.numer().clone() * &den.div_rem(f.denom()).0)
            .collect();
        Ok(Recurrence { coeffs: normalize(coeffs), offset: self.offset }.remove_common_factor())
    }

    /// Canonical text form:
    ///
    /// ```text
    /// order: 2
    /// offset: -1
    /// c_0: n + 1
    /// c_1: -6*n - 9
    /// c_2: n + 2
    /// ```
    pub fn to_text(&self) -> String {
        let mut s = format!("order: {}\noffset: {}\n", self.order(), self.offset);
        for (k, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("c_{k}: {}\n", c.render("n")));
        }
        s
    }

    /// Parse the text form. Blank lines and `#` comments are ignored; the
    /// coefficients are renormalized to primitive integer form.
    pub fn from_text(text: &str) -> Result<Recurrence> {
        let mut order: Option<usize> = None;
        let mut offset: i64 = 0;
        let mut coeffs: Vec<Option<Poly>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "order" => {
                    let d: usize = value.parse().map_err(|_| Error::Parse(format!("bad order `{value}`")))?;
                    order = Some(d);
                    coeffs.resize(d + 1, None);
                }
                "offset" => offset = value.parse().map_err(|_| Error::Parse(format!("bad offset `{value}`")))?,
                _ => {
                    let k: usize = key
                        .strip_prefix("c_")
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("unknown key `{key}`")))?;
                    let d = order.ok_or_else(|| Error::Parse("`order:` must precede coefficients".into()))?;
                    if k > d {
                        return Err(Error::Parse(format!("c_{k} exceeds order {d}")));
                    }
                    coeffs[k] = Some(parse_int_poly(value, "n")?);
                }
            }
        }
        if order.is_none() {
            return Err(Error::Parse("missing `order:`".into()));
        }
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.ok_or_else(|| Error::Parse(format!("missing c_{k}"))))
            .collect::<Result<Vec<_>>>()?;
        Recurrence::new(coeffs, offset)
    }
}

/// Cauchy bound on integer roots of an integral polynomial.
fn integer_root_bound(p: &Poly) -> i64 {
    let lead = p.leading();
    let m = p
        .coeffs()
        .iter()
        .map(|c| (c / &lead).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let b = m.ceil().to_integer();
    1 + i64::try_from(b).unwrap_or(i64::MAX / 4)
}

/// Fail with `ZeroRatio(n)` if the ratio vanishes or has a pole at an
/// integer `n >= from`.
fn check_ratio(ratio: &RatFunc, from: i64) -> Result<()> {
    for p in [ratio.numer(), ratio.denom()] {
        if p.is_zero() {
            return Err(Error::ZeroRatio(from));
        }
        if p.is_constant() {
            continue;
        }
        let bound = integer_root_bound(p).min(1 << 20);
        for n in from.max(-bound)..=bound {
            if p.eval_int(n).is_zero() {
                return Err(Error::ZeroRatio(n));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let u = if k == 0 { "u(n)".to_string() } else { format!("u(n+{k})") };
                format!("({}) {u}", c.render("n"))
            })
            .collect();
        write!(f, "{} = 0", terms.join(" + "))
    }
}
