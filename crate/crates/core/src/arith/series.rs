//! Truncated power series around a finite point or around infinity.

use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Point(Rational),
    Infinity,
}

/// `sum_{k<=order} c_k (x - a)^k`, or `sum_{k<=order} c_k x^(-k)` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    center: Center,
    coeffs: Vec<Rational>,
    order: usize,
}

/// Power-series quotient `num / den` through `t^order`; `den(0) != 0`.
fn series_div(num: &[Rational], den: &[Rational], order: usize) -> Vec<Rational> {
    let d0 = den[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc * &d0);
    }
    out
}

impl Series {
    pub fn new(center: Center, mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { center, coeffs, order }
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_compatible(&self, o: &Series) -> Result<usize> {
        if self.center != o.center {
            return Err(Error::InvalidParameter("series with different centers".into()));
        }
        Ok(self.order.min(o.order))
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        let k = self.check_compatible(o)?;
        Ok(Series::new(self.center.clone(), (0..=k).map(|i| self.coeff(i) + o.coeff(i)).collect(), k))
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        let k = self.check_compatible(o)?;
        Ok(Series::new(self.center.clone(), (0..=k).map(|i| self.coeff(i) - o.coeff(i)).collect(), k))
    }

    pub fn mul(&self, o: &Series) -> Result<Series> {
        let k = self.check_compatible(o)?;
        let c = (0..=k)
            .map(|i| (0..=i).fold(Rational::zero(), |acc, j| acc + self.coeff(j) * o.coeff(i - j)))
            .collect();
        Ok(Series::new(self.center.clone(), c, k))
    }

    pub fn div(&self, o: &Series) -> Result<Series> {
        let k = self.check_compatible(o)?;
        if o.coeff(0).is_zero() {
            return Err(Error::PoleAtCenter);
        }
        Ok(Series::new(self.center.clone(), series_div(&self.coeffs, &o.coeffs, k), k))
    }

    /// The truncated series as a polynomial in the local variable
    /// (`x - a`, or `1/x` at infinity).
    pub fn local_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Index of the first coefficient where the two series differ, if any
    /// within the common order.
    pub fn first_difference(&self, o: &Series) -> Option<usize> {
        let k = self.order.min(o.order);
        (0..=k).find(|&i| self.coeff(i) != o.coeff(i))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let local = match &self.center {
            Center::Infinity => "x^-".to_string(),
            Center::Point(a) if a.is_zero() => "x^".to_string(),
            Center::Point(a) => format!("(x - {})^", fmt_rational(a)),
        };
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { fmt_rational(c) } else { format!("{}*{}{}", fmt_rational(c), local, k) })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O({}{})", parts.join(" + "), local, self.order + 1)
    }
}

/// Expand `f` around `center` through index `order`.
pub fn ratfunc_series(f: &RatFunc, center: &Center, order: usize) -> Result<Series> {
    match center {
        Center::Point(a) => {
            let num = f.numer().shift(a);
            let den = f.denom().shift(a);
            if den.coeff(0).is_zero() {
                return Err(Error::PoleAtCenter);
            }
            Ok(Series::new(center.clone(), series_div(num.coeffs(), den.coeffs(), order), order))
        }
        Center::Infinity => {
            if f.is_zero() {
                return Ok(Series::new(Center::Infinity, vec![], order));
            }
            let dn = f.numer().degree().unwrap_or(0);
            let dd = f.denom().degree().unwrap_or(0);
            if dn > dd {
                return Err(Error::PoleAtCenter);
            }
            // f(1/t) = t^(dd - dn) * rev(num)(t) / rev(den)(t)
            let shift = dd - dn;
            let rn = f.numer().reversed(dn);
            let rd = f.denom().reversed(dd);
            let mut num = vec![Rational::zero(); shift];
            num.extend(rn.coeffs().iter().cloned());
            Ok(Series::new(Center::Infinity, series_div(&num, rd.coeffs(), order), order))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    fn f(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    #[test]
    fn geometric_series() {
        let s = ratfunc_series(&f(&[1], &[1, -1]), &Center::Point(int(0)), 3).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(1), int(1), int(1)]);
    }

    #[test]
    fn expansion_at_infinity() {
        let s = ratfunc_series(&f(&[1], &[1, 2]), &Center::Infinity, 3).unwrap();
        assert_eq!(s.coeffs(), &[int(0), rat(1, 2), rat(-1, 4), rat(1, 8)]);
    }

    #[test]
    fn taylor_at_one() {
        let s = ratfunc_series(&f(&[1], &[1, 2]), &Center::Point(int(1)), 1).unwrap();
        assert_eq!(s.coeffs(), &[rat(1, 3), rat(-2, 9)]);
    }

    #[test]
    fn pole_is_reported() {
        let e = ratfunc_series(&f(&[1], &[1, 2]), &Center::Point(rat(-1, 2)), 2);
        assert_eq!(e, Err(Error::PoleAtCenter));
        assert_eq!(ratfunc_series(&f(&[0, 0, 1], &[1, 1]), &Center::Infinity, 2), Err(Error::PoleAtCenter));
    }

    #[test]
    fn series_arithmetic_truncates() {
        let c = Center::Point(int(0));
        let a = ratfunc_series(&f(&[1], &[1, -1]), &c, 4).unwrap();
        let b = ratfunc_series(&f(&[1, -1], &[1]), &c, 2).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeffs(), &[int(1), int(0), int(0)]);
        let q = b.div(&a).unwrap();
        assert_eq!(q.coeffs(), &[int(1), int(-2), int(1)]);
        assert_eq!(a.sub(&a).unwrap().first_difference(&Series::new(c, vec![], 4)), None);
    }

    proptest! {
        // recomposing the expansion and subtracting from f leaves a numerator
        // divisible by (x - a)^(K + 1)
        #[test]
        fn remainder_has_high_order(num in proptest::collection::vec(-20i64..20, 1..4),
                                    den in proptest::collection::vec(-20i64..20, 1..4),
                                    a in -5i64..5, k in 0usize..6) {
            let den_p = Poly::from_ints(&den);
            prop_assume!(!den_p.is_zero());
            prop_assume!(!den_p.eval_int(a).is_zero());
            let func = RatFunc::new(Poly::from_ints(&num), den_p);
            let s = ratfunc_series(&func, &Center::Point(int(a)), k).unwrap();
            let recomposed = s.local_poly().shift(&int(-a));
            let diff = &func - &RatFunc::from_poly(recomposed);
            let power = Poly::linear_power(&int(a), k + 1);
            let (_, r) = diff.numer().div_rem(&power);
            prop_assert!(r.is_zero());
        }
    }
}
