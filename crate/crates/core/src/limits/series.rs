//! Expansions of `Q_x(n) = B_x(n)/A_x(n)` in the family parameter and
//! their behaviour as `n` grows.

use num_bigint::BigInt;

use crate::arith::{ratfunc_series, rational_from_decimal, BigFloat, Center, Poly, RatFunc, Rational};
use crate::catalog::{x_recurrence, XRecurrence};
use crate::error::{Error, Result};
use crate::sums::Family;

/// Digits used to recognize converging coefficients at a finite center.
const RECOGNITION_DIGITS: u32 = 30;
/// Largest denominator accepted for a recognized coefficient.
const MAX_DENOMINATOR: u64 = 10_000_000;

/// Two solutions with polynomial-in-`x` values: the primary one and the
/// one starting `0, 1` at `n = 0`.
#[derive(Clone, Debug)]
pub struct SymbolicPair {
    rec: XRecurrence,
    a_start: i64,
    a_init: Vec<Poly>,
    b_init: Vec<Poly>,
}

impl SymbolicPair {
    pub fn new(rec: XRecurrence, a_start: i64, a_init: Vec<Poly>, b_init: Vec<Poly>) -> Self {
        SymbolicPair { rec, a_start, a_init, b_init }
    }

    /// The pair for a parameter family with the catalog's conventions.
    pub fn for_family(family: Family) -> Result<Self> {
        let rec = x_recurrence(family)
            .ok_or_else(|| Error::InvalidParameter(format!("{family} has no symbolic recurrence")))?;
        if rec.order() != 2 {
            return Err(Error::InvalidParameter("symbolic pairs need order 2".into()));
        }
        let (a_start, a_init) = if rec.offset() < 0 {
            (-1, vec![Poly::zero(), Poly::one()])
        } else {
            let spec = crate::sums::FamilySpec::symbolic(family)?;
            let init = (0..2)
                .map(|n| match crate::sums::eval_family(&spec, n)? {
                    crate::sums::FamilyValue::Symbolic(p) => Ok(p),
                    crate::sums::FamilyValue::Exact(r) => Ok(Poly::constant(r)),
                })
                .collect::<Result<Vec<_>>>()?;
            (0, init)
        };
        Ok(SymbolicPair::new(rec, a_start, a_init, vec![Poly::zero(), Poly::one()]))
    }

    /// `Q_x(n)` as a rational function of `x`.
    pub fn quotient(&self, n: i64) -> Result<RatFunc> {
        let a = self.rec.symbolic_terms(self.a_start, self.a_init.clone(), n)?;
        let b = self.rec.symbolic_terms(0, self.b_init.clone(), n)?;
        let an = a.last().unwrap().clone();
        if an.is_zero() {
            return Err(Error::ZeroDenominatorTerm(n));
        }
        Ok(RatFunc::new(b.last().unwrap().clone(), an))
    }
}

/// Coefficients `0..=order` of `Q_x(n)` around `center`; at infinity these
/// multiply `x^-k`.
pub fn series_coefficients(pair: &SymbolicPair, center: &Center, order: usize, n: i64) -> Result<Vec<Rational>> {
    let s = ratfunc_series(&pair.quotient(n)?, center, order)?;
    Ok((0..=order).map(|k| s.coeff(k)).collect())
}

/// Coefficients `k = 1..=K` of the limit of `Q_x(n)` around `center`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesLimit {
    pub center: Center,
    /// `coeffs[k - 1]` is the coefficient of index `k`.
    pub coeffs: Vec<Rational>,
    pub stable_through: usize,
    /// The three consecutive `n` on which the coefficients agree.
    pub n_used: [i64; 3],
}

fn stable_value(c: &Rational, center: &Center) -> Option<Rational> {
    match center {
        Center::Infinity => Some(c.clone()),
        Center::Point(_) => rational_from_decimal(
            &BigFloat::from_rational(c, RECOGNITION_DIGITS),
            &BigInt::from(MAX_DENOMINATOR),
        ),
    }
}

/// Expand `Q_x(n)` for `n = n_min..=n_max` and return the coefficients of
/// index `1..=k_max` once they agree over three consecutive `n`.
///
/// At infinity agreement is exact. At a finite point the coefficients only
/// converge, so agreement means they round to the same small-denominator
/// rational at the recognition precision.
pub fn series_limit(pair: &SymbolicPair, center: &Center, k_max: usize, n_min: i64, n_max: i64) -> Result<SeriesLimit> {
    let mut history: Vec<Vec<Option<Rational>>> = Vec::new();
    let mut first_unstable = 1;
    for n in n_min..=n_max {
        let c = series_coefficients(pair, center, k_max, n)?;
        history.push(c[1..].iter().map(|v| stable_value(v, center)).collect());
        if history.len() < 3 {
            continue;
        }
        let last = &history[history.len() - 3..];
        let unstable = (0..k_max).find(|&k| last[0][k].is_none() || last[0][k] != last[1][k] || last[1][k] != last[2][k]);
        match unstable {
            None => {
                return Ok(SeriesLimit {
                    center: center.clone(),
                    coeffs: last[2].iter().map(|v| v.clone().unwrap()).collect(),
                    stable_through: k_max,
                    n_used: [n - 2, n - 1, n],
                })
            }
            Some(k) => first_unstable = k + 1,
        }
    }
    Err(Error::NoStabilization(first_unstable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn pair() -> SymbolicPair {
        SymbolicPair::for_family(Family::DelannoyX).unwrap()
    }

    #[test]
    fn quotient_at_one() {
        let q = pair().quotient(1).unwrap();
        assert_eq!(q.eval(&int(1)), Some(rat(1, 3)));
        assert_eq!(pair().quotient(2).unwrap().eval(&int(1)), Some(rat(9, 26)));
    }

    #[test]
    fn limit_at_one() {
        let s = series_limit(&pair(), &Center::Point(int(1)), 4, 1, 60).unwrap();
        assert_eq!(s.coeffs, vec![rat(-1, 4), rat(3, 16), rat(-7, 48), rat(15, 128)]);
    }

    #[test]
    fn limit_at_infinity() {
        let s = series_limit(&pair(), &Center::Infinity, 6, 3, 10).unwrap();
        assert_eq!(s.coeffs, vec![rat(1, 2), rat(-1, 4), rat(1, 6), rat(-1, 8), rat(1, 10), rat(-1, 12)]);
        assert_eq!(s.n_used, [3, 4, 5]);
    }

    #[test]
    fn no_limit_at_zero() {
        assert_eq!(series_limit(&pair(), &Center::Point(int(0)), 2, 1, 20), Err(Error::NoStabilization(1)));
        for n in 1..=20i64 {
            let c = series_coefficients(&pair(), &Center::Point(int(0)), 2, n).unwrap();
            assert_eq!(c[1], int(-n * (n + 1)));
            assert_eq!(c[2], rat(n * (n + 1) * (5 * n * n + 5 * n + 6), 8));
        }
    }

    #[test]
    fn other_families() {
        assert!(SymbolicPair::for_family(Family::Binom2k).unwrap().quotient(3).is_ok());
        assert!(SymbolicPair::for_family(Family::Franel).is_err());
    }
}
