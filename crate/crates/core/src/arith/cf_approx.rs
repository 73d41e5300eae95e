use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{pow10, BigFloat};
use super::rational::Rational;

/// Partial quotients above this end the expansion.
const HUGE_QUOTIENT: u64 = 100_000_000;

/// The first continued-fraction convergent `p/q` of `v` with `q <= max_denominator`
/// and `|v - p/q| < 10^-(precision - 10)`.
pub fn rational_from_decimal(v: &BigFloat, max_denominator: &BigInt) -> Option<Rational> {
    let tol = Rational::new(BigInt::one(), pow10(v.precision().saturating_sub(10)));
    let exact = v.to_rational();
    let close = |r: &Rational| (&exact - r).abs() < tol;

    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut x = exact.clone();
    loop {
        let a = x.numer().div_floor(x.denom());
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_denominator {
            return None;
        }
        let conv = Rational::new(p2.clone(), q2.clone());
        if close(&conv) {
            return Some(conv);
        }
        let frac = &x - Rational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        x = frac.recip();
        if x.numer().div_floor(x.denom()) > BigInt::from(HUGE_QUOTIENT) {
            // the convergent just built is as good as the data allows
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}
