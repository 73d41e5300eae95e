//! Catalog constants to arbitrary precision.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{bigfloat::bits_for, fmt_rational, parse_rational, BigFloat, Rational};
use crate::error::{Error, Result};

/// Names accepted by [`eval_constant`] besides the `zeta<k>` and
/// `ln(p/q)` patterns.
pub const CATALOG: [&str; 8] = ["one", "ln2", "pi", "zeta2", "zeta3", "zeta4", "catalan", "L3"];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    One,
    /// Natural log of a positive rational.
    Ln(Rational),
    Pi,
    /// Riemann zeta at an integer `>= 2`.
    Zeta(u32),
    /// `L_{-4}(2)`.
    Catalan,
    /// `L_{-3}(2)`.
    L3,
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownConstant(s.to_string());
        Ok(match s {
            "one" | "1" => Constant::One,
            "ln2" => Constant::Ln(Rational::from_integer(2.into())),
            "pi" => Constant::Pi,
            "catalan" => Constant::Catalan,
            "L3" => Constant::L3,
            _ => {
                if let Some(k) = s.strip_prefix("zeta") {
                    let k: u32 = k.parse().map_err(|_| unknown())?;
                    if k < 2 {
                        return Err(unknown());
                    }
                    Constant::Zeta(k)
                } else if let Some(arg) = s.strip_prefix("ln(").and_then(|r| r.strip_suffix(')')) {
                    let r = parse_rational(arg).map_err(|_| unknown())?;
                    if !r.is_positive() {
                        return Err(unknown());
                    }
                    Constant::Ln(r)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::One => f.write_str("one"),
            Constant::Ln(r) if *r == Rational::from_integer(2.into()) => f.write_str("ln2"),
            Constant::Ln(r) => write!(f, "ln({})", fmt_rational(r)),
            Constant::Pi => f.write_str("pi"),
            Constant::Zeta(k) => write!(f, "zeta{k}"),
            Constant::Catalan => f.write_str("catalan"),
            Constant::L3 => f.write_str("L3"),
        }
    }
}

fn memo() -> &'static Mutex<HashMap<Constant, BigFloat>> {
    static MEMO: OnceLock<Mutex<HashMap<Constant, BigFloat>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Constant {
    /// Value to `digits` significant digits; results are memoized at the
    /// highest precision requested so far.
    pub fn eval(&self, digits: u32) -> BigFloat {
        let digits = digits.max(crate::arith::bigfloat::MIN_PRECISION);
        if let Some(v) = memo().lock().unwrap().get(self) {
            if v.precision() >= digits {
                return v.with_precision(digits);
            }
        }
        let wp = digits + 10;
        let v = match self {
            Constant::One => BigFloat::from_i64(1, wp),
            Constant::Ln(r) => ln_rational(r, wp),
            Constant::Pi => pi(wp),
            Constant::Zeta(k) => hurwitz_zeta(*k, &Rational::one(), wp),
            Constant::Catalan => {
                let d = &hurwitz_zeta(2, &Rational::new(1.into(), 4.into()), wp)
                    - &hurwitz_zeta(2, &Rational::new(3.into(), 4.into()), wp);
                d.div_int(&16.into())
            }
            Constant::L3 => {
                let d = &hurwitz_zeta(2, &Rational::new(1.into(), 3.into()), wp)
                    - &hurwitz_zeta(2, &Rational::new(2.into(), 3.into()), wp);
                d.div_int(&9.into())
            }
        };
        let v = v.with_precision(digits);
        memo().lock().unwrap().insert(self.clone(), v.clone());
        v
    }
}

/// Evaluate a catalog constant by name.
pub fn eval_constant(name: &str, digits: u32) -> Result<BigFloat> {
    Ok(name.parse::<Constant>()?.eval(digits))
}

fn fixed_to_float(m: BigInt, bits: u64, digits: u32) -> BigFloat {
    BigFloat::from_rational(&Rational::new(m, BigInt::one() << bits), digits)
}

/// `2^bits * atanh(a/b)` (or `atan` when `alternate`), truncated.
fn arctan_series(a: &BigInt, b: &BigInt, bits: u64, alternate: bool) -> BigInt {
    let a2 = a * a;
    let b2 = b * b;
    let mut t = (BigInt::one() << bits) * a / b;
    let mut sum = t.clone();
    let mut k: u64 = 1;
    loop {
        t = t * &a2 / &b2;
        if t.is_zero() {
            break;
        }
        let term = &t / BigInt::from(2 * k + 1);
        if alternate && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi(digits: u32) -> BigFloat {
    let bits = bits_for(digits) + 32;
    let one = BigInt::one();
    let s = arctan_series(&one, &BigInt::from(5), bits, true) * 16
        - arctan_series(&one, &BigInt::from(239), bits, true) * 4;
    fixed_to_float(s, bits, digits)
}

/// `ln r = k ln 2 + 2 atanh((s-1)/(s+1))` with `s = r / 2^k` near 1.
fn ln_rational(r: &Rational, digits: u32) -> BigFloat {
    let bits = bits_for(digits) + 32;
    let atanh2 = |s: &Rational| -> BigInt {
        let z = (s - Rational::one()) / (s + Rational::one());
        arctan_series(z.numer(), z.denom(), bits, false) * 2
    };
    let ln2 = atanh2(&Rational::from_integer(2.into()));
    // k = round(log2 r)
    let approx = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut best = (i64::MAX, Rational::one());
    for k in approx - 1..=approx + 1 {
        let s = if k >= 0 {
            r / Rational::from_integer(BigInt::one() << k as u64)
        } else {
            r * Rational::from_integer(BigInt::one() << (-k) as u64)
        };
        let dist = (&s - Rational::one()).abs();
        if best.0 == i64::MAX || dist < (&best.1 - Rational::one()).abs() {
            best = (k, s);
        }
    }
    let (k, s) = best;
    let total = ln2 * BigInt::from(k) + atanh2(&s);
    fixed_to_float(total, bits, digits)
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `B_2, B_4, ..., B_{2n}` via tangent numbers.
pub fn bernoulli_even(n: usize) -> Vec<Rational> {
    {
        let cache = bernoulli_cache().lock().unwrap();
        if cache.len() >= n {
            return cache[..n].to_vec();
        }
    }
    let m = n.max(16) * 5 / 4;
    let mut t = vec![BigInt::zero(); m + 1];
    t[1] = BigInt::one();
    for k in 2..=m {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    let b: Vec<Rational> = (1..=m)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let v = Rational::new(BigInt::from(2 * k) * &t[k], &four_k * (&four_k - 1));
            if k % 2 == 1 { v } else { -v }
        })
        .collect();
    *bernoulli_cache().lock().unwrap() = b.clone();
    b[..n].to_vec()
}

/// Hurwitz `zeta(s, a)` for integer `s >= 2` and rational `a > 0`, by
/// Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: u32, a: &Rational, digits: u32) -> BigFloat {
    assert!(s >= 2 && a.is_positive());
    let wp = digits + 10;
    let n_direct = (0.4 * wp as f64).ceil() as i64 + 10;
    let mut sum = BigFloat::zero(wp);
    for k in 0..n_direct {
        let x = BigFloat::from_rational(&(a + Rational::from_integer(k.into())), wp);
        sum = &sum + &x.powi(s).recip();
    }
    let x = BigFloat::from_rational(&(a + Rational::from_integer(n_direct.into())), wp);
    let xinv = x.recip();
    let xs = x.powi(s - 1).recip(); // x^(1-s)
    sum = &sum + &xs.div_int(&BigInt::from(s - 1));
    let mut xp = &xs * &xinv; // x^(-s)
    sum = &sum + &xp.div_int(&2.into());
    xp = &xp * &xinv; // x^(-s-1)
    let x2inv = xinv.sqr();
    let tol = -(wp as f64) - 2.0;
    // factor_j = s (s+1) ... (s+2j-2) / (2j)!
    let mut factor = Rational::new(BigInt::from(s), 2.into());
    let max_terms = 3 * n_direct as usize;
    let bern = bernoulli_even(max_terms);
    for j in 1..=max_terms {
        let term = xp.mul_rational(&(&bern[j - 1] * &factor));
        if term.log10_abs() < tol {
            break;
        }
        sum = &sum + &term;
        xp = &xp * &x2inv;
        let (s1, s2) = (s as i64 + 2 * j as i64 - 1, s as i64 + 2 * j as i64);
        let (d1, d2) = (2 * j as i64 + 1, 2 * j as i64 + 2);
        factor *= Rational::new(BigInt::from(s1 * s2), BigInt::from(d1 * d2));
    }
    sum.with_precision(digits)
}
