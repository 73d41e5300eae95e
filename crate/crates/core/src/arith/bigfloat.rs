//! Arbitrary-precision binary floating point with a decimal precision label.
//!
//! A `BigFloat` is `mantissa * 2^exponent`. The mantissa is kept to
//! `bits_for(precision)` bits, rounded to nearest after every operation.
//! Binary operations return the smaller of the two operand precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Smallest precision a `BigFloat` may carry.
pub const MIN_PRECISION: u32 = 10;

/// log2(10)
const LOG2_10: f64 = std::f64::consts::LOG2_10;

pub fn bits_for(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 16
}

/// `10^k` as a `BigInt`.
pub fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

fn bit_len(n: &BigInt) -> u64 {
    n.bits()
}

/// Round `n / 2^shift` to nearest, ties away from zero.
fn shr_round(n: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return n.clone();
    }
    let (sign, mag) = (n.sign(), n.magnitude());
    let half = num_bigint::BigUint::one() << (shift - 1);
    let rounded = (mag + half) >> shift;
    BigInt::from_biguint(if rounded.is_zero() { Sign::NoSign } else { sign }, rounded)
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        BigFloat { mantissa: BigInt::zero(), exponent: 0, precision: precision.max(MIN_PRECISION) }
    }

    fn normalized(mantissa: BigInt, exponent: i64, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if mantissa.is_zero() {
            return Self::zero(precision);
        }
        let bits = bits_for(precision);
        let len = bit_len(&mantissa);
        let (mut m, mut e) = if len > bits {
            let s = len - bits;
            (shr_round(&mantissa, s), exponent + s as i64)
        } else {
            (mantissa, exponent)
        };
        // strip trailing zero bits so equal values compare structurally
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            m >>= tz;
            e += tz as i64;
        }
        BigFloat { mantissa: m, exponent: e, precision }
    }

    pub fn from_int(n: impl Into<BigInt>, precision: u32) -> Self {
        Self::normalized(n.into(), 0, precision)
    }

    pub fn from_i64(n: i64, precision: u32) -> Self {
        Self::from_int(BigInt::from(n), precision)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if r.is_zero() {
            return Self::zero(precision);
        }
        let bits = bits_for(precision) as i64;
        let (n, d) = (r.numer(), r.denom());
        let shift = bits + 2 + bit_len(d) as i64 - bit_len(n) as i64;
        let q = if shift >= 0 {
            (n << shift as u64).div_floor(d)
        } else {
            n.div_floor(&(d << (-shift) as u64))
        };
        Self::normalized(q, -shift, precision)
    }

    /// Exact value as a rational (every binary float is one).
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::normalized(self.mantissa.clone(), self.exponent, precision)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// Binary exponent of the leading bit plus one: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exponent + bit_len(&self.mantissa) as i64
    }

    /// Approximate `log10 |x|`; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let len = bit_len(&self.mantissa);
        let take = len.min(60);
        let lead = (self.mantissa.abs() >> (len - take)).to_f64().unwrap_or(1.0);
        (lead.log2() + (self.exponent + (len - take) as i64) as f64) / LOG2_10
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = bit_len(&self.mantissa);
        let take = len.min(60);
        let lead = (&self.mantissa >> (len - take)).to_f64().unwrap_or(0.0);
        lead * 2f64.powi((self.exponent + (len - take) as i64).clamp(-2000, 2000) as i32)
    }

    pub fn recip(&self) -> Self {
        BigFloat::from_i64(1, self.precision) / self.clone()
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = BigFloat::from_i64(1, self.precision);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::normalized(&self.mantissa * k, self.exponent, self.precision)
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        self / &BigFloat::from_int(k.clone(), self.precision)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self * &BigFloat::from_rational(r, self.precision)
    }

    /// Square root of a nonnegative value. Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let bits = bits_for(self.precision) as i64;
        // want mantissa with ~2*bits+2 bits and an even exponent
        let mut shift = 2 * bits + 2 - bit_len(&self.mantissa) as i64;
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            self.mantissa.magnitude() << shift as u64
        } else {
            self.mantissa.magnitude() >> (-shift) as u64
        };
        let root = m.sqrt();
        Self::normalized(BigInt::from(root), (self.exponent - shift) / 2, self.precision)
    }

    /// `round(x * 10^k)` as an integer.
    pub fn round_scaled(&self, k: u32) -> BigInt {
        let scaled = &self.mantissa * pow10(k);
        if self.exponent >= 0 {
            scaled << self.exponent as u64
        } else {
            shr_round(&scaled, (-self.exponent) as u64)
        }
    }

    /// `floor(|x| * 10^k)`, the truncated magnitude.
    fn trunc_scaled_abs(&self, k: u32) -> BigInt {
        let scaled = self.mantissa.abs() * pow10(k);
        if self.exponent >= 0 {
            scaled << self.exponent as u64
        } else {
            scaled >> (-self.exponent) as u64
        }
    }

    /// Decimal expansion truncated (toward zero) after `frac_digits` digits.
    pub fn to_fixed(&self, frac_digits: u32) -> String {
        let t = self.trunc_scaled_abs(frac_digits);
        let s = t.to_string();
        let neg = self.signum() < 0 && !t.is_zero();
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            return format!("{sign}{s}");
        }
        let fd = frac_digits as usize;
        let padded = if s.len() <= fd { format!("{}{}", "0".repeat(fd + 1 - s.len()), s) } else { s };
        let (ip, fp) = padded.split_at(padded.len() - fd);
        format!("{sign}{ip}.{fp}")
    }

    /// Number of leading fractional digits on which `self` and `other` agree
    /// when both are truncated, capped at `max`.
    pub fn agreeing_fixed_digits(&self, other: &BigFloat, max: u32) -> u32 {
        if self.to_fixed(0) != other.to_fixed(0) {
            return 0;
        }
        let a = self.to_fixed(max);
        let b = other.to_fixed(max);
        let dot = a.find('.').unwrap_or(a.len());
        a.bytes()
            .zip(b.bytes())
            .skip(dot + 1)
            .take_while(|(x, y)| x == y)
            .count() as u32
    }

    /// Whether `|self - other| < 10^-digits`.
    pub fn close_to(&self, other: &BigFloat, digits: u32) -> bool {
        let d = (self - other).abs();
        d.is_zero() || d.log10_abs() < -(digits as f64)
    }

    pub fn max(self, other: BigFloat) -> BigFloat {
        if self >= other { self } else { other }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exponent.min(other.exponent);
        // compare by magnitude of top bit first to avoid huge shifts
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let a = self.mantissa.abs() << (self.exponent - e) as u64;
            let b = other.mantissa.abs() << (other.exponent - e) as u64;
            a.cmp(&b)
        };
        if sa > 0 { mag } else { mag.reverse() }
    }
}

fn add_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let precision = a.precision.min(b.precision);
    if a.is_zero() {
        return b.with_precision(precision);
    }
    if b.is_zero() {
        return a.with_precision(precision);
    }
    let bits = bits_for(precision) as i64;
    let (hi, lo) = if a.top() >= b.top() { (a, b) } else { (b, a) };
    if lo.top() < hi.top() - bits - 4 {
        // lo is below half an ulp of the result; keep a sticky contribution
        let e = hi.top() - bits - 8;
        let m = (&hi.mantissa << (hi.exponent - e) as u64) + BigInt::from(lo.signum());
        return BigFloat::normalized(m, e, precision);
    }
    let e = hi.exponent.min(lo.exponent);
    let m = (&hi.mantissa << (hi.exponent - e) as u64) + (&lo.mantissa << (lo.exponent - e) as u64);
    BigFloat::normalized(m, e, precision)
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        add_impl(self, rhs)
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        add_impl(self, &-rhs)
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::normalized(
            &self.mantissa * &rhs.mantissa,
            self.exponent + rhs.exponent,
            self.precision.min(rhs.precision),
        )
    }
}

impl<'a> Div<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let precision = self.precision.min(rhs.precision);
        if self.is_zero() {
            return BigFloat::zero(precision);
        }
        let bits = bits_for(precision) as i64;
        let shift = bits + 2 + bit_len(&rhs.mantissa) as i64 - bit_len(&self.mantissa) as i64;
        let shift = shift.max(0);
        let num = &self.mantissa << shift as u64;
        let q = num.div_floor(&rhs.mantissa);
        BigFloat::normalized(q, self.exponent - rhs.exponent - shift, precision)
    }
}

impl<'a> Neg for &'a BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -&self.mantissa, ..self.clone() }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -self.mantissa, ..self }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for BigFloat {
    /// Fixed-point with as many fractional digits as the precision, or
    /// scientific notation for very small or very large magnitudes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.log10_abs();
        if self.is_zero() || (-8.0..40.0).contains(&l) {
            return write!(f, "{}", self.to_fixed(self.precision));
        }
        let e = l.floor() as i64;
        let scaled = if e >= 0 {
            self / &BigFloat::from_int(pow10(e as u32), self.precision)
        } else {
            self * &BigFloat::from_int(pow10((-e) as u32), self.precision)
        };
        write!(f, "{}e{}", scaled.to_fixed(self.precision.saturating_sub(1)), e)
    }
}

/// Complex number over `BigFloat`, used by the polynomial root finder.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        let p = re.precision();
        Complex { re, im: BigFloat::zero(p) }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let den = o.norm_sqr();
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Complex::new(&re / &den, &im / &den)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.signum() < 0 {
            write!(f, "{} - {}i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
