//! Exact evaluation of the binomial-sum families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, fmt_rational, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `sum C(n,k) C(n+k,k)`
    Delannoy,
    /// `sum C(n,k) C(n+k,k) x^k`
    DelannoyX,
    /// `sum C(n,k)^2 C(n+k,k)^2`
    Apery3,
    /// `sum C(n,k)^d`
    Franel,
    /// `sum C(n,2k) x^k`
    Binom2k,
    /// `sum C(n-k,k) x^k`
    BinomNkK,
    /// `sum C(n,k) C(n-k,k) x^k`
    Arctan,
    /// `sum C(n,k) C(n+k,k)^2 x^k`
    Zudilin2,
    /// `sum C(n,k) C(n+k,k)^3 x^k`
    Zudilin3,
    /// `sum C(n,k)^2 C(3k,n)`
    Cy219,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Delannoy,
        Family::DelannoyX,
        Family::Apery3,
        Family::Franel,
        Family::Binom2k,
        Family::BinomNkK,
        Family::Arctan,
        Family::Zudilin2,
        Family::Zudilin3,
        Family::Cy219,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Delannoy => "delannoy",
            Family::DelannoyX => "delannoy_x",
            Family::Apery3 => "apery3",
            Family::Franel => "franel",
            Family::Binom2k => "binom_2k",
            Family::BinomNkK => "binom_nk_k",
            Family::Arctan => "arctan",
            Family::Zudilin2 => "zudilin2",
            Family::Zudilin3 => "zudilin3",
            Family::Cy219 => "cy219",
        }
    }

    pub fn takes_x(self) -> bool {
        matches!(
            self,
            Family::DelannoyX | Family::Binom2k | Family::BinomNkK | Family::Arctan | Family::Zudilin2 | Family::Zudilin3
        )
    }

    pub fn takes_d(self) -> bool {
        self == Family::Franel
    }

    /// Summand at `(n, k)` without the `x^k` factor.
    fn summand(self, n: i64, k: i64, d: u32) -> BigInt {
        let c = |a, b| binomial(a, b);
        match self {
            Family::Delannoy | Family::DelannoyX => c(n, k) * c(n + k, k),
            Family::Apery3 => (c(n, k) * c(n + k, k)).pow(2),
            Family::Franel => c(n, k).pow(d),
            Family::Binom2k => c(n, 2 * k),
            Family::BinomNkK => c(n - k, k),
            Family::Arctan => c(n, k) * c(n - k, k),
            Family::Zudilin2 => c(n, k) * c(n + k, k).pow(2),
            Family::Zudilin3 => c(n, k) * c(n + k, k).pow(3),
            Family::Cy219 => c(n, k).pow(2) * c(3 * k, n),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XParam {
    None,
    Value(Rational),
    Symbolic,
}

/// A family with validated parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    d: u32,
    x: XParam,
}

impl FamilySpec {
    pub fn new(family: Family, d: Option<u32>, x: XParam) -> Result<Self> {
        let d = match (family.takes_d(), d) {
            (true, Some(d)) if d >= 1 => d,
            (true, Some(d)) => return Err(Error::InvalidParameter(format!("franel needs d >= 1, got {d}"))),
            (true, None) => return Err(Error::InvalidParameter("franel needs --d".into())),
            (false, Some(_)) => return Err(Error::InvalidParameter(format!("{family} takes no d parameter"))),
            (false, None) => 0,
        };
        match (&x, family.takes_x()) {
            (XParam::None, true) => {
                return Err(Error::InvalidParameter(format!("{family} needs a value of x or symbolic x")));
            }
            (XParam::Value(_) | XParam::Symbolic, false) => {
                return Err(Error::InvalidParameter(format!("{family} takes no x parameter")));
            }
            _ => {}
        }
        Ok(FamilySpec { family, d, x })
    }

    pub fn plain(family: Family) -> Result<Self> {
        Self::new(family, None, XParam::None)
    }

    pub fn franel(d: u32) -> Result<Self> {
        Self::new(Family::Franel, Some(d), XParam::None)
    }

    pub fn at_x(family: Family, x: Rational) -> Result<Self> {
        Self::new(family, None, XParam::Value(x))
    }

    pub fn symbolic(family: Family) -> Result<Self> {
        Self::new(family, None, XParam::Symbolic)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn d(&self) -> Option<u32> {
        self.family.takes_d().then_some(self.d)
    }

    pub fn x(&self) -> &XParam {
        &self.x
    }

    pub fn is_symbolic(&self) -> bool {
        self.x == XParam::Symbolic
    }

    /// Coefficients in `x` of the term at `n`: entry `k` multiplies `x^k`.
    pub fn x_coefficients(&self, n: i64) -> Result<Vec<BigInt>> {
        if n < 0 {
            return Err(Error::InvalidParameter(format!("n must be nonnegative, got {n}")));
        }
        Ok((0..=n).map(|k| self.family.summand(n, k, self.d)).collect())
    }

    /// Exact term; for a symbolic spec this is an error, use [`eval_family`].
    pub fn exact(&self, n: i64) -> Result<Rational> {
        match eval_family(self, n)? {
            FamilyValue::Exact(v) => Ok(v),
            FamilyValue::Symbolic(_) => Err(Error::InvalidParameter("symbolic family has no exact value".into())),
        }
    }

    /// Exact terms `0..=n_max`.
    pub fn terms(&self, n_max: i64) -> Result<Vec<Rational>> {
        crate::exec::map_range(n_max.max(-1) as usize + 1, |n| self.exact(n as i64))
            .into_iter()
            .collect()
    }
}

/// `name[:d=D][:x=P/Q]`; a bare `:x` asks for symbolic `x`.
impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(spec: &str) -> Result<Self> {
        let mut parts = spec.split(':');
        let family: Family = parts.next().unwrap_or_default().trim().parse()?;
        let mut d = None;
        let mut x = XParam::None;
        for kv in parts {
            match kv.split_once('=') {
                Some(("d", v)) => d = Some(v.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad d `{v}`")))?),
                Some(("x", v)) => x = XParam::Value(crate::arith::parse_rational(v.trim())?),
                None if kv.trim() == "x" => x = XParam::Symbolic,
                _ => return Err(Error::Parse(format!("unknown parameter `{kv}` in `{spec}`"))),
            }
        }
        FamilySpec::new(family, d, x)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(d) = self.d() {
            write!(f, ":d={d}")?;
        }
        match &self.x {
            XParam::Value(x) => write!(f, ":x={}", fmt_rational(x)),
            XParam::Symbolic => write!(f, ":x"),
            XParam::None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyValue {
    Exact(Rational),
    Symbolic(Poly),
}

impl FamilyValue {
    pub fn render(&self) -> String {
        match self {
            FamilyValue::Exact(r) => fmt_rational(r),
            FamilyValue::Symbolic(p) => p.render_ascending("x"),
        }
    }
}

/// The `n`-th term by direct summation.
pub fn eval_family(spec: &FamilySpec, n: i64) -> Result<FamilyValue> {
    let coeffs = spec.x_coefficients(n)?;
    Ok(match &spec.x {
        XParam::None => FamilyValue::Exact(Rational::from_integer(coeffs.into_iter().sum())),
        XParam::Symbolic => FamilyValue::Symbolic(Poly::new(coeffs.into_iter().map(Rational::from_integer).collect())),
        XParam::Value(x) => {
            let v = coeffs
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()));
            FamilyValue::Exact(v)
        }
    })
}

/// Explicit secondary solution of the Apéry recurrence with `B(0) = 0`,
/// `B(1) = 1`:
///
/// `B(n) = 1/6 sum_k C(n,k)^2 C(n+k,k)^2 (H3(n) + sum_{m<=k} (-1)^(m-1) / (2 m^3 C(n,m) C(n+m,m)))`
/// where `H3(n) = sum_{j<=n} 1/j^3`.
pub fn eval_apery_secondary(n: i64) -> Rational {
    if n <= 0 {
        return Rational::zero();
    }
    let cube = |j: i64| Rational::from_integer(BigInt::from(j).pow(3));
    let h3 = (1..=n).fold(Rational::zero(), |acc, j| acc + cube(j).recip());
    let mut inner = Rational::zero();
    let mut total = Rational::zero();
    for k in 0..=n {
        if k >= 1 {
            let den = cube(k) * Rational::from_integer(BigInt::from(2) * binomial(n, k) * binomial(n + k, k));
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            inner += sign / den;
        }
        let w = (binomial(n, k) * binomial(n + k, k)).pow(2);
        total += Rational::from_integer(w) * (&h3 + &inner);
    }
    total / Rational::from_integer(BigInt::from(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn terms(spec: &FamilySpec, n: i64) -> Vec<Rational> {
        spec.terms(n).unwrap()
    }

    #[test]
    fn spec_text_roundtrip() {
        for text in ["delannoy", "franel:d=5", "delannoy_x:x=3/2", "delannoy_x:x"] {
            assert_eq!(text.parse::<FamilySpec>().unwrap().to_string(), text);
        }
        assert!("franel".parse::<FamilySpec>().is_err());
        assert!("delannoy:y=1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn catalog_examples() {
        let del = FamilySpec::plain(Family::Delannoy).unwrap();
        assert_eq!(del.exact(3).unwrap(), int(63));
        assert_eq!(FamilySpec::franel(3).unwrap().exact(3).unwrap(), int(56));
        assert_eq!(FamilySpec::plain(Family::Apery3).unwrap().exact(2).unwrap(), int(73));
        let sym = FamilySpec::symbolic(Family::DelannoyX).unwrap();
        assert_eq!(eval_family(&sym, 1).unwrap().render(), "1 + 2x");
        assert_eq!(eval_family(&sym, 2).unwrap().render(), "1 + 6x + 6x^2");
        // C(3k, n) vanishes for 3k < n
        let cy = FamilySpec::plain(Family::Cy219).unwrap();
        assert_eq!(terms(&cy, 3), vec![int(1), int(3), int(27), int(273)]);
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::franel(0).is_err());
        assert!(FamilySpec::new(Family::Franel, None, XParam::None).is_err());
        assert!(FamilySpec::new(Family::Delannoy, Some(3), XParam::None).is_err());
        assert!(FamilySpec::at_x(Family::Delannoy, int(1)).is_err());
        assert!(FamilySpec::plain(Family::DelannoyX).is_err());
        assert!(FamilySpec::plain(Family::Delannoy).unwrap().exact(-1).is_err());
        assert!("nonsense".parse::<Family>().is_err());
        assert_eq!("binom_nk_k".parse::<Family>().unwrap(), Family::BinomNkK);
    }

    #[test]
    fn specializations() {
        let del = terms(&FamilySpec::plain(Family::Delannoy).unwrap(), 100);
        let x1 = terms(&FamilySpec::at_x(Family::DelannoyX, int(1)).unwrap(), 100);
        assert_eq!(del, x1);
        let f1 = terms(&FamilySpec::franel(1).unwrap(), 100);
        let f2 = terms(&FamilySpec::franel(2).unwrap(), 100);
        for n in 0..=100i64 {
            assert_eq!(f1[n as usize], Rational::from_integer(BigInt::from(2).pow(n as u32)));
            assert_eq!(f2[n as usize], Rational::from_integer(binomial(2 * n, n)));
        }
        let fib = terms(&FamilySpec::at_x(Family::BinomNkK, int(1)).unwrap(), 6);
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13].map(int).to_vec());
        let half = terms(&FamilySpec::at_x(Family::Binom2k, rat(1, 2)).unwrap(), 2);
        assert_eq!(half, vec![int(1), int(1), rat(3, 2)]);
    }

    #[test]
    fn apery_secondary_values() {
        assert_eq!(eval_apery_secondary(0), int(0));
        assert_eq!(eval_apery_secondary(1), int(1));
        // 8 B(2) = 3 * 39 * B(1) - B(0)
        assert_eq!(eval_apery_secondary(2), rat(117, 8));
    }

    proptest! {
        #[test]
        fn delannoy_x_has_degree_n(n in 0i64..40) {
            let sym = FamilySpec::symbolic(Family::DelannoyX).unwrap();
            match eval_family(&sym, n).unwrap() {
                FamilyValue::Symbolic(p) => prop_assert_eq!(p.degree(), Some(n as usize)),
                _ => prop_assert!(false),
            }
        }
    }
}
