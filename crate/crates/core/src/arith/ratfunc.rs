use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    numer: Poly,
    denom: Poly,
}

impl RatFunc {
    /// Panics if `denom` is zero.
    pub fn new(numer: Poly, denom: Poly) -> Self {
        assert!(!denom.is_zero(), "rational function with zero denominator");
        if numer.is_zero() {
            return RatFunc { numer, denom: Poly::one() };
        }
        let g = Poly::gcd(&numer, &denom);
        let (n, _) = numer.div_rem(&g);
        let (d, _) = denom.div_rem(&g);
        let lc = d.leading().recip();
        RatFunc { numer: n.scale(&lc), denom: d.scale(&lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { numer: p, denom: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.denom.is_constant()
    }

    /// The polynomial this function equals, if it is one.
    pub fn as_poly(&self) -> Option<Poly> {
        self.is_poly().then(|| self.numer.scale(&self.denom.leading().recip()))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom.eval(x);
        (!d.is_zero()).then(|| self.numer.eval(x) / d)
    }

    pub fn recip(&self) -> Self {
        RatFunc::new(self.denom.clone(), self.numer.clone())
    }

    /// `f(var + s)`.
    pub fn shift(&self, s: &Rational) -> Self {
        RatFunc::new(self.numer.shift(s), self.denom.shift(s))
    }

    pub fn render(&self, var: &str) -> String {
        if let Some(p) = self.as_poly() {
            return p.render(var);
        }
        let d = self.denom.primitive_part();
        let c = d.leading() / self.denom.leading();
        format!("({})/({})", self.numer.scale(&c).render(var), d.render(var))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RatFunc::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

impl<'a> Neg for &'a RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { numer: -&self.numer, denom: self.denom.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn reduces_to_lowest_terms() {
        // (n^2 - 1) / (2n + 2) = (n - 1)/2
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[2, 2]));
        assert!(f.is_poly());
        assert_eq!(f.as_poly().unwrap(), Poly::new(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(f.eval(&int(3)), Some(int(1)));
    }

    #[test]
    fn arithmetic_and_poles() {
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 2]));
        let g = &f + &f;
        assert_eq!(g.eval(&int(1)), Some(rat(2, 3)));
        assert_eq!(f.eval(&rat(-1, 2)), None);
        assert_eq!((&f * &f.recip()), RatFunc::one());
        assert!(Zero::is_zero(&(&f - &f).numer().coeff(0)));
        assert_eq!(f.render("x"), "(1)/(2*x + 1)");
    }
}
