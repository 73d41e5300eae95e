//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, gcd_numerators, int, lcm_denominators, Rational};

/// `coeffs[i]` is the coefficient of `var^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The polynomial `var`.
    pub fn var() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `(var - a)^k` expanded.
    pub fn linear_power(a: &Rational, k: usize) -> Self {
        let lin = Poly::new(vec![-a.clone(), Rational::one()]);
        (0..k).fold(Poly::one(), |acc, _| &acc * &lin)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&int(n))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(var + s)`.
    pub fn shift(&self, s: &Rational) -> Self {
        // Horner in the shifted variable
        let lin = Poly::new(vec![s.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// Coefficients reversed through `deg`, i.e. `var^deg * p(1/var)`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut c = vec![Rational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[deg - i] = a.clone();
        }
        Poly::new(c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep intermediate coefficients small
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Multiply by the lcm of the denominators and divide by the content,
    /// keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<Rational> = self.coeffs.iter().map(|c| c * Rational::from_integer(l.clone())).collect();
        let g = gcd_numerators(&ints);
        Poly::new(ints.iter().map(|c| c / Rational::from_integer(g.clone())).collect())
    }

    /// Integer content of an integral polynomial (gcd of coefficients).
    pub fn content(&self) -> BigInt {
        gcd_numerators(&self.coeffs).abs()
    }

    /// Substitute a polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Canonical text: descending degree, `c*var^k`, e.g. `6*n^2 - n + 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        out
    }

    /// Ascending compact form used for display of polynomials in `x`,
    /// e.g. `1 + 2x + 6x^2`.
    pub fn render_ascending(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = fmt_rational(&mag);
            if mono.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.is_integer() {
                out.push_str(&format!("{coef}{mono}"));
            } else {
                out.push_str(&format!("({coef}){mono}"));
            }
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn eval_examples() {
        let p = Poly::from_ints(&[6, 33, 55]);
        assert_eq!(p.eval_int(0), int(6));
        assert_eq!(Poly::zero().eval_int(7), int(0));
        let q = Poly::from_ints(&[5, 17, 17]);
        assert_eq!(q.eval_int(1), int(39));
    }

    #[test]
    fn division_and_gcd() {
        // (n+1)(n+2) / (n+1)
        let a = Poly::from_ints(&[2, 3, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&a, &Poly::from_ints(&[3, 4, 1]));
        assert_eq!(g, b);
    }

    #[test]
    fn shift_and_render() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift(&int(1)), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(Poly::from_ints(&[-1, 0, -3, 1]).render("n"), "n^3 - 3*n^2 - 1");
        assert_eq!(Poly::new(vec![rat(1, 2), int(-1)]).render("n"), "-n + 1/2");
        assert_eq!(Poly::from_ints(&[1, 2]).render_ascending("x"), "1 + 2x");
        assert_eq!(Poly::zero().render("n"), "0");
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let p = Poly::new(vec![rat(1, 2), rat(3, 4)]);
        assert_eq!(p.primitive_part(), Poly::from_ints(&[2, 3]));
        assert_eq!(Poly::from_ints(&[-4, 6]).primitive_part(), Poly::from_ints(&[-2, 3]));
    }
}
