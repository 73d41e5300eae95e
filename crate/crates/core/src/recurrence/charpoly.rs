use num_traits::Zero;

use super::{Recurrence, SolutionTable};
use crate::arith::{BigFloat, Complex, Poly, Rational};
use crate::error::{Error, Result};

/// Monic `chi(lambda) = sum_k lim c_k(n)/c_d(n) lambda^k`.
pub fn characteristic_polynomial(rec: &Recurrence) -> Result<Poly> {
    let lead = rec.leading();
    let deg = lead.degree().unwrap();
    let top = lead.leading();
    let mut coeffs = Vec::with_capacity(rec.order() + 1);
    for (k, c) in rec.coeffs().iter().enumerate() {
        if c.degree().is_some_and(|dk| dk > deg) {
            return Err(Error::DivergentCoefficient(k));
        }
        coeffs.push(c.coeff(deg) / &top);
    }
    Ok(Poly::new(coeffs))
}

/// Roots of a characteristic polynomial, sorted by decreasing modulus.
#[derive(Clone, Debug)]
pub struct CharRoots {
    pub polynomial: Poly,
    pub roots: Vec<Complex>,
    pub precision: u32,
}

impl CharRoots {
    /// Whether all moduli differ by more than `10^-(P-10)`.
    pub fn distinct_moduli(&self) -> bool {
        let tol = -((self.precision.saturating_sub(10)) as f64);
        self.roots
            .windows(2)
            .all(|w| (&w[0].abs() - &w[1].abs()).log10_abs() > tol)
    }

    pub fn dominant(&self) -> &Complex {
        &self.roots[0]
    }
}

fn horner(coeffs: &[BigFloat], z: &Complex) -> Complex {
    let p = coeffs[0].precision();
    let mut acc = Complex::real(BigFloat::zero(p));
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&Complex::real(c.clone()));
    }
    acc
}

fn from_f64(x: f64, precision: u32) -> BigFloat {
    Rational::from_float(x)
        .map(|r| BigFloat::from_rational(&r, precision))
        .unwrap_or_else(|| BigFloat::zero(precision))
}

/// Durand–Kerner iteration at `precision + 10` digits, at most `200 d`
/// sweeps, accepted when every residual is below `10^-(P-10)`.
pub fn characteristic_roots(poly: &Poly, precision: u32) -> Result<CharRoots> {
    let d = poly
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidParameter("root finding needs degree >= 1".into()))?;
    let wp = precision + 10;
    let monic = poly.monic();
    let coeffs: Vec<BigFloat> = monic.coeffs().iter().map(|c| BigFloat::from_rational(c, wp)).collect();

    // Fujiwara bound for the starting circle
    let radius = (0..d)
        .map(|k| {
            let a = coeffs[k].to_f64().abs();
            2.0 * a.powf(1.0 / (d - k) as f64)
        })
        .fold(1.0f64, f64::max);
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / d as f64 + 0.7;
            Complex::new(from_f64(0.5 * radius * t.cos(), wp), from_f64(0.5 * radius * t.sin(), wp))
        })
        .collect();

    let stop = -((wp - 2) as f64);
    for _ in 0..200 * d {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..d {
            let mut den = Complex::real(BigFloat::from_i64(1, wp));
            for j in 0..d {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            if den.is_zero() {
                // coincident iterates: nudge apart
                z[i] = z[i].add(&Complex::new(from_f64(1e-3, wp), from_f64(1e-3, wp)));
                worst = 0.0;
                continue;
            }
            let step = horner(&coeffs, &z[i]).div(&den);
            let scale = z[i].abs().log10_abs().max(0.0);
            worst = worst.max(step.abs().log10_abs() - scale);
            z[i] = z[i].sub(&step);
        }
        if worst < stop {
            break;
        }
    }

    let tol = -((precision.saturating_sub(10)) as f64);
    let mut max_res = f64::NEG_INFINITY;
    for zi in &z {
        max_res = max_res.max(horner(&coeffs, zi).abs().log10_abs());
    }
    if max_res >= tol {
        return Err(Error::NoConvergence { max_residual_log10: max_res });
    }

    let im_tol = -((precision.saturating_sub(5)) as f64);
    let mut roots: Vec<Complex> = z
        .into_iter()
        .map(|c| {
            let im = if c.im.log10_abs() < im_tol { BigFloat::zero(precision) } else { c.im.with_precision(precision) };
            Complex::new(c.re.with_precision(precision), im)
        })
        .collect();
    roots.sort_by(|a, b| b.abs().cmp(&a.abs()).then(b.re.cmp(&a.re)).then(b.im.cmp(&a.im)));
    Ok(CharRoots { polynomial: monic, roots, precision })
}

/// Which characteristic root a solution's term ratio approaches.
#[derive(Clone, Debug)]
pub struct Classification {
    pub root_index: usize,
    pub ratio: BigFloat,
    /// `|ratio - root|`.
    pub distance: BigFloat,
}

/// Match a ratio `u(n+1)/u(n)` to the nearest characteristic root.
pub fn classify_ratio(ratio: &BigFloat, roots: &CharRoots) -> Result<Classification> {
    if !roots.distinct_moduli() {
        return Err(Error::EqualModuli);
    }
    let r = Complex::real(ratio.clone());
    let (root_index, distance) = roots
        .roots
        .iter()
        .enumerate()
        .map(|(i, z)| (i, r.sub(z).abs()))
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap();
    Ok(Classification { root_index, ratio: ratio.clone(), distance })
}

/// Classify a solution by the ratio of its terms at `n` and `n + 1`.
pub fn poincare_classify(sol: &mut SolutionTable, n: i64, roots: &CharRoots) -> Result<Classification> {
    if !roots.distinct_moduli() {
        return Err(Error::EqualModuli);
    }
    let a = sol.term(n)?;
    let b = sol.term(n + 1)?;
    if a.is_zero() {
        return Err(Error::ZeroTail);
    }
    let ratio = BigFloat::from_rational(&(b / a), roots.precision);
    classify_ratio(&ratio, roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_poly, rat};
    use crate::recurrence::InitialConditions;

    fn rec(c: &[&str], offset: i64) -> Recurrence {
        Recurrence::new(c.iter().map(|s| parse_poly(s, "n").unwrap()).collect(), offset).unwrap()
    }

    #[test]
    fn characteristic_polynomials() {
        let del = rec(&["n+1", "-3(2n+3)", "n+2"], -1);
        assert_eq!(characteristic_polynomial(&del).unwrap(), Poly::from_ints(&[1, -6, 1]));
        let ap = rec(&["(n+1)^3", "-(2n+3)(17n^2+51n+39)", "(n+2)^3"], -1);
        assert_eq!(characteristic_polynomial(&ap).unwrap(), Poly::from_ints(&[1, -34, 1]));
        let pell = rec(&["-1", "-2", "1"], 0);
        assert_eq!(characteristic_polynomial(&pell).unwrap(), Poly::from_ints(&[-1, -2, 1]));
        let bad = rec(&["n^2", "1", "n"], 0);
        assert_eq!(characteristic_polynomial(&bad), Err(Error::DivergentCoefficient(0)));
    }

    #[test]
    fn delannoy_roots() {
        let r = characteristic_roots(&Poly::from_ints(&[1, -6, 1]), 50).unwrap();
        let two = BigFloat::from_i64(2, 60);
        let expect = &BigFloat::from_i64(3, 60) + &(&two * &two.sqrt());
        assert!(r.roots[0].re.close_to(&expect, 45));
        assert!(r.roots[0].im.is_zero());
        assert!(r.distinct_moduli());
    }

    #[test]
    fn complex_and_equal_moduli() {
        // lambda^2 + 1
        let r = characteristic_roots(&Poly::from_ints(&[1, 0, 1]), 30).unwrap();
        assert!(!r.distinct_moduli());
        assert!(r.roots[0].re.close_to(&BigFloat::zero(30), 25));
        // (lambda - 1)^2 converges slowly but within the cap
        let r = characteristic_roots(&Poly::from_ints(&[1, -2, 1]), 30).unwrap();
        assert!(r.roots[0].re.close_to(&BigFloat::from_i64(1, 30), 8));
    }

    #[test]
    fn classify_delannoy_solutions() {
        let del = rec(&["n+1", "-3(2n+3)", "n+2"], -1);
        let roots = characteristic_roots(&characteristic_polynomial(&del).unwrap(), 40).unwrap();
        let mut a = SolutionTable::new(del.clone(), InitialConditions::new(-1, vec![int(0), int(1)])).unwrap();
        let c = poincare_classify(&mut a, 200, &roots).unwrap();
        assert_eq!(c.root_index, 0);
        let pell = rec(&["1", "-6", "1"], 0);
        let roots2 = characteristic_roots(&characteristic_polynomial(&pell).unwrap(), 40).unwrap();
        let mut z = SolutionTable::new(pell, InitialConditions::new(0, vec![int(0), int(0)])).unwrap();
        assert_eq!(poincare_classify(&mut z, 10, &roots2).err(), Some(Error::ZeroTail));
        let x = BigFloat::from_rational(&rat(17, 100), 40);
        assert_eq!(classify_ratio(&x, &roots2).unwrap().root_index, 1);
    }
}
