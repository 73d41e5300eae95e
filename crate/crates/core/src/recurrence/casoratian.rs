use num_traits::{One, Zero};

use super::{InitialConditions, Recurrence, SolutionTable};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Determinant of a square rational matrix by Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

/// `det [u_i(n + j)]` for `d` solutions, `0 <= i, j < d`.
pub fn casoratian(sols: &mut [SolutionTable], n: i64) -> Result<Rational> {
    let d = sols.first().map(|s| s.recurrence().order()).unwrap_or(0);
    if sols.len() != d {
        return Err(Error::InvalidParameter(format!("need {d} solutions, got {}", sols.len())));
    }
    let mut m = Vec::with_capacity(d);
    for s in sols.iter_mut() {
        m.push(s.range(n, n + d as i64 - 1)?);
    }
    Ok(determinant(m))
}

/// The product `w(n0) * prod_{j=n0}^{n-1} (-1)^d c_0(j)/c_d(j)`.
pub fn casoratian_product(rec: &Recurrence, n0: i64, w0: &Rational, n: i64) -> Result<Rational> {
    let d = rec.order();
    let mut w = w0.clone();
    for j in n0..n {
        let c = rec.coeffs_at(j);
        if c[d].is_zero() {
            return Err(Error::SingularLeadingCoefficient(j));
        }
        w = w * &c[0] / &c[d];
        if d % 2 == 1 {
            w = -w;
        }
    }
    Ok(w)
}

/// Check the Casoratian product formula for `n = 0..=n_max` against
/// directly computed determinants. Returns the determinants.
pub fn casoratian_check(sols: &mut [SolutionTable], n_max: i64) -> Result<Vec<Rational>> {
    let rec = sols
        .first()
        .map(|s| s.recurrence().clone())
        .ok_or_else(|| Error::InvalidParameter("no solutions given".into()))?;
    let n0 = sols.iter().map(|s| s.start()).max().unwrap().max(0);
    let w0 = casoratian(sols, n0)?;
    let mut out = Vec::new();
    let mut w = w0;
    for n in n0..=n_max {
        let direct = casoratian(sols, n)?;
        if direct != w {
            return Err(Error::InvalidParameter(format!("Casoratian mismatch at n = {n}")));
        }
        out.push(direct);
        w = casoratian_product(&rec, n, &w, n + 1)?;
    }
    Ok(out)
}

/// Second solution of an order-2 recurrence from a primary one,
/// `u2(n) = u1(n) * sum_{k<n} w(k) / (u1(k) u1(k+1))` with `w(0) = 1`,
/// valid for `n = 0..=n_max`. The result has `u2(0) = 0`, `u2(1) = 1/u1(0)`.
pub fn secondary_from_primary(primary: &mut SolutionTable, n_max: i64) -> Result<SolutionTable> {
    let rec = primary.recurrence().clone();
    if rec.order() != 2 {
        return Err(Error::InvalidParameter("reduction of order needs an order-2 recurrence".into()));
    }
    if rec.offset() > 0 {
        return Err(Error::InvalidParameter("the relation must hold from n = 0".into()));
    }
    let u1 = primary.range(0, n_max.max(1) + 1)?;
    let mut terms = Vec::with_capacity(u1.len());
    let mut w = Rational::one();
    let mut sum = Rational::zero();
    for n in 0..=n_max.max(1) as usize {
        if u1[n].is_zero() {
            return Err(Error::ZeroPrimaryTerm(n as i64));
        }
        terms.push(&u1[n] * &sum);
        if u1[n + 1].is_zero() {
            return Err(Error::ZeroPrimaryTerm(n as i64 + 1));
        }
        sum += &w / (&u1[n] * &u1[n + 1]);
        w = casoratian_product(&rec, n as i64, &w, n as i64 + 1)?;
    }
    let table = SolutionTable::with_terms(rec.clone(), 0, terms)?;
    let init = table.initial_conditions();
    let mut out = SolutionTable::new(rec, InitialConditions::new(0, init.values))?;
    out.extend_to(n_max)?;
    Ok(out)
}
