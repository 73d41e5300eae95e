//! Quotients of solutions, their limits with convergence diagnostics,
//! linear forms and series-valued limits.

mod franel;
mod series;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{BigFloat, Rational};
use crate::error::{Error, Result};
use crate::recurrence::{casoratian_product, SolutionTable};

pub use franel::{franel_secondary, franel_secondary_init, negative_index_solution, solve_vanishing_init, VanishingSolution};
pub use series::{series_coefficients, series_limit, SeriesLimit, SymbolicPair};

/// Number of trailing steps whose difference ratios bound the tail.
pub const RATIO_WINDOW: usize = 10;

/// Outcome of [`apery_limit`].
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    /// Index `N` of the last quotient used.
    pub terms_used: i64,
    /// `Q(N)`.
    pub limit_estimate: BigFloat,
    /// Geometric tail bound on `|L - Q(N)|`.
    pub error_bound: BigFloat,
    /// Truncated digits of `Q(n)` agreeing with the estimate, per `n`.
    pub digit_agreement: Vec<(i64, u32)>,
    /// Largest `|ΔQ(n)/ΔQ(n-1)|` over the last steps.
    pub difference_ratio: BigFloat,
    pub certified_digits: u32,
}

impl ConvergenceReport {
    /// The estimate truncated to the certified digits.
    pub fn decimal(&self) -> String {
        self.limit_estimate.to_fixed(self.certified_digits)
    }
}

fn first_index(a: &SolutionTable, b: &SolutionTable) -> i64 {
    a.start().max(b.start()).max(0)
}

/// `B(n)/A(n)`.
pub fn quotient_at(a: &mut SolutionTable, b: &mut SolutionTable, n: i64) -> Result<Rational> {
    let den = a.term(n)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominatorTerm(n));
    }
    Ok(b.term(n)? / den)
}

/// Exact `Q(n) = B(n)/A(n)` for `n = 0..=n_max`.
pub fn quotients(a: &mut SolutionTable, b: &mut SolutionTable, n_max: i64) -> Result<Vec<Rational>> {
    (0..=n_max).map(|n| quotient_at(a, b, n)).collect()
}

/// Exact `Q(n) - Q(n-1)` for `n = 1..=n_max`.
pub fn differences(a: &mut SolutionTable, b: &mut SolutionTable, n_max: i64) -> Result<Vec<Rational>> {
    let q = quotients(a, b, n_max)?;
    Ok(q.windows(2).map(|w| &w[1] - &w[0]).collect())
}

/// Check `Q(n) - Q(n-1) = w(n-1) / (A(n-1) A(n))` for `1 <= n <= n_max`,
/// with the Casoratian `w` propagated from `w(0)` by the product formula.
pub fn difference_identity_check(a: &mut SolutionTable, b: &mut SolutionTable, n_max: i64) -> Result<bool> {
    let rec = a.recurrence().clone();
    if rec.order() != 2 {
        return Err(Error::InvalidParameter("the identity needs an order-2 recurrence".into()));
    }
    let mut w = &a.term(0)? * &b.term(1)? - &a.term(1)? * &b.term(0)?;
    let mut q_prev = quotient_at(a, b, 0)?;
    for n in 1..=n_max {
        let q = quotient_at(a, b, n)?;
        let rhs = &w / (a.term(n - 1)? * a.term(n)?);
        if &q - &q_prev != rhs {
            return Ok(false);
        }
        q_prev = q;
        w = casoratian_product(&rec, n - 1, &w, n)?;
    }
    Ok(true)
}

fn digits_of(bound: &BigFloat) -> f64 {
    if bound.is_zero() {
        f64::INFINITY
    } else {
        -bound.log10_abs()
    }
}

/// Upper bound on `|ΔQ(n)/ΔQ(n-1)|` over the trailing window; `None` if a
/// difference in the window vanishes while the next does not.
fn window_ratio(diffs: &[BigFloat]) -> Option<BigFloat> {
    let tail = &diffs[diffs.len() - RATIO_WINDOW - 1..];
    let mut worst: Option<BigFloat> = None;
    for w in tail.windows(2) {
        if w[1].is_zero() {
            continue;
        }
        if w[0].is_zero() {
            return None;
        }
        let r = (&w[1] / &w[0]).abs();
        worst = Some(match worst {
            Some(m) => m.max(r),
            None => r,
        });
    }
    worst.or_else(|| Some(BigFloat::zero(diffs[0].precision())))
}

/// Limit of `B(n)/A(n)` to `target_digits` certified digits, using the
/// geometric tail bound `|ΔQ(N)| ρ/(1-ρ)` with `ρ` the largest difference
/// ratio over the last [`RATIO_WINDOW`] steps.
pub fn apery_limit(a: &mut SolutionTable, b: &mut SolutionTable, target_digits: u32) -> Result<ConvergenceReport> {
    let precision = target_digits + 20;
    let cap = 40 * (target_digits as i64 + 10) + 200;
    let n0 = first_index(a, b);
    let one = BigFloat::from_int(1, precision);
    let mut qs: Vec<BigFloat> = Vec::new();
    let mut diffs: Vec<BigFloat> = Vec::new();
    let mut last_ratio: Option<BigFloat> = None;
    for n in n0..=n0 + cap {
        let q = BigFloat::from_rational(&quotient_at(a, b, n)?, precision);
        if let Some(prev) = qs.last() {
            diffs.push(&q - prev);
        }
        qs.push(q);
        if diffs.len() <= RATIO_WINDOW {
            continue;
        }
        if diffs[diffs.len() - RATIO_WINDOW - 1..].iter().all(BigFloat::is_zero) {
            return Err(Error::NotConverging("quotients are constant; no differences to extrapolate".into()));
        }
        let Some(rho) = window_ratio(&diffs) else { continue };
        last_ratio = Some(rho.clone());
        if rho >= one {
            continue;
        }
        let bound = &diffs.last().unwrap().abs() * &(&rho / &(&one - &rho));
        if digits_of(&bound) < target_digits as f64 + 1.0 {
            continue;
        }
        let est = qs.last().unwrap().clone();
        let lo = &est - &bound;
        let hi = &est + &bound;
        let certified = lo.agreeing_fixed_digits(&hi, precision - 10);
        if certified < target_digits {
            continue;
        }
        let digit_agreement = qs
            .iter()
            .enumerate()
            .map(|(i, q)| (n0 + i as i64, q.agreeing_fixed_digits(&est, target_digits)))
            .collect();
        return Ok(ConvergenceReport {
            terms_used: n,
            limit_estimate: est,
            error_bound: bound,
            digit_agreement,
            difference_ratio: rho,
            certified_digits: target_digits,
        });
    }
    match last_ratio {
        Some(r) if r < one => {
            let per_step = -r.log10_abs();
            let have = digits_of(&diffs.last().unwrap().abs());
            let more = ((target_digits as f64 - have) / per_step).ceil().max(1.0) as usize;
            let available = (cap + 1) as usize;
            Err(Error::InsufficientTerms { required: available + more, available })
        }
        Some(r) => Err(Error::NotConverging(format!("difference ratio {} is not below 1", r.to_fixed(6)))),
        None => Err(Error::NotConverging("difference ratios undefined".into())),
    }
}

/// Richardson extrapolation of `s(m)` sampled at consecutive indices
/// `m0, m0+1, ...` assuming an expansion in powers of `1/m`. Picks the order
/// whose estimate moves least from the previous one; returns the estimate
/// and that movement.
pub fn richardson(m0: i64, s: &[BigFloat], precision: u32) -> Result<(BigFloat, BigFloat)> {
    if m0 < 1 || s.len() < 4 {
        return Err(Error::InvalidParameter("Richardson needs at least 4 samples at positive indices".into()));
    }
    let max_order = ((s.len() - 1) / 2).min(40);
    let mut best: Option<(BigFloat, BigFloat)> = None;
    let mut prev: Option<BigFloat> = None;
    for k in 1..=max_order {
        let base = s.len() - 1 - k;
        let mut acc = BigFloat::zero(precision);
        let mut fact_j = BigInt::one();
        for j in 0..=k {
            if j > 0 {
                fact_j *= j;
            }
            let m = BigInt::from(m0 + (base + j) as i64);
            let fact_kj: BigInt = (1..=(k - j) as u64).map(BigInt::from).product();
            let mut term = s[base + j].with_precision(precision).mul_int(&num_traits::pow(m, k));
            term = term.div_int(&(&fact_j * &fact_kj));
            if (k - j) % 2 == 1 {
                term = -&term;
            }
            acc = &acc + &term;
        }
        if let Some(p) = &prev {
            let moved = (&acc - p).abs();
            if best.as_ref().map_or(true, |(_, e)| moved < *e) {
                best = Some((acc.clone(), moved));
            }
        }
        prev = Some(acc);
    }
    best.ok_or_else(|| Error::NotConverging("too few samples".into()))
}

/// Limit of `ΔQ(n+1)/ΔQ(n)` over `n <= n_max`, accelerated by Richardson
/// extrapolation; for order-2 Poincaré recurrences this is the ratio of the
/// subdominant to the dominant characteristic root.
pub fn difference_ratio_limit(a: &mut SolutionTable, b: &mut SolutionTable, n_max: i64, digits: u32) -> Result<BigFloat> {
    let n0 = first_index(a, b).max(1);
    let q: Vec<Rational> = (n0 - 1..=n_max + 1).map(|n| quotient_at(a, b, n)).collect::<Result<_>>()?;
    let d: Vec<Rational> = q.windows(2).map(|w| &w[1] - &w[0]).collect();
    if d.iter().any(Zero::is_zero) {
        return Err(Error::NotConverging("vanishing differences".into()));
    }
    let work = digits + 20 + (n_max.max(2) as f64).log10().ceil() as u32 * 40;
    let ratios: Vec<BigFloat> = d.windows(2).map(|w| BigFloat::from_rational(&(&w[1] / &w[0]), work)).collect();
    let (est, _) = richardson(n0, &ratios, work)?;
    Ok(est.with_precision(digits))
}

/// `Σ_{n=1}^{N} w(n-1) / (A(n-1) A(n))` with `w(0) = A(0)`, the Casoratian
/// against the solution `B(0) = 0, B(1) = 1`; equals `Q(N)` exactly.
pub fn telescoped_sum(a: &mut SolutionTable, n_max: i64) -> Result<Rational> {
    let rec = a.recurrence().clone();
    if rec.order() != 2 {
        return Err(Error::InvalidParameter("telescoping needs an order-2 recurrence".into()));
    }
    let mut w = a.term(0)?;
    let mut sum = Rational::zero();
    for n in 1..=n_max {
        let (lo, hi) = (a.term(n - 1)?, a.term(n)?);
        if lo.is_zero() {
            return Err(Error::ZeroDenominatorTerm(n - 1));
        }
        if hi.is_zero() {
            return Err(Error::ZeroDenominatorTerm(n));
        }
        sum += &w / (lo * hi);
        w = casoratian_product(&rec, n - 1, &w, n)?;
    }
    Ok(sum)
}

/// [`telescoped_sum`] as a float.
pub fn telescoped_limit(a: &mut SolutionTable, n_max: i64, precision: u32) -> Result<BigFloat> {
    Ok(BigFloat::from_rational(&telescoped_sum(a, n_max)?, precision))
}

/// `A(n) L - c B(n)` for `n = 0..=n_max`, at the precision of `l`.
pub fn linear_form_decay(
    a: &mut SolutionTable,
    b: &mut SolutionTable,
    l: &BigFloat,
    c: &Rational,
    n_max: i64,
) -> Result<Vec<BigFloat>> {
    let p = l.precision();
    (first_index(a, b)..=n_max)
        .map(|n| {
            let an = a.term(n)?;
            let bn = b.term(n)?;
            let scaled = &(l * &BigFloat::from_rational(&an, p)) - &BigFloat::from_rational(&(c * &bn), p);
            Ok(scaled)
        })
        .collect()
}

#[cfg(test)]
mod tests;
