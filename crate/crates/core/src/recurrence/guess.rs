//! Recurrence guessing by multimodular linear algebra.
//!
//! For order `r` and degree `D` the unknowns are the coefficients of
//! `c_k(n) = sum_j a_{k,j} n^j`, indexed `k (D+1) + j`. The first
//! `(r+1)(D+1)` windows give a square system; its kernel is found modulo
//! word-size primes, lifted by CRT and rational reconstruction, then
//! checked exactly against every supplied term.

use num_bigint::BigInt;
use num_traits::Zero;

use super::modp;
use super::Recurrence;
use crate::arith::{Poly, Rational};
use crate::error::{Error, Result};
use crate::exec;

const MAX_PRIMES: usize = 2000;

/// Terms needed to search up to order `r` and degree `d`: the unknown
/// count plus the order plus a margin of ten holdout windows.
pub fn required_terms(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + 10
}

struct Residues {
    p: u64,
    terms: Vec<u64>,
}

fn residues(terms: &[Rational], p: u64) -> Option<Residues> {
    let terms = terms.iter().map(|t| modp::reduce(t, p)).collect::<Option<Vec<_>>>()?;
    Some(Residues { p, terms })
}

fn system(res: &Residues, r: usize, deg: usize) -> Vec<Vec<u64>> {
    let p = res.p;
    let cols = (r + 1) * (deg + 1);
    (0..cols)
        .map(|n| {
            let mut row = vec![0u64; cols];
            for k in 0..=r {
                let mut v = res.terms[n + k];
                for j in 0..=deg {
                    row[k * (deg + 1) + j] = v;
                    v = modp::mul(v, n as u64 % p, p);
                }
            }
            row
        })
        .collect()
}

struct Echelon {
    pivots: Vec<usize>,
    kernel: Vec<Vec<u64>>,
}

fn echelon(res: &Residues, r: usize, deg: usize) -> Echelon {
    let cols = (r + 1) * (deg + 1);
    let mut m = system(res, r, deg);
    let pivots = modp::rref(&mut m, cols, res.p);
    let kernel = modp::kernel(&m, cols, &pivots, res.p);
    Echelon { pivots, kernel }
}

fn has_relation(res: &Residues, r: usize, deg: usize) -> bool {
    let cols = (r + 1) * (deg + 1);
    let mut m = system(res, r, deg);
    modp::rref(&mut m, cols, res.p).len() < cols
}

fn to_recurrence(v: &[Rational], r: usize, deg: usize) -> Option<Recurrence> {
    let coeffs: Vec<Poly> = (0..=r)
        .map(|k| Poly::new(v[k * (deg + 1)..(k + 1) * (deg + 1)].to_vec()))
        .collect();
    if coeffs[r].is_zero() {
        return None;
    }
    Recurrence::new(coeffs, 0).ok()
}

fn annihilates(rec: &Recurrence, terms: &[Rational]) -> bool {
    let r = rec.order();
    (0..terms.len() - r).all(|n| rec.residual(n as i64, &terms[n..=n + r]).is_zero())
}

/// Lift each kernel vector of the first prime through further primes until
/// one reconstructs to a relation that holds on every term.
fn lift(
    terms: &[Rational],
    primes: &mut impl Iterator<Item = Residues>,
    first: &Residues,
    r: usize,
    deg: usize,
) -> Option<Recurrence> {
    let base = echelon(first, r, deg);
    let cols = (r + 1) * (deg + 1);
    let free: Vec<usize> = (0..cols).filter(|c| !base.pivots.contains(c)).collect();
    let batch = rayon_batch();
    for (idx, &f) in free.iter().enumerate() {
        let mut acc: Vec<BigInt> = base.kernel[idx].iter().map(|&x| BigInt::from(x)).collect();
        let mut modulus = BigInt::from(first.p);
        let mut used = 1;
        while used < MAX_PRIMES {
            let group: Vec<Residues> = primes.by_ref().take(batch).collect();
            if group.is_empty() {
                return None;
            }
            used += group.len();
            let images = exec::map(group, |res| {
                let e = echelon(&res, r, deg);
                let k = e.pivots == base.pivots;
                (res.p, k.then(|| e.kernel[idx].clone()))
            });
            for (p, img) in images {
                let Some(img) = img else { continue };
                debug_assert_eq!(img[f], 1);
                for (a, &x) in acc.iter_mut().zip(&img) {
                    *a = modp::crt(a, &modulus, x, p);
                }
                modulus *= BigInt::from(p);
            }
            let rec: Option<Vec<Rational>> =
                acc.iter().map(|a| modp::rational_reconstruct(a, &modulus)).collect();
            if let Some(v) = rec {
                if let Some(rec) = to_recurrence(&v, r, deg) {
                    if annihilates(&rec, terms) {
                        return Some(rec);
                    }
                }
            }
        }
    }
    None
}

fn rayon_batch() -> usize {
    #[cfg(feature = "parallel")]
    if exec::is_parallel() {
        return rayon::current_num_threads().max(2);
    }
    2
}

/// Find a recurrence of minimal order, then minimal degree, satisfied by
/// `terms[0], terms[1], ...` (indexed from `n = 0`). Returns `Ok(None)` if
/// none exists within the bounds.
pub fn guess_recurrence(terms: &[Rational], max_order: usize, max_degree: usize) -> Result<Option<Recurrence>> {
    let need = required_terms(max_order, max_degree);
    if terms.len() < need {
        return Err(Error::InsufficientTerms { required: need, available: terms.len() });
    }
    if max_order == 0 {
        return Ok(None);
    }
    if terms.iter().all(|t| t.is_zero()) {
        return Err(Error::InvalidParameter("all terms are zero".into()));
    }
    let mut primes = modp::primes().filter_map(|p| residues(terms, p));
    let first = primes.next().unwrap();
    for r in 1..=max_order {
        if !has_relation(&first, r, max_degree) {
            continue;
        }
        // smallest degree with a kernel, assuming monotonicity
        let (mut lo, mut hi) = (0usize, max_degree);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if has_relation(&first, r, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        for deg in lo..=max_degree {
            if deg > lo && !has_relation(&first, r, deg) {
                continue;
            }
            if let Some(rec) = lift(terms, &mut primes, &first, r, deg) {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}
