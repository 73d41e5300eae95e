//! Integral LLL reduction (Lovász parameter 3/4) with the unimodular
//! transform recorded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    /// Reduced rows.
    pub basis: Vec<Vec<BigInt>>,
    /// Unimodular `T` with `basis = T * input`.
    pub transform: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    // indices below are 1-based as in the textbook integral algorithm;
    // row k lives at b[k - 1]
    fn red(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        let dl = &self.d[l];
        let q = (&two_lam + dl).div_floor(&(dl * 2));
        let (bl, hl) = (self.b[l - 1].clone(), self.h[l - 1].clone());
        axpy(&mut self.b[k - 1], &q, &bl);
        axpy(&mut self.h[k - 1], &q, &hl);
        self.lam[k][l] = &self.lam[k][l] - &q * &self.d[l];
        for i in 1..l {
            let v = &q * &self.lam[l][i];
            self.lam[k][i] -= v;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k - 1, k - 2);
        self.h.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let big_b = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&big_b * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big_b;
    }
}

/// LLL-reduce the rows of `basis`.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Result<Reduced> {
    let n = basis.len();
    let h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if n == 0 {
        return Ok(Reduced { basis: vec![], transform: h });
    }
    let mut s = State {
        b: basis.to_vec(),
        h,
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
    };
    s.d[0] = BigInt::one();
    s.d[1] = dot(&s.b[0], &s.b[0]);
    if s.d[1].is_zero() {
        return Err(Error::DependentRows);
    }
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&s.b[k - 1], &s.b[j - 1]);
                for i in 1..j {
                    u = (&s.d[i] * &u - &s.lam[k][i] * &s.lam[j][i]) / &s.d[i - 1];
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentRows);
                    }
                    s.d[k] = u;
                }
            }
        }
        s.red(k, k - 1);
        let lhs = &s.d[k] * &s.d[k - 2] * 4;
        let rhs = &s.d[k - 1] * &s.d[k - 1] * 3 - &s.lam[k][k - 1] * &s.lam[k][k - 1] * 4;
        if lhs < rhs {
            s.swap(k, kmax);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                s.red(k, l);
            }
            k += 1;
        }
    }
    Ok(Reduced { basis: s.b, transform: s.h })
}
