//! Word-size modular arithmetic and linear algebra for the guesser.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { a + p - b }
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from `2^62`.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// `None` if the denominator vanishes mod `p`.
pub fn reduce(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(r.denom(), p);
    (d != 0).then(|| mul(reduce_int(r.numer(), p), inv(d, p), p))
}

/// Reduced row echelon form of a dense matrix mod `p`, in place.
/// Returns the pivot columns.
pub fn rref(m: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let s = inv(m[row][col], p);
        for v in m[row][col..].iter_mut() {
            *v = mul(*v, s, p);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let f = other[col];
            for c in col..cols {
                if pivot_row[c] != 0 {
                    other[c] = sub(other[c], mul(f, pivot_row[c], p), p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Kernel basis from an RREF: one vector per free column, with that
/// column set to 1 and the other free columns 0.
pub fn kernel(m: &[Vec<u64>], cols: usize, pivots: &[usize], p: u64) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, m[r][f], p);
            }
            v
        })
        .collect()
}

/// Chinese remaindering: combine `x mod m` with `r mod p`.
pub fn crt(x: &BigInt, m: &BigInt, r: u64, p: u64) -> BigInt {
    let xm = reduce_int(x, p);
    let minv = inv(reduce_int(m, p), p);
    let t = mul(sub(r, xm, p), minv, p);
    x + m * BigInt::from(t)
}

/// Rational reconstruction of `a mod m` with both parts below `sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}
