use num_traits::Zero;

use super::Recurrence;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Values `u(start), ..., u(start + d - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialConditions {
    pub start: i64,
    pub values: Vec<Rational>,
}

impl InitialConditions {
    pub fn new(start: i64, values: Vec<Rational>) -> Self {
        InitialConditions { start, values }
    }

    /// `"START:V0,V1,..."`, e.g. `-1:0,1` or `0:0,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let (start, vals) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("initial conditions `{s}` must look like START:V0,V1")))?;
        let start: i64 = start.trim().parse().map_err(|_| Error::Parse(format!("bad start index `{start}`")))?;
        let values = vals
            .split(',')
            .map(crate::arith::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(InitialConditions { start, values })
    }

    pub fn render(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(crate::arith::fmt_rational).collect();
        format!("{}:{}", self.start, vals.join(","))
    }
}

/// A solution of a recurrence with a cache of exact terms.
///
/// `terms[i]` holds `u(start + i)`; extending the cache steps the relation
/// forward one index at a time.
#[derive(Clone, Debug)]
pub struct SolutionTable {
    rec: Recurrence,
    start: i64,
    terms: Vec<Rational>,
}

impl SolutionTable {
    pub fn new(rec: Recurrence, init: InitialConditions) -> Result<Self> {
        if init.values.len() != rec.order() {
            return Err(Error::InvalidParameter(format!(
                "need {} initial values, got {}",
                rec.order(),
                init.values.len()
            )));
        }
        if init.start < rec.offset() {
            return Err(Error::InvalidParameter(format!(
                "initial index {} precedes the recurrence offset {}",
                init.start,
                rec.offset()
            )));
        }
        Ok(SolutionTable { rec, start: init.start, terms: init.values })
    }

    /// A table seeded with more than `d` known terms; every window of
    /// `d + 1` consecutive terms must satisfy the relation.
    pub fn with_terms(rec: Recurrence, start: i64, terms: Vec<Rational>) -> Result<Self> {
        let d = rec.order();
        if terms.len() < d {
            return Err(Error::InvalidParameter(format!("need at least {d} terms")));
        }
        for i in 0..terms.len().saturating_sub(d) {
            let n = start + i as i64;
            if n >= rec.offset() && !rec.residual(n, &terms[i..=i + d]).is_zero() {
                return Err(Error::InvalidParameter(format!("terms violate the recurrence at n = {n}")));
            }
        }
        Ok(SolutionTable { rec, start, terms })
    }

    pub fn recurrence(&self) -> &Recurrence {
        &self.rec
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn initial_conditions(&self) -> InitialConditions {
        InitialConditions::new(self.start, self.terms[..self.rec.order()].to_vec())
    }

    /// Largest cached index.
    pub fn last_index(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    /// Extend the cache through `u(n_max)`.
    pub fn extend_to(&mut self, n_max: i64) -> Result<()> {
        let d = self.rec.order();
        while self.last_index() < n_max {
            let n = self.last_index() + 1 - d as i64;
            let c = self.rec.coeffs_at(n);
            if c[d].is_zero() {
                return Err(Error::SingularLeadingCoefficient(n));
            }
            let base = self.terms.len() - d;
            let mut acc = Rational::zero();
            for k in 0..d {
                if !c[k].is_zero() {
                    acc += &c[k] * &self.terms[base + k];
                }
            }
            self.terms.push(-acc / &c[d]);
        }
        Ok(())
    }

    /// `u(n)`, extending the cache as needed.
    pub fn term(&mut self, n: i64) -> Result<Rational> {
        if n < self.start {
            return Err(Error::InvalidParameter(format!("u({n}) precedes the initial index {}", self.start)));
        }
        self.extend_to(n)?;
        Ok(self.terms[(n - self.start) as usize].clone())
    }

    /// Cached `u(n)` without extending.
    pub fn get(&self, n: i64) -> Option<&Rational> {
        if n < self.start {
            return None;
        }
        self.terms.get((n - self.start) as usize)
    }

    /// `u(lo), ..., u(hi)`.
    pub fn range(&mut self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        if lo < self.start {
            return Err(Error::InvalidParameter(format!("u({lo}) precedes the initial index {}", self.start)));
        }
        self.extend_to(hi)?;
        let a = (lo - self.start) as usize;
        let b = (hi - self.start) as usize;
        Ok(self.terms[a..=b].to_vec())
    }

    /// Exact terms `u(max(start, 0)), ..., u(n_max)`.
    pub fn evaluate(&mut self, n_max: i64) -> Result<Vec<Rational>> {
        self.range(self.start.max(0), n_max)
    }
}
