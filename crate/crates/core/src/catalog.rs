//! Named recurrences with their standard initial conditions.
//!
//! Recurrences for the parameter families are known in closed form with a
//! symbolic `x`; the others are guessed from the exact sums and memoized.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{int, Poly, Rational};
use crate::error::{Error, Result};
use crate::recurrence::{guess_recurrence, required_terms, InitialConditions, Recurrence};
use crate::sums::{Family, FamilySpec};

/// A recurrence whose coefficients are polynomials in `n` and `x`:
/// `coeffs[k][j]` is the polynomial in `n` multiplying `x^j u(n+k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XRecurrence {
    coeffs: Vec<Vec<Poly>>,
    offset: i64,
}

impl XRecurrence {
    pub fn new(coeffs: Vec<Vec<Poly>>, offset: i64) -> Self {
        XRecurrence { coeffs, offset }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Highest power of `x` in any coefficient.
    pub fn x_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Coefficients at a fixed `n`, as polynomials in `x`.
    pub fn coeffs_at(&self, n: i64) -> Vec<Poly> {
        let n = int(n);
        self.coeffs
            .iter()
            .map(|ck| Poly::new(ck.iter().map(|p| p.eval(&n)).collect()))
            .collect()
    }

    /// The ordinary recurrence at a numeric `x`.
    pub fn specialize(&self, x: &Rational) -> Result<Recurrence> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|ck| {
                let mut acc = Poly::zero();
                let mut xp = Rational::from_integer(1.into());
                for p in ck {
                    acc = &acc + &p.scale(&xp);
                    xp *= x;
                }
                acc
            })
            .collect();
        Recurrence::new(coeffs, self.offset)
    }

    /// Terms as polynomials in `x`, from initial values at `start`, through
    /// `n_max`. Needs a leading coefficient free of `x`.
    pub fn symbolic_terms(&self, start: i64, init: Vec<Poly>, n_max: i64) -> Result<Vec<Poly>> {
        let d = self.order();
        if self.coeffs[d].len() > 1 && self.coeffs[d][1..].iter().any(|p| !p.is_zero()) {
            return Err(Error::InvalidParameter("leading coefficient depends on x".into()));
        }
        if init.len() != d {
            return Err(Error::InvalidParameter(format!("need {d} initial values")));
        }
        let mut terms = init;
        while start + (terms.len() as i64) <= n_max {
            let n = start + terms.len() as i64 - d as i64;
            let c = self.coeffs_at(n);
            let lead = c[d].coeff(0);
            if num_traits::Zero::is_zero(&lead) {
                return Err(Error::SingularLeadingCoefficient(n));
            }
            let base = terms.len() - d;
            let mut acc = Poly::zero();
            for k in 0..d {
                acc = &acc + &(&c[k] * &terms[base + k]);
            }
            terms.push(acc.scale(&(-lead.recip())));
        }
        Ok(terms)
    }
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// Recurrence in `n` and `x` for a parameter family, if known in closed form.
pub fn x_recurrence(family: Family) -> Option<XRecurrence> {
    Some(match family {
        // (n+2) u(n+2) - (2x+1)(2n+3) u(n+1) + (n+1) u(n)
        Family::DelannoyX => XRecurrence::new(
            vec![vec![p(&[1, 1])], vec![p(&[-3, -2]), p(&[-6, -4])], vec![p(&[2, 1])]],
            -1,
        ),
        // (n+2) u(n+2) - (2n+3) u(n+1) - (4x-1)(n+1) u(n)
        Family::Arctan => XRecurrence::new(
            vec![vec![p(&[1, 1]), p(&[-4, -4])], vec![p(&[-3, -2])], vec![p(&[2, 1])]],
            -1,
        ),
        // u(n+2) - 2 u(n+1) - (x-1) u(n)
        Family::Binom2k => XRecurrence::new(vec![vec![p(&[1]), p(&[-1])], vec![p(&[-2])], vec![p(&[1])]], 0),
        // u(n+2) - u(n+1) - x u(n)
        Family::BinomNkK => XRecurrence::new(vec![vec![p(&[]), p(&[-1])], vec![p(&[-1])], vec![p(&[1])]], 0),
        _ => return None,
    })
}

/// A recurrence with the primary solution's initial values and the
/// secondary ones: `u(0) = 0, u(1) = 1` for order two, and for the Franel
/// sums the solution fixed by vanishing at negative indices.
#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub rec: Recurrence,
    pub primary: InitialConditions,
    pub secondary: Option<InitialConditions>,
    pub family: Option<FamilySpec>,
}

fn guessed_cache() -> &'static Mutex<HashMap<String, Recurrence>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Recurrence>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Search bounds used to guess the recurrence of a family.
pub fn guess_bounds(spec: &FamilySpec) -> (usize, usize) {
    match spec.family() {
        Family::Franel => {
            let d = spec.d().unwrap() as usize;
            ((d + 1) / 2 + 1, (d * d / 2).max(2))
        }
        _ => (4, 8),
    }
}

/// Guess (once per process) the minimal recurrence of a family.
pub fn guessed_recurrence(spec: &FamilySpec) -> Result<Recurrence> {
    let key = spec.to_string();
    if let Some(r) = guessed_cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let (r, d) = guess_bounds(spec);
    let terms = spec.terms(required_terms(r, d) as i64 - 1)?;
    let rec = guess_recurrence(&terms, r, d)?.ok_or(Error::NoRecurrenceFound)?;
    guessed_cache().lock().unwrap().insert(key, rec.clone());
    Ok(rec)
}

fn standard_secondary(rec: &Recurrence) -> Option<InitialConditions> {
    (rec.order() == 2).then(|| InitialConditions::new(0, vec![int(0), int(1)]))
}

/// Build the named recurrence for a family with parameters.
pub fn for_family(spec: &FamilySpec) -> Result<Named> {
    let family = spec.family();
    let name = spec.to_string();
    let (rec, primary) = match family {
        Family::Delannoy => (
            Recurrence::new(vec![p(&[1, 1]), p(&[-9, -6]), p(&[2, 1])], -1)?,
            InitialConditions::new(-1, vec![int(0), int(1)]),
        ),
        Family::Apery3 => (
            Recurrence::new(
                vec![p(&[1, 3, 3, 1]), p(&[-117, -231, -153, -34]), p(&[8, 12, 6, 1])],
                -1,
            )?,
            InitialConditions::new(-1, vec![int(0), int(1)]),
        ),
        Family::DelannoyX | Family::Arctan | Family::Binom2k | Family::BinomNkK => {
            let x = match spec.x() {
                crate::sums::XParam::Value(x) => x.clone(),
                _ => return Err(Error::InvalidParameter(format!("{family} needs a numeric x"))),
            };
            let xr = x_recurrence(family).unwrap();
            let rec = xr.specialize(&x)?;
            let primary = if xr.offset() < 0 {
                InitialConditions::new(-1, vec![int(0), int(1)])
            } else {
                InitialConditions::new(0, spec.terms(1)?)
            };
            (rec, primary)
        }
        _ => {
            let rec = guessed_recurrence(spec)?;
            let r = rec.order() as i64;
            (rec, InitialConditions::new(0, spec.terms(r - 1)?))
        }
    };
    let secondary = match family {
        Family::Franel => Some(crate::limits::franel_secondary_init(spec.d().unwrap(), &rec)?),
        _ => standard_secondary(&rec),
    };
    Ok(Named { name, rec, primary, secondary, family: Some(spec.clone()) })
}

/// Parse `name[:key=value...]`, e.g. `delannoy_x:x=3/2` or `franel:d=5`.
pub fn named(spec: &str) -> Result<Named> {
    for_family(&spec.parse()?)
}
