//! Solutions of higher-order recurrences singled out by conditions at
//! negative indices, and by cancelling constants in their limits.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{apery_limit, ConvergenceReport};
use crate::arith::{int, rat, Rational};
use crate::catalog::guessed_recurrence;
use crate::error::{Error, Result};
use crate::exec;
use crate::arith::BigFloat;
use crate::recognize::{integer_relation, recognize_constant, Constant};
use crate::recurrence::{InitialConditions, Recurrence, SolutionTable};
use crate::sums::FamilySpec;

/// Incrementally reduced linear system over the rationals.
struct Echelon {
    cols: usize,
    /// `(pivot column, row, rhs)` with the row normalized to 1 at the pivot.
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

enum Added {
    Pivot,
    Redundant,
    Inconsistent,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    fn add(&mut self, mut row: Vec<Rational>, mut rhs: Rational) -> Added {
        for (p, r, b) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= &f * y;
                }
                rhs -= &f * b;
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return if rhs.is_zero() { Added::Redundant } else { Added::Inconsistent };
        };
        let inv = row[p].recip();
        row.iter_mut().for_each(|x| *x *= &inv);
        rhs *= &inv;
        for (_, r, b) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    *x -= &f * y;
                }
                *b -= &f * &rhs;
            }
        }
        self.rows.push((p, row, rhs));
        Added::Pivot
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The unique solution once the rank is full.
    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (p, _, b) in &self.rows {
            x[*p] = b.clone();
        }
        x
    }
}

/// Initial values `u(0), ..., u(r-1)` of the solution with `u(0) = 0`,
/// `u(1) = 1`, any `fixed` values, and `u(n) = 0` for `n < 0`, obtained by
/// enforcing the recurrence at `n = -1, -2, ...` until the values are
/// determined.
pub fn negative_index_solution(rec: &Recurrence, fixed: &[(usize, Rational)]) -> Result<InitialConditions> {
    let r = rec.order();
    if r < 2 || rec.offset() != 0 {
        return Err(Error::InvalidParameter("need order >= 2 and offset 0".into()));
    }
    let mut known: Vec<Option<Rational>> = vec![None; r];
    known[0] = Some(Rational::zero());
    known[1] = Some(Rational::one());
    for (i, v) in fixed {
        if *i >= r {
            return Err(Error::InvalidParameter(format!("index {i} is beyond the initial window")));
        }
        known[*i] = Some(v.clone());
    }
    let unknown: Vec<usize> = (0..r).filter(|&i| known[i].is_none()).collect();
    let mut sys = Echelon::new(unknown.len());
    let mut n = -1i64;
    while sys.rank() < unknown.len() && n > -(r as i64) {
        let c = rec.coeffs_at(n);
        let mut row = vec![Rational::zero(); unknown.len()];
        let mut rhs = Rational::zero();
        for (k, ck) in c.iter().enumerate() {
            let idx = n + k as i64;
            if idx < 0 || ck.is_zero() {
                continue;
            }
            let idx = idx as usize;
            match &known[idx] {
                Some(v) => rhs -= ck * v,
                None => {
                    let j = unknown.iter().position(|&u| u == idx).unwrap();
                    row[j] += ck;
                }
            }
        }
        if let Added::Inconsistent = sys.add(row, rhs) {
            return Err(Error::InconsistentConditions(n));
        }
        n -= 1;
    }
    if sys.rank() < unknown.len() {
        return Err(Error::UnderdeterminedSolution(unknown.len() - sys.rank()));
    }
    for (j, v) in unknown.iter().zip(sys.solution()) {
        known[*j] = Some(v);
    }
    Ok(InitialConditions::new(0, known.into_iter().map(Option::unwrap).collect()))
}

/// Extra condition singling out the secondary solution when the
/// negative-index conditions leave freedom.
fn franel_extra(d: u32) -> Vec<(usize, Rational)> {
    if d == 10 {
        vec![(2, rat(381, 4))]
    } else {
        vec![]
    }
}

/// Initial values of the secondary solution for the minimal recurrence
/// `rec` of `sum_k C(n,k)^d`.
pub fn franel_secondary_init(d: u32, rec: &Recurrence) -> Result<InitialConditions> {
    negative_index_solution(rec, &franel_extra(d))
}

/// The secondary solution `B(0) = 0, B(1) = 1` of the guessed minimal
/// recurrence of `sum_k C(n,k)^d`, extended through `n_max`.
pub fn franel_secondary(d: u32, n_max: i64) -> Result<SolutionTable> {
    let rec = guessed_recurrence(&FamilySpec::franel(d)?)?;
    let init = franel_secondary_init(d, &rec)?;
    let mut t = SolutionTable::new(rec, init)?;
    t.extend_to(n_max)?;
    Ok(t)
}

/// Result of [`solve_vanishing_init`].
#[derive(Clone, Debug)]
pub struct VanishingSolution {
    /// `u(2), ..., u(r-1)`.
    pub free_values: Vec<Rational>,
    /// Coefficient of the target constant in the limit.
    pub coefficient: Rational,
    pub table: SolutionTable,
    /// Numerical limit of the constructed solution over `A`.
    pub report: ConvergenceReport,
    /// Truncated digits on which the limit matches `coefficient * target`.
    pub verified_digits: u32,
}

/// Coefficient bound for integer relations among limits.
const MAX_RELATION_COEFF: u128 = 10u128.pow(30);

/// Among solutions with `u(0) = 0, u(1) = 1`, find the one whose limit
/// over `A` has no component along any constant in `kill`, leaving a
/// rational multiple of `target`.
///
/// The `r - 2` free initial values enter the limit affinely:
/// `L(t) = L_0 + Σ t_j L_j` with `L_0` the limit of the solution with
/// `u(2), ..., u(r-1)` zero and `L_j` that of the unit solution at index
/// `j + 1`. A single integer relation among `L_0, L_1, ..., target` yields
/// the free values and the coefficient. The constructed solution's limit
/// is then recognized over `kill ∪ {target}` and must have no `kill`
/// component.
pub fn solve_vanishing_init(
    a: &SolutionTable,
    target: &Constant,
    kill: &[Constant],
    digits: u32,
) -> Result<VanishingSolution> {
    let rec = a.recurrence().clone();
    let r = rec.order();
    if r < 3 {
        return Err(Error::InvalidParameter("need a recurrence of order at least 3".into()));
    }
    if kill.len() != r - 2 {
        return Err(Error::InvalidParameter(format!("order {r} needs {} constants to cancel", r - 2)));
    }
    let inits: Vec<Vec<Rational>> = (1..r)
        .map(|j| {
            let mut v = vec![Rational::zero(); r];
            v[j] = Rational::one();
            v
        })
        .collect();
    let limits = exec::map(inits, |init| -> Result<BigFloat> {
        let mut a = a.clone();
        let mut u = SolutionTable::new(rec.clone(), InitialConditions::new(0, init))?;
        let rep = apery_limit(&mut a, &mut u, digits)?;
        Ok(rep.limit_estimate.with_precision(rep.certified_digits))
    });
    let mut values: Vec<BigFloat> = limits.into_iter().collect::<Result<_>>()?;
    values.push(target.eval(digits));
    let max_coeff = BigInt::from(MAX_RELATION_COEFF);
    let rel = integer_relation(&values, &max_coeff, digits)?
        .ok_or_else(|| Error::RecognitionFailed(format!("no relation between the basis limits and {target}")))?;
    if rel[0].is_zero() {
        return Err(Error::DegenerateSystem("the free values cannot reach a pure multiple of the target".into()));
    }
    let lead = Rational::from_integer(rel[0].clone());
    let free_values: Vec<Rational> = rel[1..r - 1].iter().map(|v| Rational::from_integer(v.clone()) / &lead).collect();
    let coefficient = -Rational::from_integer(rel[r - 1].clone()) / &lead;

    let mut init = vec![int(0), int(1)];
    init.extend(free_values.iter().cloned());
    let mut table = SolutionTable::new(rec.clone(), InitialConditions::new(0, init))?;
    let mut a = a.clone();
    let report = apery_limit(&mut a, &mut table, digits)?;
    let mut basis: Vec<Constant> = kill.to_vec();
    basis.push(target.clone());
    let value = report.limit_estimate.with_precision(report.certified_digits);
    let form = recognize_constant(&value, &basis, &max_coeff)
        .ok_or_else(|| Error::RecognitionFailed(format!("limit {} over {:?}", report.decimal(), basis_names(&basis))))?;
    if kill.iter().any(|c| !form.coefficient(c).is_zero()) || form.coefficient(target) != coefficient {
        return Err(Error::RecognitionFailed(format!("limit recognized as {form}, expected a multiple of {target}")));
    }
    let expected = target.eval(digits + 20).mul_rational(&coefficient);
    let verified_digits = report.limit_estimate.agreeing_fixed_digits(&expected, report.certified_digits);
    Ok(VanishingSolution { free_values, coefficient, table, report, verified_digits })
}

fn basis_names(basis: &[Constant]) -> Vec<String> {
    basis.iter().map(ToString::to_string).collect()
}
