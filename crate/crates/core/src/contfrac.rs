//! Irregular continued fractions `b0 + a1/(b1 + a2/(b2 + ...))` with partial
//! quotients given by rational functions of the index, and their
//! correspondence with second-order recurrences.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, int, parse_ratfunc, parse_rational, Poly, RatFunc, Rational};
use crate::catalog::XRecurrence;
use crate::error::{Error, Result};
use crate::recurrence::{InitialConditions, Recurrence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    b0: Rational,
    a1: Option<Rational>,
    a: RatFunc,
    b: RatFunc,
}

fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

impl ContinuedFraction {
    /// Partial numerators `a(m)` and denominators `b(m)` for `m >= 1`;
    /// `a1` replaces `a(1)` when given.
    pub fn new(b0: Rational, a1: Option<Rational>, a: RatFunc, b: RatFunc) -> Self {
        ContinuedFraction { b0, a1, a, b }
    }

    /// `ln(1 + 1/x) / 2 = 1/((2x+1) - 1/(3(2x+1) - 4/(5(2x+1) - ...)))`.
    pub fn log(x: &Rational) -> Self {
        let s = int(2) * x + int(1);
        ContinuedFraction::new(
            Rational::zero(),
            Some(Rational::one()),
            RatFunc::from_poly(poly(&[-1, 2, -1])),
            RatFunc::from_poly(poly(&[-1, 2]).scale(&s)),
        )
    }

    /// `arctan(z) = z/(1 + z^2/(3 + 4z^2/(5 + 9z^2/(7 + ...))))`.
    pub fn arctan(z: &Rational) -> Self {
        ContinuedFraction::new(
            Rational::zero(),
            Some(z.clone()),
            RatFunc::from_poly(poly(&[1, -2, 1]).scale(&(z * z))),
            RatFunc::from_poly(poly(&[-1, 2])),
        )
    }

    /// Built-in fractions `log:x=P/Q` and `arctan:z=P/Q`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let value = |key: &str| -> Result<Rational> {
            let v = arg
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| Error::Parse(format!("expected `{name}:{key}=P/Q`")))?;
            parse_rational(v.trim())
        };
        match name.trim() {
            "log" => Ok(Self::log(&value("x")?)),
            "arctan" => Ok(Self::arctan(&value("z")?)),
            other => Err(Error::Parse(format!("unknown continued fraction `{other}`"))),
        }
    }

    pub fn b0(&self) -> &Rational {
        &self.b0
    }

    pub fn a(&self, m: i64) -> Result<Rational> {
        if m == 1 {
            if let Some(a1) = &self.a1 {
                return Ok(a1.clone());
            }
        }
        eval_at(&self.a, m)
    }

    pub fn b(&self, m: i64) -> Result<Rational> {
        eval_at(&self.b, m)
    }

    /// Denominators and numerators `(A(m), B(m))` for `m = 0..=n`.
    pub fn convergent_pairs(&self, n: usize) -> Result<Vec<(Rational, Rational)>> {
        let (mut a_prev, mut a_cur) = (Rational::zero(), Rational::one());
        let (mut b_prev, mut b_cur) = (Rational::one(), self.b0.clone());
        let mut out = vec![(a_cur.clone(), b_cur.clone())];
        for m in 1..=n as i64 {
            let (am, bm) = (self.a(m)?, self.b(m)?);
            let a_next = &bm * &a_cur + &am * &a_prev;
            let b_next = &bm * &b_cur + &am * &b_prev;
            a_prev = std::mem::replace(&mut a_cur, a_next);
            b_prev = std::mem::replace(&mut b_cur, b_next);
            out.push((a_cur.clone(), b_cur.clone()));
        }
        Ok(out)
    }

    /// The convergent `C_n = B(n)/A(n)`.
    pub fn convergent(&self, n: usize) -> Result<Rational> {
        let (a, b) = self.convergent_pairs(n)?.pop().unwrap();
        if a.is_zero() {
            return Err(Error::ZeroDenominatorConvergent(n));
        }
        Ok(b / a)
    }

    /// Convergents `C_0, ..., C_n`.
    pub fn convergents(&self, n: usize) -> Result<Vec<Rational>> {
        self.convergent_pairs(n)?
            .into_iter()
            .enumerate()
            .map(|(m, (a, b))| if a.is_zero() { Err(Error::ZeroDenominatorConvergent(m)) } else { Ok(b / a) })
            .collect()
    }

    /// `u(n+2) = b(n+2) u(n+1) + a(n+2) u(n)` with denominators cleared,
    /// valid from `n = 0`.
    pub fn to_recurrence(&self) -> Result<Recurrence> {
        let two = int(2);
        let a = self.a.shift(&two);
        let b = self.b.shift(&two);
        let den = lcm(a.denom(), b.denom());
        let scaled = |f: &RatFunc| f.numer() * &den.div_rem(f.denom()).0;
        let coeffs = vec![-&scaled(&a), -&scaled(&b), den];
        Ok(Recurrence::new(coeffs, 0)?.remove_common_factor())
    }

    /// Starting values at `n = 0, 1` of the denominator and numerator
    /// solutions for [`Self::to_recurrence`].
    pub fn initial_conditions(&self) -> Result<(InitialConditions, InitialConditions)> {
        let pairs = self.convergent_pairs(1)?;
        Ok((
            InitialConditions::new(0, vec![pairs[0].0.clone(), pairs[1].0.clone()]),
            InitialConditions::new(0, vec![pairs[0].1.clone(), pairs[1].1.clone()]),
        ))
    }

    /// Continued fraction of an order-2 recurrence after rescaling the
    /// solutions by `f` with `f(n+1) = ratio(n) f(n)` and `f(0) = 1`.
    ///
    /// The denominator solution starts `A(-1) = 0, A(0) = 1` and the
    /// numerator `B(0) = 0, B(1) = 1`, so `b0 = 0` and `a1 = ratio(0)`.
    pub fn from_recurrence(rec: &Recurrence, ratio: Option<&RatFunc>) -> Result<Self> {
        if rec.order() != 2 {
            return Err(Error::NotReducible(format!("order {} is not 2", rec.order())));
        }
        let one = RatFunc::one();
        let ratio = ratio.unwrap_or(&one);
        let scaled = rec.rescale(ratio)?;
        if !scaled.leading().is_constant() {
            return Err(Error::NotReducible(format!(
                "leading coefficient {} is not constant",
                scaled.leading().render("n")
            )));
        }
        let minus_two = int(-2);
        let lead = scaled.leading().coeff(0);
        let part = |k: usize| RatFunc::from_poly(scaled.coeff(k).scale(&(-lead.recip()))).shift(&minus_two);
        let a1 = ratio
            .eval(&Rational::zero())
            .filter(|r| !r.is_zero())
            .ok_or(Error::ZeroRatio(0))?;
        Ok(ContinuedFraction::new(Rational::zero(), Some(a1), part(0), part(1)))
    }

    /// Text form with keys `b0:`, optional `a1:`, `a(n):` and `b(n):`.
    pub fn to_text(&self) -> String {
        let mut s = format!("b0: {}\n", fmt_rational(&self.b0));
        if let Some(a1) = &self.a1 {
            s.push_str(&format!("a1: {}\n", fmt_rational(a1)));
        }
        s.push_str(&format!("a(n): {}\nb(n): {}\n", self.a.render("n"), self.b.render("n")));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (mut b0, mut a1, mut a, mut b) = (None, None, None, None);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            let v = v.trim();
            match k.trim() {
                "b0" => b0 = Some(parse_rational(v)?),
                "a1" => a1 = Some(parse_rational(v)?),
                "a(n)" => a = Some(parse_ratfunc(v, "n")?),
                "b(n)" => b = Some(parse_ratfunc(v, "n")?),
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing `{k}`"));
        Ok(ContinuedFraction::new(
            b0.ok_or_else(|| missing("b0"))?,
            a1,
            a.ok_or_else(|| missing("a(n)"))?,
            b.ok_or_else(|| missing("b(n)"))?,
        ))
    }
}

/// Ratios `f(n+1)/f(n)` tried when no rescaling is given: `1`, `n+1`,
/// `(n+1)^2`.
pub fn standard_rescalings() -> Vec<RatFunc> {
    [poly(&[1]), poly(&[1, 1]), poly(&[1, 2, 1])].into_iter().map(RatFunc::from_poly).collect()
}

/// Apply `reduce` with each standard rescaling and return the first success
/// together with the ratio used.
pub fn search_rescaling<T>(mut reduce: impl FnMut(&RatFunc) -> Result<T>) -> Result<(T, RatFunc)> {
    let mut last = Error::NotReducible("no rescaling tried".into());
    for ratio in standard_rescalings() {
        match reduce(&ratio) {
            Ok(v) => return Ok((v, ratio)),
            Err(e @ Error::NotReducible(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// A continued fraction over a parameter family: `b0 = 0`, a fixed `a1`,
/// and `a(n)`, `b(n)` polynomials in `n` with coefficients in `Q[x]`;
/// `a[i]` multiplies `n^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XContinuedFraction {
    pub a1: Rational,
    pub a: Vec<Poly>,
    pub b: Vec<Poly>,
}

/// The polynomial through `(points[t], values[t])`.
fn interpolate(points: &[Rational], values: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (t, (xt, vt)) in points.iter().zip(values).enumerate() {
        let mut basis = Poly::constant(vt.clone());
        for (s, xs) in points.iter().enumerate() {
            if s != t {
                let factor = Poly::new(vec![-xs.clone(), Rational::one()]).scale(&(xt - xs).recip());
                basis = &basis * &factor;
            }
        }
        acc = &acc + &basis;
    }
    acc
}

fn render_bivariate(coeffs: &[Poly]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let single = c.coeffs().iter().filter(|v| !v.is_zero()).count() == 1;
        let mut body = c.render("x");
        let neg = single && body.starts_with('-');
        if neg {
            body.remove(0);
        }
        if !out.is_empty() {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let mono = match i {
            0 => String::new(),
            1 => "n".to_string(),
            _ => format!("n^{i}"),
        };
        match (mono.is_empty(), single, body == "1") {
            (true, true, _) => out.push_str(&body),
            (true, false, _) => out.push_str(&format!("({body})")),
            (false, true, true) => out.push_str(&mono),
            (false, true, false) => out.push_str(&format!("{body}*{mono}")),
            (false, false, _) => out.push_str(&format!("({body})*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl XContinuedFraction {
    /// Reduce the recurrence at sample values of `x` and interpolate the
    /// partial quotients; needs a leading coefficient free of `x`.
    pub fn from_x_recurrence(xr: &XRecurrence, ratio: Option<&RatFunc>) -> Result<Self> {
        let points: Vec<Rational> = (0..=xr.x_degree() as i64).map(|t| int(t + 2)).collect();
        let mut a1 = Rational::zero();
        let mut samples = Vec::new();
        for x in &points {
            let cf = ContinuedFraction::from_recurrence(&xr.specialize(x)?, ratio)?;
            let (Some(a), Some(b)) = (cf.a.as_poly(), cf.b.as_poly()) else {
                return Err(Error::NotReducible("partial quotients are not polynomial in n".into()));
            };
            a1 = cf.a1.unwrap_or_else(Rational::one);
            samples.push((a, b));
        }
        let fit = |pick: fn(&(Poly, Poly)) -> &Poly| -> Vec<Poly> {
            let deg = samples.iter().filter_map(|s| pick(s).degree()).max().unwrap_or(0);
            (0..=deg)
                .map(|i| interpolate(&points, &samples.iter().map(|s| pick(s).coeff(i)).collect::<Vec<_>>()))
                .collect()
        };
        Ok(XContinuedFraction { a1, a: fit(|s| &s.0), b: fit(|s| &s.1) })
    }

    /// The numeric fraction at `x`.
    pub fn at(&self, x: &Rational) -> ContinuedFraction {
        let collapse = |c: &[Poly]| RatFunc::from_poly(Poly::new(c.iter().map(|p| p.eval(x)).collect()));
        ContinuedFraction::new(Rational::zero(), Some(self.a1.clone()), collapse(&self.a), collapse(&self.b))
    }

    pub fn to_text(&self) -> String {
        format!(
            "b0: 0\na1: {}\na(n): {}\nb(n): {}\n",
            fmt_rational(&self.a1),
            render_bivariate(&self.a),
            render_bivariate(&self.b)
        )
    }
}

fn eval_at(f: &RatFunc, m: i64) -> Result<Rational> {
    f.eval(&int(m))
        .ok_or_else(|| Error::InvalidParameter(format!("partial quotient has a pole at {m}")))
}

fn lcm(p: &Poly, q: &Poly) -> Poly {
    let g = Poly::gcd(p, q);
    &p.div_rem(&g).0 * q
}

impl FromStr for ContinuedFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('\n') || s.trim_start().starts_with("b0") {
            Self::from_text(s)
        } else {
            Self::builtin(s)
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a1 = self.a(1).map(|r| fmt_rational(&r)).unwrap_or_else(|_| "?".into());
        write!(
            f,
            "{} + K(a(n)/b(n)), a(1) = {a1}, a(n) = {}, b(n) = {}",
            fmt_rational(&self.b0),
            self.a.render("n"),
            self.b.render("n")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat};
    use crate::catalog::named;
    use crate::recurrence::SolutionTable;

    #[test]
    fn small_convergents() {
        assert_eq!(ContinuedFraction::arctan(&int(1)).convergent(2).unwrap(), rat(3, 4));
        assert_eq!(ContinuedFraction::log(&int(1)).convergent(1).unwrap(), rat(1, 3));
        assert_eq!(ContinuedFraction::log(&int(1)).convergents(3).unwrap(), vec![int(0), rat(1, 3), rat(9, 26), rat(131, 378)]);
        let five = ContinuedFraction::new(int(5), None, RatFunc::one(), RatFunc::one());
        assert_eq!(five.convergent(0).unwrap(), int(5));
    }

    #[test]
    fn zero_denominator() {
        // 1/(0 + ...) has A(1) = 0
        let cf = ContinuedFraction::new(int(0), None, RatFunc::one(), RatFunc::from_poly(poly(&[-1, 1])));
        assert_eq!(cf.convergent(1), Err(Error::ZeroDenominatorConvergent(1)));
    }

    #[test]
    fn recurrences_of_builtins() {
        let log = ContinuedFraction::log(&int(1)).to_recurrence().unwrap();
        assert_eq!(log.coeff(2), &Poly::one());
        assert_eq!(log.coeff(1), &parse_poly("-3(2n+3)", "n").unwrap());
        assert_eq!(log.coeff(0), &parse_poly("(n+1)^2", "n").unwrap());
        let at = ContinuedFraction::arctan(&rat(1, 2)).to_recurrence().unwrap();
        assert_eq!(at.coeff(0), &parse_poly("-(n+1)^2", "n").unwrap());
        let fib = ContinuedFraction::new(int(1), None, RatFunc::one(), RatFunc::one()).to_recurrence().unwrap();
        assert_eq!(fib.coeffs(), &[poly(&[-1]), poly(&[-1]), poly(&[1])]);
    }

    #[test]
    fn recurrence_reproduces_convergents() {
        let cf = ContinuedFraction::arctan(&rat(2, 3));
        let rec = cf.to_recurrence().unwrap();
        let (ia, ib) = cf.initial_conditions().unwrap();
        let mut a = SolutionTable::new(rec.clone(), ia).unwrap();
        let mut b = SolutionTable::new(rec, ib).unwrap();
        let conv = cf.convergents(30).unwrap();
        for n in 0..=30 {
            assert_eq!(b.term(n).unwrap() / a.term(n).unwrap(), conv[n as usize]);
        }
    }

    #[test]
    fn delannoy_x_gives_log_fraction() {
        let x = rat(3, 2);
        let rec = named("delannoy_x:x=3/2").unwrap().rec;
        let cf = ContinuedFraction::from_recurrence(&rec, Some(&RatFunc::from_poly(poly(&[1, 1])))).unwrap();
        let log = ContinuedFraction::log(&x);
        assert_eq!(cf.convergents(40).unwrap(), log.convergents(40).unwrap());
        assert_eq!(cf.to_text(), log.to_text());
        assert!(matches!(ContinuedFraction::from_recurrence(&rec, None), Err(Error::NotReducible(_))));
    }

    #[test]
    fn rescaling_search() {
        let delannoy = named("delannoy_x:x=3/2").unwrap().rec;
        let (cf, ratio) = search_rescaling(|r| ContinuedFraction::from_recurrence(&delannoy, Some(r))).unwrap();
        assert_eq!(ratio, parse_ratfunc("n+1", "n").unwrap());
        assert_eq!(cf, ContinuedFraction::log(&rat(3, 2)));
        let apery = named("apery3").unwrap().rec;
        let e = search_rescaling(|r| ContinuedFraction::from_recurrence(&apery, Some(r))).unwrap_err();
        assert!(matches!(e, Error::NotReducible(_)));
    }

    #[test]
    fn symbolic_log_fraction() {
        let xr = crate::catalog::x_recurrence(crate::sums::Family::DelannoyX).unwrap();
        let ratio = parse_ratfunc("n+1", "n").unwrap();
        let cf = XContinuedFraction::from_x_recurrence(&xr, Some(&ratio)).unwrap();
        assert_eq!(cf.to_text(), "b0: 0\na1: 1\na(n): -n^2 + 2*n - 1\nb(n): (4*x + 2)*n + (-2*x - 1)\n");
        for x in [rat(1, 2), rat(7, 3), int(5)] {
            assert_eq!(cf.at(&x), ContinuedFraction::log(&x));
        }
    }

    #[test]
    fn arctan_recurrence_gives_arctan_fraction() {
        let rec = named("arctan:x=1/2").unwrap().rec;
        let cf = ContinuedFraction::from_recurrence(&rec, Some(&RatFunc::from_poly(poly(&[1, 1])))).unwrap();
        assert_eq!(cf.convergents(40).unwrap(), ContinuedFraction::arctan(&int(1)).convergents(40).unwrap());
    }

    #[test]
    fn direct_extraction_roundtrip() {
        let cf = ContinuedFraction::log(&int(2));
        let rec = cf.to_recurrence().unwrap();
        let back = ContinuedFraction::from_recurrence(&rec, None).unwrap();
        assert_eq!(back.to_recurrence().unwrap(), rec);
    }

    #[test]
    fn text_roundtrip_and_parse() {
        let cf = ContinuedFraction::arctan(&rat(1, 3));
        assert_eq!(ContinuedFraction::from_text(&cf.to_text()).unwrap(), cf);
        assert_eq!("log:x=1".parse::<ContinuedFraction>().unwrap(), ContinuedFraction::log(&int(1)));
        assert!("log:z=1".parse::<ContinuedFraction>().is_err());
        assert!("sin:z=1".parse::<ContinuedFraction>().is_err());
        assert!(ContinuedFraction::from_text("b0: 1\na(n): n").is_err());
    }
}
