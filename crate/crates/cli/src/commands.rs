use std::path::{Path, PathBuf};

use apery::arith::{fmt_rational, parse_ratfunc, parse_rational, rat, RatFunc, Rational};
use apery::catalog::{named, x_recurrence};
use apery::contfrac::{search_rescaling, ContinuedFraction, XContinuedFraction};
use apery::limits::{apery_limit, solve_vanishing_init};
use apery::recognize::{min_recognition_digits, recognize_constant, Constant};
use apery::recurrence::{guess_recurrence, required_terms, InitialConditions, Recurrence, SolutionTable};
use apery::sums::{eval_family, Family, FamilySpec, FamilyValue, XParam};
use apery::{exec, Error};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::Value;

use crate::report::{object, scientific, string, strings, Report};
use crate::{CfArgs, ConjectureArgs, ConjectureName, Failure, FamilyArgs, GuessArgs, LimitArgs};

type Outcome = std::result::Result<Report, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// A spec naming an existing file is read as text; anything else is a name.
fn as_file(spec: &str) -> Option<PathBuf> {
    let p = PathBuf::from(spec);
    p.is_file().then_some(p)
}

pub fn family(args: &FamilyArgs) -> Outcome {
    let family: Family = args.family.parse()?;
    let x = match (&args.x, args.symbolic_x) {
        (Some(v), _) => XParam::Value(parse_rational(v)?),
        (None, true) => XParam::Symbolic,
        (None, false) => XParam::None,
    };
    let spec = FamilySpec::new(family, args.d, x)?;
    let values = exec::map_range(args.n as usize + 1, |k| eval_family(&spec, k as i64))
        .into_iter()
        .collect::<apery::Result<Vec<FamilyValue>>>()
        .map_err(Failure::computation)?;
    let rendered: Vec<String> = values.iter().map(FamilyValue::render).collect();

    let mut r = Report::new("family");
    r.input("family", &spec);
    r.input("n", args.n);
    if spec.is_symbolic() {
        for (k, v) in rendered.iter().enumerate() {
            r.line(format!("{k}: {v}"));
        }
    } else {
        r.line(rendered.join(" "));
    }
    r.result("terms", strings(&rendered));
    Ok(r)
}

fn parse_terms(text: &str) -> apery::Result<Vec<Rational>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect()
}

pub fn guess(args: &GuessArgs) -> Outcome {
    let (r_max, d_max) = (args.max_order, args.max_degree);
    let mut r = Report::new("guess");
    r.input("max_order", r_max);
    r.input("max_degree", d_max);
    let terms = match (&args.terms_from, &args.terms_file) {
        (Some(spec), _) => {
            let spec: FamilySpec = spec.parse()?;
            r.input("terms_from", &spec);
            let count = args.count.unwrap_or_else(|| required_terms(r_max, d_max));
            spec.terms(count as i64 - 1).map_err(Failure::computation)?
        }
        (None, Some(path)) => {
            r.input("terms_file", path.display());
            let mut terms = parse_terms(&read_file(path)?)?;
            if let Some(c) = args.count {
                terms.truncate(c);
            }
            terms
        }
        (None, None) => return Err(Failure::usage("one of --terms-from or --terms-file is required")),
    };
    let rec = match guess_recurrence(&terms, r_max, d_max) {
        Ok(Some(rec)) => rec,
        Ok(None) => return Err(Failure::computation(Error::NoRecurrenceFound)),
        Err(e @ Error::InsufficientTerms { .. }) => return Err(Failure::usage(e)),
        Err(e) => return Err(Failure::computation(e)),
    };
    let degree = rec.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let holdout = terms.len() - (r_max + 1) * (d_max + 1) - r_max;
    for l in rec.to_text().lines() {
        r.line(l);
    }
    r.line(format!("verified on all {} terms ({holdout} beyond the fitting windows)", terms.len()));
    r.result("recurrence", rec.to_text());
    r.result("order", string(rec.order()));
    r.result("degree", string(degree));
    r.result("terms_used", string(terms.len()));
    r.diagnostic("holdout_terms", string(holdout));
    Ok(r)
}

struct Resolved {
    name: String,
    rec: Recurrence,
    primary: Option<InitialConditions>,
    secondary: Option<InitialConditions>,
}

fn resolve_rec(spec: &str) -> Result<Resolved, Failure> {
    if let Some(path) = as_file(spec) {
        let rec = Recurrence::from_text(&read_file(&path)?)?;
        let secondary = (rec.order() == 2).then(|| InitialConditions::new(0, vec![rat(0, 1), rat(1, 1)]));
        return Ok(Resolved { name: path.display().to_string(), rec, primary: None, secondary });
    }
    let n = named(spec).map_err(|e| match e {
        Error::Parse(_) | Error::InvalidParameter(_) => Failure::usage(e),
        other => Failure::computation(other),
    })?;
    Ok(Resolved { name: n.name, rec: n.rec, primary: Some(n.primary), secondary: n.secondary })
}

fn parse_basis(names: &[String]) -> Result<Vec<Constant>, Failure> {
    Ok(names.iter().map(|s| s.parse()).collect::<apery::Result<Vec<Constant>>>()?)
}

fn parse_bigint(s: &str) -> Result<BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure::usage(format!("bad integer `{s}`")))
}

fn pick_init(given: &Option<String>, default: Option<InitialConditions>, flag: &str) -> Result<InitialConditions, Failure> {
    match given {
        Some(s) => Ok(InitialConditions::parse(s)?),
        None => default.ok_or_else(|| Failure::usage(format!("{flag} is required for this recurrence"))),
    }
}

pub fn limit(args: &LimitArgs) -> Outcome {
    let res = resolve_rec(&args.rec)?;
    let init_a = pick_init(&args.init_a, res.primary, "--init-a")?;
    let init_b = pick_init(&args.init_b, res.secondary, "--init-b")?;
    let scale = args.scale.as_deref().map(parse_rational).transpose()?;
    let basis = parse_basis(&args.recognize)?;
    let max_coeff = parse_bigint(&args.max_coeff)?;
    let digits = args.digits;

    let mut r = Report::new("limit");
    r.input("rec", &res.name);
    r.input("init_a", init_a.render());
    r.input("init_b", init_b.render());
    r.input("digits", digits);
    if let Some(c) = &scale {
        r.input("scale", fmt_rational(c));
    }
    if !basis.is_empty() {
        r.input("recognize", basis.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    }

    let guard = scale.as_ref().map_or(0, |c| c.abs().to_integer().bits() as u32 / 3 + 2);
    let mut a = SolutionTable::new(res.rec.clone(), init_a)?;
    let mut b = SolutionTable::new(res.rec.clone(), init_b)?;
    let rep = apery_limit(&mut a, &mut b, digits + guard).map_err(Failure::computation)?;
    let (value, bound) = match &scale {
        Some(c) => (rep.limit_estimate.mul_rational(c), rep.error_bound.mul_rational(&c.abs())),
        None => (rep.limit_estimate.clone(), rep.error_bound.clone()),
    };
    let certified = (&value - &bound).agreeing_fixed_digits(&(&value + &bound), digits);
    let decimal = value.to_fixed(certified);

    let label = if scale.is_some() { "scaled limit" } else { "limit" };
    r.line(format!("{label} of B/A for {}: {decimal}", res.name));
    r.line(format!(
        "certified digits: {certified} (N = {}, error bound {}, difference ratio {})",
        rep.terms_used,
        scientific(&bound),
        scientific(&rep.difference_ratio)
    ));
    r.result("limit", decimal);
    r.result("certified_digits", string(certified));
    r.result("terms_used", string(rep.terms_used));
    r.diagnostic("error_bound", scientific(&bound));
    r.diagnostic("difference_ratio", scientific(&rep.difference_ratio));
    r.diagnostic(
        "digit_agreement",
        strings(rep.digit_agreement.iter().map(|(n, d)| format!("{n}:{}", d.min(&certified)))),
    );

    if !basis.is_empty() {
        match recognize_constant(&value.with_precision(certified), &basis, &max_coeff) {
            Some(form) => {
                r.line(format!("recognized: {form} (residual {})", scientific(&form.residual)));
                r.result("recognized", form.to_string());
                r.result(
                    "recognized_terms",
                    object(form.terms.iter().map(|(c, q)| (c.to_string(), string(fmt_rational(q))))),
                );
                r.diagnostic("residual", scientific(&form.residual));
            }
            None => {
                r.line("recognized: none");
                r.result("recognized", "none");
                let need = min_recognition_digits(basis.len());
                let why = if certified < need {
                    format!("{certified} certified digits, at least {need} needed for this basis")
                } else {
                    format!("no relation over {}", r.inputs["recognize"])
                };
                r.failure = Some(Error::RecognitionFailed(why).to_string());
            }
        }
    }
    Ok(r)
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::usage(format!("range `{s}` must look like LO..HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Constants whose components must vanish for a recurrence of order `r`.
fn kill_set(r: usize) -> Vec<Constant> {
    std::iter::once(Constant::Zeta(2)).chain((3..r as u32).map(|j| Constant::Zeta(2 * j))).collect()
}

fn franel_table(d: u32) -> apery::Result<(SolutionTable, Option<InitialConditions>)> {
    let n = named(&format!("franel:d={d}"))?;
    Ok((SolutionTable::new(n.rec, n.primary)?, n.secondary))
}

fn zeta2_case(d: u32, digits: u32) -> apery::Result<Vec<(&'static str, Value)>> {
    let (mut a, secondary) = franel_table(d)?;
    let secondary = secondary.ok_or_else(|| Error::InvalidParameter("no secondary solution".into()))?;
    let mut b = SolutionTable::new(a.recurrence().clone(), secondary.clone())?;
    let rep = apery_limit(&mut a, &mut b, digits)?;
    let zeta2 = Constant::Zeta(2);
    let coefficient = rat(1, d as i64 + 1);
    let expected = zeta2.eval(digits + 20).mul_rational(&coefficient);
    let matched = rep.limit_estimate.agreeing_fixed_digits(&expected, rep.certified_digits);
    let value = rep.limit_estimate.with_precision(rep.certified_digits);
    let form = recognize_constant(&value, &[zeta2.clone()], &BigInt::from(1_000_000));
    let recognized = form.as_ref().map_or("none".to_string(), ToString::to_string);
    let pass = matched >= digits && form.is_some_and(|f| f.coefficient(&zeta2) == coefficient);
    Ok(vec![
        ("order", string(a.recurrence().order())),
        ("secondary_init", string(secondary.render())),
        ("limit", string(rep.decimal())),
        ("certified_digits", string(rep.certified_digits)),
        ("recognized", string(recognized)),
        ("expected", string(format!("{}*zeta2", fmt_rational(&coefficient)))),
        ("digits_matched", string(matched)),
        ("verdict", string(if pass { "pass" } else { "fail" })),
    ])
}

fn zeta4_case(d: u32, digits: u32) -> apery::Result<Vec<(&'static str, Value)>> {
    let (a, _) = franel_table(d)?;
    let order = a.recurrence().order();
    let work = digits.max(20 * order as u32);
    let sol = solve_vanishing_init(&a, &Constant::Zeta(4), &kill_set(order), work)?;
    let d = d as i64;
    let expected = rat(3 * (5 * d + 2), (d + 1) * (d + 2) * (d + 3));
    let pass = sol.coefficient == expected && sol.verified_digits >= digits;
    Ok(vec![
        ("order", string(order)),
        ("free_values", strings(sol.free_values.iter().map(fmt_rational))),
        ("limit", string(sol.report.decimal())),
        ("certified_digits", string(sol.report.certified_digits)),
        ("recognized", string(format!("{}*zeta4", fmt_rational(&sol.coefficient)))),
        ("expected", string(format!("{}*zeta4", fmt_rational(&expected)))),
        ("digits_matched", string(sol.verified_digits)),
        ("verdict", string(if pass { "pass" } else { "fail" })),
    ])
}

pub fn conjecture(args: &ConjectureArgs) -> Outcome {
    let (lo, hi) = parse_range(&args.d_range)?;
    let (min_d, label) = match args.name {
        ConjectureName::FranelZeta2 => (3, "franel-zeta2"),
        ConjectureName::FranelZeta4 => (5, "franel-zeta4"),
    };
    if lo < min_d || hi > 10 {
        return Err(Failure::usage(format!("{label} needs {min_d} <= d <= 10")));
    }
    let digits = args.digits;
    let name = args.name;
    let cases = exec::map((lo..=hi).collect(), |d| {
        exec::sequential(|| match name {
            ConjectureName::FranelZeta2 => zeta2_case(d, digits),
            ConjectureName::FranelZeta4 => zeta4_case(d, digits),
        })
    });

    let mut r = Report::new("conjecture");
    r.input("name", label);
    r.input("d_range", format!("{lo}..{hi}"));
    r.input("digits", digits);
    let mut all_pass = true;
    let mut rows = Vec::new();
    for (d, case) in (lo..=hi).zip(cases) {
        let mut fields = vec![("d", string(d))];
        match case {
            Ok(f) => fields.extend(f),
            Err(e) => {
                fields.push(("error", string(&e)));
                fields.push(("verdict", string("fail")));
            }
        }
        let get = |k: &str| fields.iter().find(|(key, _)| *key == k).and_then(|(_, v)| v.as_str()).unwrap_or("");
        let pass = get("verdict") == "pass";
        all_pass &= pass;
        let line = match get("error") {
            "" => format!(
                "d = {d}: order {}, recognized {}, expected {}, {} digits matched: {}",
                get("order"),
                get("recognized"),
                get("expected"),
                get("digits_matched"),
                get("verdict")
            ),
            e => format!("d = {d}: error: {e}"),
        };
        r.line(line);
        rows.push(object(fields));
    }
    let verdict = if all_pass { "pass" } else { "fail" };
    r.line(format!("overall: {verdict}"));
    r.result("cases", Value::Array(rows));
    r.result("verdict", verdict);
    if !all_pass {
        r.failure = Some(format!("{label}: verification failed"));
    }
    Ok(r)
}

fn reduce(spec: &str, ratio: &RatFunc) -> Result<String, Failure> {
    if let Some(path) = as_file(spec) {
        let rec = Recurrence::from_text(&read_file(&path)?)?;
        return Ok(ContinuedFraction::from_recurrence(&rec, Some(ratio))?.to_text());
    }
    let family: Family = spec.split(':').next().unwrap_or_default().trim().parse()?;
    if family.takes_x() && !spec.contains("x=") {
        let xr = x_recurrence(family)
            .ok_or_else(|| Failure::usage(format!("{family} has no recurrence symbolic in x")))?;
        return Ok(XContinuedFraction::from_x_recurrence(&xr, Some(ratio))?.to_text());
    }
    let res = resolve_rec(spec)?;
    Ok(ContinuedFraction::from_recurrence(&res.rec, Some(ratio))?.to_text())
}

pub fn cf(args: &CfArgs) -> Outcome {
    let mut r = Report::new("cf");
    if let Some(spec) = &args.cf {
        let n = args.n.ok_or_else(|| Failure::usage("--cf needs --n"))?;
        let cf: ContinuedFraction = match as_file(spec) {
            Some(path) => ContinuedFraction::from_text(&read_file(&path)?)?,
            None => ContinuedFraction::builtin(spec)?,
        };
        r.input("cf", spec);
        r.input("n", n);
        let convergents = cf.convergents(n).map_err(Failure::computation)?;
        for (k, c) in convergents.iter().enumerate() {
            r.line(format!("C_{k} = {}", fmt_rational(c)));
        }
        r.result("convergents", strings(convergents.iter().map(fmt_rational)));
        r.result("convergent", fmt_rational(convergents.last().unwrap()));
        return Ok(r);
    }
    let spec = args.from_rec.as_deref().ok_or_else(|| Failure::usage("one of --cf or --from-rec is required"))?;
    r.input("from_rec", spec);
    let (text, ratio) = match &args.rescale {
        Some(s) => {
            r.input("rescale", s);
            let ratio = parse_ratfunc(s, "n")?;
            (reduce(spec, &ratio)?, ratio)
        }
        None => {
            let mut failure = None;
            let found = search_rescaling(|ratio| {
                reduce(spec, ratio).map_err(|f| {
                    let e = Error::NotReducible(f.message.clone());
                    failure = Some(f);
                    e
                })
            });
            match found {
                Ok(v) => v,
                Err(_) => return Err(failure.unwrap_or_else(|| Failure::computation("not reducible"))),
            }
        }
    };
    r.result("rescale", ratio.render("n"));
    for l in text.lines() {
        r.line(l);
    }
    r.result("continued_fraction", text);
    Ok(r)
}
