use super::*;
use crate::arith::{int, rat};
use crate::catalog::named;
use crate::recognize::Constant;
use crate::recurrence::InitialConditions;

fn pair(spec: &str) -> (SolutionTable, SolutionTable) {
    let n = named(spec).unwrap();
    (
        SolutionTable::new(n.rec.clone(), n.primary).unwrap(),
        SolutionTable::new(n.rec, n.secondary.unwrap()).unwrap(),
    )
}

#[test]
fn delannoy_quotients() {
    let (mut a, mut b) = pair("delannoy");
    assert_eq!(quotients(&mut a, &mut b, 3).unwrap(), vec![int(0), rat(1, 3), rat(9, 26), rat(131, 378)]);
    assert_eq!(differences(&mut a, &mut b, 3).unwrap(), vec![rat(1, 3), rat(1, 78), rat(1, 2457)]);
    assert!(difference_identity_check(&mut a, &mut b, 100).unwrap());
}

#[test]
fn apery_quotients() {
    let (mut a, mut b) = pair("apery3");
    assert_eq!(quotients(&mut a, &mut b, 1).unwrap(), vec![int(0), rat(1, 5)]);
    assert!(difference_identity_check(&mut a, &mut b, 50).unwrap());
}

#[test]
fn identical_solutions() {
    let (mut a, _) = pair("delannoy");
    let mut b = a.clone();
    assert!(quotients(&mut a, &mut b, 10).unwrap().iter().all(|q| *q == int(1)));
    assert!(matches!(apery_limit(&mut a, &mut b, 20), Err(Error::NotConverging(_))));
    assert!(matches!(difference_ratio_limit(&mut a, &mut b, 40, 20), Err(Error::NotConverging(_))));
}

#[test]
fn zero_denominator() {
    let (mut a, mut b) = pair("delannoy");
    let mut z = SolutionTable::new(a.recurrence().clone(), InitialConditions::new(0, vec![int(0), int(1)])).unwrap();
    assert_eq!(quotients(&mut z, &mut b, 2), Err(Error::ZeroDenominatorTerm(0)));
    assert!(quotients(&mut a, &mut b, 2).is_ok());
}

#[test]
fn delannoy_limit_digits() {
    let (mut a, mut b) = pair("delannoy");
    let rep = apery_limit(&mut a, &mut b, 47).unwrap();
    assert_eq!(rep.decimal(), "0.34657359027997265470861606072908828403775006718");
    assert!(rep.certified_digits >= 47);
    assert!(rep.difference_ratio.to_f64() < 0.04);
}

#[test]
fn apery_limit_is_zeta3_over_six() {
    let (mut a, mut b) = pair("apery3");
    let rep = apery_limit(&mut a, &mut b, 100).unwrap();
    let z = Constant::Zeta(3).eval(120).div_int(&6.into());
    assert!(rep.limit_estimate.agreeing_fixed_digits(&z, 100) >= 100);
    assert!(rep.terms_used <= 120);
}

#[test]
fn arctan_limit_is_quarter_pi() {
    let (mut a, mut b) = pair("arctan:x=1/2");
    let rep = apery_limit(&mut a, &mut b, 50).unwrap();
    let p = Constant::Pi.eval(70).div_int(&4.into());
    assert!(rep.limit_estimate.agreeing_fixed_digits(&p, 50) >= 50);
}

#[test]
fn ratio_limits_match_root_ratios() {
    let two = crate::arith::BigFloat::from_i64(2, 60);
    let s2 = two.sqrt();
    let (mut a, mut b) = pair("delannoy");
    let r = difference_ratio_limit(&mut a, &mut b, 200, 30).unwrap();
    let expect = &crate::arith::BigFloat::from_i64(17, 60) - &s2.mul_int(&12.into());
    assert!(r.agreeing_fixed_digits(&expect, 25) >= 20, "{}", r.to_fixed(30));
    let (mut a, mut b) = pair("apery3");
    let r = difference_ratio_limit(&mut a, &mut b, 200, 30).unwrap();
    let lam = &crate::arith::BigFloat::from_i64(17, 60) + &s2.mul_int(&12.into());
    let expect = &expect / &lam;
    assert!(r.agreeing_fixed_digits(&expect, 25) >= 20, "{}", r.to_fixed(30));
}

#[test]
fn telescoping_equals_quotient() {
    for spec in ["delannoy", "apery3", "delannoy_x:x=2", "arctan:x=1/2"] {
        let (mut a, mut b) = pair(spec);
        for n in [1, 5, 40] {
            assert_eq!(telescoped_sum(&mut a, n).unwrap(), quotient_at(&mut a, &mut b, n).unwrap(), "{spec}");
        }
    }
}

#[test]
fn telescoped_log_values() {
    let (mut a, _) = pair("delannoy_x:x=2");
    let v = telescoped_limit(&mut a, 80, 60).unwrap();
    let l = Constant::Ln(rat(3, 2)).eval(60).div_int(&2.into());
    assert!(v.agreeing_fixed_digits(&l, 40) >= 40);
}

#[test]
fn linear_forms_decay() {
    let (mut a, mut b) = pair("apery3");
    let z = Constant::Zeta(3).eval(200);
    let f = linear_form_decay(&mut a, &mut b, &z, &int(6), 60).unwrap();
    assert!(f.windows(2).skip(1).all(|w| w[1].abs() < w[0].abs()));
    assert!(f[60].abs().log10_abs() < -80.0);
    let zero = linear_form_decay(&mut a, &mut b, &crate::arith::BigFloat::zero(30), &int(0), 10).unwrap();
    assert!(zero.iter().all(|v| v.is_zero()));
}

#[test]
fn richardson_on_known_expansion() {
    // s(m) = 1/3 + 1/m + 1/m^2
    let s: Vec<_> = (5..60)
        .map(|m| crate::arith::BigFloat::from_rational(&(rat(1, 3) + rat(1, m) + rat(1, m * m)), 80))
        .collect();
    let (r, _) = richardson(5, &s, 80).unwrap();
    assert!(r.agreeing_fixed_digits(&crate::arith::BigFloat::from_rational(&rat(1, 3), 80), 60) >= 50);
}
