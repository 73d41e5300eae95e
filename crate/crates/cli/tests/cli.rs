use std::process::Command;

use apery_cli::{run, Output, Report};

fn apery(args: &[&str]) -> Output {
    run(std::iter::once("apery").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.push("--json");
    let out = apery(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report = Report::from_json(&out.stdout).unwrap();
    assert_eq!(report.to_json(), out.stdout);
    report
}

fn result<'a>(r: &'a Report, key: &str) -> &'a str {
    r.results[key].as_str().unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("apery-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn family_terms() {
    assert_eq!(apery(&["family", "--family", "delannoy", "--n", "4"]).stdout, "1 3 13 63 321\n");
    assert_eq!(apery(&["family", "--family", "franel", "--d", "3", "--n", "3"]).stdout, "1 2 10 56\n");
    let sym = apery(&["family", "--family", "delannoy_x", "--symbolic-x", "--n", "1"]);
    assert!(sym.stdout.contains("1: 1 + 2x"), "{}", sym.stdout);
    let r = json(&["family", "--family", "delannoy_x", "--x", "1/2", "--n", "2"]);
    assert_eq!(r.results["terms"], serde_json::json!(["1", "2", "11/2"]));
}

#[test]
fn family_usage_errors() {
    for args in [
        &["family", "--family", "nope", "--n", "2"][..],
        &["family", "--family", "franel", "--n", "2"],
        &["family", "--family", "delannoy", "--x", "2", "--n", "2"],
        &["family", "--family", "delannoy_x", "--x", "1/0", "--n", "2"],
        &["family", "--n", "2"],
    ] {
        let out = apery(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn guess_franel() {
    let r = json(&["guess", "--terms-from", "franel:d=4", "--max-order", "2", "--max-degree", "4"]);
    assert_eq!(result(&r, "order"), "2");
    let r = json(&["guess", "--terms-from", "franel:d=5", "--max-order", "3", "--max-degree", "12"]);
    assert_eq!(result(&r, "order"), "3");
    assert_eq!(result(&r, "degree"), "6");
}

#[test]
fn guess_constant_sequence() {
    let ones = temp_file("ones.txt", &"1 ".repeat(13));
    let path = ones.to_str().unwrap();
    let out = apery(&["guess", "--terms-file", path, "--max-order", "1", "--max-degree", "0"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("order: 1\noffset: 0\nc_0: -1\nc_1: 1\n"), "{}", out.stdout);
    assert_eq!(apery(&["guess", "--terms-file", path, "--max-order", "2", "--max-degree", "0"]).code, 2);
}

#[test]
fn guess_without_recurrence() {
    let wild: Vec<String> = {
        let (mut a, mut b) = (1u64, 1u64);
        (0..40)
            .map(|k| {
                let t = a * a + k;
                (a, b) = (b, a + b);
                t.to_string()
            })
            .collect()
    };
    let f = temp_file("wild.txt", &wild.join(","));
    let out = apery(&["guess", "--terms-file", f.to_str().unwrap(), "--max-order", "1", "--max-degree", "2"]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stderr.contains("no recurrence"));
}

#[test]
fn limit_delannoy() {
    let r = json(&["limit", "--rec", "delannoy", "--digits", "47", "--recognize", "ln2"]);
    assert_eq!(result(&r, "limit"), "0.34657359027997265470861606072908828403775006718");
    assert_eq!(result(&r, "certified_digits"), "47");
    assert_eq!(result(&r, "recognized"), "1/2*ln2");
    assert_eq!(r.results["recognized_terms"]["ln2"], "1/2");
}

#[test]
fn limit_digits_extend() {
    let short = json(&["limit", "--rec", "apery3", "--digits", "30"]);
    let long = json(&["limit", "--rec", "apery3", "--digits", "60"]);
    let (s, l) = (result(&short, "limit"), result(&long, "limit"));
    assert_eq!(s.len(), "0.".len() + 30);
    assert!(l.starts_with(s));
}

#[test]
fn limit_arctan_scaled() {
    let r = json(&["limit", "--rec", "arctan:x=1/2", "--digits", "50", "--scale", "4", "--recognize", "pi"]);
    assert_eq!(result(&r, "recognized"), "pi");
    assert!(result(&r, "limit").starts_with("3.14159265358979323846264338327950288419716939937510"));
}

#[test]
fn limit_from_file_and_failures() {
    let rec = temp_file("delannoy.rec", "order: 2\noffset: -1\nc_0: n + 1\nc_1: -6*n - 9\nc_2: n + 2\n");
    let p = rec.to_str().unwrap();
    assert_eq!(apery(&["limit", "--rec", p]).code, 2);
    let r = json(&["limit", "--rec", p, "--init-a", "-1:0,1", "--init-b", "0:0,1", "--digits", "20"]);
    assert_eq!(result(&r, "limit"), "0.34657359027997265470");
    let failed = apery(&["limit", "--rec", "delannoy", "--recognize", "catalan"]);
    assert_eq!(failed.code, 1);
    assert!(failed.stderr.contains("recognition failed"));
    assert!(failed.stdout.contains("recognized: none"));
    assert_eq!(apery(&["limit", "--rec", "delannoy", "--recognize", "zeta1"]).code, 2);
    let short = apery(&["limit", "--rec", "delannoy", "--digits", "20", "--recognize", "ln2"]);
    assert_eq!(short.code, 1);
    assert!(short.stderr.contains("at least 30 needed"), "{}", short.stderr);
    let constant = apery(&["limit", "--rec", "delannoy", "--init-b", "-1:0,1"]);
    assert_eq!(constant.code, 1);
    assert!(constant.stderr.contains("not converging"), "{}", constant.stderr);
}

#[test]
fn conjecture_sweeps() {
    let r = json(&["conjecture", "--name", "franel-zeta2", "--d-range", "3..4", "--digits", "40"]);
    assert_eq!(result(&r, "verdict"), "pass");
    let cases = r.results["cases"].as_array().unwrap();
    assert_eq!(cases[0]["recognized"], "1/4*zeta2");
    assert_eq!(cases[1]["recognized"], "1/5*zeta2");
    let r = json(&["conjecture", "--name", "franel-zeta4", "--d-range", "5..5", "--digits", "40"]);
    assert_eq!(r.results["cases"][0]["free_values"], serde_json::json!(["48/7"]));
    assert_eq!(r.results["cases"][0]["recognized"], "27/112*zeta4");
    assert_eq!(apery(&["conjecture", "--name", "franel-zeta4", "--d-range", "3..5"]).code, 2);
    assert_eq!(apery(&["conjecture", "--name", "franel-zeta3", "--d-range", "3..5"]).code, 2);
    assert_eq!(apery(&["conjecture", "--name", "franel-zeta2", "--d-range", "5"]).code, 2);
}

#[test]
fn continued_fractions() {
    let r = json(&["cf", "--cf", "log:x=1", "--n", "3"]);
    assert_eq!(result(&r, "convergent"), "131/378");
    let r = json(&["cf", "--cf", "arctan:z=1", "--n", "2"]);
    assert_eq!(result(&r, "convergent"), "3/4");
    let sym = apery(&["cf", "--from-rec", "delannoy_x", "--rescale", "n+1"]);
    assert_eq!(sym.stdout, "b0: 0\na1: 1\na(n): -n^2 + 2*n - 1\nb(n): (4*x + 2)*n + (-2*x - 1)\n");
    let at = apery(&["cf", "--from-rec", "delannoy_x:x=1", "--rescale", "n+1"]);
    assert_eq!(at.code, 0);
    assert!(at.stdout.contains("b(n): 6*n - 3"), "{}", at.stdout);
    let searched = json(&["cf", "--from-rec", "delannoy_x:x=1"]);
    assert_eq!(result(&searched, "rescale"), "n + 1");
    assert_eq!(apery(&["cf", "--from-rec", "delannoy_x"]).stdout, sym.stdout);
    assert_eq!(apery(&["cf", "--from-rec", "apery3"]).code, 1);
    assert_eq!(apery(&["cf", "--from-rec", "nope"]).code, 2);
    assert_eq!(apery(&["cf", "--cf", "log:x=1"]).code, 2);
    let file = temp_file("log.cf", "b0: 0\na1: 1\na(n): -n^2 + 2*n - 1\nb(n): 6*n - 3\n");
    let r = json(&["cf", "--cf", file.to_str().unwrap(), "--n", "3"]);
    assert_eq!(result(&r, "convergent"), "131/378");
}

#[test]
fn help_and_version() {
    assert_eq!(apery(&["--help"]).code, 0);
    assert_eq!(apery(&["--version"]).code, 0);
    assert_eq!(apery(&[]).code, 2);
}

#[test]
fn binary_streams_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_apery");
    let ok = Command::new(bin).args(["family", "--family", "delannoy", "--n", "4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1 3 13 63 321\n");
    let bad = Command::new(bin).args(["family", "--family", "nope", "--n", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
