use std::fmt::Write as _;

use densediv::exact::{parse_rational, Rational};
use densediv::families::{
    check_phi_identity_upto, check_sandwich, check_ssf_identity_upto, check_theta2, enumerate, is_member, FamilySpec,
};
use densediv::gzero::{count_zeros_rect, dgda_identity_check, find_lambda, g_eval_neg_int, locate_complex_zero, GFunction, Rect};
use densediv::integers::{factorize, SpfSieve};
use densediv::reference::{
    c_one, matches_digits, truncates_to, CROSS_CHECK_POINTS, C_DIGITS, G1_COMPLEX_ZERO, IDENTITY_POINTS, LAMBDA_DIGITS,
    NU_DIGITS,
};
use densediv::rho::{dickman, RhoTable, MAX_STEP};
use densediv::specfun::airy::k_zero_quadrature;
use densediv::specfun::k_zeros;
use densediv::Result;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::args::Suite;
use crate::SCHEMA;

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

pub struct Report {
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.suites.iter().flat_map(|s| &s.checks).filter(|c| !c.pass).count()
    }

    pub fn pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let checks: Vec<Value> =
                    s.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
                let passed = s.checks.iter().filter(|c| c.pass).count();
                json!({"suite": s.suite, "passed": passed, "failed": s.checks.len() - passed, "checks": checks})
            })
            .collect();
        json!({"schema": SCHEMA, "pass": self.pass(), "failed": self.failed(), "suites": suites})
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        for suite in &self.suites {
            for c in &suite.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(s, "{tag} {}/{}: {}", suite.suite, c.name, c.detail).unwrap();
            }
        }
        writeln!(s, "{} failed", self.failed()).unwrap();
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("suite,check,pass,detail\n");
        for suite in &self.suites {
            for c in &suite.checks {
                writeln!(s, "{},{},{},\"{}\"", suite.suite, c.name, c.pass, c.detail.replace('"', "'")).unwrap();
            }
        }
        s
    }
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal rationals parse")
}

pub fn run(suite: Suite, nmax: u64, xmax: u64) -> Result<Report> {
    let all = suite == Suite::All;
    let mut suites = Vec::new();
    if all || suite == Suite::Sandwich {
        suites.push(SuiteReport { suite: "sandwich", checks: sandwich(nmax)? });
    }
    if all || suite == Suite::Identities {
        suites.push(SuiteReport { suite: "identities", checks: identities(xmax)? });
    }
    if all || suite == Suite::Rho {
        suites.push(SuiteReport { suite: "rho", checks: rho()? });
    }
    if all || suite == Suite::Zeros {
        suites.push(SuiteReport { suite: "zeros", checks: zeros()? });
    }
    if all || suite == Suite::Saddle {
        suites.push(SuiteReport { suite: "saddle", checks: saddle()? });
    }
    Ok(Report { suites })
}

fn sandwich(nmax: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lists: [(u32, &[u64]); 4] = [
        (1, &[1, 2, 4, 6, 8, 12, 16, 18, 20, 24, 28, 30, 32]),
        (2, &[1, 2, 4, 8, 12, 16, 24, 32]),
        (3, &[1, 2, 4, 8, 16, 24, 32]),
        (4, &[1, 2, 4, 8, 16, 32]),
    ];
    for (i, want) in lists {
        let d = enumerate(&FamilySpec::dense(i, q("2"))?, 32)?;
        let s = enumerate(&FamilySpec::strong_dense(i, q("2"))?, 32)?;
        out.push(check(format!("list D_{i},2"), d == want && s == want, format!("{d:?}")));
    }
    for (n, i) in [(8424u64, 3u32), (65520, 4)] {
        let f = factorize(n, None)?;
        let d = is_member(&f, &FamilySpec::dense(i, q("2"))?)?;
        let s = is_member(&f, &FamilySpec::strong_dense(i, q("2"))?)?;
        out.push(check(format!("{n} in D_{i},2 minus D*_{i},2"), d && !s, format!("dense {d}, strong {s}")));
    }
    for y in ["2", "5/2", "3", "10"] {
        let r = check_sandwich(nmax, 4, q(y))?;
        out.push(check(
            format!("chain y={y}"),
            r.violations.is_empty(),
            match r.violations.first() {
                None => format!("n <= {nmax}, i <= 4: no violations"),
                Some((n, i, link)) => format!("{} violations, first n={n} i={i} link {link}", r.violations.len()),
            },
        ));
    }
    Ok(out)
}

fn identities(xmax: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (a, y) in [("1", "2"), ("1", "3"), ("1/2", "3")] {
        let spec = FamilySpec::b_power(q(a), q(y))?;
        for s in [spec, spec.squarefree()] {
            out.push(check(format!("phi {s}"), check_phi_identity_upto(xmax, &s)?, format!("x <= {xmax}")));
        }
    }
    for y in ["2", "3"] {
        for beta in ["1", "2"] {
            let ok = check_ssf_identity_upto(xmax, q(y), q(beta))?;
            out.push(check(format!("ssf y={y} beta={beta}"), ok, format!("x <= {xmax}")));
        }
    }
    let sieve = SpfSieve::new(xmax.max(2))?;
    for y in ["2", "3"] {
        let mut bad = Vec::new();
        for n in 1..=xmax {
            if !check_theta2(&factorize(n, Some(&sieve))?, q(y))? {
                bad.push(n);
            }
        }
        out.push(check(format!("theta2 y={y}"), bad.is_empty(), format!("n <= {xmax}: {} mismatches", bad.len())));
    }
    Ok(out)
}

fn rho() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for a in [0.0, 0.5, 1.0] {
        let t = RhoTable::build(a, 4.0, MAX_STEP)?;
        let mut worst = 0f64;
        for j in 0..=256 {
            let u = 1.0 + j as f64 / 256.0;
            let closed = 1.0 + ((1.0 + a * u) / (u * (1.0 + a))).ln();
            worst = worst.max((t.value(u)? - closed).abs());
        }
        out.push(check(format!("closed form a={a}"), worst <= 1e-7, format!("max error {worst:.2e} on [1, 2]")));
    }
    let t = RhoTable::build(1.0, 30.0, MAX_STEP)?;
    let v = t.value(20.0)? * 21.0;
    let rel = (v / c_one() - 1.0).abs();
    out.push(check("rho_1(20) (1+20)", rel <= 5e-3, format!("{v:.6}, relative gap {rel:.2e}")));
    for a in [1.0, 0.5, 1.0 / 3.0, 0.25, 0.1] {
        let t = RhoTable::build(a, 30.0, MAX_STEP)?;
        let mut prev = f64::INFINITY;
        let mut bad = 0;
        for (u, r) in t.grid() {
            if r > prev || r > 1.0 || r < dickman(u) {
                bad += 1;
            }
            prev = r;
        }
        out.push(check(format!("monotone and bounded a={a:.4}"), bad == 0, format!("{bad} grid violations, u <= 30")));
    }
    Ok(out)
}

fn zeros() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let exact = g_eval_neg_int(&q("1"), 1);
    out.push(check("g_1(-1) = 0 exactly", exact.is_zero(), exact.to_string()));
    for (k, printed) in LAMBDA_DIGITS.iter().enumerate() {
        let i = k as u64 + 1;
        let cert = find_lambda(&Rational::new(1, i))?;
        out.push(check(format!("lambda 1/{i}"), truncates_to(cert.lambda, printed), format!("{:.10} vs {printed}", cert.lambda)));
        if i == 1 {
            let d = (cert.c - c_one()).abs();
            out.push(check("C 1", d < 1e-4, format!("{:.8}, gap {d:.2e}", cert.c)));
        } else if let Some(p) = C_DIGITS.get(k - 1) {
            out.push(check(format!("C 1/{i}"), matches_digits(cert.c, p), format!("{:.8} vs {p}", cert.c)));
        }
    }
    let g = GFunction::new(1.0)?;
    let seed = Complex64::new(G1_COMPLEX_ZERO.0, G1_COMPLEX_ZERO.1);
    let z = locate_complex_zero(&g, seed)?;
    out.push(check("complex zero of g_1", (z - seed).norm() <= 0.05, format!("{z:.6}")));
    let n = count_zeros_rect(&g, &Rect::new(-3.02, -0.99, 0.1, 11.3)?)?;
    out.push(check("zero-free rectangle", n == 0, format!("[-3.02, -0.99] x [0.1, 11.3]: {n} zeros")));
    let mut worst = 0f64;
    let mut within = true;
    for (a, re, im) in CROSS_CHECK_POINTS {
        let g = GFunction::new(a)?;
        let s = Complex64::new(re, im);
        let (x, y) = (g.series(s, None)?, g.integral(s));
        let gap = (x.value - y.value).norm();
        within &= gap <= x.error + y.error;
        worst = worst.max(gap);
    }
    out.push(check("series vs integral", within && worst < 1e-6, format!("max gap {worst:.2e}")));
    let mut worst = 0f64;
    for (a, re, im) in IDENTITY_POINTS {
        worst = worst.max(dgda_identity_check(a, Complex64::new(re, im), None)?.norm());
    }
    out.push(check("d/da identity", worst < 1e-6, format!("max residual {worst:.2e}")));
    Ok(out)
}

fn saddle() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let nu = k_zeros(4);
    let want: f64 = NU_DIGITS[0].parse().expect("digits parse");
    out.push(check("nu_0 airy", (nu[0] - want).abs() <= 1e-5, format!("{:.9}", nu[0])));
    let quad = k_zero_quadrature(2.2, 2.6)?;
    out.push(check("nu_0 quadrature", (quad - want).abs() <= 1e-3, format!("{quad:.9}")));
    for k in 1..4 {
        out.push(check(format!("nu_{k}"), matches_digits(nu[k], NU_DIGITS[k]), format!("{:.9} vs {}", nu[k], NU_DIGITS[k])));
    }
    let gap = (nu[3] - std::f64::consts::PI * 3.75).abs();
    out.push(check("nu_3 vs pi (3 + 3/4)", gap <= 0.01, format!("gap {gap:.2e}")));
    Ok(out)
}
