mod args;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use densediv::exact::{parse_rational, to_f64, Rational};
use densediv::families::{count, enumerate, is_member, question_search, FamilySpec};
use densediv::gzero::{find_lambda, find_lambda_real, GFunction, ZeroCertificate};
use densediv::integers::factorize;
use densediv::reference::{c_one, matches_digits, truncate_to, truncates_to, C_DIGITS, LAMBDA_DIGITS};
use densediv::rho::{RhoTable, MAX_STEP};
use densediv::Error;
use num_complex::Complex64;
use serde_json::{json, Value};

use args::{Cli, Command, Format, GMethod, Model, TableKind};

pub const SCHEMA: u32 = 1;
pub const OUT_DIR_VAR: &str = "DENSEDIV_OUT_DIR";
const TABLE_I_MAX: u32 = 25;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    Runtime(String),
    /// The report is still printed before exiting.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::Resource(_) => Failure::Resource(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Runtime(_) => 1,
            Failure::Verification(_) => 4,
        }
    }
}

type CmdResult = std::result::Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Resource(m) | Failure::Runtime(m) | Failure::Verification(m) => m,
            };
            eprintln!("densediv: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<u8, Failure> {
    let (text, ok) = dispatch(cli)?;
    emit(cli.out.as_deref(), &text)?;
    Ok(if ok { 0 } else { 4 })
}

fn emit(out: Option<&str>, text: &str) -> std::result::Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let mut path = PathBuf::from(p);
            if path.is_relative() {
                if let Some(dir) = std::env::var_os(OUT_DIR_VAR) {
                    path = PathBuf::from(dir).join(path);
                }
            }
            std::fs::write(&path, text).map_err(|e| Failure::Resource(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.12e}")).unwrap_or_default()
}

fn dispatch(cli: &Cli) -> CmdResult {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Member { n, family } => {
            let spec = family.spec()?;
            let m = is_member(&factorize(*n, None)?, &spec)?;
            Ok((
                match fmt(Format::Plain) {
                    Format::Plain => format!("{m}\n"),
                    Format::Csv => format!("n,family,member\n{n},{spec},{m}\n"),
                    Format::Json => json_text(&json!({"schema": SCHEMA, "n": n, "family": spec.to_string(), "member": m})),
                },
                true,
            ))
        }
        Command::Enumerate { x, family } => {
            let spec = family.spec()?;
            let members = enumerate(&spec, *x)?;
            Ok((
                match fmt(Format::Plain) {
                    Format::Plain => {
                        let v: Vec<String> = members.iter().map(u64::to_string).collect();
                        format!("{}\n", v.join(", "))
                    }
                    Format::Csv => members.iter().fold(String::from("n\n"), |mut s, n| {
                        writeln!(s, "{n}").unwrap();
                        s
                    }),
                    Format::Json => {
                        json_text(&json!({"schema": SCHEMA, "family": spec.to_string(), "x": x, "members": members}))
                    }
                },
                true,
            ))
        }
        Command::Count { x, family } => {
            let spec = family.spec()?;
            let r = count(&spec, *x)?;
            Ok((
                match fmt(Format::Plain) {
                    Format::Plain => {
                        let mut s = format!("{}\nu = {}\n", r.count, r.u);
                        if let (Some(m), Some(q)) = (r.model, r.ratio()) {
                            write!(s, "model = {m}\nratio = {q}\n").unwrap();
                        }
                        s
                    }
                    Format::Csv => format!(
                        "family,x,count,u,model,ratio\n{spec},{x},{},{},{},{}\n",
                        r.count,
                        r.u,
                        opt(r.model),
                        opt(r.ratio())
                    ),
                    Format::Json => json_text(&json!({
                        "schema": SCHEMA, "family": spec.to_string(), "x": x, "count": r.count,
                        "u": r.u, "model": r.model, "ratio": r.ratio(),
                    })),
                },
                true,
            ))
        }
        Command::Table { which, imax, a } => table(*which, *imax, a, fmt(Format::Plain)),
        Command::Verify { suite, nmax, xmax } => {
            let report = verify::run(*suite, *nmax, *xmax)?;
            let ok = report.pass();
            let text = match fmt(Format::Json) {
                Format::Json => json_text(&report.to_json()),
                Format::Plain => report.to_plain(),
                Format::Csv => report.to_csv(),
            };
            if !ok {
                emit(cli.out.as_deref(), &text)?;
                return Err(Failure::Verification(format!("{} check(s) failed", report.failed())));
            }
            Ok((text, true))
        }
        Command::RatioScan { family, x, model } => ratio_scan(&family.spec()?, x, *model, fmt(Format::Csv)),
        Command::Cert { a, rects } => {
            let mut cert = find_lambda(&parse_rational(a)?)?;
            if *rects {
                let g = GFunction::new(cert.a)?;
                let r = cert.rightmost_rect(0.5)?;
                cert = cert.with_rects(&g, &[r])?;
            }
            let mut v = serde_json::to_value(&cert).expect("certificate serialises");
            v["schema"] = json!(SCHEMA);
            Ok((json_text(&v), true))
        }
        Command::Rho { a, umax, step, stride, model } => {
            let aq = parse_rational(a)?;
            if !(*step > 0.0 && *step <= MAX_STEP) {
                return Err(Failure::Usage(format!("--step must lie in (0, {MAX_STEP}]")));
            }
            let table = RhoTable::build(to_f64(&aq), *umax, *step)?;
            let cert: Option<ZeroCertificate> = if *model { Some(find_lambda(&aq)?) } else { None };
            Ok((table.to_csv(cert.as_ref(), *stride)?, true))
        }
        Command::G { a, re, im, method, k } => {
            let g = GFunction::new(to_f64(&parse_rational(a)?))?;
            let s = Complex64::new(*re, *im);
            let v = match method {
                GMethod::Auto => g.eval(s)?,
                GMethod::Series => g.series(s, *k)?,
                GMethod::Integral => g.integral(s),
            };
            Ok((
                match fmt(Format::Plain) {
                    Format::Plain => format!("{:.15e} {:+.15e}i ± {:.2e}\n", v.value.re, v.value.im, v.error),
                    Format::Csv => format!("re,im,error\n{:.15e},{:.15e},{:.3e}\n", v.value.re, v.value.im, v.error),
                    Format::Json => json_text(&json!({
                        "schema": SCHEMA, "a": a, "s": [re, im], "re": v.value.re, "im": v.value.im, "error": v.error,
                    })),
                },
                true,
            ))
        }
        Command::QuestionSearch { i, y, x, max } => {
            let r = question_search(*i, parse_rational(y)?, *x, *max)?;
            Ok((
                match fmt(Format::Json) {
                    Format::Json => json_text(&json!({
                        "schema": SCHEMA, "i": i, "y": y, "x": x, "members": r.members,
                        "consistent": r.consistent(),
                        "prefix_violations": r.prefix_violations, "gap_violations": r.gap_violations,
                    })),
                    _ => {
                        let mut s = format!("members {}\nconsistent {}\n", r.members, r.consistent());
                        for (n, m) in &r.prefix_violations {
                            writeln!(s, "prefix {n} -> {m}").unwrap();
                        }
                        for (m, q, p) in &r.gap_violations {
                            writeln!(s, "gap {m}*{q} missing, {m}*{p} present").unwrap();
                        }
                        s
                    }
                },
                true,
            ))
        }
    }
}

fn a_list(imax: u32, explicit: &[String]) -> std::result::Result<Vec<(Option<u32>, Rational)>, Failure> {
    if explicit.is_empty() {
        if imax == 0 || imax > TABLE_I_MAX {
            return Err(Failure::Usage(format!("--imax must lie in 1..={TABLE_I_MAX}")));
        }
        Ok((1..=imax).map(|i| (Some(i), Rational::new(1, i as u64))).collect())
    } else {
        explicit.iter().map(|s| Ok((None, parse_rational(s)?))).collect()
    }
}

fn render_rows(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &(r.join(",") + "\n");
            }
            s
        }
        Format::Plain => {
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let v: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                v.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = line(header.to_vec());
            for r in rows {
                s += &line(r.iter().map(String::as_str).collect());
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, c)| (h.to_string(), json!(c))).collect()))
                .collect();
            json_text(&json!({"schema": SCHEMA, "rows": rows}))
        }
    }
}

fn table(which: TableKind, imax: u32, explicit: &[String], format: Format) -> CmdResult {
    let list = a_list(imax, explicit)?;
    let mut rows = Vec::new();
    let mut ok = true;
    match which {
        TableKind::Lambda => {
            for (i, a) in list {
                let cert = find_lambda(&a)?;
                let printed = i.and_then(|i| LAMBDA_DIGITS.get(i as usize - 1)).copied();
                let (trunc, matched, delta) = match printed {
                    Some(p) => {
                        let m = truncates_to(cert.lambda, p);
                        ok &= m;
                        (truncate_to(cert.lambda, p), m.to_string(), format!("{:+.3e}", cert.lambda - p.parse::<f64>().unwrap()))
                    }
                    None => (String::new(), String::new(), String::new()),
                };
                rows.push(vec![
                    a.to_string(),
                    format!("{:.10}", cert.lambda),
                    printed.unwrap_or("").to_string(),
                    trunc,
                    matched,
                    delta,
                ]);
            }
            Ok((render_rows(&["a", "lambda", "printed", "truncated", "match", "delta"], &rows, format), ok))
        }
        TableKind::Constants => {
            for (i, a) in list {
                let cert = find_lambda(&a)?;
                let (printed, matched, delta) = match i {
                    Some(1) => {
                        let d = cert.c - c_one();
                        ok &= d.abs() < 1e-4;
                        ("1/(1-e^-γ)".to_string(), (d.abs() < 1e-4).to_string(), format!("{d:+.3e}"))
                    }
                    Some(i) if i as usize <= C_DIGITS.len() + 1 => {
                        let p = C_DIGITS[i as usize - 2];
                        let m = matches_digits(cert.c, p);
                        ok &= m;
                        (p.to_string(), m.to_string(), format!("{:+.3e}", cert.c - p.parse::<f64>().unwrap()))
                    }
                    _ => Default::default(),
                };
                rows.push(vec![
                    a.to_string(),
                    format!("{:.10}", cert.lambda),
                    format!("{:.8}", cert.c),
                    format!("{:.8}", cert.c_contour),
                    printed,
                    matched,
                    delta,
                ]);
            }
            Ok((render_rows(&["a", "lambda", "C", "C_contour", "printed", "match", "delta"], &rows, format), ok))
        }
    }
}

fn ratio_scan(spec: &FamilySpec, xs: &[u64], model: Model, format: Format) -> CmdResult {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Usage("--x must be strictly increasing".into()));
    }
    let x_max = *xs.last().expect("clap requires at least one x");
    let members = enumerate(spec, x_max)?;
    let y = to_f64(&spec.y);
    let a = spec.rho_parameter();
    let lambda = match (model, a) {
        (Model::Power, Some(a)) if a > 0.0 => Some(find_lambda_real(a)?.lambda),
        (Model::Power, _) => return Err(Failure::Usage("the power model needs a family with a > 0".into())),
        _ => None,
    };
    let mut rows = Vec::new();
    for &x in xs {
        let c = members.partition_point(|&n| n <= x) as u64;
        let m = match (model, a) {
            (Model::Rho, Some(a)) => {
                let u = (x as f64).ln() / y.ln();
                let mut m = x as f64 * densediv::rho::rho(a, u)?;
                if spec.squarefree_only {
                    m /= std::f64::consts::PI.powi(2) / 6.0;
                }
                Some(m)
            }
            (Model::Power, _) => Some(x as f64 * (y.ln() / (x as f64).ln()).powf(lambda.unwrap())),
            _ => None,
        };
        rows.push(vec![x.to_string(), c.to_string(), opt(m), opt(m.map(|m| c as f64 / m))]);
    }
    Ok((render_rows(&["x", "count", "model", "ratio"], &rows, format), true))
}
