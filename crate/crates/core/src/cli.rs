//! The `iwasawa` command line.
//!
//! Exit codes: 0 on success, 1 when a computation cannot be certified or a
//! check fails, 2 on bad usage or unreadable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::criterion::{
    check_condition, compare_with_published, format_rational, parse_rational, queries_from_records, read_records,
    table_scan, Family, TableQuery, TableScan,
};
use crate::error::{Error, Result};
use crate::iwasawa::{check_prediction, fit_invariants, predict_linear, ClassNumberSeries};
use crate::lemma31::{dim_ialpha, lemma31_min, run_scan, DimResult, IAlphaInstance, ScanConfig};
use crate::series::{PadicPowerSeries, DEFAULT_PRECISION, DEFAULT_WINDOW};

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Parser)]
#[command(
    name = "iwasawa",
    version,
    about = "Iwasawa invariants, Weierstrass preparation and the quartic CM criterion"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Paper,
}

#[derive(Debug, Args)]
struct Window {
    /// p-adic precision N (coefficients mod p^N).
    #[arg(long = "N", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// T-adic window M (coefficients of T^0 .. T^(M-1)).
    #[arg(long = "M", default_value_t = DEFAULT_WINDOW)]
    window: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weierstrass preparation f = p^mu g U.
    Prep {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        window: Window,
        /// Terms such as "3*T^0, 1*T^1".
        #[arg(long)]
        series: String,
        /// Treat the literal as a truncation of an unknown series.
        #[arg(long)]
        truncated: bool,
    },
    /// Quotient dimension of Z_p[[S,T]]/I_alpha.
    DimIalpha {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        series: String,
        /// Integer or fraction a/b with p not dividing b.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Also compute -alpha and the minimum.
        #[arg(long)]
        both: bool,
    },
    /// Seeded random scan of min(dim I_alpha, dim I_-alpha) <= 1.
    ScanLemma31 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        window: Window,
        /// Print every row, not only violations.
        #[arg(long)]
        rows: bool,
    },
    /// Fit lambda n + mu p^n + nu to observed p-adic class numbers.
    Fit {
        #[arg(long)]
        p: u64,
        /// Comma-separated n:e pairs.
        #[arg(long)]
        points: String,
        /// Also check the linear law lambda,n_base,v_base.
        #[arg(long, allow_hyphen_values = true)]
        law: Option<String>,
        /// First layer the law is checked from.
        #[arg(long, default_value_t = 0)]
        from: u32,
    },
    /// Evaluate the criterion on every record of a file.
    Check {
        #[arg(long)]
        records: PathBuf,
    },
    /// Table scans over a record file.
    Tables {
        #[arg(long)]
        family: String,
        #[arg(long)]
        records: PathBuf,
        /// Diff against the built-in first-10 lists.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Row parameter (m, or t for the cyclic family); default: every row present.
        #[arg(long)]
        row: Option<String>,
        /// Ordering parameters to require (d or s), comma-separated; a..b for ranges.
        #[arg(long)]
        params: Option<String>,
        /// Prime of the scanned records.
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
}

/// Parse `args` (including the program name) and run. Reports go to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotOddPrime(_)
        | Error::PrecisionOverflow { .. }
        | Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::InvalidRecord(_)
        | Error::MismatchedPrime(..)
        | Error::InsufficientData(_) => 2,
        _ => 1,
    }
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: Value) -> Result<()> {
    let res = match format {
        Format::Text => writeln!(out, "{text}"),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serialisable")),
    };
    res.map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Prep { p, window, series, truncated } => {
            let f = parse_series(*p, window, series, *truncated)?;
            let ml = f.mu_lambda();
            let w = f.weierstrass_prep()?;
            let g = w.distinguished_series();
            let value = json!({
                "p": p,
                "precision": f.precision(),
                "window": f.window(),
                "mu": w.mu,
                "lambda": w.lambda,
                "mu_lambda_certified": ml.certified,
                "distinguished": g.signed_coeffs()[..=w.lambda].iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "unit": w.unit.signed_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "unit_precision": w.unit.precision(),
                "certified": w.certified,
            });
            emit(out, format, &w.to_string(), value)?;
            Ok(0)
        }
        Command::DimIalpha { p, window, series, alpha, both } => {
            let f = parse_series(*p, window, series, false)?;
            let inst = parse_alpha(f, alpha)?;
            if *both {
                let res = lemma31_min(&inst)?;
                let text = format!(
                    "{}\n{}\nmin_le_1 = {}",
                    dim_line(alpha, &res.plus),
                    dim_line(&negate_text(alpha), &res.minus),
                    res.min_le_1
                );
                let value = json!({
                    "plus": dim_json(alpha, &res.plus),
                    "minus": dim_json(&negate_text(alpha), &res.minus),
                    "min_le_1": res.min_le_1,
                });
                emit(out, format, &text, value)?;
            } else {
                let res = dim_ialpha(&inst)?;
                emit(out, format, &dim_line(alpha, &res), dim_json(alpha, &res))?;
            }
            Ok(0)
        }
        Command::ScanLemma31 { p, count, seed, window, rows } => {
            let cfg =
                ScanConfig { p: *p, count: *count, seed: *seed, precision: window.precision, window: window.window };
            let report = run_scan(&cfg)?;
            let violations: Vec<_> = report.violations().collect();
            let mut text = format!(
                "p={} seed={} N={} M={}\npassed {}/{} ratio {:.6}",
                report.p,
                report.seed,
                cfg.precision,
                cfg.window,
                report.passed,
                report.total,
                report.ratio()
            );
            let shown: Vec<_> = if *rows { report.rows.iter().collect() } else { violations.clone() };
            if !shown.is_empty() {
                text.push_str("\nindex\tbranch\tdim(+)\tdim(-)\tcert(+)\tcert(-)\tmin_le_1");
                for r in &shown {
                    text.push('\n');
                    text.push_str(&r.line());
                }
            }
            let mut value = json!({
                "p": report.p,
                "seed": report.seed,
                "precision": cfg.precision,
                "window": cfg.window,
                "total": report.total,
                "passed": report.passed,
                "ratio": report.ratio(),
                "violations": violations,
            });
            if *rows {
                value["rows"] = serde_json::to_value(&report.rows).expect("serialisable");
            }
            emit(out, format, &text, value)?;
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Fit { p, points, law, from } => {
            let s = ClassNumberSeries::parse(*p, points)?;
            let fit = fit_invariants(&s)?;
            let mut text = fit.map_or_else(|| "NO_FIT".to_string(), |f| f.to_string());
            let mut value = json!({ "p": p, "fit": fit.map_or(Value::String("NO_FIT".into()), |f| serde_json::to_value(f).expect("serialisable")) });
            let mut code = 0;
            if let Some(law) = law {
                let nums: Vec<i64> = law
                    .split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad law {law:?}"))))
                    .collect::<Result<_>>()?;
                let [lambda, n_base, v_base] = nums[..] else {
                    return Err(Error::Parse(format!("law must be lambda,n_base,v_base, got {law:?}")));
                };
                let lambda = u64::try_from(lambda).map_err(|_| Error::InvalidArgument("lambda must be >= 0".into()))?;
                let l = predict_linear(lambda, n_base, v_base);
                let rep = check_prediction(&s, |n| l.predict(n), *from);
                for c in &rep.points {
                    text.push_str(&format!(
                        "\nn={} observed={} predicted={} {}",
                        c.n,
                        c.observed,
                        c.predicted,
                        if c.pass { "ok" } else { "FAIL" }
                    ));
                }
                text.push_str(&format!("\nlaw nu = {}, all pass: {}", l.nu(), rep.all_pass()));
                value["law"] = json!({ "lambda": lambda, "n_base": n_base, "v_base": v_base, "nu": l.nu() });
                value["prediction"] = serde_json::to_value(&rep).expect("serialisable");
                value["all_pass"] = Value::Bool(rep.all_pass());
                if !rep.all_pass() {
                    code = 1;
                }
            }
            emit(out, format, &text, value)?;
            Ok(code)
        }
        Command::Check { records } => {
            let records = read_records(records)?;
            let reports: Vec<_> = records.iter().map(check_condition).collect();
            let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            emit(out, format, &text, serde_json::to_value(&reports).expect("serialisable"))?;
            Ok(0)
        }
        Command::Tables { family, records, expect, row, params, p } => {
            let family: Family = family.parse()?;
            let records = read_records(records)?;
            let queries = match row {
                Some(row) => {
                    let row = parse_rational(row)?;
                    let orders = match params {
                        Some(list) => parse_param_list(list)?,
                        None => queries_from_records(family, &records)
                            .into_iter()
                            .filter(|q| q.row == row && q.p == *p)
                            .flat_map(|q| q.orders)
                            .collect(),
                    };
                    vec![TableQuery { family, p: *p, row, orders }]
                }
                None => {
                    if params.is_some() {
                        return Err(Error::InvalidArgument("--params needs --row".into()));
                    }
                    queries_from_records(family, &records).into_iter().filter(|q| q.p == *p).collect()
                }
            };
            if queries.is_empty() {
                return Err(Error::InvalidArgument(format!("no {family} records at p = {p}")));
            }
            let mut texts = Vec::new();
            let mut values = Vec::new();
            let mut code = 0;
            for q in &queries {
                let scan = table_scan(q, &records)?;
                let (mut text, mut value) = scan_output(&scan);
                if expect.is_some() {
                    match compare_with_published(&scan) {
                        Some(diff) => {
                            text.push_str(&format!(
                                "\n  published: {}/{} confirmed{}{}",
                                diff.confirmed.len(),
                                diff.expected.len(),
                                list_suffix("missing", &diff.missing),
                                list_suffix("unexpected", &diff.unexpected),
                            ));
                            if !diff.matches() {
                                code = 1;
                            }
                            value["published"] = serde_json::to_value(&diff).expect("serialisable");
                            value["matches_published"] = Value::Bool(diff.matches());
                        }
                        None => {
                            text.push_str("\n  published: no built-in row");
                            value["published"] = Value::Null;
                        }
                    }
                }
                texts.push(text);
                values.push(value);
            }
            emit(out, format, &texts.join("\n"), Value::Array(values))?;
            Ok(code)
        }
    }
}

fn list_suffix(name: &str, v: &[u64]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("; {name}: {}", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
    }
}

fn scan_output(scan: &TableScan) -> (String, Value) {
    let (row_name, order_name) = scan.family.param_names().expect("table family");
    let mut text = format!(
        "{} {row_name}={} p={}: {} passing of {} checked\n  first 10 {order_name}: {}",
        scan.family,
        scan.row,
        scan.p,
        scan.count,
        scan.checked,
        scan.first_ten().join(", ")
    );
    for e in &scan.entries {
        let verdict = if e.report.conclusion_zp2 {
            "pass".to_string()
        } else {
            let failing: Vec<String> = e
                .report
                .hypotheses
                .iter()
                .filter(|h| h.status != crate::criterion::Status::Pass)
                .map(|h| format!("({}) {}", h.id.id(), h.status))
                .collect();
            failing.join(" ")
        };
        text.push_str(&format!("\n  {order_name}={}: {verdict}", e.order));
    }
    let value = serde_json::to_value(scan).expect("serialisable");
    (text, value)
}

fn parse_param_list(list: &str) -> Result<Vec<num_rational::BigRational>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let (a, b): (i64, i64) = (
                a.trim().parse().map_err(|_| Error::Parse(format!("bad range {item:?}")))?,
                b.trim().parse().map_err(|_| Error::Parse(format!("bad range {item:?}")))?,
            );
            out.extend((a..=b).map(|v| num_rational::BigRational::from_integer(v.into())));
        } else {
            out.push(parse_rational(item)?);
        }
    }
    Ok(out)
}

fn parse_series(p: u64, w: &Window, text: &str, truncated: bool) -> Result<PadicPowerSeries> {
    crate::padic::ensure_odd_prime(p)?;
    if w.precision == 0 || w.window == 0 {
        return Err(Error::InvalidArgument("N and M must be positive".into()));
    }
    let f = PadicPowerSeries::parse(p, w.precision, w.window, text)?;
    if truncated {
        PadicPowerSeries::new(p, w.precision, w.window, f.coeffs(), false)
    } else {
        Ok(f)
    }
}

fn parse_alpha(f: PadicPowerSeries, text: &str) -> Result<IAlphaInstance> {
    let bad = || Error::Parse(format!("alpha must be an integer or a/b, got {text:?}"));
    match text.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            if b % f.p() as i64 == 0 {
                return Err(Error::InvalidArgument(format!("denominator {b} is divisible by p")));
            }
            IAlphaInstance::with_ratio(f, a, b)
        }
        None => IAlphaInstance::with_integer(f, text.trim().parse().map_err(|_| bad())?),
    }
}

fn negate_text(alpha: &str) -> String {
    let q = parse_rational(alpha).map(|q| -q);
    q.map_or_else(|_| format!("-({alpha})"), |q| format_rational(&q))
}

fn dim_line(alpha: &str, r: &DimResult) -> String {
    format!(
        "alpha={alpha}: dim={} certified={} branch={}",
        r.dim,
        r.certified,
        r.branch.map_or("UNCERTIFIED", |b| b.tag())
    )
}

fn dim_json(alpha: &str, r: &DimResult) -> Value {
    json!({
        "alpha": alpha,
        "dim": r.dim,
        "certified": r.certified,
        "branch": r.branch,
        "witness": r.witness.as_ref().map(|w| w.signed_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    })
}
