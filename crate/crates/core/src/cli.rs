//! Command-line front end.
//!
//! ```text
//! fstirling triangle --kind s1 --f linear:1,0 --t 1 --rows 6 --format csv
//! fstirling harmonic --f linear:1,0 --t 1 --p 2 --n 3 --method ftilde
//! fstirling convpoly --f linear:2,1 --t 1 --n 2 --x 5
//! fstirling eulersum --f linear:1,0 --r 2 --terms 100000 --decimal 10
//! fstirling verify --suite all --f linear:2,1 --t 1 --max-n 8
//! ```
//!
//! Exit codes: 0 on success, 1 when a verification cell fails (reports are
//! still written), 2 on usage or configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::convpoly::{fit_experimental_gf, SigmaValue, SigmaVariant};
use crate::error::{Error, Result};
use crate::exactnum::rational::to_decimal;
use crate::exactnum::{LaurentPoly, Rational};
use crate::fharmonic::{
    euler_sum_numeric, fharmonic_direct, harmonic_via_ftilde, harmonic_via_roots, harmonic_via_subst,
    isobaric_expansion, EulerMode,
};
use crate::fspec::{FSpec, Setting, TValue};
use crate::report::Report;
use crate::stirling::{s2_entry, s2star_entry, Triangle, ORACLE_CAP};
use crate::suites::{matrix, run_suites, KnownIssues, Suite, SuiteOptions, DEFAULT_EULER_TERMS};

pub const MAX_N_ENV: &str = "FSTIRLING_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "fstirling", version, about = "Generalized Stirling numbers and f-harmonic identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a triangle of first-kind, second-kind or modified second-kind numbers.
    Triangle(TriangleArgs),
    /// Evaluate F_n^(p)(t^p) directly or through one of the triangle routes.
    Harmonic(HarmonicArgs),
    /// Evaluate the convolution polynomial analogs or fit F(z) with sigma_n(x) = [z^n] F(z)^x.
    Convpoly(ConvpolyArgs),
    /// Exact partial sums of f-zeta and Euler-type series.
    Eulersum(EulersumArgs),
    /// Run identity suites and emit residual reports.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    S1,
    S2,
    S2star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Ftilde,
    Roots,
    Subst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    HarmonicOverF,
    Fzeta,
    Fzeta2r,
}

impl From<Mode> for EulerMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::HarmonicOverF => EulerMode::HarmonicOverF,
            Mode::Fzeta => EulerMode::FZeta,
            Mode::Fzeta2r => EulerMode::FZeta2r,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Weight function: linear:<a>,<b> | poly:<c0>,... | qpow:<offset> | qpow:<base>,<offset> | table:<path>
    #[arg(long = "f", default_value = "linear:1,0")]
    f: String,
    /// `symbolic` or a nonzero rational
    #[arg(long = "t", default_value = "1")]
    t: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Render rational constants as decimals with this many digits.
    #[arg(long)]
    decimal: Option<usize>,
}

impl Common {
    fn setting(&self) -> Result<Setting> {
        Setting::new(FSpec::parse(&self.f)?, TValue::parse(&self.t)?)
    }
}

#[derive(Debug, Args)]
struct TriangleArgs {
    #[arg(long, value_enum, default_value = "s1")]
    kind: Kind,
    /// Last row index.
    #[arg(long, default_value_t = 6)]
    rows: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct HarmonicArgs {
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, value_enum, default_value = "direct")]
    method: Method,
    /// Print the isobaric expansion of the order-p extraction instead.
    #[arg(long)]
    isobaric: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ConvpolyArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    x: i64,
    /// sigma (x!_f scaling) or sigma-tilde (x! scaling)
    #[arg(long, default_value = "sigma")]
    variant: String,
    /// Fit F(z) through z^n at the given x instead of evaluating one value.
    #[arg(long)]
    fit: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct EulersumArgs {
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value_t = 1000)]
    terms: usize,
    #[arg(long, value_enum, default_value = "harmonic-over-f")]
    mode: Mode,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Run over the full sweep matrix instead of the single --f/--t setting.
    #[arg(long)]
    matrix: bool,
    /// Replaces each suite's default n bound (also read from FSTIRLING_MAX_N).
    #[arg(long)]
    max_n: Option<usize>,
    /// Terms in the Euler-sum partial sums.
    #[arg(long, default_value_t = DEFAULT_EULER_TERMS)]
    terms: usize,
    /// Write every failing cell to this file in the known-issues format.
    #[arg(long)]
    record_failures: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Triangle(a) => triangle(a),
        Command::Harmonic(a) => harmonic(a),
        Command::Convpoly(a) => convpoly(a),
        Command::Eulersum(a) => eulersum(a),
        Command::Verify(a) => verify(a),
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn render(v: &LaurentPoly, decimal: Option<usize>) -> String {
    match (decimal, v.as_constant()) {
        (Some(d), Some(c)) => to_decimal(&c, d),
        _ => v.to_string(),
    }
}

fn render_rational(v: &Rational, decimal: Option<usize>) -> String {
    match decimal {
        Some(d) => to_decimal(v, d),
        None => v.to_string(),
    }
}

fn value_json(v: &LaurentPoly, decimal: Option<usize>) -> Value {
    match (decimal, v.as_constant()) {
        (Some(d), Some(c)) => Value::String(to_decimal(&c, d)),
        _ => serde_json::to_value(v).expect("serializes"),
    }
}

fn csv_text(rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row).map_err(crate::stirling::csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn triangle(a: TriangleArgs) -> Result<i32> {
    let setting = a.common.setting()?;
    let rows: Vec<Vec<LaurentPoly>> = match a.kind {
        Kind::S1 => Triangle::for_setting(&setting, a.rows)?.rows().to_vec(),
        Kind::S2 => (0..=a.rows).map(|n| (0..=n).map(|k| s2_entry(&setting, n, k)).collect()).collect::<Result<_>>()?,
        Kind::S2star => (0..=a.rows)
            .map(|k| (0..=a.rows).map(|j| s2star_entry(&setting.f, k, j)).collect())
            .collect::<Result<_>>()?,
    };
    let d = a.common.decimal;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Csv => csv_text(&rows.iter().map(|r| r.iter().map(|v| render(v, d)).collect()).collect::<Vec<_>>())?,
        Format::Json => {
            let rows: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(|v| value_json(v, d)).collect()).collect();
            let kind = format!("{:?}", a.kind).to_lowercase();
            let doc = json!({ "kind": kind, "f": setting.f.to_string(), "t": setting.t.to_string(), "rows": rows });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn harmonic(a: HarmonicArgs) -> Result<i32> {
    if a.isobaric {
        let poly = isobaric_expansion(a.p)?;
        let text = match a.common.format {
            Some(Format::Json) => {
                serde_json::to_string_pretty(&json!({ "p": a.p, "expansion": poly.to_string() }))? + "\n"
            }
            _ => format!("{poly}\n"),
        };
        emit(&a.common, &text)?;
        return Ok(0);
    }
    let setting = a.common.setting()?;
    let value = match a.method {
        Method::Direct => fharmonic_direct(&setting.f, a.p, a.n, &setting.t_elem().pow(a.p as i64)?)?,
        Method::Ftilde => harmonic_via_ftilde(&setting, a.p, a.n)?,
        Method::Roots => harmonic_via_roots(&setting, a.p, a.n)?,
        Method::Subst => harmonic_via_subst(&setting, a.p, a.n)?.value,
    };
    let d = a.common.decimal;
    let text = match a.common.format {
        Some(Format::Json) => {
            let doc = json!({
                "f": setting.f.to_string(),
                "t": setting.t.to_string(),
                "p": a.p,
                "n": a.n,
                "method": format!("{:?}", a.method).to_lowercase(),
                "value": value_json(&value, d),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Some(Format::Csv) => csv_text(&[
            vec!["p".into(), "n".into(), "value".into()],
            vec![a.p.to_string(), a.n.to_string(), render(&value, d)],
        ])?,
        None => format!("{}\n", render(&value, d)),
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn convpoly(a: ConvpolyArgs) -> Result<i32> {
    let setting = a.common.setting()?;
    if a.fit {
        let fit = fit_experimental_gf(&setting, a.x, a.n)?;
        let code = if fit.report.passed() { 0 } else { 1 };
        emit(&a.common, &(serde_json::to_string_pretty(&fit)? + "\n"))?;
        return Ok(code);
    }
    let variant: SigmaVariant = a.variant.parse()?;
    if a.x < 0 {
        return Err(Error::domain(format!("sigma_{}({}) needs x > n", a.n, a.x)));
    }
    let v = SigmaValue::compute(&setting, variant, a.n, a.x as usize)?;
    let d = a.common.decimal;
    let text = match a.common.format {
        Some(Format::Json) => {
            let mut doc = serde_json::to_value(&v)?;
            doc["value"] = value_json(&v.value, d);
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Some(Format::Csv) => csv_text(&[
            vec!["n".into(), "x".into(), "value".into()],
            vec![v.n.to_string(), v.x.to_string(), render(&v.value, d)],
        ])?,
        None => format!("{}\n", render(&v.value, d)),
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn eulersum(a: EulersumArgs) -> Result<i32> {
    let setting = a.common.setting()?;
    let v = euler_sum_numeric(&setting.f, a.r, a.terms, a.mode.into())?;
    let d = a.common.decimal;
    let text = match a.common.format {
        Some(Format::Json) => {
            let doc = json!({
                "f": setting.f.to_string(),
                "r": a.r,
                "N": a.terms,
                "mode": EulerMode::from(a.mode).name(),
                "value": render_rational(&v, d),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Some(Format::Csv) => {
            csv_text(&[vec!["N".into(), "value".into()], vec![a.terms.to_string(), render_rational(&v, d)]])?
        }
        None => format!("{}\n", render_rational(&v, d)),
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn max_n_from_env() -> Result<Option<usize>> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::parse(format!("{MAX_N_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn reports_csv(reports: &[Report], d: Option<usize>) -> Result<String> {
    let mut rows =
        vec![["identity", "params", "indices", "lhs", "rhs", "residual", "pass", "note"].map(String::from).to_vec()];
    for r in reports {
        let params = serde_json::to_string(&r.params)?;
        for c in &r.cells {
            let idx = c.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            rows.push(vec![
                r.identity.clone(),
                params.clone(),
                idx,
                render(&c.lhs, d),
                render(&c.rhs, d),
                render(&c.residual, d),
                c.pass.to_string(),
                c.note.clone().unwrap_or_default(),
            ]);
        }
    }
    csv_text(&rows)
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let suites = Suite::parse_list(&a.suite)?;
    let max_n = match a.max_n {
        Some(n) => Some(n),
        None => max_n_from_env()?,
    };
    if suites.contains(&Suite::S1Oracle) && max_n.is_some_and(|n| n > ORACLE_CAP) {
        return Err(Error::OracleCap { n: max_n.unwrap_or_default(), cap: ORACLE_CAP });
    }
    let settings = if a.matrix { matrix() } else { vec![a.common.setting()?] };
    let opts = SuiteOptions { max_n, euler_terms: a.terms };
    let reports = run_suites(&suites, &settings, &opts)?;

    let d = a.common.decimal;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let docs: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("serializes");
                    if d.is_some() {
                        for (c, cell) in r.cells.iter().zip(v["cells"].as_array_mut().expect("cells").iter_mut()) {
                            cell["lhs"] = value_json(&c.lhs, d);
                            cell["rhs"] = value_json(&c.rhs, d);
                            cell["residual"] = value_json(&c.residual, d);
                        }
                    }
                    v
                })
                .collect();
            serde_json::to_string_pretty(&docs)? + "\n"
        }
        Format::Csv => reports_csv(&reports, d)?,
    };
    emit(&a.common, &text)?;

    let cells: usize = reports.iter().map(|r| r.cells.len()).sum();
    let failed: usize = reports.iter().map(Report::failure_count).sum();
    let mut by_identity: Vec<(String, usize)> = Vec::new();
    for r in &reports {
        let n = r.failure_count();
        if n == 0 {
            continue;
        }
        match by_identity.iter_mut().find(|(id, _)| *id == r.identity) {
            Some((_, c)) => *c += n,
            None => by_identity.push((r.identity.clone(), n)),
        }
    }
    eprintln!("{} reports, {cells} cells, {failed} failed", reports.len());
    for (id, n) in &by_identity {
        eprintln!("  {id}: {n} failed");
    }

    if let Some(path) = &a.record_failures {
        let issues = KnownIssues::from_failures(&reports);
        std::fs::write(path, serde_json::to_string_pretty(&issues)? + "\n")?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
