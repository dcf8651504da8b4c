//! Named verification suites, the default sweep matrix and the record of
//! known failing cells.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convpoly::{
    conv_family_shift_check, eulerian2_identity_check, experimental_identity_check, fit_experimental_gf,
    sigma_definition_check, sigma_recurrence_check, stirling_kernel, stirlingpoly_gf_check, Family,
};
use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, int, sub_small_den};
use crate::exactnum::{LaurentPoly, Rational};
use crate::fharmonic::{
    corollary_expansions_check, euler_sum_numeric, fzeta_pair_numeric, harmonic_routes_check, prop1_predicted_residual,
    prop1_recurrence_check, prop2_functional_eq_check, s1_from_wf_check, stirling_harmonic_identity_check, EulerMode,
};
use crate::fspec::{FSpec, Setting, TValue};
use crate::report::{Cell, Report};
use crate::stirling::{s1_oracle_check, s2_geom_transform_check, s2star_egf_check, s2star_ogf_check};

/// The fixed table used by the sweep matrix.
pub const TABLE12_JSON: &str = include_str!("../data/table12.json");
/// Failing cells that have been examined and documented.
pub const KNOWN_ISSUES_JSON: &str = include_str!("../data/known_issues.json");

/// `½(ζ(2)² + ζ(4))` to seven decimals, with `ζ(2) = π²/6` and `ζ(4) = π⁴/90`.
pub const EULER_LIMIT_R2: (i64, i64) = (18_940_656, 10_000_000);
pub const EULER_TOLERANCE: (i64, i64) = (1, 1000);
pub const DEFAULT_EULER_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    S1Oracle,
    S2Geom,
    S2StarOgf,
    S2StarEgf,
    HarmonicRoutes,
    Wf,
    Corollary,
    Prop1,
    Prop2,
    EulerIdentity,
    ConvpolyRec,
    GfSpecial,
    Eulerian2,
    ConvShift,
    ExperimentalFit,
    EulerSumNumeric,
}

/// What a suite's output depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    Setting,
    FOnly,
    Fixed,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::S1Oracle,
        Suite::S2Geom,
        Suite::S2StarOgf,
        Suite::S2StarEgf,
        Suite::HarmonicRoutes,
        Suite::Wf,
        Suite::Corollary,
        Suite::Prop1,
        Suite::Prop2,
        Suite::EulerIdentity,
        Suite::ConvpolyRec,
        Suite::GfSpecial,
        Suite::Eulerian2,
        Suite::ConvShift,
        Suite::ExperimentalFit,
        Suite::EulerSumNumeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::S1Oracle => "s1-oracle",
            Suite::S2Geom => "s2-geom",
            Suite::S2StarOgf => "s2star-ogf",
            Suite::S2StarEgf => "s2star-egf",
            Suite::HarmonicRoutes => "harmonic-routes",
            Suite::Wf => "wf",
            Suite::Corollary => "corollary",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::EulerIdentity => "euler-identity",
            Suite::ConvpolyRec => "convpoly-rec",
            Suite::GfSpecial => "gf-special",
            Suite::Eulerian2 => "eulerian2",
            Suite::ConvShift => "conv-shift",
            Suite::ExperimentalFit => "experimental-fit",
            Suite::EulerSumNumeric => "euler-sum-numeric",
        }
    }

    fn scope(self) -> Scope {
        match self {
            Suite::S2StarOgf | Suite::S2StarEgf | Suite::EulerSumNumeric => Scope::FOnly,
            Suite::EulerIdentity | Suite::GfSpecial | Suite::Eulerian2 | Suite::ConvShift => Scope::Fixed,
            _ => Scope::Setting,
        }
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = BTreeSet::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.insert(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::parse("no suite selected"));
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::parse(format!("unknown suite `{s}`")))
    }
}

/// Sweep bounds shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Replaces each suite's default `n` bound when set.
    pub max_n: Option<usize>,
    /// Number of terms for the Euler-sum partial sums.
    pub euler_terms: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_n: None, euler_terms: DEFAULT_EULER_TERMS }
    }
}

impl SuiteOptions {
    fn n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }
}

pub fn table12() -> FSpec {
    FSpec::table_from_json(TABLE12_JSON, "table12").expect("bundled table parses")
}

/// `f ∈ {linear:1,0; linear:2,1; table12} × t ∈ {1, 3/2, symbolic}` plus
/// `qpow:1` at `t = 1`.
pub fn matrix() -> Vec<Setting> {
    let ts = [TValue::one(), TValue::Numeric(frac(3, 2)), TValue::Symbolic];
    let mut out = Vec::new();
    for f in [FSpec::linear(int(1), int(0)), FSpec::linear(int(2), int(1))] {
        for t in &ts {
            out.push(Setting::new(f.clone(), t.clone()).expect("numeric f"));
        }
    }
    out.push(Setting::new(FSpec::parse("qpow:1").expect("valid"), TValue::one()).expect("t numeric"));
    for t in &ts {
        out.push(Setting::new(table12(), t.clone()).expect("numeric f"));
    }
    out
}

/// Caps `n` so that `f` is never read past a table's end; `reach` is how
/// far beyond `n` the suite evaluates `f`.
fn clamp(setting: &Setting, n: usize, reach: i64) -> usize {
    match setting.f.max_n() {
        Some(len) => n.min((len as i64 - reach).max(0) as usize),
        None => n,
    }
}

fn clamp_note(report: &mut Report, setting: &Setting, wanted: usize, used: usize) {
    if used < wanted {
        report.note(format!("n capped at {used} by the length of `{}`", setting.f));
    }
}

fn single(report: Report) -> Result<Vec<Report>> {
    Ok(vec![report])
}

/// Runs one suite for one setting. Suites that do not depend on `t` (or on
/// `f`) ignore those parts of `setting`.
pub fn run_suite(suite: Suite, setting: &Setting, opts: &SuiteOptions) -> Result<Vec<Report>> {
    let n_for = |default: usize, reach: i64| {
        let wanted = opts.n(default);
        (wanted, clamp(setting, wanted, reach))
    };
    match suite {
        Suite::S1Oracle => {
            let (w, n) = n_for(12, -1);
            let mut r = s1_oracle_check(setting, n)?;
            clamp_note(&mut r, setting, w, n);
            single(r)
        }
        Suite::S2Geom => {
            let (w, n) = n_for(8, 0);
            let k_max = clamp(setting, 5, 0);
            let mut out = Vec::new();
            for k in 0..=k_max {
                let mut r = s2_geom_transform_check(setting, n, k)?;
                clamp_note(&mut r, setting, w, n);
                out.push(r);
            }
            Ok(out)
        }
        Suite::S2StarOgf => {
            let (w, n) = n_for(12, 0);
            let mut out = Vec::new();
            for k in 0..=4 {
                let mut r = s2star_ogf_check(&setting.f, k, n)?;
                clamp_note(&mut r, setting, w, n);
                out.push(r);
            }
            Ok(out)
        }
        Suite::S2StarEgf => {
            let (w, n) = n_for(8, 0);
            let mut out = Vec::new();
            for r in 1..=4 {
                let mut rep = s2star_egf_check(&setting.f, r, n)?;
                clamp_note(&mut rep, setting, w, n);
                out.push(rep);
            }
            Ok(out)
        }
        Suite::HarmonicRoutes => {
            let (w, n) = n_for(10, 1);
            let mut r = harmonic_routes_check(setting, 5, n)?;
            clamp_note(&mut r, setting, w, n);
            single(r)
        }
        Suite::Wf => {
            let (w, n) = n_for(10, 1);
            let mut r = s1_from_wf_check(setting, n)?;
            clamp_note(&mut r, setting, w, n);
            single(r)
        }
        Suite::Corollary => {
            let (w, n) = n_for(10, 1);
            let mut r = corollary_expansions_check(setting, n)?;
            clamp_note(&mut r, setting, w, n);
            single(r)
        }
        Suite::Prop1 => {
            let (w, n) = n_for(6, 1);
            let known = KnownIssues::bundled();
            let mut out = Vec::new();
            for p in 1..=3 {
                for m in 0..=n {
                    let mut r = prop1_recurrence_check(setting, p, m)?;
                    clamp_note(&mut r, setting, w, n);
                    if !r.passed() && r.cells[0].residual == prop1_predicted_residual(setting, p, m)? {
                        r.cells[0].note = Some(PROP1_RESIDUAL_NOTE.to_string());
                    }
                    known.annotate(&mut r);
                    out.push(r);
                }
            }
            Ok(out)
        }
        Suite::Prop2 => {
            let (w, n) = n_for(10, 1);
            let mut out = Vec::new();
            for p in 2..=6 {
                for m in 0..=n {
                    let mut r = prop2_functional_eq_check(setting, p, m)?;
                    clamp_note(&mut r, setting, w, n);
                    out.push(r);
                }
            }
            Ok(out)
        }
        Suite::EulerIdentity => {
            let n = opts.n(20);
            let mut out = Vec::new();
            for p in 3..=6 {
                for m in 1..=n.max(1) {
                    out.push(stirling_harmonic_identity_check(p, m)?);
                }
            }
            Ok(out)
        }
        Suite::ConvpolyRec => {
            let (w, x) = n_for(10, 1);
            let mut r = sigma_recurrence_check(setting, x.saturating_sub(1), x)?;
            clamp_note(&mut r, setting, w, x);
            let mut d = sigma_definition_check(setting, x.min(8).saturating_sub(1))?;
            clamp_note(&mut d, setting, w, x);
            Ok(vec![r, d])
        }
        Suite::GfSpecial => {
            let n = opts.n(6);
            let families = [Family::Classic, Family::Alpha(int(2)), Family::AlphaBeta(int(2), int(1))];
            families.iter().map(|fam| stirlingpoly_gf_check(fam, n, n + 2)).collect()
        }
        Suite::Eulerian2 => {
            let n = opts.n(6);
            single(eulerian2_identity_check(n, 2 * n)?)
        }
        Suite::ConvShift => {
            let n = opts.n(5);
            let kernel = stirling_kernel(&int(1), n);
            let stirling: Vec<Rational> =
                (1..=n).map(|i| kernel.coeff(i).expect("in range").as_constant().expect("rational")).collect();
            let mut out = Vec::new();
            for coeffs in [vec![int(1)], stirling] {
                for t in 0..=2 {
                    out.push(conv_family_shift_check(&coeffs, t, n, n + 1)?);
                }
            }
            Ok(out)
        }
        Suite::ExperimentalFit => {
            let (w, n) = n_for(10, 0);
            let mut r = experimental_identity_check(setting, n)?;
            clamp_note(&mut r, setting, w, n);
            let mut out = vec![r];
            if n >= 2 {
                out.push(fit_experimental_gf(setting, n as i64, n - 1)?.report);
            }
            Ok(out)
        }
        Suite::EulerSumNumeric => euler_sum_reports(&setting.f, opts),
    }
}

fn euler_sum_reports(f: &FSpec, opts: &SuiteOptions) -> Result<Vec<Report>> {
    let r = 2;
    let terms = match f.max_n() {
        Some(len) => opts.euler_terms.min(len),
        None => opts.euler_terms,
    };
    let mut report = Report::new("euler-sum-numeric").param("f", f.to_string()).param("r", r).param("N", terms);
    if f.is_symbolic() {
        report.note("skipped: f does not take rational values");
        return single(report);
    }
    let h = euler_sum_numeric(f, r, terms, EulerMode::HarmonicOverF)?;
    let paired = fzeta_pair_numeric(f, r, terms)?;
    report.push(Cell::compare(vec![1], LaurentPoly::constant(h.clone()), LaurentPoly::constant(paired)));
    if *f == FSpec::linear(int(1), int(0)) {
        let limit = frac(EULER_LIMIT_R2.0, EULER_LIMIT_R2.1);
        let tol = frac(EULER_TOLERANCE.0, EULER_TOLERANCE.1);
        let diff = sub_small_den(&h, &limit);
        let pass = num_traits::Signed::abs(&diff) <= tol;
        let cell = Cell {
            indices: vec![2],
            lhs: LaurentPoly::constant(h),
            rhs: LaurentPoly::constant(limit),
            residual: LaurentPoly::constant(diff),
            pass,
            note: None,
        };
        report.push(cell.with_note("compared with 1/2 (zeta(2)^2 + zeta(4)) within 1/1000"));
    }
    single(report)
}

/// Runs every `(suite, setting)` pair. Suites that ignore `t` run once per
/// distinct `f`, fixed suites run once. Reports come back in suite order,
/// then setting order, whatever the thread schedule.
pub fn run_suites(suites: &[Suite], settings: &[Setting], opts: &SuiteOptions) -> Result<Vec<Report>> {
    let mut jobs: Vec<(Suite, Setting)> = Vec::new();
    for &suite in suites {
        match suite.scope() {
            Scope::Setting => jobs.extend(settings.iter().map(|s| (suite, s.clone()))),
            Scope::FOnly => {
                let mut seen: Vec<&FSpec> = Vec::new();
                for s in settings {
                    if !seen.contains(&&s.f) {
                        seen.push(&s.f);
                        jobs.push((suite, Setting::new(s.f.clone(), TValue::one())?));
                    }
                }
            }
            Scope::Fixed => jobs.push((suite, Setting::classical())),
        }
    }
    let results: Vec<Result<Vec<Report>>> = jobs.par_iter().map(|(suite, s)| run_suite(*suite, s, opts)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// One documented failing cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnownIssue {
    pub identity: String,
    pub f: String,
    pub t: String,
    pub indices: Vec<i64>,
    pub residual: LaurentPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Prefix of the note on cells that match a documented issue.
pub const DOCUMENTED: &str = "documented in known_issues.json: ";
const PROP1_RESIDUAL_NOTE: &str =
    "residual equals p (-1)^p t^T [n+1, p+2] / (t^{pT/(p+1)} n!_f), p times the [n+1, p+2] term";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KnownIssues {
    pub issues: Vec<KnownIssue>,
}

impl KnownIssues {
    pub fn bundled() -> Self {
        serde_json::from_str(KNOWN_ISSUES_JSON).expect("bundled known issues parse")
    }

    /// Collects every failing cell of `reports` as an issue entry.
    pub fn from_failures<'a>(reports: impl IntoIterator<Item = &'a Report>) -> Self {
        let mut issues = Vec::new();
        for r in reports {
            let param = |k: &str| r.params.get(k).and_then(|v| v.as_str()).unwrap_or("").to_string();
            for c in r.failures() {
                issues.push(KnownIssue {
                    identity: r.identity.clone(),
                    f: param("f"),
                    t: param("t"),
                    indices: c.indices.clone(),
                    residual: c.residual.clone(),
                    note: c.note.as_deref().map(|n| n.strip_prefix(DOCUMENTED).unwrap_or(n).to_string()),
                });
            }
        }
        KnownIssues { issues }
    }

    pub fn find(&self, identity: &str, f: &str, t: &str, indices: &[i64]) -> Option<&KnownIssue> {
        self.issues.iter().find(|i| i.identity == identity && i.f == f && i.t == t && i.indices == indices)
    }

    /// Marks failing cells of `report` that match a documented issue with the
    /// same residual. The cells stay failed.
    pub fn annotate(&self, report: &mut Report) {
        let param = |k: &str| report.params.get(k).and_then(|v| v.as_str()).unwrap_or("").to_string();
        let (f, t) = (param("f"), param("t"));
        for c in report.cells.iter_mut().filter(|c| !c.pass) {
            if let Some(issue) = self.find(&report.identity, &f, &t, &c.indices) {
                if issue.residual == c.residual {
                    c.note = Some(format!("{DOCUMENTED}{}", issue.note.as_deref().unwrap_or("")));
                }
            }
        }
    }
}
