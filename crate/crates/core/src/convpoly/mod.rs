//! Stirling convolution polynomial analogs
//!
//! ```text
//! σ_n(x) = [x, x-n] (x-n-1)! / x!_f        σ̃_n(x) = [x, x-n] (x-n-1)! / x!
//! ```
//!
//! for integers `x > n >= 0`, with `[x, k]` the generalized first-kind numbers.

mod gf;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::{factorial, from_bigint, int};
use crate::exactnum::LaurentPoly;
use crate::factorial::bang_f;
use crate::fspec::Setting;
use crate::report::{Cell, Report};
use crate::stirling::Triangle;

pub use gf::{
    conv_family_shift_check, eulerian2_identity_check, eulerian2_triangle, experimental_identity_check,
    fit_experimental_gf, fixed_point_series, stirling_kernel, stirlingpoly_gf_check, Eulerian2Triangle,
    ExperimentalFit, Family,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SigmaVariant {
    /// scaled by `x!_f`
    #[serde(rename = "sigma")]
    Sigma,
    /// scaled by `x!`
    #[serde(rename = "sigma-tilde")]
    SigmaTilde,
}

impl fmt::Display for SigmaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaVariant::Sigma => "sigma",
            SigmaVariant::SigmaTilde => "sigma-tilde",
        })
    }
}

impl FromStr for SigmaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma" => Ok(SigmaVariant::Sigma),
            "sigma-tilde" | "tilde" => Ok(SigmaVariant::SigmaTilde),
            other => Err(Error::parse(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaValue {
    pub f: String,
    pub t: String,
    pub variant: SigmaVariant,
    pub n: usize,
    pub x: usize,
    pub value: LaurentPoly,
}

impl SigmaValue {
    pub fn compute(setting: &Setting, variant: SigmaVariant, n: usize, x: usize) -> Result<Self> {
        Ok(SigmaValue {
            f: setting.f.to_string(),
            t: setting.t.to_string(),
            variant,
            n,
            x,
            value: sigma_eval(setting, variant, n, x)?,
        })
    }
}

fn check_domain(n: usize, x: usize) -> Result<()> {
    if x <= n {
        return Err(Error::domain(format!("sigma_{n}({x}) needs x > n")));
    }
    Ok(())
}

/// `σ_n(x)` or `σ̃_n(x)` from an already built triangle with at least `x` rows.
fn sigma_from(tri: &Triangle, setting: &Setting, variant: SigmaVariant, n: usize, x: usize) -> Result<LaurentPoly> {
    check_domain(n, x)?;
    let num = tri.entry(x, x - n).scale(&from_bigint(factorial((x - n - 1) as u64)));
    match variant {
        SigmaVariant::Sigma => num.checked_div(&bang_f(&setting.f, x)?),
        SigmaVariant::SigmaTilde => Ok(num.scale(&from_bigint(factorial(x as u64)).recip())),
    }
}

/// Exact `σ_n(x)` or `σ̃_n(x)`; `x <= n` is a domain error.
pub fn sigma_eval(setting: &Setting, variant: SigmaVariant, n: usize, x: usize) -> Result<LaurentPoly> {
    check_domain(n, x)?;
    let tri = Triangle::first_kind(&setting.f, &setting.t_elem(), x)?;
    sigma_from(&tri, setting, variant, n, x)
}

/// Checks
///
/// ```text
/// f(x+1) σ_n(x+1) = (x-n) σ_n(x) + f(x) t^{-x} σ_{n-1}(x)
/// (x+1)  σ̃_n(x+1) = (x-n) σ̃_n(x) + f(x) t^{-x} σ̃_{n-1}(x)
/// ```
///
/// for `1 <= n <= n_max`, `n < x <= x_max`. Cells are `[n, x, variant]`
/// with variant `1` for σ and `2` for σ̃.
pub fn sigma_recurrence_check(setting: &Setting, n_max: usize, x_max: usize) -> Result<Report> {
    let f = &setting.f;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(f, &t, x_max + 1)?;
    let mut report = Report::new("convpoly-rec")
        .param("f", f.to_string())
        .param("t", setting.t.to_string())
        .param("n_max", n_max)
        .param("x_max", x_max);
    for n in 1..=n_max {
        for x in n + 1..=x_max {
            let step = f.eval(x)? * t.pow(-(x as i64))?;
            for (tag, variant) in [(1, SigmaVariant::Sigma), (2, SigmaVariant::SigmaTilde)] {
                let lead = match variant {
                    SigmaVariant::Sigma => f.eval(x + 1)?,
                    SigmaVariant::SigmaTilde => LaurentPoly::from_int(x as i64 + 1),
                };
                let lhs = lead * sigma_from(&tri, setting, variant, n, x + 1)?;
                let rhs = sigma_from(&tri, setting, variant, n, x)?.scale(&int((x - n) as i64))
                    + &step * &sigma_from(&tri, setting, variant, n - 1, x)?;
                report.push(Cell::compare(vec![n as i64, x as i64, tag], lhs, rhs));
            }
        }
    }
    Ok(report)
}

/// Rebuilds `[n+1, k]` for `1 <= k <= n+1` from both analogs at `x = n+1`:
/// `[x, k] = σ_{x-k}(x) x!_f / (k-1)! = σ̃_{x-k}(x) x! / (k-1)!`.
/// Cells are `[n+1, k, variant]`.
pub fn sigma_definition_check(setting: &Setting, n_max: usize) -> Result<Report> {
    let tri = Triangle::first_kind(&setting.f, &setting.t_elem(), n_max + 1)?;
    let mut report = Report::new("convpoly-def")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("n_max", n_max);
    for n in 0..=n_max {
        let x = n + 1;
        let bang = bang_f(&setting.f, x)?;
        let plain = from_bigint(factorial(x as u64));
        for k in 1..=x {
            let down = from_bigint(factorial(k as u64 - 1)).recip();
            let want = tri.entry(x, k);
            let s = sigma_from(&tri, setting, SigmaVariant::Sigma, x - k, x)?;
            report.push(Cell::compare(vec![x as i64, k as i64, 1], want.clone(), (s * bang.clone()).scale(&down)));
            let s = sigma_from(&tri, setting, SigmaVariant::SigmaTilde, x - k, x)?;
            report.push(Cell::compare(vec![x as i64, k as i64, 2], want, s.scale(&(&plain * &down))));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::frac;
    use crate::fspec::{FSpec, TValue};

    fn lin(a: i64, b: i64) -> FSpec {
        FSpec::parse(&format!("linear:{a},{b}")).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let s = Setting::classical();
        for x in 2..=12 {
            assert_eq!(sigma_eval(&s, SigmaVariant::Sigma, 1, x).unwrap(), LaurentPoly::constant(frac(1, 2)));
        }
        assert_eq!(sigma_eval(&s, SigmaVariant::Sigma, 0, 5).unwrap(), LaurentPoly::constant(frac(1, 5)));
        assert!(matches!(sigma_eval(&s, SigmaVariant::Sigma, 3, 3), Err(Error::Domain(_))));
        for n in 0..6 {
            for x in n + 1..9 {
                assert_eq!(
                    sigma_eval(&s, SigmaVariant::Sigma, n, x).unwrap(),
                    sigma_eval(&s, SigmaVariant::SigmaTilde, n, x).unwrap()
                );
            }
        }
    }

    #[test]
    fn recurrences_hold() {
        let r = sigma_recurrence_check(&Setting::classical(), 1, 3).unwrap();
        let cell = r.cells.iter().find(|c| c.indices == vec![1, 3, 1]).unwrap();
        assert_eq!(cell.lhs, LaurentPoly::from_int(2));
        assert!(r.passed());
        for t in [TValue::one(), TValue::Numeric(frac(3, 2)), TValue::Symbolic] {
            let s = Setting::new(lin(2, 1), t).unwrap();
            assert!(sigma_recurrence_check(&s, 8, 8).unwrap().passed());
        }
    }

    #[test]
    fn zero_order_line_without_extra_term() {
        // n = 0 with σ_{-1} = 0: f(x+1) σ_0(x+1) = x σ_0(x)
        let s = Setting::new(lin(2, 1), TValue::Symbolic).unwrap();
        for x in 1..8 {
            let lhs = s.f.eval(x + 1).unwrap() * sigma_eval(&s, SigmaVariant::Sigma, 0, x + 1).unwrap();
            let rhs = sigma_eval(&s, SigmaVariant::Sigma, 0, x).unwrap().scale(&frac(x as i64, 1));
            assert_eq!(lhs, rhs);
        }
        // adding the Iverson term [n = 0] on the right overshoots by one
        let c = Setting::classical();
        let lhs = LaurentPoly::from_int(4) * sigma_eval(&c, SigmaVariant::Sigma, 0, 4).unwrap();
        let rhs = sigma_eval(&c, SigmaVariant::Sigma, 0, 3).unwrap().scale(&frac(3, 1)) + LaurentPoly::one();
        assert_eq!(rhs - lhs, LaurentPoly::one());
    }

    #[test]
    fn definition_round_trip() {
        for t in [TValue::one(), TValue::Symbolic] {
            let s = Setting::new(lin(2, 1), t).unwrap();
            assert!(sigma_definition_check(&s, 8).unwrap().passed());
        }
    }
}
