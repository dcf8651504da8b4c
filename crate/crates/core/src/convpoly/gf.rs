//! Generating functions for the convolution analogs: the closed forms at
//! `t = 1`, the second-order Eulerian expansion, the shifted convolution
//! family and the fitted series `F(z)` with `σ_n(x) = [z^n] F(z)^x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{sigma_from, SigmaVariant};
use crate::error::{Error, Result};
use crate::exactnum::rational::{binomial, factorial, from_bigint, int, parse_rational, pow_i};
use crate::exactnum::{LaurentPoly, Rational, TruncSeries};
use crate::fspec::{FSpec, Setting, TValue};
use crate::report::{Cell, Report};
use crate::stirling::{classical_first_kind, Triangle};

/// `f(n) = αn + β` families with a closed-form generating function at `t = 1`:
/// `x σ̃_n(x) = [z^n] e^{βz} (αz e^{αz} / (e^{αz} - 1))^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `f(n) = n`
    Classic,
    /// `f(n) = αn + 1 - α`
    Alpha(Rational),
    /// `f(n) = αn + β`
    AlphaBeta(Rational, Rational),
}

impl Family {
    pub fn alpha(&self) -> Rational {
        match self {
            Family::Classic => int(1),
            Family::Alpha(a) | Family::AlphaBeta(a, _) => a.clone(),
        }
    }

    pub fn beta(&self) -> Rational {
        match self {
            Family::Classic => int(0),
            Family::Alpha(a) => int(1) - a,
            Family::AlphaBeta(_, b) => b.clone(),
        }
    }

    pub fn spec(&self) -> FSpec {
        FSpec::linear(self.alpha(), self.beta())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Classic => f.write_str("classic"),
            Family::Alpha(a) => write!(f, "alpha:{a}"),
            Family::AlphaBeta(a, b) => write!(f, "alphabeta:{a},{b}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `classic`, `alpha:<α>` or `alphabeta:<α>,<β>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "classic" {
            return Ok(Family::Classic);
        }
        if let Some(rest) = s.strip_prefix("alphabeta:") {
            let (a, b) =
                rest.split_once(',').ok_or_else(|| Error::parse(format!("expected alphabeta:<a>,<b>, got `{s}`")))?;
            return Ok(Family::AlphaBeta(parse_rational(a)?, parse_rational(b)?));
        }
        if let Some(rest) = s.strip_prefix("alpha:") {
            return Ok(Family::Alpha(parse_rational(rest)?));
        }
        Err(Error::parse(format!("unknown family `{s}`")))
    }
}

/// `αz / (1 - e^{-αz}) = αz e^{αz} / (e^{αz} - 1)` through `z^order`.
pub fn stirling_kernel(alpha: &Rational, order: usize) -> TruncSeries {
    // (1 - e^{-αz}) / (αz) = Σ_m (-α)^m z^m / (m+1)!
    let neg = -alpha.clone();
    let recip = (0..=order).map(|m| pow_i(&neg, m as i64) / from_bigint(factorial(m as u64 + 1)));
    TruncSeries::from_rationals('z', order, recip).inverse().expect("constant term is 1")
}

/// Compares `x σ̃_n(x)` from the triangle at `t = 1` with
/// `[z^n] e^{βz} (αz e^{αz} / (e^{αz} - 1))^x` for `0 <= n <= n_max`,
/// `n < x <= x_max`. For the classic family σ̃ and σ coincide. Cells are `[n, x]`.
pub fn stirlingpoly_gf_check(family: &Family, n_max: usize, x_max: usize) -> Result<Report> {
    let setting = Setting::new(family.spec(), TValue::one())?;
    let tri = Triangle::first_kind(&setting.f, &LaurentPoly::one(), x_max.max(1))?;
    let kernel = stirling_kernel(&family.alpha(), n_max);
    let shift = TruncSeries::exp_linear('z', n_max, &family.beta());
    let mut report = Report::new("gf-special")
        .param("family", family.to_string())
        .param("f", setting.f.to_string())
        .param("n_max", n_max)
        .param("x_max", x_max);
    let mut power = shift;
    for x in 1..=x_max {
        power = power.mul(&kernel)?;
        for n in 0..=n_max.min(x - 1) {
            let lhs = sigma_from(&tri, &setting, SigmaVariant::SigmaTilde, n, x)?.scale(&int(x as i64));
            report.push(Cell::compare(vec![n as i64, x as i64], lhs, power.coeff(n)?.clone()));
        }
    }
    Ok(report)
}

/// Second-order Eulerian numbers `⟨⟨n, k⟩⟩`, rows `0..=N`; row `n >= 1`
/// holds `0 <= k < n`, row 0 is `[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eulerian2Triangle {
    rows: Vec<Vec<BigInt>>,
}

impl Eulerian2Triangle {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Zero outside the stored range.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        serde_json::json!({ "rows": rows })
    }
}

/// Builds `⟨⟨n, k⟩⟩ = (k+1) ⟨⟨n-1, k⟩⟩ + (2n-1-k) ⟨⟨n-1, k-1⟩⟩`.
pub fn eulerian2_triangle(n_max: usize) -> Eulerian2Triangle {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..n)
            .map(|k| {
                let keep = if n > 1 { prev.get(k).map(|v| v * (k + 1)).unwrap_or_default() } else { BigInt::zero() };
                let step = if k > 0 {
                    prev.get(k - 1).map(|v| v * (2 * n - 1 - k)).unwrap_or_default()
                } else if n == 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                keep + step
            })
            .collect();
        rows.push(row);
    }
    Eulerian2Triangle { rows }
}

/// Checks `[x, x-n] = Σ_k ⟨⟨n, k⟩⟩ C(x+k, 2n)` for ordinary Stirling numbers,
/// `0 <= n <= n_max`, `n < x <= x_max`. Cells are `[n, x]`.
pub fn eulerian2_identity_check(n_max: usize, x_max: usize) -> Result<Report> {
    let e = eulerian2_triangle(n_max);
    let c = classical_first_kind(x_max);
    let mut report = Report::new("eulerian2").param("n_max", n_max).param("x_max", x_max);
    for n in 0..=n_max {
        for x in n + 1..=x_max {
            let lhs = from_bigint(c[x][x - n].clone());
            let rhs: Rational = e.rows[n]
                .iter()
                .enumerate()
                .map(|(k, v)| from_bigint(v.clone()) * binomial((x + k) as i64, 2 * n as i64))
                .sum();
            report.push(Cell::compare(
                vec![n as i64, x as i64],
                LaurentPoly::constant(lhs),
                LaurentPoly::constant(rhs),
            ));
        }
    }
    Ok(report)
}

/// Solves `𝒮(z) = S(z 𝒮(z)^t)` through `z^order` by fixed-point iteration
/// from `𝒮 = 1`; after `k` rounds the coefficient of `z^k` no longer moves.
pub fn fixed_point_series(s: &TruncSeries, t_shift: u32) -> Result<TruncSeries> {
    let order = s.order();
    let mut cur = TruncSeries::one(s.var(), order);
    for _ in 0..=order {
        let inner = cur.pow(t_shift as u64).shift(1).truncate(order);
        cur = s.compose(&inner)?;
    }
    Ok(cur)
}

/// With `S(z) = 1 + Σ_{n>=1} coeffs[n-1] z^n` and `s_n(y) = [z^n] S(z)^y`,
/// checks `x s_n(x + tn) / (x + tn) = [z^n] 𝒮_t(z)^x` where
/// `𝒮_t(z) = S(z 𝒮_t(z)^t)`, for `0 <= n <= n_max` and `-x_max <= x <= x_max`.
/// Cells are `[x, n]`; `x = 0` and `x + tn = 0` are skipped with a note.
pub fn conv_family_shift_check(coeffs: &[Rational], t_shift: u32, n_max: usize, x_max: usize) -> Result<Report> {
    let mut all = vec![int(1)];
    all.extend(coeffs.iter().take(n_max).cloned());
    let s = TruncSeries::from_rationals('z', n_max, all);
    let shifted = fixed_point_series(&s, t_shift)?;
    let mut report = Report::new("conv-shift")
        .param("coeffs", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .param("t_shift", t_shift)
        .param("n_max", n_max)
        .param("x_max", x_max);
    report.note("x = 0 is skipped: the left side is 0/0 at n = 0");
    let xm = x_max as i64;
    let mut skipped = Vec::new();
    for x in -xm..=xm {
        if x == 0 {
            continue;
        }
        let rhs_series = shifted.pow_i(x)?;
        for n in 0..=n_max {
            let y = x + t_shift as i64 * n as i64;
            if y == 0 {
                skipped.push(format!("(x={x}, n={n})"));
                continue;
            }
            let s_n = s.pow_i(y)?.coeff(n)?.clone();
            let lhs = s_n.scale(&Rational::new(x.into(), y.into()));
            report.push(Cell::compare(vec![x, n as i64], lhs, rhs_series.coeff(n)?.clone()));
        }
    }
    if !skipped.is_empty() {
        report.note(format!("skipped where x + t n = 0: {}", skipped.join(", ")));
    }
    Ok(report)
}

/// A series `F(z) = 1 + Σ g_n z^n` fitted so that `[z^n] F(z)^x = σ_n(x)`
/// for `1 <= n <= N`.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentalFit {
    pub x: i64,
    pub series: TruncSeries,
    pub report: Report,
}

/// Triangular solve for `g_1..g_order`. Writing `G = F^x`, the power
/// recurrence `n G_n = Σ_{k=1}^{n} ((x+1)k - n) g_k G_{n-k}` gives
/// `G_n = x g_n + (known terms)`, and `G_n` is the target itself.
fn fit_series(setting: &Setting, tri: &Triangle, x: usize, order: usize) -> Result<TruncSeries> {
    let mut g = vec![LaurentPoly::one()];
    let mut big_g = vec![LaurentPoly::one()];
    let xr = int(x as i64);
    for n in 1..=order {
        let mut known = LaurentPoly::zero();
        for k in 1..n {
            let c = (&xr + int(1)) * int(k as i64) - int(n as i64);
            known += (&g[k] * &big_g[n - k]).scale(&c);
        }
        let target = sigma_from(tri, setting, SigmaVariant::Sigma, n, x)?;
        let gn = (target.clone() - known.scale(&Rational::new(1.into(), (n as i64).into()))).scale(&xr.recip());
        g.push(gn);
        big_g.push(target);
    }
    Ok(TruncSeries::from_coeffs('z', order, g))
}

/// Solves `σ_n(x) = [z^n] F(z)^x` for `g_1..g_N` (`g_0 = 1`); each `g_n`
/// enters linearly with coefficient `x`. The report re-expands `F^x`
/// (cells `[n]`). Needs `x > N` for the targets to exist.
pub fn fit_experimental_gf(setting: &Setting, x: i64, n_terms: usize) -> Result<ExperimentalFit> {
    if x == 0 {
        return Err(Error::domain("x = 0 makes the triangular system singular"));
    }
    if n_terms == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if x <= n_terms as i64 {
        return Err(Error::domain(format!("sigma_n({x}) is undefined for n = {n_terms}; need x > N")));
    }
    let xu = x as usize;
    let tri = Triangle::first_kind(&setting.f, &setting.t_elem(), xu)?;
    let series = fit_series(setting, &tri, xu, n_terms)?;
    let power = series.pow(xu as u64);
    let mut report = Report::new("experimental-fit")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("x", x)
        .param("N", n_terms);
    for n in 1..=n_terms {
        let target = sigma_from(&tri, setting, SigmaVariant::Sigma, n, xu)?;
        report.push(Cell::compare(vec![n as i64], target, power.coeff(n)?.clone()));
    }
    Ok(ExperimentalFit { x, series, report })
}

/// With `F` fitted at `x = n` through `z^{n-1}`, checks
/// `σ_{n-k}(n) = Σ_{j=1}^{n-k} C(n, j) [z^{n-k}] (F - 1)^j + [n = k]`
/// for `1 <= k <= n <= n_max`. At `k = n` the left side is `[z^0] F^n = 1`.
/// Cells are `[n, k]`.
pub fn experimental_identity_check(setting: &Setting, n_max: usize) -> Result<Report> {
    let tri = Triangle::first_kind(&setting.f, &setting.t_elem(), n_max.max(1))?;
    let mut report = Report::new("experimental-fit")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("n_max", n_max);
    report.note("the k = n cells compare the fitted constant term, fixed at 1");
    for n in 1..=n_max {
        let order = n - 1;
        let fit = fit_series(setting, &tri, n, order)?;
        let minus_one = fit.sub(&TruncSeries::one('z', order))?;
        let mut powers = vec![TruncSeries::one('z', order)];
        for j in 1..n {
            let next = powers[j - 1].mul(&minus_one)?;
            powers.push(next);
        }
        for k in 1..=n {
            let m = n - k;
            let lhs = if m == 0 { LaurentPoly::one() } else { sigma_from(&tri, setting, SigmaVariant::Sigma, m, n)? };
            let mut rhs = if m == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
            for (j, pw) in powers.iter().enumerate().take(m + 1).skip(1) {
                rhs += pw.coeff(m)?.scale(&binomial(n as i64, j as i64));
            }
            report.push(Cell::compare(vec![n as i64, k as i64], lhs, rhs));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::frac;

    #[test]
    fn family_parse() {
        assert_eq!("classic".parse::<Family>().unwrap(), Family::Classic);
        let ab: Family = "alphabeta:2,1".parse().unwrap();
        assert_eq!(ab.spec().to_string(), "linear:2,1");
        let a: Family = "alpha:3/2".parse().unwrap();
        assert_eq!(a.beta(), frac(-1, 2));
        assert_eq!(a.to_string(), "alpha:3/2");
        assert!("beta:1".parse::<Family>().is_err());
    }

    #[test]
    fn kernel_coefficients() {
        let k = stirling_kernel(&int(1), 4);
        let want = [int(1), frac(1, 2), frac(1, 12), int(0), frac(-1, 720)];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(k.coeff(i).unwrap(), &LaurentPoly::constant(w.clone()));
        }
    }

    #[test]
    fn special_families() {
        let r = stirlingpoly_gf_check(&Family::Classic, 1, 4).unwrap();
        let cell = r.cells.iter().find(|c| c.indices == vec![1, 4]).unwrap();
        assert_eq!(cell.rhs, LaurentPoly::from_int(2));
        assert!(r.passed());
        for fam in ["alpha:2", "alpha:3/2", "alphabeta:2,1", "alphabeta:3/2,1/3"] {
            let fam: Family = fam.parse().unwrap();
            assert!(stirlingpoly_gf_check(&fam, 6, 8).unwrap().passed(), "{fam}");
        }
    }

    #[test]
    fn eulerian2_rows() {
        let e = eulerian2_triangle(4);
        let as_i = |n: usize| e.rows()[n].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(as_i(0), "1");
        assert_eq!(as_i(1), "1");
        assert_eq!(as_i(2), "1,2");
        assert_eq!(as_i(3), "1,8,6");
        assert_eq!(as_i(4), "1,22,58,24");
        let r = eulerian2_identity_check(6, 12).unwrap();
        assert!(r.passed());
        let cell = r.cells.iter().find(|c| c.indices == vec![1, 5]).unwrap();
        assert_eq!(cell.lhs, LaurentPoly::from_int(10));
    }

    #[test]
    fn fixed_point_stabilizes() {
        let s = stirling_kernel(&int(1), 6);
        let full = fixed_point_series(&s, 2).unwrap();
        for k in 0..=6 {
            let short = fixed_point_series(&s.truncate(k), 2).unwrap();
            assert_eq!(short.coeff(k).unwrap(), full.coeff(k).unwrap());
        }
    }

    #[test]
    fn conv_shift_anchor_and_sweep() {
        let r = conv_family_shift_check(&[int(1)], 1, 5, 6).unwrap();
        assert!(r.passed());
        // [z^2] (1-z)^{-3} = C(4, 2)
        let cell = r.cells.iter().find(|c| c.indices == vec![3, 2]).unwrap();
        assert_eq!(cell.rhs, LaurentPoly::from_int(6));
        let kernel = stirling_kernel(&int(1), 5);
        let coeffs: Vec<Rational> = (1..=5).map(|i| kernel.coeff(i).unwrap().as_constant().unwrap()).collect();
        for t in 0..=2 {
            let r = conv_family_shift_check(&coeffs, t, 5, 6).unwrap();
            assert!(r.passed(), "t = {t}");
        }
    }

    #[test]
    fn experimental_fit() {
        let s = Setting::classical();
        let one = fit_experimental_gf(&s, 4, 1).unwrap();
        assert_eq!(one.series.coeff(1).unwrap(), &LaurentPoly::constant(frac(1, 8)));
        let fit = fit_experimental_gf(&s, 7, 6).unwrap();
        assert!(fit.report.passed());
        assert!(fit_experimental_gf(&s, 0, 2).is_err());
        assert!(fit_experimental_gf(&s, 4, 6).is_err());
        assert!(experimental_identity_check(&s, 10).unwrap().passed());
        let t = Setting::new(FSpec::parse("linear:2,1").unwrap(), TValue::Numeric(frac(3, 2))).unwrap();
        assert!(experimental_identity_check(&t, 8).unwrap().passed());
    }
}
