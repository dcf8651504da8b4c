//! Generalized Stirling triangles.
//!
//! `Triangle` holds the first-kind numbers `[n, k]_{f(t)}`, the coefficient of
//! `x^{k-1}` in `(x)_{f(t),n}`, built row by row from
//! `[n, k] = f(n-1) t^{1-n} [n-1, k] + [n-1, k-1]` with `[0, 0] = 1`.

mod second;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;
use crate::factorial::{bang_f, weight};
use crate::fspec::{FSpec, Setting};
use crate::report::{Cell, Report};

pub use second::{s2_entry, s2_geom_transform_check, s2star_egf_check, s2star_entry, s2star_ogf_check};

/// Largest `n` accepted by [`s1_entry_oracle`].
pub const ORACLE_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    f: FSpec,
    t: LaurentPoly,
    t_label: String,
    rows: Vec<Vec<LaurentPoly>>,
}

impl Triangle {
    /// Rows `0..=n_max` of the first-kind triangle for `f` with `t` given as a
    /// Laurent monomial in whatever frame the caller works in.
    pub fn first_kind(f: &FSpec, t: &LaurentPoly, n_max: usize) -> Result<Self> {
        let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![LaurentPoly::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![LaurentPoly::zero(); n + 1];
            // the f(n-1) term only touches column 0 of row 0 when n = 1,
            // and column 0 is [n = 0]; f(0) is never needed
            let w = if n >= 2 { Some(weight(f, t, n - 1)?) } else { None };
            for k in 1..=n {
                let mut v = prev[k - 1].clone();
                if let (Some(w), Some(p)) = (&w, prev.get(k)) {
                    if !p.is_zero() {
                        v += w * p;
                    }
                }
                row[k] = v;
            }
            rows.push(row);
        }
        Ok(Triangle { f: f.clone(), t: t.clone(), t_label: t.to_string(), rows })
    }

    pub fn for_setting(setting: &Setting, n_max: usize) -> Result<Self> {
        let mut tri = Self::first_kind(&setting.f, &setting.t_elem(), n_max)?;
        tri.t_label = setting.t.to_string();
        Ok(tri)
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn spec(&self) -> &FSpec {
        &self.f
    }

    pub fn t(&self) -> &LaurentPoly {
        &self.t
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    /// `[n, k]`; zero for `k > n`. Panics if `n` exceeds the built rows.
    pub fn entry(&self, n: usize, k: usize) -> LaurentPoly {
        assert!(n <= self.n_max(), "row {n} not built (n_max = {})", self.n_max());
        self.rows[n].get(k).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            f: String,
            t: &'a str,
            rows: &'a [Vec<LaurentPoly>],
        }
        serde_json::to_value(Export { f: self.f.to_string(), t: &self.t_label, rows: &self.rows })
            .expect("triangle serializes")
    }

    /// CSV with one record per row `n`, holding `[n, 0] .. [n, n]`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string())).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::parse(format!("csv: {other:?}")),
    }
}

/// Unsigned Stirling numbers of the first kind, rows `0..=n_max`, from
/// `c(n, k) = (n-1) c(n-1, k) + c(n-1, k-1)`.
pub fn classical_first_kind(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row: Vec<BigInt> = (0..=n)
            .map(|k| {
                let keep = prev.get(k).map(|c| c * (n - 1)).unwrap_or_default();
                let step = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                keep + step
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `[n, k]` as the elementary symmetric polynomial `e_{n-k}` of
/// `{f(j) t^{-j} : 1 <= j < n}`, by enumerating subsets.
pub fn s1_entry_oracle(f: &FSpec, t: &LaurentPoly, n: usize, k: usize) -> Result<LaurentPoly> {
    if n > ORACLE_CAP {
        return Err(Error::OracleCap { n, cap: ORACLE_CAP });
    }
    if k > n {
        return Ok(LaurentPoly::zero());
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let xs = (1..n).map(|j| weight(f, t, j)).collect::<Result<Vec<_>>>()?;
    let size = (n - k) as u32;
    let mut total = LaurentPoly::zero();
    for mask in 0u32..(1 << xs.len()) {
        if mask.count_ones() != size {
            continue;
        }
        let mut term = LaurentPoly::one();
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                term *= x;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Compares the recurrence triangle with [`s1_entry_oracle`] for
/// `0 <= k <= n <= n_max`. Cells are `[n, k]`.
pub fn s1_oracle_check(setting: &Setting, n_max: usize) -> Result<Report> {
    if n_max > ORACLE_CAP {
        return Err(Error::OracleCap { n: n_max, cap: ORACLE_CAP });
    }
    let t = setting.t_elem();
    let tri = Triangle::first_kind(&setting.f, &t, n_max)?;
    let mut report = Report::new("s1-oracle")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("n_max", n_max);
    for n in 0..=n_max {
        for k in 0..=n {
            let oracle = s1_entry_oracle(&setting.f, &t, n, k)?;
            report.push(Cell::compare(vec![n as i64, k as i64], tri.entry(n, k), oracle));
        }
    }
    Ok(report)
}

/// Checks `[n+1, 1] = n!_f / t^{n(n+1)/2}` and, for `2 <= k <= n+1`,
/// `[n+1, k] = n!_f / t^{n(n+1)/2} Σ_{j=1}^{n} [j, k-1] t^{j(j+1)/2} / j!_f`
/// for all `n <= n_max`.
pub fn s1_column_closed_forms(setting: &Setting, n_max: usize) -> Result<Report> {
    let f = &setting.f;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(f, &t, n_max + 1)?;
    let bangs = (0..=n_max).map(|j| bang_f(f, j)).collect::<Result<Vec<_>>>()?;
    let tri_pow = |j: usize| t.pow((j * (j + 1) / 2) as i64).expect("t is a monomial");
    let mut report = Report::new("s1-column-closed-forms")
        .param("f", f.to_string())
        .param("t", setting.t.to_string())
        .param("n_max", n_max);
    for n in 0..=n_max {
        let scale = bangs[n].checked_div(&tri_pow(n))?;
        report.push(Cell::compare(vec![n as i64 + 1, 1], tri.entry(n + 1, 1), scale.clone()));
        for k in 2..=n + 1 {
            let mut sum = LaurentPoly::zero();
            for (j, bang) in bangs.iter().enumerate().take(n + 1).skip(1) {
                let e = tri.entry(j, k - 1);
                if !e.is_zero() {
                    sum += (e * tri_pow(j)).checked_div(bang)?;
                }
            }
            report.push(Cell::compare(vec![n as i64 + 1, k as i64], tri.entry(n + 1, k), &scale * &sum));
        }
    }
    Ok(report)
}
