//! Weighted harmonic sums `w_f(n+1, m)` and the expansions of the first-kind
//! numbers through them.

use serde::Serialize;

use super::fharmonic_direct;
use crate::error::Result;
use crate::exactnum::rational::{factorial, frac, from_bigint, int, rising};
use crate::exactnum::{LaurentPoly, Rational};
use crate::factorial::{bang_f, bang_ft};
use crate::fspec::Setting;
use crate::report::{Cell, Report};
use crate::stirling::Triangle;

/// Which recursion builds `w_f(n+1, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WfRecursion {
    /// `w(m) = Σ_{k=0}^{m-2} F^{(k+1)}(t^{k+1}) (2-m)_k w(m-1-k)`, the form
    /// under which `[n+1, m] = n!_f w(m) / (m-1)!` holds.
    Newton,
    /// `w(m) = Σ_{k=0}^{m-1} (-1)^k F^{(k+1)}(t^{k+1}) (1-m)_k w(m-1-k) + [m = 1] base`
    /// with `(1-m)_k` the rising factorial, kept for comparison.
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WfTable {
    pub n: usize,
    /// `values[m - 1] = w_f(n+1, m)`.
    pub values: Vec<LaurentPoly>,
}

impl WfTable {
    pub fn get(&self, m: usize) -> &LaurentPoly {
        &self.values[m - 1]
    }
}

/// `F_n^{(j)}(t^j)` for `j = 1..=count`.
fn harmonic_powers(setting: &Setting, n: usize, count: usize) -> Result<Vec<LaurentPoly>> {
    let t = setting.t_elem();
    (1..=count).map(|j| fharmonic_direct(&setting.f, j, n, &t.pow(j as i64)?)).collect()
}

/// `w_f(n+1, m)` for `1 <= m <= m_max`, Newton recursion, base
/// `w_f(n+1, 1) = t^{-n(n+1)/2}`.
pub fn wf_table(setting: &Setting, n: usize, m_max: usize) -> Result<WfTable> {
    wf_table_with(setting, n, m_max, WfRecursion::Newton, true)
}

/// Like [`wf_table`] with an explicit recursion and base: `scaled_base`
/// selects `t^{-n(n+1)/2}` over the plain base `1`.
pub fn wf_table_with(
    setting: &Setting,
    n: usize,
    m_max: usize,
    recursion: WfRecursion,
    scaled_base: bool,
) -> Result<WfTable> {
    let base = if scaled_base { setting.t_elem().pow(-((n * (n + 1) / 2) as i64))? } else { LaurentPoly::one() };
    let h = harmonic_powers(setting, n, m_max)?;
    // w[0] = w_f(n+1, 0) = 0
    let mut w = vec![LaurentPoly::zero()];
    for m in 1..=m_max {
        let mut v = if m == 1 { base.clone() } else { LaurentPoly::zero() };
        match recursion {
            WfRecursion::Newton => {
                for k in 0..m.saturating_sub(1) {
                    let c = rising(2 - m as i64, k as u64);
                    v += (&h[k] * &w[m - 1 - k]).scale(&c);
                }
            }
            WfRecursion::AsPrinted => {
                for k in 0..m {
                    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                    let c = rising(1 - m as i64, k as u64) * sign;
                    v += (&h[k] * &w[m - 1 - k]).scale(&c);
                }
            }
        }
        w.push(v);
    }
    w.remove(0);
    Ok(WfTable { n, values: w })
}

/// Checks `[n+1, k] = n!_f / (k-1)! w_f(n+1, k)` and regenerates each row
/// from `[n+1, k] = Σ_{j=0}^{k-2} [n+1, k-1-j] (-1)^j F_n^{(j+1)}(t^{j+1}) / (k-1)
/// + n!_{f(t)} [k = 1]`, for `n <= n_max`, `1 <= k <= n+1`.
///
/// Cells are `[n+1, k, line]`. Notes list where the printed recursion or the
/// unscaled base would disagree with the triangle.
pub fn s1_from_wf_check(setting: &Setting, n_max: usize) -> Result<Report> {
    let f = &setting.f;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(f, &t, n_max + 1)?;
    let mut report =
        Report::new("s1-from-wf").param("f", f.to_string()).param("t", setting.t.to_string()).param("n_max", n_max);
    let mut printed_off = Vec::new();
    let mut unscaled_off = Vec::new();
    for n in 0..=n_max {
        let m_max = n + 1;
        let bang = bang_f(f, n)?;
        let w = wf_table(setting, n, m_max)?;
        let lit = wf_table_with(setting, n, m_max, WfRecursion::AsPrinted, false)?;
        let unscaled = wf_table_with(setting, n, m_max, WfRecursion::Newton, false)?;
        let h = harmonic_powers(setting, n, m_max)?;
        let line1 = |w: &WfTable, k: usize| {
            let c = from_bigint(factorial(k as u64 - 1)).recip();
            (&bang * w.get(k)).scale(&c)
        };
        let mut row: Vec<LaurentPoly> = vec![LaurentPoly::zero()];
        for k in 1..=n + 1 {
            let want = tri.entry(n + 1, k);
            report.push(Cell::compare(vec![n as i64 + 1, k as i64, 1], want.clone(), line1(&w, k)));
            if line1(&lit, k) != want {
                printed_off.push(format!("[{}, {k}]", n + 1));
            }
            if line1(&unscaled, k) != want {
                unscaled_off.push(format!("[{}, {k}]", n + 1));
            }

            let mut v = if k == 1 { bang_ft(f, &t, n)? } else { LaurentPoly::zero() };
            for j in 0..k.saturating_sub(1) {
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                let c = sign * frac(1, k as i64 - 1);
                v += (&row[k - 1 - j] * &h[j]).scale(&c);
            }
            report.push(Cell::compare(vec![n as i64 + 1, k as i64, 2], want, v.clone()));
            row.push(v);
        }
    }
    if !printed_off.is_empty() {
        report.note(format!(
            "the printed recursion with (-1)^k (1-m)_k and base 1 disagrees at {}",
            printed_off.join(", ")
        ));
    }
    if !unscaled_off.is_empty() {
        report.note(format!("the unscaled base w_f(n+1, 1) = 1 disagrees at {}", unscaled_off.join(", ")));
    }
    Ok(report)
}

/// Checks the closed forms of `[n+1, k]` for `k = 2..=5` in terms of
/// `F_j = F_n^{(j)}(t^j)` and `T = t^{n(n+1)/2}`:
///
/// ```text
/// k=2: n!_f/T F1
/// k=3: n!_f/(2T) (F1^2 - F2)
/// k=4: n!_f/(6T) (F1^3 - 3 F1 F2 + 2 F3)
/// k=5: n!_f/(24T) (F1^4 - 6 F1^2 F2 + 3 F2^2 + 8 F1 F3 - 6 F4)
/// ```
pub fn corollary_expansions_check(setting: &Setting, n_max: usize) -> Result<Report> {
    let f = &setting.f;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(f, &t, n_max + 1)?;
    let mut report =
        Report::new("corollary").param("f", f.to_string()).param("t", setting.t.to_string()).param("n_max", n_max);
    let r = |n: i64| LaurentPoly::from_int(n);
    for n in 0..=n_max {
        let h = harmonic_powers(setting, n, 4)?;
        let (f1, f2, f3, f4) = (&h[0], &h[1], &h[2], &h[3]);
        let scale = bang_f(f, n)?.checked_div(&t.pow((n * (n + 1) / 2) as i64)?)?;
        let forms: [(usize, Rational, LaurentPoly); 4] = [
            (2, int(1), f1.clone()),
            (3, frac(1, 2), f1 * f1 - f2.clone()),
            (4, frac(1, 6), f1 * f1 * f1 - r(3) * f1 * f2 + r(2) * f3),
            (
                5,
                frac(1, 24),
                f1 * f1 * f1 * f1 - r(6) * f1 * f1 * f2 + r(3) * f2 * f2 + r(8) * f1 * f3 - r(6) * f4.clone(),
            ),
        ];
        for (k, c, poly) in forms {
            let rhs = (&scale * &poly).scale(&c);
            report.push(Cell::compare(vec![n as i64 + 1, k as i64], tri.entry(n + 1, k), rhs));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Symbol;
    use crate::fspec::{FSpec, TValue};

    fn lin(a: i64, b: i64) -> FSpec {
        FSpec::parse(&format!("linear:{a},{b}")).unwrap()
    }

    #[test]
    fn table_examples() {
        let s = Setting::classical();
        let w = wf_table(&s, 3, 2).unwrap();
        assert_eq!(w.get(1), &LaurentPoly::one());
        assert_eq!(w.get(2), &LaurentPoly::constant(frac(11, 6)));
        assert_eq!(wf_table(&s, 3, 1).unwrap().values.len(), 1);

        let sym = Setting::new(lin(1, 0), TValue::Symbolic).unwrap();
        let w = wf_table(&sym, 2, 1).unwrap();
        assert_eq!(w.get(1), &LaurentPoly::var_pow(Symbol::T, -3));
    }

    #[test]
    fn printed_recursion_differs_from_line_one() {
        let s = Setting::classical();
        let lit = wf_table_with(&s, 2, 3, WfRecursion::AsPrinted, false).unwrap();
        let newton = wf_table(&s, 2, 3).unwrap();
        assert_eq!(lit.get(2), newton.get(2));
        assert_eq!(lit.get(3), &LaurentPoly::constant(frac(19, 4)));
        assert_eq!(newton.get(3), &LaurentPoly::one());
    }

    #[test]
    fn wf_expansions_hold() {
        for t in [TValue::one(), TValue::Symbolic] {
            let s = Setting::new(lin(2, 1), t).unwrap();
            let r = s1_from_wf_check(&s, 6).unwrap();
            assert!(r.passed());
            assert!(!r.notes.is_empty());
        }
        let r = s1_from_wf_check(&Setting::classical(), 3).unwrap();
        let cell = r.cells.iter().find(|c| c.indices == vec![4, 2, 1]).unwrap();
        assert_eq!(cell.rhs, LaurentPoly::from_int(11));
    }

    #[test]
    fn corollary_holds() {
        let r = corollary_expansions_check(&Setting::classical(), 3).unwrap();
        assert!(r.passed());
        let cell = r.cells.iter().find(|c| c.indices == vec![4, 3]).unwrap();
        assert_eq!(cell.rhs, LaurentPoly::from_int(6));
        let s = Setting::new(lin(2, 1), TValue::Symbolic).unwrap();
        assert!(corollary_expansions_check(&s, 6).unwrap().passed());
    }
}
