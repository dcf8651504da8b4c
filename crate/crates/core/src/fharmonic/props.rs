//! Recurrences in the order `p` and functional equations in `n`.

use num_traits::{One, Zero};

use super::fharmonic_direct;
use crate::error::{Error, Result};
use crate::exactnum::rational::{factorial, frac, from_bigint, int, pow_i};
use crate::exactnum::{LaurentPoly, Rational, TruncSeries};
use crate::factorial::{bang_f, bang_ft};
use crate::fspec::{Lift, Setting};
use crate::report::{Cell, Report};
use crate::stirling::{classical_first_kind, Triangle};

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Σ over `(i_1, …, i_r)` with `i_m >= 0` and `Σ i_m = s` of `∏ [n+1, i_m + 2]`.
fn shifted_compositions(tri: &Triangle, n: usize, s: usize, r: usize) -> Result<LaurentPoly> {
    let g: Vec<LaurentPoly> = (0..=s).map(|i| tri.entry(n + 1, i + 2)).collect();
    let series = TruncSeries::from_coeffs('w', s, g);
    Ok(series.pow(r as u64).coeff(s)?.clone())
}

struct Prop1Frame {
    lift: Lift,
    /// triangle at `t^{1/p}`
    a: Triangle,
    /// triangle at `t^{1/(p+1)}`
    b: Triangle,
    bang: LaurentPoly,
}

impl Prop1Frame {
    fn new(setting: &Setting, p: usize, n: usize) -> Result<Self> {
        let lift = setting.lift((p * (p + 1)) as u32)?;
        let a = Triangle::first_kind(&setting.f, &lift.root_pow(p as i64 + 1), n + 1)?;
        let b = Triangle::first_kind(&setting.f, &lift.root_pow(p as i64), n + 1)?;
        let bang = bang_f(&setting.f, n)?;
        Ok(Prop1Frame { lift, a, b, bang })
    }

    /// `u^e` where `t = u^{p(p+1)}`.
    fn u(&self, e: i64) -> LaurentPoly {
        self.lift.root_pow(e)
    }

    fn bang_pow(&self, e: usize) -> Result<LaurentPoly> {
        self.bang.pow(e as i64)
    }
}

fn check_prop1_args(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::domain("p must be >= 1"));
    }
    Ok(())
}

/// Evaluates both sides of
///
/// ```text
/// F_n^{(p+1)}(t) = F_n^{(p)}(t)
///   + (-1)^p t^{T} / (t^{pT/(p+1)} n!_f) [n+1, p+2]_{f(t^{1/(p+1)})}
///   + Σ_{j<p} p (-1)^{j+1} t^{T} / (t^{jT/p} (n!_f)^{p-j} (p-j))
///       Σ_{i_1+…+i_{p-j} = j} ∏ [n+1, i_m+2]_{f(t^{1/p})}
///   + Σ_{j<p} Σ_{i<=j} (p+1) (-1)^j t^{T} / (t^{jT/(p+1)} (n!_f)^{p+1-j} (p+1-j))
///       [n+1, i+2]_{f(t^{1/(p+1)})} Σ_{i_1+…+i_{p-j} = j-i} ∏ [n+1, i_m+2]_{f(t^{1/(p+1)})}
/// ```
///
/// with `T = n(n+1)/2`, all in one frame `t = u^{p(p+1)}`. The report holds a
/// single cell `[p, n]` whose residual is `LHS - RHS` in that frame.
pub fn prop1_recurrence_check(setting: &Setting, p: usize, n: usize) -> Result<Report> {
    check_prop1_args(p)?;
    let fr = Prop1Frame::new(setting, p, n)?;
    let f = &setting.f;
    let tt = (n * (n + 1) / 2) as i64;
    let (pi, l) = (p as i64, (p * (p + 1)) as i64);
    let t_pow_tt = fr.u(l * tt);

    let lhs = fharmonic_direct(f, p + 1, n, fr.lift.t())?;
    let mut rhs = fharmonic_direct(f, p, n, fr.lift.t())?;

    let first = (&t_pow_tt * &fr.b.entry(n + 1, p + 2)).checked_div(&(fr.u(pi * pi * tt) * fr.bang.clone()))?;
    rhs += first.scale(&sign(p));

    for j in 0..p {
        let c = int(pi) * sign(j + 1) * frac(1, (p - j) as i64);
        let den = fr.u((p as i64 + 1) * j as i64 * tt) * fr.bang_pow(p - j)?;
        let comp = shifted_compositions(&fr.a, n, j, p - j)?;
        rhs += (&t_pow_tt * &comp).checked_div(&den)?.scale(&c);
    }

    for j in 0..p {
        let c = int(pi + 1) * sign(j) * frac(1, (p + 1 - j) as i64);
        let den = fr.u(pi * j as i64 * tt) * fr.bang_pow(p + 1 - j)?;
        let mut inner = LaurentPoly::zero();
        for i in 0..=j {
            let e = fr.b.entry(n + 1, i + 2);
            if !e.is_zero() {
                inner += e * shifted_compositions(&fr.b, n, j - i, p - j)?;
            }
        }
        rhs += (&t_pow_tt * &inner).checked_div(&den)?.scale(&c);
    }

    let mut report =
        Report::new("prop1").param("f", f.to_string()).param("t", setting.t.to_string()).param("p", p).param("n", n);
    if fr.lift.uses_aux() {
        report = report.param("frame", format!("t = u^{l}"));
    }
    report.push(Cell::compare(vec![p as i64, n as i64], lhs, rhs));
    Ok(report)
}

/// The residual `LHS - RHS` of [`prop1_recurrence_check`] in closed form:
/// `p (-1)^p t^{T} / (t^{pT/(p+1)} n!_f) [n+1, p+2]_{f(t^{1/(p+1)})}`,
/// in the same `u` frame. It vanishes exactly when `n < p + 1`.
pub fn prop1_predicted_residual(setting: &Setting, p: usize, n: usize) -> Result<LaurentPoly> {
    check_prop1_args(p)?;
    let fr = Prop1Frame::new(setting, p, n)?;
    let tt = (n * (n + 1) / 2) as i64;
    let (pi, l) = (p as i64, (p * (p + 1)) as i64);
    let v = (fr.u(l * tt) * fr.b.entry(n + 1, p + 2)).checked_div(&(fr.u(pi * pi * tt) * fr.bang.clone()))?;
    Ok(v.scale(&(int(pi) * sign(p))))
}

/// Checks both displayed forms of `F_{n+1}^{(p)}(t^p)` in terms of
/// `F_n^{(p)}(t^p)` and rows `n+1`, `n+2` of the triangle (`p >= 2`).
/// Cells are `[p, n, form]`.
pub fn prop2_functional_eq_check(setting: &Setting, p: usize, n: usize) -> Result<Report> {
    if p < 2 {
        return Err(Error::domain("the functional equations need p >= 2"));
    }
    let f = &setting.f;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(f, &t, n + 2)?;
    let s = |a: usize, b: usize| tri.entry(a, b);
    let m = n + 1;
    let tp = t.pow(p as i64)?;
    let lhs = fharmonic_direct(f, p, m, &tp)?;
    let base = fharmonic_direct(f, p, n, &tp)?;
    let fm = f.eval(m)?;
    let bang = bang_ft(f, &t, m)?;
    let t_m = |e: usize| t.pow((e * m) as i64).expect("t is a monomial");

    let mut rhs1 = base.clone();
    for j in 1..p {
        let num = s(m + 1, p + 1 - j) * t_m(j);
        let den = fm.pow(j as i64)? * bang.clone();
        rhs1 += num.checked_div(&den)?.scale(&sign(p + 1 - j));
    }
    rhs1 += s(m, p).checked_div(&bang)?.scale(&sign(p + 1));

    let mut rhs2 = base;
    rhs2 += t_m(p - 1).checked_div(&fm.pow(p as i64 - 1)?)?;
    rhs2 += (s(m, p) + s(m, p - 1)).checked_div(&bang)?.scale(&sign(p - 1));
    rhs2 += (s(m + 1, p) * t_m(1)).checked_div(&(fm.clone() * bang.clone()))?.scale(&sign(p));
    let shift = fm.checked_div(&t_m(1))? - LaurentPoly::one();
    for j in 0..p.saturating_sub(2) {
        let num = s(m + 1, j + 2) * shift.clone() * t_m(p - 1 - j);
        let den = fm.pow((p - 1 - j) as i64)? * bang.clone();
        rhs2 += num.checked_div(&den)?.scale(&sign(j + 1));
    }

    let mut report =
        Report::new("prop2").param("f", f.to_string()).param("t", setting.t.to_string()).param("p", p).param("n", n);
    report.push(Cell::compare(vec![p as i64, n as i64, 1], lhs.clone(), rhs1));
    report.push(Cell::compare(vec![p as i64, n as i64, 2], lhs, rhs2));
    Ok(report)
}

/// Checks, with ordinary Stirling numbers `[n, k]`,
/// `1/n^p = 1/n^{p-1} + (-1)^{p-1}/n! ([n,p] + [n,p-1]) + [n+1,p] (-1)^p/(n n!)
///  + Σ_{j=0}^{p-3} [n+1,j+2] (-1)^{j+1} (n-1) / (n^{p-1-j} n!)` for `p >= 3`, `n >= 1`.
pub fn stirling_harmonic_identity_check(p: usize, n: usize) -> Result<Report> {
    if p < 3 || n == 0 {
        return Err(Error::domain("the identity needs p >= 3 and n >= 1"));
    }
    let c = classical_first_kind(n + 1);
    let s = |a: usize, b: usize| -> Rational { c[a].get(b).cloned().map(from_bigint).unwrap_or_default() };
    let nr = int(n as i64);
    let nf = from_bigint(factorial(n as u64));
    let lhs = pow_i(&nr, -(p as i64));
    let mut rhs = pow_i(&nr, -(p as i64 - 1));
    rhs += sign(p - 1) * (s(n, p) + s(n, p - 1)) / &nf;
    rhs += s(n + 1, p) * sign(p) / (&nr * &nf);
    for j in 0..=p - 3 {
        rhs += s(n + 1, j + 2) * sign(j + 1) * int(n as i64 - 1) / (pow_i(&nr, (p - 1 - j) as i64) * &nf);
    }
    let mut report = Report::new("euler-identity").param("p", p).param("n", n);
    report.push(Cell::compare(vec![p as i64, n as i64], LaurentPoly::constant(lhs), LaurentPoly::constant(rhs)));
    Ok(report)
}

/// `Σ_{n=1}^{N} [n, k] z^n / (n^{t_idx} n!)` with ordinary Stirling numbers.
pub fn nielsen_partial(t_idx: u32, k: usize, z: &Rational, n_terms: usize) -> Rational {
    let c = classical_first_kind(n_terms);
    let mut total = Rational::zero();
    let mut zn = Rational::one();
    let mut nf = Rational::one();
    for (n, row) in c.iter().enumerate().skip(1) {
        zn *= z;
        nf *= int(n as i64);
        if let Some(s) = row.get(k) {
            if !s.is_zero() {
                total += from_bigint(s.clone()) * &zn / (pow_i(&int(n as i64), t_idx as i64) * &nf);
            }
        }
    }
    total
}
