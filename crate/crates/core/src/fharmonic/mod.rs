//! p-order f-harmonic numbers `F_n^{(p)}(arg) = Σ_{k<=n} arg^k / f(k)^p` and
//! the ways of generating them from a row of the first-kind triangle.

mod numeric;
mod props;
mod weighted;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, int};
use crate::exactnum::{CyclotomicElem, LaurentPoly, Rational, TruncSeries};
use crate::factorial::bang_f;
use crate::fspec::{FSpec, Lift, Setting};
use crate::report::{Cell, Report};
use crate::stirling::Triangle;

pub use numeric::{euler_sum_numeric, fzeta_pair_numeric, hf_weighted_partial, EulerMode};
pub use props::{
    nielsen_partial, prop1_predicted_residual, prop1_recurrence_check, prop2_functional_eq_check,
    stirling_harmonic_identity_check,
};
pub use weighted::{corollary_expansions_check, s1_from_wf_check, wf_table, wf_table_with, WfRecursion, WfTable};

/// `Σ_{k=1}^{n} arg^k / f(k)^p`.
pub fn fharmonic_direct(f: &FSpec, p: usize, n: usize, arg: &LaurentPoly) -> Result<LaurentPoly> {
    let mut total = LaurentPoly::zero();
    for k in 1..=n {
        total += arg.pow(k as i64)? * f.eval(k)?.pow(-(p as i64))?;
    }
    Ok(total)
}

/// `t^{p n(n+1)/2} / (n!_f)^p` with `t` the given monomial.
fn route_prefactor(f: &FSpec, t: &LaurentPoly, p: usize, n: usize) -> Result<LaurentPoly> {
    let tri = (p * n * (n + 1) / 2) as i64;
    t.pow(tri)?.checked_div(&bang_f(f, n)?.pow(p as i64)?)
}

/// `f̃_n(w) = Σ_{k=2}^{n+1} [n+1, k] w^k`, known through `w^order`
/// (`order >= n + 1` keeps it exact as a polynomial).
fn ftilde_from(tri: &Triangle, n: usize, order: usize) -> TruncSeries {
    let coeffs =
        (0..=order).map(|k| if k >= 2 && k <= n + 1 { tri.entry(n + 1, k) } else { LaurentPoly::zero() }).collect();
    TruncSeries::from_coeffs('w', order, coeffs)
}

/// The row generating polynomial of `[n+1, k]` with the `k <= 1` terms
/// removed, as an exact series of order `n + 1`.
pub fn ftilde_series(setting: &Setting, n: usize) -> Result<TruncSeries> {
    let tri = Triangle::for_setting(setting, n + 1)?;
    Ok(ftilde_from(&tri, n, n + 1))
}

/// `[w^{2p}] Σ_{j<p} (-1)^j w^j p/(p-j) [n+1,1]^j f̃_n(w)^{p-j}`.
fn ftilde_bracket(tri: &Triangle, n: usize, p: usize) -> Result<LaurentPoly> {
    let order = 2 * p;
    let ft = ftilde_from(tri, n, order.max(n + 1));
    let first = tri.entry(n + 1, 1);
    let mut total = LaurentPoly::zero();
    for j in 0..p {
        let c = frac(p as i64, (p - j) as i64) * if j % 2 == 0 { int(1) } else { int(-1) };
        let coeff = ft.pow((p - j) as u64).coeff(order - j)?.clone();
        total += (first.pow(j as i64)? * coeff).scale(&c);
    }
    Ok(total)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(-1)^{p+1} [w^{2p}] ∏_{m=0}^{p-1} Σ_k [n+1, k] ζ_p^{m(k-1)} w^k`.
///
/// `p = 1` is the untwisted product. Fails if the extracted coefficient has
/// a nonzero ζ-coordinate.
fn roots_bracket(tri: &Triangle, n: usize, p: usize) -> Result<LaurentPoly> {
    let order = 2 * p;
    let sign = if p % 2 == 1 { int(1) } else { int(-1) };
    let row: Vec<LaurentPoly> = (0..=order.min(n + 1)).map(|k| tri.entry(n + 1, k)).collect();
    if p == 1 {
        return Ok(row.get(2).cloned().unwrap_or_else(LaurentPoly::zero).scale(&sign));
    }
    let mut acc: Vec<CyclotomicElem> = vec![CyclotomicElem::from_scalar(p, LaurentPoly::one())?];
    for m in 0..p {
        let factor = row
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = ((m as i64) * (k as i64 - 1)).rem_euclid(p as i64) as usize;
                CyclotomicElem::monomial(p, c.clone(), e)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = vec![CyclotomicElem::zero(p)?; (acc.len() + factor.len() - 1).min(order + 1)];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                if i + j <= order {
                    next[i + j] = next[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        acc = next;
    }
    let top = match acc.get(order) {
        Some(c) => c.clone(),
        None => CyclotomicElem::zero(p)?,
    };
    let scalar =
        top.to_scalar().ok_or_else(|| Error::domain(format!("cyclotomic coefficient is not rational: {top}")))?;
    Ok(scalar.scale(&sign))
}

/// `Σ_{k<=n} t^{kp}/f(k)^p` through `f̃_n` (valid for every `p >= 1`).
pub fn harmonic_via_ftilde(setting: &Setting, p: usize, n: usize) -> Result<LaurentPoly> {
    check_p(p)?;
    let t = setting.t_elem();
    let tri = Triangle::first_kind(&setting.f, &t, n + 1)?;
    Ok(route_prefactor(&setting.f, &t, p, n)? * ftilde_bracket(&tri, n, p)?)
}

/// `Σ_{k<=n} t^{kp}/f(k)^p` through the product over p-th roots of unity.
/// `p` must be 1 or prime.
pub fn harmonic_via_roots(setting: &Setting, p: usize, n: usize) -> Result<LaurentPoly> {
    check_p(p)?;
    if p != 1 && !is_prime(p) {
        return Err(Error::domain(format!("the root-of-unity route needs prime p, got {p}")));
    }
    let t = setting.t_elem();
    let tri = Triangle::first_kind(&setting.f, &t, n + 1)?;
    Ok(route_prefactor(&setting.f, &t, p, n)? * roots_bracket(&tri, n, p)?)
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::domain("harmonic order p must be >= 1"));
    }
    Ok(())
}

/// Result of [`harmonic_via_subst`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubstValue {
    /// Frame where `t = u^p` (or the exact numeric root).
    pub lift: Lift,
    /// The right side evaluated in the lifted frame.
    pub lifted: LaurentPoly,
    /// `Σ_{k<=n} t^k / f(k)^p` computed directly in the lifted frame.
    pub direct_lifted: LaurentPoly,
    /// `lifted` mapped back to `t`.
    pub value: LaurentPoly,
}

impl SubstValue {
    pub fn verified(&self) -> bool {
        self.lifted == self.direct_lifted
    }
}

/// `Σ_{k<=n} t^k/f(k)^p` from the triangle at `t^{1/p}`: the triangle is
/// built in a frame with `t = u^p`, and the root-of-unity product (or the
/// `f̃` form when `p` is not prime) is scaled by `t^{n(n+1)/2}/(n!_f)^p`.
pub fn harmonic_via_subst(setting: &Setting, p: usize, n: usize) -> Result<SubstValue> {
    check_p(p)?;
    let lift = setting.lift(p as u32)?;
    let root = lift.root().clone();
    let tri = Triangle::first_kind(&setting.f, &root, n + 1)?;
    let bracket = if p == 1 || is_prime(p) { roots_bracket(&tri, n, p)? } else { ftilde_bracket(&tri, n, p)? };
    let lifted = route_prefactor(&setting.f, &root, p, n)? * bracket;
    let direct_lifted = fharmonic_direct(&setting.f, p, n, lift.t())?;
    let value = lift.back(&lifted)?;
    Ok(SubstValue { lift, lifted, direct_lifted, value })
}

/// Compares `Σ_{k<=n} t^{kp}/f(k)^p` with each route for `1 <= p <= p_max`,
/// `n <= n_max`. Cells are `[p, n, route]`: route 1 is the `f̃` form, 2 the
/// roots-of-unity product (`p = 1` or prime only), 3 the triangle at
/// `t^{1/p}`, compared in its lifted frame.
pub fn harmonic_routes_check(setting: &Setting, p_max: usize, n_max: usize) -> Result<Report> {
    let t = setting.t_elem();
    let mut report = Report::new("harmonic-routes")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("p_max", p_max)
        .param("n_max", n_max);
    for p in 1..=p_max {
        let tp = t.pow(p as i64)?;
        for n in 0..=n_max {
            let idx = |route: i64| vec![p as i64, n as i64, route];
            let direct = fharmonic_direct(&setting.f, p, n, &tp)?;
            report.push(Cell::compare(idx(1), direct.clone(), harmonic_via_ftilde(setting, p, n)?));
            if p == 1 || is_prime(p) {
                report.push(Cell::compare(idx(2), direct, harmonic_via_roots(setting, p, n)?));
            }
            let sub = harmonic_via_subst(setting, p, n)?;
            report.push(Cell::compare(idx(3), sub.direct_lifted, sub.lifted));
        }
    }
    Ok(report)
}

/// A polynomial in the symbols `F(k) = [n+1, k]`, each monomial stored as
/// the sorted list of its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsobaricPoly {
    pub weight: usize,
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl IsobaricPoly {
    /// Evaluates with `F(k) := value(k)`.
    pub fn eval(&self, value: impl Fn(usize) -> LaurentPoly) -> LaurentPoly {
        let mut total = LaurentPoly::zero();
        for (mono, c) in &self.terms {
            let prod = mono.iter().fold(LaurentPoly::one(), |acc, &k| acc * value(k));
            total += prod.scale(c);
        }
        total
    }
}

impl fmt::Display for IsobaricPoly {
    /// Terms ordered by ascending power of `F1`, e.g. `F2^2 - 2*F1*F3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<usize>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let ones = |m: &Vec<usize>| m.iter().filter(|&&k| k == 1).count();
            ones(a.0).cmp(&ones(b.0)).then_with(|| b.0.cmp(a.0))
        });
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let mut idx = 0;
            while idx < mono.len() {
                let k = mono[idx];
                let run = mono[idx..].iter().take_while(|&&x| x == k).count();
                factors.push(if run == 1 { format!("F{k}") } else { format!("F{k}^{run}") });
                idx += run;
            }
            if !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Ordered compositions of `total` into `parts` parts, each at least `min`.
fn compositions(total: usize, parts: usize, min: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut k = min;
    while k + min * (parts - 1) <= total {
        cur.push(k);
        compositions(total - k, parts - 1, min, out, cur);
        cur.pop();
        k += 1;
    }
}

/// Expands the `f̃` extraction symbolically in `F(k) = [n+1, k]`:
/// `Σ_{j<p} (-1)^j p/(p-j) F(1)^j Σ_{k_1+…+k_{p-j} = 2p-j, k_i >= 2} ∏ F(k_i)`.
///
/// Each factor carries its `w`-degree and every assembled monomial is checked
/// to have total degree `2p`.
pub fn isobaric_expansion(p: usize) -> Result<IsobaricPoly> {
    check_p(p)?;
    let weight = 2 * p;
    let mut terms: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for j in 0..p {
        let c = frac(p as i64, (p - j) as i64) * if j % 2 == 0 { int(1) } else { int(-1) };
        let mut comps = Vec::new();
        compositions(weight - j, p - j, 2, &mut comps, &mut Vec::new());
        for comp in comps {
            let mut mono: Vec<usize> = std::iter::repeat(1).take(j).chain(comp).collect();
            let deg: usize = mono.iter().sum();
            if deg != weight {
                return Err(Error::domain(format!("monomial {mono:?} has weight {deg}, expected {weight}")));
            }
            mono.sort_unstable();
            let slot = terms.entry(mono).or_insert_with(Rational::zero);
            *slot += &c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(IsobaricPoly { weight, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Symbol;
    use crate::fspec::TValue;

    fn lin(a: i64, b: i64) -> FSpec {
        FSpec::parse(&format!("linear:{a},{b}")).unwrap()
    }

    fn setting(f: FSpec, t: TValue) -> Setting {
        Setting::new(f, t).unwrap()
    }

    #[test]
    fn direct_sums() {
        let one = LaurentPoly::one();
        assert_eq!(fharmonic_direct(&lin(1, 0), 2, 3, &one).unwrap(), LaurentPoly::constant(frac(49, 36)));
        assert!(fharmonic_direct(&lin(2, 1), 2, 0, &one).unwrap().is_zero());
        let t = LaurentPoly::var_pow(Symbol::T, 1);
        let want = t.clone() + LaurentPoly::monomial(Symbol::T, frac(1, 2), 2);
        assert_eq!(fharmonic_direct(&lin(1, 0), 1, 2, &t).unwrap(), want);
    }

    #[test]
    fn ftilde_examples() {
        let c = ftilde_series(&Setting::classical(), 3).unwrap();
        let want: Vec<_> = [0, 0, 11, 6, 1].iter().map(|&x| LaurentPoly::from_int(x)).collect();
        assert_eq!(c.coeffs(), &want[..]);
        assert_eq!(c.pow(2).coeff(4).unwrap(), &LaurentPoly::from_int(121));

        let s = setting(lin(2, 1), TValue::one());
        let g = ftilde_series(&s, 2).unwrap();
        let want: Vec<_> = [0, 0, 8, 1].iter().map(|&x| LaurentPoly::from_int(x)).collect();
        assert_eq!(g.coeffs(), &want[..]);
        assert!(ftilde_series(&s, 0).unwrap().coeffs().iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn ftilde_matches_product_form() {
        let s = setting(lin(2, 1), TValue::Symbolic);
        let t = s.t_elem();
        for n in 0..6 {
            let g = ftilde_series(&s, n).unwrap();
            let mut prod = TruncSeries::one('w', n + 1);
            for j in 1..=n {
                let w = crate::factorial::weight(&s.f, &t, j).unwrap();
                let lin = TruncSeries::from_coeffs('w', n + 1, vec![w, LaurentPoly::one()]);
                prod = prod.mul(&lin).unwrap();
            }
            let first = Triangle::for_setting(&s, n + 1).unwrap().entry(n + 1, 1);
            let shifted = prod.sub(&TruncSeries::constant('w', n + 1, first)).unwrap().shift(1).truncate(n + 1);
            assert_eq!(shifted, g, "n = {n}");
        }
    }

    #[test]
    fn route_anchors() {
        let s = Setting::classical();
        let want = LaurentPoly::constant(frac(49, 36));
        assert_eq!(harmonic_via_ftilde(&s, 2, 3).unwrap(), want);
        assert_eq!(harmonic_via_roots(&s, 2, 3).unwrap(), want);
        assert!(harmonic_via_roots(&s, 2, 0).unwrap().is_zero());
        assert!(harmonic_via_ftilde(&s, 3, 0).unwrap().is_zero());
        assert!(harmonic_via_roots(&s, 4, 3).is_err());

        let g = setting(lin(2, 1), TValue::one());
        let direct = fharmonic_direct(&g.f, 3, 4, &LaurentPoly::one()).unwrap();
        assert_eq!(harmonic_via_roots(&g, 3, 4).unwrap(), direct);
    }

    #[test]
    fn routes_agree_on_sweep() {
        for t in [TValue::one(), TValue::Numeric(frac(3, 2)), TValue::Symbolic] {
            let r = harmonic_routes_check(&setting(lin(2, 1), t), 5, 6).unwrap();
            assert!(r.passed());
        }
    }

    #[test]
    fn subst_examples() {
        let sym = setting(lin(1, 0), TValue::Symbolic);
        let v = harmonic_via_subst(&sym, 2, 2).unwrap();
        assert!(v.verified());
        let u = |c: Rational, e| LaurentPoly::monomial(Symbol::U, c, e);
        assert_eq!(v.lifted, u(int(1), 2) + u(frac(1, 4), 4));
        let t = |c: Rational, e| LaurentPoly::monomial(Symbol::T, c, e);
        assert_eq!(v.value, t(int(1), 1) + t(frac(1, 4), 2));

        let four = setting(lin(1, 0), TValue::Numeric(int(4)));
        let v = harmonic_via_subst(&four, 2, 2).unwrap();
        assert_eq!(v.lift.root(), &LaurentPoly::from_int(2));
        assert_eq!(v.value, LaurentPoly::constant(int(4) + int(16) / int(4)));

        let p1 = harmonic_via_subst(&sym, 1, 3).unwrap();
        assert_eq!(p1.value, fharmonic_direct(&sym.f, 1, 3, &sym.t_elem()).unwrap());
    }

    #[test]
    fn isobaric_forms() {
        let shown = [
            "F2^2 - 2*F1*F3",
            "F2^3 - 3*F1*F2*F3 + 3*F1^2*F4",
            "F2^4 - 4*F1*F2^2*F3 + 2*F1^2*F3^2 + 4*F1^2*F2*F4 - 4*F1^3*F5",
            "F2^5 - 5*F1*F2^3*F3 + 5*F1^2*F2*F3^2 + 5*F1^2*F2^2*F4 - 5*F1^3*F3*F4 - 5*F1^3*F2*F5 + 5*F1^4*F6",
        ];
        for (i, want) in shown.iter().enumerate() {
            assert_eq!(isobaric_expansion(i + 2).unwrap().to_string(), *want);
        }
        let e = isobaric_expansion(2).unwrap();
        let tri = Triangle::for_setting(&Setting::classical(), 4).unwrap();
        assert_eq!(e.eval(|k| tri.entry(4, k)), LaurentPoly::from_int(49));
    }
}
