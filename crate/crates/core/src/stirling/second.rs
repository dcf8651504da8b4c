//! Second-kind sums and the generating-function transforms built on them.

use num_traits::One;

use crate::error::Result;
use crate::exactnum::rational::{binomial, factorial, from_bigint, int};
use crate::exactnum::{LaurentPoly, Rational, TruncSeries};
use crate::fspec::{FSpec, Setting};
use crate::report::{Cell, Report};

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn inv_factorial(j: usize) -> Rational {
    from_bigint(factorial(j as u64)).recip()
}

/// `Σ_{j=0}^{k} C(k,j) (-1)^{k-j} f(j)^n / (t^{jn} j!)`.
///
/// The `j = 0` summand is taken as `(-1)^k [n = 0]`, reading `f(0)^n` as
/// `0^n`, so `f(0)` is never evaluated.
pub fn s2_entry(setting: &Setting, n: usize, k: usize) -> Result<LaurentPoly> {
    let t = setting.t_elem();
    let mut total = if n == 0 { LaurentPoly::constant(sign(k)) } else { LaurentPoly::zero() };
    for j in 1..=k {
        let c = binomial(k as i64, j as i64) * sign(k - j) * inv_factorial(j);
        let term = setting.f.eval(j)?.pow(n as i64)? * t.pow(-((j * n) as i64))?;
        total += term.scale(&c);
    }
    Ok(total)
}

/// Compares, coefficient by coefficient in `z`,
/// `Σ_{0<=j<=n} f(j)^k t^{-jk} z^j` with
/// `Σ_{0<=j<=k} S2(k, j) z^j D_z^{(j)}[(1 - z^{n+1}) / (1 - z)]`.
///
/// The left `j = 0` term uses the same `0^k` reading as [`s2_entry`].
/// On the right, `z^j D^{(j)} Σ_{i<=n} z^i = Σ_i i(i-1)...(i-j+1) z^i`.
pub fn s2_geom_transform_check(setting: &Setting, n: usize, k: usize) -> Result<Report> {
    let t = setting.t_elem();
    let s2 = (0..=k).map(|j| s2_entry(setting, k, j)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("s2-geom")
        .param("f", setting.f.to_string())
        .param("t", setting.t.to_string())
        .param("n", n)
        .param("k", k);
    for i in 0..=n {
        let lhs = if i == 0 {
            if k == 0 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        } else {
            setting.f.eval(i)?.pow(k as i64)? * t.pow(-((i * k) as i64))?
        };
        let mut rhs = LaurentPoly::zero();
        let mut falling = Rational::one();
        for (j, s) in s2.iter().enumerate() {
            if j > i {
                break;
            }
            rhs += s.scale(&falling);
            falling *= int((i - j) as i64);
        }
        report.push(Cell::compare(vec![n as i64, k as i64, i as i64], lhs, rhs));
    }
    Ok(report)
}

/// `Σ_{1<=m<=j} C(j,m) (-1)^{j-m} / (j! f(m)^k)`.
pub fn s2star_entry(f: &FSpec, k: usize, j: usize) -> Result<LaurentPoly> {
    let mut total = LaurentPoly::zero();
    let jf = inv_factorial(j);
    for m in 1..=j {
        let c = binomial(j as i64, m as i64) * sign(j - m) * &jf;
        total += f.eval(m)?.pow(-(k as i64))?.scale(&c);
    }
    Ok(total)
}

/// `[z^n]` of `Σ_n z^n / f(n)^k = Σ_j S2*(k, j) z^j j! / (1-z)^{j+1}`, that is
/// `1/f(n)^k = Σ_{j=1}^{n} S2*(k, j) j! C(n, j)`, for `1 <= n <= n_max`.
pub fn s2star_ogf_check(f: &FSpec, k: usize, n_max: usize) -> Result<Report> {
    let star = (1..=n_max).map(|j| s2star_entry(f, k, j)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("s2star-ogf").param("f", f.to_string()).param("k", k).param("n_max", n_max);
    for n in 1..=n_max {
        let lhs = f.eval(n)?.pow(-(k as i64))?;
        let mut rhs = LaurentPoly::zero();
        for j in 1..=n {
            let c = from_bigint(factorial(j as u64)) * binomial(n as i64, j as i64);
            rhs += star[j - 1].scale(&c);
        }
        report.push(Cell::compare(vec![k as i64, n as i64], lhs, rhs));
    }
    Ok(report)
}

/// Coefficient-wise check, through `z^n_max`, of
/// `Σ_{n>=1} F_n^{(r)}(1) z^n / n! = Σ_j S2*(k, j) z^j e^z (j+1+z) / (j+1)`
/// with `k := r`. Only `j <= n_max` can reach the compared orders.
pub fn s2star_egf_check(f: &FSpec, r: usize, n_max: usize) -> Result<Report> {
    let mut report = Report::new("s2star-egf").param("f", f.to_string()).param("r", r).param("n_max", n_max);
    if n_max == 0 {
        return Ok(report);
    }
    report.note("the right side uses the modified second-kind numbers with k := r");
    let mut lhs = vec![LaurentPoly::zero(); n_max + 1];
    let mut partial = LaurentPoly::zero();
    for (n, slot) in lhs.iter_mut().enumerate().skip(1) {
        partial += f.eval(n)?.pow(-(r as i64))?;
        *slot = partial.scale(&inv_factorial(n));
    }
    let ez = TruncSeries::exp_linear('z', n_max, &int(1));
    let mut rhs = TruncSeries::zero('z', n_max);
    for j in 1..=n_max {
        let s = s2star_entry(f, r, j)?;
        let lin = TruncSeries::from_rationals('z', n_max, [int(j as i64 + 1), int(1)])
            .scale_rational(&Rational::new(1.into(), (j as i64 + 1).into()));
        let term = ez.mul(&lin)?.shift(j).truncate(n_max).scale(&s);
        rhs = rhs.add(&term)?;
    }
    for (n, l) in lhs.into_iter().enumerate().skip(1) {
        report.push(Cell::compare(vec![r as i64, n as i64], l, rhs.coeff(n)?.clone()));
    }
    Ok(report)
}
