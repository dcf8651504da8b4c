//! Exact partial sums of f-zeta series and Euler-type sums.
//!
//! Partial sums at `N = 10^5` have denominators of several hundred thousand
//! bits, so the sums are formed by binary splitting with denominators kept as
//! factored lcms and reduced once at the end, avoiding big gcds and divisions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::pow_i;
use crate::exactnum::Rational;
use crate::fspec::FSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerMode {
    /// `Σ_{n<=N} F_n^{(r)}(1) / f(n)^r`
    HarmonicOverF,
    /// `Σ_{n<=N} 1 / f(n)^r`
    FZeta,
    /// `Σ_{n<=N} 1 / f(n)^{2r}`
    FZeta2r,
}

impl EulerMode {
    pub fn name(self) -> &'static str {
        match self {
            EulerMode::HarmonicOverF => "harmonic_over_f",
            EulerMode::FZeta => "fzeta",
            EulerMode::FZeta2r => "fzeta2r",
        }
    }
}

impl fmt::Display for EulerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EulerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harmonic_over_f" => Ok(EulerMode::HarmonicOverF),
            "fzeta" => Ok(EulerMode::FZeta),
            "fzeta2r" => Ok(EulerMode::FZeta2r),
            other => Err(Error::parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Below this many terms the two halves are summed on the current thread.
const PAR_THRESHOLD: usize = 2048;
/// `|f(n)|` numerators above this are not factored; the result is then
/// reduced by a plain gcd.
const FACTOR_LIMIT: u64 = 1 << 40;

type Factors = BTreeMap<u64, u32>;

/// `A = Σ a_n` and `B = Σ_n a_n Σ_{k<=n} a_k` over a block, as `a_num / den`
/// and `b_num / den^2`. With `fac` present, `den` is the lcm of the block's
/// denominators and `fac` its factorization; otherwise `den` is their product.
struct Block {
    a_num: BigInt,
    b_num: BigInt,
    den: BigInt,
    fac: Option<Factors>,
}

fn mul_small(x: &mut BigInt, chunk: &mut u64, p: u64) {
    match chunk.checked_mul(p) {
        Some(c) => *chunk = c,
        None => {
            *x *= *chunk;
            *chunk = p;
        }
    }
}

/// `Π ℓ^{big[ℓ] - small[ℓ]}`, for `small` dominated by `big`.
fn cofactor(big: &Factors, small: &Factors) -> BigInt {
    let mut x = BigInt::one();
    let mut chunk = 1u64;
    for (&p, &e) in big {
        for _ in small.get(&p).copied().unwrap_or(0)..e {
            mul_small(&mut x, &mut chunk, p);
        }
    }
    x * chunk
}

fn lcm_factors(l: &Factors, r: &Factors) -> Factors {
    let mut out = l.clone();
    for (&p, &e) in r {
        let slot = out.entry(p).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

impl Block {
    fn leaf(term: &Term, with_b: bool) -> Self {
        let b_num = if with_b { &term.num * &term.num } else { BigInt::zero() };
        Block { a_num: term.num.clone(), b_num, den: term.den.clone(), fac: term.fac.clone() }
    }

    fn merge(l: Block, r: Block, with_b: bool) -> Block {
        let (cl, cr, den, fac) = match (l.fac, r.fac) {
            (Some(fl), Some(fr)) => {
                let fac = lcm_factors(&fl, &fr);
                let cl = cofactor(&fac, &fl);
                let cr = cofactor(&fac, &fr);
                let den = &l.den * &cl;
                (cl, cr, den, Some(fac))
            }
            _ => {
                let den = &l.den * &r.den;
                (r.den, l.den, den, None)
            }
        };
        let a_num = &l.a_num * &cl + &r.a_num * &cr;
        let b_num = if with_b {
            (&l.b_num * &cl + &l.a_num * &r.a_num * &cr) * &cl + &r.b_num * &cr * &cr
        } else {
            BigInt::zero()
        };
        Block { a_num, b_num, den, fac }
    }
}

fn split(terms: &[Term], with_b: bool) -> Block {
    if terms.len() == 1 {
        return Block::leaf(&terms[0], with_b);
    }
    let (lo, hi) = terms.split_at(terms.len() / 2);
    let (l, r) = if terms.len() >= PAR_THRESHOLD {
        rayon::join(|| split(lo, with_b), || split(hi, with_b))
    } else {
        (split(lo, with_b), split(hi, with_b))
    };
    Block::merge(l, r, with_b)
}

/// Factors `m <= FACTOR_LIMIT` by trial division, adding `e` times each
/// exponent into `into`.
fn factor_small(mut m: u64, e: u32, into: &mut Factors) {
    let mut d = 2u64;
    while d * d <= m {
        let mut k = 0;
        while m % d == 0 {
            m /= d;
            k += 1;
        }
        if k > 0 {
            *into.entry(d).or_insert(0) += k * e;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        *into.entry(m).or_insert(0) += e;
    }
}

/// Primes tested together against one remainder of the numerator.
const REDUCE_BATCH: usize = 512;

/// `num / den` in lowest terms, where `fac` is the factorization of `den`.
fn reduce_factored(mut num: BigInt, mut fac: Factors) -> Rational {
    if num.is_zero() {
        return Rational::zero();
    }
    let primes: Vec<u64> = fac.keys().copied().collect();
    let mut hits = Vec::new();
    for batch in primes.chunks(REDUCE_BATCH) {
        let mut m = BigInt::one();
        let mut chunk = 1u64;
        batch.iter().for_each(|&p| mul_small(&mut m, &mut chunk, p));
        let rem = &num % (m * chunk);
        hits.extend(batch.iter().copied().filter(|&p| (&rem % p).is_zero()));
    }
    for p in hits {
        let e = fac.get_mut(&p).expect("prime of den");
        let bp = BigInt::from(p);
        while *e > 0 {
            let (q, rem) = num.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            num = q;
            *e -= 1;
        }
    }
    Rational::new_raw(num, cofactor(&fac, &Factors::new()))
}

/// `1/f(n)^e` as `num / den` with `den > 0`, plus the factorization of `den`
/// when `|f(n)|` has an integer numerator below `FACTOR_LIMIT`.
struct Term {
    num: BigInt,
    den: BigInt,
    fac: Option<Factors>,
}

fn reciprocal_powers(f: &FSpec, e: u32, n_terms: usize) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let v = f.eval_rational(n)?;
        let (p, q) = (v.numer(), v.denom());
        let num = num_traits::pow(q.clone(), e as usize);
        let num = if p.is_negative() && e % 2 == 1 { -num } else { num };
        let abs_p = p.abs();
        let fac = match abs_p.to_u64_digits() {
            (Sign::Plus, d) if d.len() == 1 && d[0] <= FACTOR_LIMIT => {
                let mut map = Factors::new();
                factor_small(d[0], e, &mut map);
                Some(map)
            }
            _ => None,
        };
        out.push(Term { num, den: num_traits::pow(abs_p, e as usize), fac });
    }
    // factored and unfactored blocks do not mix
    if out.iter().any(|t| t.fac.is_none()) {
        out.iter_mut().for_each(|t| t.fac = None);
    }
    Ok(out)
}

fn check_args(r: u32, n_terms: usize) -> Result<()> {
    if n_terms == 0 {
        return Err(Error::domain("at least one term is required"));
    }
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    Ok(())
}

fn squared(fac: &Factors) -> Factors {
    fac.iter().map(|(&p, &e)| (p, 2 * e)).collect()
}

/// Exact partial sum of the selected series over `1 <= n <= n_terms`, with
/// `f` evaluated at `t = 1`. `f` must take rational values.
pub fn euler_sum_numeric(f: &FSpec, r: u32, n_terms: usize, mode: EulerMode) -> Result<Rational> {
    check_args(r, n_terms)?;
    let (e, with_b) = match mode {
        EulerMode::HarmonicOverF => (r, true),
        EulerMode::FZeta => (r, false),
        EulerMode::FZeta2r => (2 * r, false),
    };
    let block = split(&reciprocal_powers(f, e, n_terms)?, with_b);
    Ok(match (with_b, block.fac) {
        (true, Some(fac)) => reduce_factored(block.b_num, squared(&fac)),
        (true, None) => Rational::new(block.b_num, &block.den * &block.den),
        (false, Some(fac)) => reduce_factored(block.a_num, fac),
        (false, None) => Rational::new(block.a_num, block.den),
    })
}

/// `½ (Σ_{n<=N} 1/f(n)^r)^2 + ½ Σ_{n<=N} 1/f(n)^{2r}`, computed from the two
/// power sums alone.
pub fn fzeta_pair_numeric(f: &FSpec, r: u32, n_terms: usize) -> Result<Rational> {
    check_args(r, n_terms)?;
    let (a, b) = rayon::join(
        || reciprocal_powers(f, r, n_terms).map(|t| split(&t, false)),
        || reciprocal_powers(f, 2 * r, n_terms).map(|t| split(&t, false)),
    );
    let (a, b) = (a?, b?);
    Ok(match (a.fac, b.fac) {
        // lcm of the 2r-th powers is the square of the lcm of the r-th powers
        (Some(fa), Some(_)) => {
            let mut fac = squared(&fa);
            *fac.entry(2).or_insert(0) += 1;
            reduce_factored(&a.a_num * &a.a_num + b.a_num, fac)
        }
        _ => {
            let den_a2 = &a.den * &a.den;
            let num = &a.a_num * &a.a_num * &b.den + &b.a_num * &den_a2;
            Rational::new(num, den_a2 * b.den * 2u32)
        }
    })
}

/// `Σ_{n=1}^{N} (Π_i F_n^{(ϖ_i)}(t^{ϖ_i})) z^{s n} / f(n)^s` with
/// `F_n^{(p)}(x) = Σ_{k<=n} x^k / f(k)^p`.
pub fn hf_weighted_partial(
    f: &FSpec,
    orders: &[u32],
    s: u32,
    t: &Rational,
    z: &Rational,
    n_terms: usize,
) -> Result<Rational> {
    if orders.contains(&0) {
        return Err(Error::domain("orders must be positive"));
    }
    let mut partial = vec![Rational::zero(); orders.len()];
    let zs = pow_i(z, s as i64);
    let mut zsn = Rational::one();
    let mut total = Rational::zero();
    for n in 1..=n_terms {
        let fv = f.eval_rational(n)?;
        for (acc, &w) in partial.iter_mut().zip(orders) {
            *acc += pow_i(t, (w as usize * n) as i64) / pow_i(&fv, w as i64);
        }
        zsn *= &zs;
        let prod: Rational = partial.iter().product();
        total += prod * &zsn / pow_i(&fv, s as i64);
    }
    Ok(total)
}
