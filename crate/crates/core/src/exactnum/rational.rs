//! Arbitrary-precision rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator. Its `Display` output is the
//! canonical text form used everywhere: `p/q`, or `p` when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p/q` or `p` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::parse(format!("bad rational `{s}`")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::parse(format!("bad rational `{s}`")))?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in `{s}`")));
        }
        Ok(Rational::new(n, d))
    } else {
        BigInt::from_str(s).map(Rational::from_integer).map_err(|_| Error::parse(format!("bad rational `{s}`")))
    }
}

/// Integer power, negative exponents allowed for nonzero `base`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        Pow::pow(base, exp as u64)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        Pow::pow(base.recip(), exp.unsigned_abs())
    }
}

/// Exact `k`-th root if one exists in the rationals.
pub fn exact_root(value: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if k == 1 || value.is_zero() || value.is_one() {
        return Some(value.clone());
    }
    let negative = value.is_negative();
    if negative && k % 2 == 0 {
        return None;
    }
    let root_of = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (Pow::pow(&r, k) == n.abs()).then_some(r)
    };
    let num = root_of(value.numer())?;
    let den = root_of(value.denom())?;
    let r = Rational::new(num, den);
    Some(if negative { -r } else { r })
}

/// Decimal rendering with `digits` fractional digits, rounded half away from zero.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let scale = Pow::pow(BigInt::from(10u32), digits as u64);
    let num = value.numer().abs() * &scale;
    let den = value.denom();
    let (mut q, r) = num.div_rem(den);
    if (r * 2u32) >= *den {
        q += 1u32;
    }
    let mut s = q.to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if value.is_negative() && q_nonzero(&s) {
        s.insert(0, '-');
    }
    s
}

fn q_nonzero(s: &str) -> bool {
    s.bytes().any(|b| b.is_ascii_digit() && b != b'0')
}

/// Binomial coefficient for possibly negative upper index, `k >= 0`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= int(n - i);
        acc /= int(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Rising factorial `a (a + 1) ... (a + k - 1)`; empty product for `k = 0`.
pub fn rising(a: i64, k: u64) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, i| acc * int(a + i))
}

/// `a - b` for `b` with a small denominator. Only primes of `b`'s
/// denominator can cancel, so no gcd on the size of `a` is needed.
pub fn sub_small_den(a: &Rational, b: &Rational) -> Rational {
    let bd = b.denom();
    let mut num = a.numer() * bd - b.numer() * a.denom();
    let mut den = a.denom() * bd;
    loop {
        let g = (&num % bd).gcd(bd).gcd(&(&den % bd));
        if g.is_one() || num.is_zero() {
            break;
        }
        num /= &g;
        den /= &g;
    }
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::new_raw(num, den)
}
