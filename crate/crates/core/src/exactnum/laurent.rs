use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{int, parse_rational, pow_i, Rational};
use crate::error::{Error, Result};

/// The formal variable a [`LaurentPoly`] is written in.
///
/// `T` is the triangle parameter, `Q` the base of the q-power family, and `U`
/// the auxiliary variable used when fractional powers of `t` are needed
/// (`t = u^L`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    T,
    Q,
    U,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::T => "t",
            Symbol::Q => "q",
            Symbol::U => "u",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(Symbol::T),
            "q" => Ok(Symbol::Q),
            "u" => Ok(Symbol::U),
            other => Err(Error::parse(format!("unknown variable `{other}`"))),
        }
    }
}

/// A Laurent polynomial in one formal variable with rational coefficients.
///
/// Zero coefficients are never stored, so equality of term maps is equality of
/// values. The variable is carried along as metadata: a constant adopts the
/// variable of whatever it is combined with, while combining two non-constant
/// values in different variables is a programming error and panics.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    var: Symbol,
    terms: BTreeMap<i64, Rational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { var: Symbol::T, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Symbol::T, c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// `coeff * var^exp`.
    pub fn monomial(var: Symbol, coeff: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { var, terms }
    }

    pub fn var_pow(var: Symbol, exp: i64) -> Self {
        Self::monomial(var, Rational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(var: Symbol, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly { var, terms: BTreeMap::new() };
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn with_var(mut self, var: Symbol) -> Self {
        self.var = var;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == 0)
    }

    /// The value as a rational, when no non-zero exponent is present.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&0).cloned()
        } else {
            None
        }
    }

    /// `(coefficient, exponent)` when the value is a single non-zero term.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn merged_var(&self, other: &Self) -> Symbol {
        match (self.is_constant(), other.is_constant()) {
            (false, false) => {
                assert_eq!(self.var, other.var, "arithmetic between Laurent polynomials in different variables");
                self.var
            }
            (false, true) => self.var,
            (true, false) => other.var,
            (true, true) => self.var,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly { var: self.var, terms: BTreeMap::new() };
        }
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Multiplies by `var^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, v)| (*e + shift, v.clone())).collect() }
    }

    /// Integer power. Negative exponents require a monomial.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        if let Some((c, e)) = self.as_monomial() {
            return Ok(Self::monomial(self.var, pow_i(c, exp), e * exp));
        }
        let mut result = Self::one().with_var(self.var);
        let mut base = self.clone();
        let mut k = exp as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Multiplicative inverse; only monomials are units in the Laurent ring.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((c, e)) => Ok(Self::monomial(self.var, c.recip(), -e)),
            None => Err(Error::NotInvertible(format!("`{self}` is not a monomial"))),
        }
    }

    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        Ok(self * &divisor.inverse()?)
    }

    /// Evaluates at a rational point. Negative exponents need a nonzero point.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        if at.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::domain("negative power evaluated at zero"));
        }
        Ok(self.terms.iter().map(|(e, c)| c * pow_i(at, *e)).sum())
    }

    /// Rewrites `var^(d*k)` as `new_var^k`. Fails if some exponent is not a
    /// multiple of `d`.
    pub fn compress_exponents(&self, d: i64, new_var: Symbol) -> Result<Self> {
        let mut out = LaurentPoly { var: new_var, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e.rem_euclid(d) != 0 {
                return Err(Error::domain(format!("exponent {e} of `{}` is not a multiple of {d}", self.var)));
            }
            out.terms.insert(e / d, c.clone());
        }
        Ok(out)
    }

    /// Substitutes `var^d = value` for a rational `value`; every exponent must
    /// be a multiple of `d`.
    pub fn substitute_power(&self, d: i64, value: &Rational) -> Result<Rational> {
        self.compress_exponents(d, self.var)?.eval(value)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `3/2*t^-2 - t + 5`. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => self.var.name().to_string(),
                e => format!("{}^{}", self.var, e),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        struct Terms<'a>(&'a BTreeMap<i64, Rational>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    m.serialize_entry(&e.to_string(), &c.to_string())?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("var", self.var.name())?;
        m.serialize_entry("terms", &Terms(&self.terms))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            terms: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let var = Symbol::from_str(&raw.var).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            let e: i64 = e.trim().parse().map_err(D::Error::custom)?;
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(var, terms))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.var = self.merged_var(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.var = self.merged_var(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let var = self.merged_var(rhs);
        let mut out = LaurentPoly { var, terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: LaurentPoly) {
        *self *= &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&Rational> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &Rational) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, x| acc * x)
    }
}
