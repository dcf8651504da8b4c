use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A power series in `var` known exactly through `z^order`.
///
/// Coefficients past `order` are unknown: [`TruncSeries::coeff`] refuses to
/// read them, and binary operations keep the smaller of the two orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TruncSeries {
    var: char,
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

#[derive(Deserialize)]
struct RawSeries {
    var: char,
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl TryFrom<RawSeries> for TruncSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        if raw.coeffs.len() != raw.order + 1 {
            return Err(Error::parse(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncSeries { var: raw.var, order: raw.order, coeffs: raw.coeffs })
    }
}

impl TruncSeries {
    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(var: char, order: usize, mut coeffs: Vec<LaurentPoly>) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        TruncSeries { var, order, coeffs }
    }

    pub fn from_rationals(var: char, order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_coeffs(var, order, coeffs.into_iter().map(LaurentPoly::constant).collect())
    }

    pub fn zero(var: char, order: usize) -> Self {
        Self::from_coeffs(var, order, Vec::new())
    }

    pub fn constant(var: char, order: usize, c: LaurentPoly) -> Self {
        Self::from_coeffs(var, order, vec![c])
    }

    pub fn one(var: char, order: usize) -> Self {
        Self::constant(var, order, LaurentPoly::one())
    }

    /// `c * var^k`.
    pub fn monomial(var: char, order: usize, c: LaurentPoly, k: usize) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `exp(a * var)` through `var^order`.
    pub fn exp_linear(var: char, order: usize, a: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            coeffs.push(term.clone());
            term = term * a / int(k as i64 + 1);
        }
        Self::from_rationals(var, order, coeffs)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&LaurentPoly> {
        self.coeffs.get(k).ok_or(Error::OrderExceeded { index: k, order: self.order })
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncSeries { var: self.var, order, coeffs: self.coeffs[..=order].to_vec() }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch { left: self.var.to_string(), right: other.var.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(TruncSeries { var: self.var, order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries { var: self.var, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        TruncSeries { var: self.var, order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        TruncSeries { var: self.var, order: self.order, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![LaurentPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(TruncSeries { var: self.var, order, coeffs })
    }

    /// Non-negative integer power; `s^0` is 1 at the same order.
    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(self.var, self.order);
        let mut base = self.clone();
        let mut k = exp;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same variable");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same variable");
            }
        }
        result
    }

    /// Integer power; negative exponents go through [`TruncSeries::inverse`].
    pub fn pow_i(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inverse()?.pow(exp.unsigned_abs()))
        }
    }

    /// Multiplicative inverse; the constant term must be a unit (a monomial).
    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("constant term `{}`", self.coeffs[0])))?;
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(self.order + 1);
        out.push(b0.clone());
        for k in 1..=self.order {
            let mut acc = LaurentPoly::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(&acc * &b0));
        }
        Ok(TruncSeries { var: self.var, order: self.order, coeffs: out })
    }

    /// `self / divisor`. A common factor `var^v` is cancelled first, where `v`
    /// is the divisor's valuation; this costs `v` orders of precision.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_var(divisor)?;
        let v = divisor
            .valuation()
            .ok_or_else(|| Error::NotInvertible("divisor is zero to its truncation order".into()))?;
        if v > self.order || self.coeffs.iter().take(v).any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible(format!("dividend is not divisible by {}^{v}", self.var)));
        }
        let order = self.order.min(divisor.order) - v;
        let num = self.unshift(v).truncate(order);
        let den = divisor.unshift(v).truncate(order);
        num.mul(&den.inverse()?)
    }

    /// Divides by `var^k`, assuming the low coefficients are zero.
    fn unshift(&self, k: usize) -> Self {
        TruncSeries { var: self.var, order: self.order - k, coeffs: self.coeffs[k..].to_vec() }
    }

    /// Multiplies by `var^k`; the result is known through `order + k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { var: self.var, order: self.order + k, coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.order == 0 {
            return Self::zero(self.var, 0);
        }
        let coeffs = (1..=self.order).map(|k| self.coeffs[k].scale(&int(k as i64))).collect();
        TruncSeries { var: self.var, order: self.order - 1, coeffs }
    }

    /// `self(inner(var))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_var(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::domain("inner series of a composition needs zero constant term"));
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::zero(self.var, order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::frac;

    fn ser(var: char, order: usize, c: &[i64]) -> TruncSeries {
        TruncSeries::from_rationals(var, order, c.iter().map(|&x| int(x)))
    }

    fn rat_coeffs(s: &TruncSeries) -> Vec<Rational> {
        s.coeffs().iter().map(|c| c.as_constant().unwrap()).collect()
    }

    #[test]
    fn binomial_square() {
        let s = ser('z', 3, &[1, 1]).pow(2);
        assert_eq!(rat_coeffs(&s), vec![int(1), int(2), int(1), int(0)]);
        assert_eq!(ser('z', 3, &[5, 7]).pow(0), TruncSeries::one('z', 3));
    }

    #[test]
    fn reading_past_order_is_an_error() {
        let s = ser('z', 2, &[1, 1]);
        assert!(s.coeff(2).is_ok());
        assert!(matches!(s.coeff(3), Err(Error::OrderExceeded { index: 3, order: 2 })));
        let p = s.mul(&ser('z', 5, &[1])).unwrap();
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn variable_mismatch() {
        assert!(matches!(ser('z', 2, &[1]).mul(&ser('w', 2, &[1])), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn bernoulli_quotient() {
        // z / (e^z - 1)
        let e = TruncSeries::exp_linear('z', 3, &int(1));
        let den = e.sub(&TruncSeries::one('z', 3)).unwrap();
        let num = TruncSeries::monomial('z', 3, LaurentPoly::one(), 1);
        let q = num.div(&den).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(rat_coeffs(&q), vec![int(1), frac(-1, 2), frac(1, 12)]);
    }

    #[test]
    fn geometric_factorization() {
        let q = ser('z', 4, &[1, 0, -1]).div(&ser('z', 4, &[1, -1])).unwrap();
        assert_eq!(rat_coeffs(&q), vec![int(1), int(1), int(0), int(0), int(0)]);
        let a = ser('z', 4, &[0, 2, 3]);
        let one = a.div(&a).unwrap();
        assert_eq!(rat_coeffs(&one), vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn negative_power_and_compose() {
        let inv = ser('z', 4, &[1, -1]).pow_i(-2).unwrap();
        assert_eq!(rat_coeffs(&inv), vec![int(1), int(2), int(3), int(4), int(5)]);
        // exp(z) composed with 2z is exp(2z)
        let e = TruncSeries::exp_linear('z', 5, &int(1));
        let c = e.compose(&ser('z', 5, &[0, 2])).unwrap();
        assert_eq!(c, TruncSeries::exp_linear('z', 5, &int(2)));
    }

    #[test]
    fn derivative_and_shift() {
        let s = ser('w', 3, &[1, 2, 3, 4]);
        assert_eq!(rat_coeffs(&s.derivative()), vec![int(2), int(6), int(12)]);
        let sh = s.shift(2);
        assert_eq!(sh.order(), 5);
        assert_eq!(sh.coeff(5).unwrap(), &LaurentPoly::from_int(4));
    }

    #[test]
    fn json_shape() {
        let s = ser('z', 1, &[1, -2]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(
            js,
            r#"{"var":"z","order":1,"coeffs":[{"var":"t","terms":{"0":"1"}},{"var":"t","terms":{"0":"-2"}}]}"#
        );
        let back: TruncSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<TruncSeries>(r#"{"var":"z","order":3,"coeffs":[]}"#).is_err());
    }
}
