use std::fmt;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// An element of `R[ζ_p]` for prime `p`, stored as `Σ_{i<p-1} coords[i] ζ^i`
/// with Laurent-polynomial coefficients.
///
/// Every constructor and operation reduces by `1 + ζ + … + ζ^{p-1} = 0`, so
/// the representation is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElem {
    order: usize,
    coords: Vec<LaurentPoly>,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl CyclotomicElem {
    pub fn zero(order: usize) -> Result<Self> {
        if !is_prime(order) {
            return Err(Error::domain(format!("cyclotomic order {order} is not prime")));
        }
        Ok(CyclotomicElem { order, coords: vec![LaurentPoly::zero(); order - 1] })
    }

    pub fn from_scalar(order: usize, c: LaurentPoly) -> Result<Self> {
        let mut z = Self::zero(order)?;
        z.coords[0] = c;
        Ok(z)
    }

    /// `c * ζ^power`, reduced.
    pub fn monomial(order: usize, c: LaurentPoly, power: usize) -> Result<Self> {
        let mut full = vec![LaurentPoly::zero(); order];
        full[power % order] = c;
        Self::from_powers(order, full)
    }

    /// Builds from coefficients of `ζ^0 .. ζ^{len-1}`; exponents wrap mod `p`.
    pub fn from_powers(order: usize, powers: Vec<LaurentPoly>) -> Result<Self> {
        let mut z = Self::zero(order)?;
        let mut full = vec![LaurentPoly::zero(); order];
        for (i, c) in powers.into_iter().enumerate() {
            full[i % order] += c;
        }
        // ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})
        let top = full.pop().unwrap();
        for (slot, c) in z.coords.iter_mut().zip(full) {
            *slot = &c - &top;
        }
        Ok(z)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    /// True when every coordinate above degree 0 vanishes.
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(LaurentPoly::is_zero)
    }

    pub fn to_scalar(&self) -> Option<LaurentPoly> {
        self.is_scalar().then(|| self.coords[0].clone())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicElem {
            order: self.order,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicElem {
            order: self.order,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let p = self.order;
        let mut full = vec![LaurentPoly::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        Self::from_powers(p, full)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        CyclotomicElem { order: self.order, coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{i}", self.order)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(p: usize, k: usize) -> CyclotomicElem {
        CyclotomicElem::monomial(p, LaurentPoly::one(), k).unwrap()
    }

    fn scalar(p: usize, n: i64) -> CyclotomicElem {
        CyclotomicElem::from_scalar(p, LaurentPoly::from_int(n)).unwrap()
    }

    #[test]
    fn square_root_of_unity() {
        let z = zeta(2, 1);
        assert_eq!(z.to_scalar(), Some(LaurentPoly::from_int(-1)));
        assert_eq!(z.mul(&z).unwrap().to_scalar(), Some(LaurentPoly::one()));
    }

    #[test]
    fn cube_roots_norm() {
        let a = scalar(3, 1).add(&zeta(3, 1)).unwrap();
        let b = scalar(3, 1).add(&zeta(3, 2)).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_scalar(), Some(LaurentPoly::one()));
    }

    #[test]
    fn scalar_products_embed() {
        let a = scalar(5, 3);
        let b = scalar(5, -4);
        assert_eq!(a.mul(&b).unwrap().to_scalar(), Some(LaurentPoly::from_int(-12)));
    }

    #[test]
    fn zeta_power_p_is_one() {
        for p in [2, 3, 5, 7] {
            let mut acc = scalar(p, 1);
            for _ in 0..p {
                acc = acc.mul(&zeta(p, 1)).unwrap();
            }
            assert!(acc.is_scalar());
            assert_eq!(acc.to_scalar(), Some(LaurentPoly::one()));
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(CyclotomicElem::zero(4).is_err());
        assert!(matches!(scalar(3, 1).mul(&scalar(5, 1)), Err(Error::OrderMismatch(3, 5))));
    }
}
