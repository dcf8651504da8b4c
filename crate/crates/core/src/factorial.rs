//! The f(t)-Pochhammer product and f-factorials.

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{poly_product_expand, LaurentPoly};
use crate::fspec::FSpec;

/// Coefficients of `(x)_{f(t),n} = ∏_{k=1}^{n-1} (x + f(k) t^{-k})`;
/// `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PochhammerExpansion {
    pub n: usize,
    pub coeffs: Vec<LaurentPoly>,
}

/// `f(k) t^{-k}`, the k-th root offset of the Pochhammer product.
pub fn weight(f: &FSpec, t: &LaurentPoly, k: usize) -> Result<LaurentPoly> {
    Ok(f.eval(k)? * t.pow(-(k as i64))?)
}

/// `(x)_{f(t),n}`; both `n = 0` and `n = 1` give the constant 1.
pub fn pochhammer_poly(f: &FSpec, t: &LaurentPoly, n: usize) -> Result<PochhammerExpansion> {
    let roots = (1..n).map(|k| weight(f, t, k)).collect::<Result<Vec<_>>>()?;
    Ok(PochhammerExpansion { n, coeffs: poly_product_expand(&roots) })
}

/// `n!_f = f(1) f(2) ... f(n)`.
pub fn bang_f(f: &FSpec, n: usize) -> Result<LaurentPoly> {
    (1..=n).try_fold(LaurentPoly::one(), |acc, j| Ok(acc * f.eval(j)?))
}

/// `n!_{f(t)} = n!_f / t^{n(n+1)/2}`.
pub fn bang_ft(f: &FSpec, t: &LaurentPoly, n: usize) -> Result<LaurentPoly> {
    let tri = (n * (n + 1) / 2) as i64;
    Ok(bang_f(f, n)? * t.pow(-tri)?)
}
