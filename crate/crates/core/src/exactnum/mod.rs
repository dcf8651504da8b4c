//! Exact arithmetic: rationals, one-variable Laurent polynomials, cyclotomic
//! elements of prime order and truncated power series.

pub mod cyclotomic;
pub mod laurent;
pub mod rational;
pub mod series;

pub use cyclotomic::CyclotomicElem;
pub use laurent::{LaurentPoly, Symbol};
pub use rational::Rational;
pub use series::TruncSeries;

/// Coefficients `c_0..c_m` of `∏ (x + r_i)` in ascending powers of `x`.
///
/// The result is monic with `m = roots.len()`; no roots gives `[1]`.
pub fn poly_product_expand(roots: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut coeffs = vec![LaurentPoly::one()];
    for r in roots {
        let mut next = vec![LaurentPoly::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] += c * r;
        }
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_small_products() {
        let roots: Vec<_> = [1, 2, 3].iter().map(|&r| LaurentPoly::from_int(r)).collect();
        let want: Vec<_> = [6, 11, 6, 1].iter().map(|&c| LaurentPoly::from_int(c)).collect();
        assert_eq!(poly_product_expand(&roots), want);
        assert_eq!(poly_product_expand(&[]), vec![LaurentPoly::one()]);

        let q = |e| LaurentPoly::var_pow(Symbol::Q, e);
        let got = poly_product_expand(&[q(2), q(3)]);
        assert_eq!(got, vec![q(5), q(2) + q(3), LaurentPoly::one()]);
    }
}
