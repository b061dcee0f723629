use super::IntPoly;
use crate::error::{Error, Result};

/// `f_i = f_{d-i}` for `0 <= i <= d`, and `deg f <= d`.
pub fn is_palindromic(f: &IntPoly, d: usize) -> bool {
    f.deg0() <= d && (0..=d / 2).all(|i| f.coeff(i) == f.coeff(d - i))
}

/// The gamma vector of a palindromic `f` centred at `d/2`:
/// `f = sum gamma_i x^i (1+x)^(d-2i)`.
pub fn gamma_extract(f: &IntPoly, d: usize) -> Result<IntPoly> {
    if !is_palindromic(f, d) {
        return Err(Error::NotPalindromic(d));
    }
    let mut rest = f.clone();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = rest.coeff(i);
        if g != 0.into() {
            let term = IntPoly::binomial_power(1, 1, d - 2 * i).shift(i).scale(&g);
            rest = &rest - &term;
        }
        gamma.push(g);
    }
    if !rest.is_zero() {
        return Err(Error::Inconsistent("gamma peeling left a remainder".into()));
    }
    Ok(IntPoly::new(gamma))
}

/// Inverse of [`gamma_extract`].
pub fn gamma_expand(gamma: &IntPoly, d: usize) -> Result<IntPoly> {
    if gamma.deg0() > d / 2 && !gamma.is_zero() {
        return Err(Error::DegreeTooHigh {
            deg: gamma.deg0(),
            d,
        });
    }
    let mut out = IntPoly::zero();
    for (i, g) in gamma.coeffs().iter().enumerate() {
        let term = IntPoly::binomial_power(1, 1, d - 2 * i).shift(i).scale(g);
        out = &out + &term;
    }
    Ok(out)
}
