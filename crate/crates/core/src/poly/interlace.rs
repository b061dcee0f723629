use num_rational::BigRational;
use num_traits::One;

use super::roots::{certify_real_rooted_nonpositive, joint_roots, real_roots};
use super::IntPoly;
use crate::error::{Error, Result};

fn require_real_rooted(f: &IntPoly) -> Result<()> {
    if f.is_zero() || certify_real_rooted_nonpositive(f)?.real_rooted {
        Ok(())
    } else {
        Err(Error::NotRealRooted)
    }
}

/// Decides `f ⪯ g`: with roots `α` of `f` and `β` of `g` listed in weakly
/// decreasing order, `β_{k+1} <= α_k <= β_k` for every `k`.
///
/// Zero polynomials interlace with everything. Otherwise `deg g` must be
/// `deg f` or `deg f + 1`, so a nonzero constant only interlaces constants and
/// linear polynomials.
pub fn certify_interlacing(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Ok(true);
    }
    require_real_rooted(f)?;
    require_real_rooted(g)?;
    let (df, dg) = (f.deg0(), g.deg0());
    if dg != df && dg != df + 1 {
        if df >= 2 && dg >= 2 && df.abs_diff(dg) >= 2 {
            return Err(Error::DegreeGap(df, dg));
        }
        return Ok(false);
    }
    let table = joint_roots(&[f, g]);
    // Root positions, largest first, repeated by multiplicity.
    let expand = |which: usize| -> Vec<usize> {
        table
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(i, (_, m))| std::iter::repeat_n(i, m[which]))
            .collect()
    };
    let alpha = expand(0);
    let beta = expand(1);
    debug_assert_eq!(alpha.len(), df);
    debug_assert_eq!(beta.len(), dg);
    Ok(alpha.iter().enumerate().all(|(k, &a)| {
        a <= beta[k] && beta.get(k + 1).is_none_or(|&b| b <= a)
    }))
}

/// Whether the zeros of `f` and `g` interlace in either direction.
pub fn zeros_interlace(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    if f.deg0() <= g.deg0() {
        Ok(certify_interlacing(f, g)? || (f.deg0() == g.deg0() && certify_interlacing(g, f)?))
    } else {
        certify_interlacing(g, f)
    }
}

/// `W[f, g] = f' g - f g'`
pub fn wronskian(f: &IntPoly, g: &IntPoly) -> IntPoly {
    &(&f.derivative() * g) - &(f * &g.derivative())
}

/// Whether `f' g - f g' >= 0` on the whole real line.
pub fn wronskian_nonneg(f: &IntPoly, g: &IntPoly) -> bool {
    let w = wronskian(f, g);
    if w.is_zero() {
        return true;
    }
    let roots = real_roots(&w);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut samples = Vec::with_capacity(roots.len() + 1);
    match (roots.first(), roots.last()) {
        (Some(first), Some(last)) => {
            samples.push(first.interval.lower() - &one);
            for pair in roots.windows(2) {
                samples.push((pair[0].interval.upper() + pair[1].interval.lower()) / &two);
            }
            samples.push(last.interval.upper() + &one);
        }
        _ => samples.push(BigRational::from_integer(0.into())),
    }
    samples.iter().all(|x| w.sign_at(x) > 0)
}
