//! Total nonnegativity of the lower Whitney matrix.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::GradedPoset;

/// Outcome of the TN test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TnVerdict {
    /// Lower rank-uniform with every minor nonnegative.
    Tn,
    /// A negative minor, by row and column ranks.
    NegativeMinor { rows: Vec<usize>, cols: Vec<usize>, value: BigInt },
    /// Two elements of equal rank with different lower Whitney profiles.
    NotLowerRankUniform(usize, usize),
}

/// Determinant by fraction-free elimination.
fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for c in 0..k {
        let Some(piv) = (c..k).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if piv != c {
            a.swap(piv, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                let v = &a[r][j] * &a[c][c] - &a[r][c] * &a[c][j];
                a[r][j] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    prev * sign
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

pub fn tn_verdict(p: &GradedPoset) -> TnVerdict {
    let m = match p.lower_whitney_matrix() {
        Ok(m) => m,
        Err((a, b)) => return TnVerdict::NotLowerRankUniform(a, b),
    };
    let n = m.len();
    for k in 1..=n {
        let idx = subsets(n, k);
        for rows in &idx {
            for cols in &idx {
                let sub = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect())
                    .collect();
                let d = det(sub);
                if d.is_negative() {
                    return TnVerdict::NegativeMinor { rows: rows.clone(), cols: cols.clone(), value: d };
                }
            }
        }
    }
    TnVerdict::Tn
}

/// Whether `p` is lower rank-uniform with a totally nonnegative lower Whitney
/// matrix. Matrices beyond side 12 are refused.
pub fn tn_check(p: &GradedPoset) -> Result<bool> {
    if p.height() + 1 > 12 {
        return Err(Error::SizeLimitExceeded {
            what: format!("TN minors of a rank-{} poset", p.height()),
            limit: 11,
        });
    }
    Ok(tn_verdict(p) == TnVerdict::Tn)
}

/// The lower Whitney matrix, or `NotLowerRankUniform`.
pub fn tn_matrix(p: &GradedPoset) -> Result<Vec<Vec<usize>>> {
    p.lower_whitney_matrix().map_err(|_| Error::NotLowerRankUniform)
}
