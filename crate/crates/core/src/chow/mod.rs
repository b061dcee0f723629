//! Chow and augmented Chow polynomials, their gamma vectors, and rank selection.

mod battery;
mod refine;
mod tn;

pub use battery::{interlacing_battery, BatteryCheck, BatteryReport};
pub use refine::{
    gamma_refined, h_refined, increasing_chain, Entry, GammaRefinement, HRefinement, RefineMethod,
    TransferMatrix,
};
pub use tn::{tn_check, tn_matrix, tn_verdict, TnVerdict};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flag::{flag_vector, stable_subsets, FlagVector, RankSet};
use crate::incidence::{reduce_chi, MobiusSweep};
use crate::labeling::{descent_set_distribution, verify_el, EdgeLabeling};
use crate::poly::{gamma_extract, IntPoly};
use crate::poset::GradedPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChowMethod {
    Recursion,
    Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugMethod {
    Sum,
    Adjoin,
    Flag,
}

fn overflow() -> Error {
    Error::Inconsistent("Chow coefficient exceeds 128 bits".into())
}

/// `acc += a * b`
fn mul_acc(acc: &mut Vec<i128>, a: &[i128], b: &[i128]) -> Result<()> {
    if acc.len() < a.len() + b.len() - 1 {
        acc.resize(a.len() + b.len() - 1, 0);
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let v = x.checked_mul(y).ok_or_else(overflow)?;
            acc[i + j] = acc[i + j].checked_add(v).ok_or_else(overflow)?;
        }
    }
    Ok(())
}

fn to_poly(c: &[i128]) -> IntPoly {
    IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
}

/// `H̄_{[s,1̂]}` for every element `s`, by the recursion
/// `H̄_{[s,1̂]} = Σ_{t > s} χ̄_{[s,t]} H̄_{[t,1̂]}`.
pub struct ChowTable {
    upper: Vec<Vec<i128>>,
    ranks: Vec<usize>,
    bottom: usize,
}

impl ChowTable {
    pub fn new(p: &GradedPoset) -> Result<Self> {
        let mut upper: Vec<Vec<i128>> = vec![Vec::new(); p.len()];
        let mut sweep = MobiusSweep::new(p);
        let mut err = None;
        for &s in p.rank_order().iter().rev() {
            if s == p.top() {
                upper[s] = vec![1];
                continue;
            }
            let mut acc = Vec::new();
            sweep.sweep(s, |t, _, chi| {
                if t == s || err.is_some() {
                    return;
                }
                let step = reduce_chi(chi).and_then(|bar| mul_acc(&mut acc, &bar, &upper[t]));
                if let Err(e) = step {
                    err = Some(e);
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            while acc.last() == Some(&0) {
                acc.pop();
            }
            upper[s] = acc;
        }
        Ok(ChowTable {
            upper,
            ranks: (0..p.len()).map(|x| p.rank(x)).collect(),
            bottom: p.bottom(),
        })
    }

    /// `H̄_{[s,1̂]}`
    pub fn upper(&self, s: usize) -> IntPoly {
        to_poly(&self.upper[s])
    }

    pub fn chow(&self) -> IntPoly {
        self.upper(self.bottom)
    }

    /// `H = Σ_s x^{rk s} H̄_{[s,1̂]}`
    pub fn augmented(&self) -> Result<IntPoly> {
        let mut acc: Vec<i128> = Vec::new();
        for (s, h) in self.upper.iter().enumerate() {
            let r = self.ranks[s];
            if acc.len() < r + h.len() {
                acc.resize(r + h.len(), 0);
            }
            for (i, &c) in h.iter().enumerate() {
                acc[r + i] = acc[r + i].checked_add(c).ok_or_else(overflow)?;
            }
        }
        Ok(to_poly(&acc))
    }
}

/// `Σ β(S) y^{|S|}` over stable `S ⊆ {lo, ..., n-1}`.
fn stable_beta_gamma(fv: &FlagVector, lo: usize) -> IntPoly {
    let n = fv.rank;
    let mut g = vec![BigInt::zero(); n / 2 + 1];
    for s in stable_subsets(lo, n.saturating_sub(1)) {
        g[s.len()] += fv.beta(s);
    }
    IntPoly::new(g)
}

/// `Σ_S β(S) x^{|S|} (1+x)^{d - 2|S|}`
fn expand(gamma: &IntPoly, d: usize) -> IntPoly {
    let mut out = IntPoly::zero();
    for (i, g) in gamma.coeffs().iter().enumerate() {
        out = &out + &IntPoly::binomial_power(1, 1, d - 2 * i).shift(i).scale(g);
    }
    out
}

/// The Chow polynomial `H̄_P`.
pub fn chow_poly(p: &GradedPoset, method: ChowMethod) -> Result<IntPoly> {
    match method {
        ChowMethod::Recursion => Ok(ChowTable::new(p)?.chow()),
        ChowMethod::Flag => {
            let n = p.height();
            if n == 0 {
                return Ok(IntPoly::one());
            }
            let fv = flag_vector(p)?;
            Ok(expand(&stable_beta_gamma(&fv, 2), n - 1))
        }
    }
}

/// The augmented Chow polynomial `H_P`.
pub fn aug_chow_poly(p: &GradedPoset, method: AugMethod) -> Result<IntPoly> {
    match method {
        AugMethod::Sum => ChowTable::new(p)?.augmented(),
        AugMethod::Adjoin => chow_poly(&p.add_bottom(), ChowMethod::Recursion),
        AugMethod::Flag => {
            let n = p.height();
            if n == 0 {
                return Ok(IntPoly::one());
            }
            let fv = flag_vector(p)?;
            Ok(expand(&stable_beta_gamma(&fv, 1), n))
        }
    }
}

/// Gamma vector of `H_P` (centre `n/2`) or `H̄_P` (centre `(n-1)/2`), read
/// off the recursively computed polynomial.
pub fn gamma_of(p: &GradedPoset, augmented: bool) -> Result<IntPoly> {
    let n = p.height();
    let table = ChowTable::new(p)?;
    if augmented {
        gamma_extract(&table.augmented()?, n)
    } else {
        gamma_extract(&table.chow(), n.saturating_sub(1))
    }
}

/// `(γ(H̄_{P_S}), γ(H_{P_S}))` from descent counts of `λ`: sums of
/// `β(T) y^{|T|}` over `T ⊆ S` with no two members consecutive in `S`,
/// the first also requiring `min S ∉ T`.
pub fn rank_selected_gamma(p: &GradedPoset, l: &EdgeLabeling, s: RankSet) -> Result<(IntPoly, IntPoly)> {
    let n = p.height();
    if let Some(r) = s.ranks().into_iter().find(|&r| r == 0 || r >= n) {
        return Err(Error::InvalidParameter(format!("rank {r} is not a proper rank")));
    }
    if let Err(w) = verify_el(p, l) {
        return Err(Error::NotEL(format!("[{}, {}]: {}", p.name(w.lo), p.name(w.hi), w.reason)));
    }
    let ranks = s.ranks();
    let beta = descent_set_distribution(p, l);
    let mut nonaug = vec![BigInt::zero(); ranks.len().div_ceil(2) + 1];
    let mut aug = nonaug.clone();
    for (t, c) in &beta {
        if !t.is_subset_of(s) {
            continue;
        }
        let pos: Vec<usize> = t.ranks().iter().map(|r| ranks.binary_search(r).unwrap()).collect();
        if pos.windows(2).any(|w| w[1] == w[0] + 1) {
            continue;
        }
        aug[t.len()] += c;
        if pos.first() != Some(&0) {
            nonaug[t.len()] += c;
        }
    }
    Ok((IntPoly::new(nonaug), IntPoly::new(aug)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{boolean, dowling, uniform};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_chow_polynomials() {
        let b3 = boolean(3).unwrap().poset;
        for m in [ChowMethod::Recursion, ChowMethod::Flag] {
            assert_eq!(chow_poly(&b3, m).unwrap(), p(&[1, 4, 1]));
        }
        for m in [AugMethod::Sum, AugMethod::Adjoin, AugMethod::Flag] {
            assert_eq!(aug_chow_poly(&b3, m).unwrap(), p(&[1, 7, 7, 1]));
        }
        let u23 = uniform(2, 3).unwrap().poset;
        assert_eq!(aug_chow_poly(&u23, AugMethod::Sum).unwrap(), p(&[1, 4, 1]));
        let b2 = boolean(2).unwrap().poset;
        assert_eq!(chow_poly(&b2.add_bottom(), ChowMethod::Recursion).unwrap(), p(&[1, 3, 1]));
        let point = GradedPoset::new(vec!["x".into()], &[]).unwrap();
        assert_eq!(chow_poly(&point, ChowMethod::Recursion).unwrap(), IntPoly::one());
        assert_eq!(aug_chow_poly(&point, AugMethod::Flag).unwrap(), IntPoly::one());
    }

    #[test]
    fn type_b_small() {
        let d3 = dowling(3, 2).unwrap().poset;
        assert_eq!(chow_poly(&d3, ChowMethod::Recursion).unwrap(), p(&[1, 14, 1]));
        assert_eq!(gamma_of(&d3, false).unwrap(), p(&[1, 12]));
        let d2 = dowling(2, 2).unwrap().poset;
        assert_eq!(gamma_of(&d2, true).unwrap(), p(&[1, 3]));
    }

    #[test]
    fn rank_selection() {
        let b = boolean(3).unwrap();
        let (g0, g1) = rank_selected_gamma(&b.poset, &b.labeling, RankSet::from_ranks(&[1])).unwrap();
        assert_eq!(g1, p(&[1, 2]));
        assert_eq!(g0, IntPoly::one());
        let (g0, g1) = rank_selected_gamma(&b.poset, &b.labeling, RankSet(0)).unwrap();
        assert_eq!((g0, g1), (IntPoly::one(), IntPoly::one()));
        let sel = b.poset.rank_select(&[1]).unwrap();
        assert_eq!(aug_chow_poly(&sel, AugMethod::Flag).unwrap(), p(&[1, 4, 1]));
    }
}
