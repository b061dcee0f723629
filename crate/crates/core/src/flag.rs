//! Flag f- and h-vectors, maximal chains and the order complex of the proper part.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::poset::{GradedPoset, Interval};

/// A set of ranks; bit `r` stands for rank `r`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSet(pub u64);

impl RankSet {
    pub fn from_ranks(ranks: &[usize]) -> Self {
        RankSet(ranks.iter().fold(0u64, |m, &r| m | (1 << r)))
    }

    pub fn ranks(self) -> Vec<usize> {
        (0..64).filter(|&r| self.0 >> r & 1 == 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, r: usize) -> bool {
        r < 64 && self.0 >> r & 1 == 1
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// No two consecutive ranks.
    pub fn is_stable(self) -> bool {
        self.0 & (self.0 >> 1) == 0
    }

    pub fn is_subset_of(self, other: RankSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// All subsets, in increasing order of bitmask.
    pub fn subsets(self) -> impl Iterator<Item = RankSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(RankSet(cur))
        })
    }
}

impl fmt::Debug for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranks())
    }
}

/// Stable subsets of `{lo, ..., hi}` (empty range allowed).
pub fn stable_subsets(lo: usize, hi: usize) -> Vec<RankSet> {
    let mut out = Vec::new();
    fn go(r: usize, hi: usize, cur: u64, out: &mut Vec<RankSet>) {
        if r > hi {
            out.push(RankSet(cur));
            return;
        }
        go(r + 1, hi, cur, out);
        go(r + 2, hi, cur | 1 << r, out);
    }
    if lo > hi {
        out.push(RankSet(0));
    } else {
        go(lo, hi, 0, &mut out);
    }
    out.sort();
    out
}

fn check_ranks(p: &GradedPoset, s: RankSet) -> Result<()> {
    let n = p.height();
    match s.ranks().into_iter().find(|&r| r == 0 || r >= n) {
        Some(r) => Err(Error::InvalidParameter(format!("rank {r} is not a proper rank"))),
        None => Ok(()),
    }
}

/// Chain counts at level `r_next`, given counts at level `r` (indexed like `p.level(r)`).
fn propagate(p: &GradedPoset, counts: &[u128], r: usize, r_next: usize) -> Vec<u128> {
    let below = p.below_sets();
    let start = p.level_start(r);
    let end = p.level_start(r + 1);
    p.level(r_next)
        .iter()
        .map(|&t| {
            below[t].ones_in(start, end).fold(0u128, |acc, q| {
                acc.checked_add(counts[q - start]).expect("chain count overflow")
            })
        })
        .collect()
}

/// `α(S)`: chains `s_1 < ... < s_k` with `rk(s_i)` running through `S`.
pub fn flag_alpha(p: &GradedPoset, s: RankSet) -> Result<BigInt> {
    check_ranks(p, s)?;
    let ranks = s.ranks();
    let Some(&first) = ranks.first() else {
        return Ok(BigInt::one());
    };
    let mut counts = vec![1u128; p.level(first).len()];
    for w in ranks.windows(2) {
        counts = propagate(p, &counts, w[0], w[1]);
    }
    Ok(BigInt::from(counts.iter().sum::<u128>()))
}

/// `β(S) = Σ_{T ⊆ S} (-1)^{|S - T|} α(T)`
pub fn flag_beta(p: &GradedPoset, s: RankSet) -> Result<BigInt> {
    check_ranks(p, s)?;
    let mut total = BigInt::zero();
    for t in s.subsets() {
        let a = flag_alpha(p, t)?;
        if (s.len() - t.len()).is_multiple_of(2) {
            total += a;
        } else {
            total -= a;
        }
    }
    Ok(total)
}

/// `α` and `β` on every subset of `{1, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub rank: usize,
    alpha: Vec<BigInt>,
    beta: Vec<BigInt>,
}

impl FlagVector {
    /// Index of `S` in the dense tables (rank 1 is bit 0).
    fn idx(s: RankSet) -> usize {
        (s.0 >> 1) as usize
    }

    pub fn alpha(&self, s: RankSet) -> &BigInt {
        &self.alpha[Self::idx(s)]
    }

    pub fn beta(&self, s: RankSet) -> &BigInt {
        &self.beta[Self::idx(s)]
    }

    pub fn subsets(&self) -> impl Iterator<Item = RankSet> + '_ {
        (0..self.alpha.len() as u64).map(|i| RankSet(i << 1))
    }
}

pub const MAX_FLAG_RANK: usize = 24;

pub fn flag_vector(p: &GradedPoset) -> Result<FlagVector> {
    let n = p.height();
    let proper = n.saturating_sub(1);
    if proper > MAX_FLAG_RANK {
        return Err(Error::SizeLimitExceeded {
            what: format!("flag vector of rank {n}"),
            limit: MAX_FLAG_RANK as u64 + 1,
        });
    }
    let mut alpha = vec![0u128; 1 << proper];
    alpha[0] = 1;
    // depth-first over increasing rank sequences, sharing prefixes
    fn go(p: &GradedPoset, n: usize, last: usize, mask: usize, counts: &[u128], alpha: &mut [u128]) {
        for r in last + 1..n {
            let next = if last == 0 {
                vec![1u128; p.level(r).len()]
            } else {
                propagate(p, counts, last, r)
            };
            let m = mask | 1 << (r - 1);
            alpha[m] = next.iter().sum();
            go(p, n, r, m, &next, alpha);
        }
    }
    go(p, n, 0, 0, &[1], &mut alpha);
    let mut beta: Vec<i128> = alpha
        .iter()
        .map(|&a| i128::try_from(a).expect("chain count overflow"))
        .collect();
    for bit in 0..proper {
        for m in 0..beta.len() {
            if m >> bit & 1 == 1 {
                beta[m] -= beta[m ^ 1 << bit];
            }
        }
    }
    Ok(FlagVector {
        rank: n,
        alpha: alpha.into_iter().map(BigInt::from).collect(),
        beta: beta.into_iter().map(BigInt::from).collect(),
    })
}

/// f- and h-polynomials of the order complex of the proper part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplexPolys {
    pub f: IntPoly,
    pub h: IntPoly,
}

/// `f(x) = Σ_S α(S) x^|S|`, `h(y) = Σ_S β(S) y^|S|`, cross-checked through
/// `h(y) = (1-y)^d f(y/(1-y))` with `d = n - 1`.
pub fn order_complex_polys(p: &GradedPoset) -> Result<OrderComplexPolys> {
    let n = p.height();
    if n <= 1 {
        return Ok(OrderComplexPolys {
            f: IntPoly::one(),
            h: IntPoly::one(),
        });
    }
    let d = n - 1;
    let fv = flag_vector(p)?;
    let mut f = vec![BigInt::zero(); d + 1];
    let mut h = vec![BigInt::zero(); d + 1];
    for s in fv.subsets() {
        f[s.len()] += fv.alpha(s);
        h[s.len()] += fv.beta(s);
    }
    let f = IntPoly::new(f);
    let h = IntPoly::new(h);
    let mut via_f = IntPoly::zero();
    for (i, fi) in f.coeffs().iter().enumerate() {
        let term = IntPoly::binomial_power(1, -1, d - i).shift(i).scale(fi);
        via_f = &via_f + &term;
    }
    if via_f != h {
        return Err(Error::Inconsistent(format!(
            "h from β ({h}) differs from h from f ({via_f})"
        )));
    }
    Ok(OrderComplexPolys { f, h })
}

pub const DEFAULT_CHAIN_LIMIT: u64 = 10_000_000;

/// Number of maximal chains of an interval, by dynamic programming.
pub fn count_max_chains(iv: &Interval<'_>) -> BigInt {
    let p = iv.parent;
    let mut ways = std::collections::HashMap::with_capacity(iv.members.len());
    ways.insert(iv.lo, BigInt::one());
    for &x in &iv.members[1..] {
        let w: BigInt = p
            .lower_covers(x)
            .iter()
            .filter_map(|y| ways.get(y))
            .sum();
        ways.insert(x, w);
    }
    ways.remove(&iv.hi).unwrap_or_default()
}

/// All maximal chains of an interval, in lexicographic order of element indices.
pub fn max_chains(iv: &Interval<'_>, limit: u64) -> Result<Vec<Vec<usize>>> {
    let count = count_max_chains(iv);
    if count > BigInt::from(limit) {
        return Err(Error::SizeLimitExceeded {
            what: format!("{count} maximal chains"),
            limit,
        });
    }
    let p = iv.parent;
    let mut out = Vec::new();
    let mut chain = vec![iv.lo];
    fn go(p: &GradedPoset, hi: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = *chain.last().unwrap();
        if x == hi {
            out.push(chain.clone());
            return;
        }
        for &y in p.upper_covers(x) {
            if p.leq(y, hi) {
                chain.push(y);
                go(p, hi, chain, out);
                chain.pop();
            }
        }
    }
    go(p, iv.hi, &mut chain, &mut out);
    Ok(out)
}
