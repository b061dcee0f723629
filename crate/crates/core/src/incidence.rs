//! Möbius function and characteristic polynomials of intervals.

use num_bigint::BigInt;

use crate::bitset::{for_each_common, Bitset};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::poset::{GradedPoset, Interval};

/// Reusable scratch space for sweeping all intervals `[s, t]` with fixed `s`.
pub(crate) struct MobiusSweep<'a> {
    p: &'a GradedPoset,
    in_up: Bitset,
    mu: Vec<i128>,
    rank_at: Vec<usize>,
    chi: Vec<i128>,
}

impl<'a> MobiusSweep<'a> {
    pub(crate) fn new(p: &'a GradedPoset) -> Self {
        let n = p.len();
        let rank_at = p.rank_order().iter().map(|&x| p.rank(x)).collect();
        MobiusSweep {
            p,
            in_up: Bitset::new(n),
            mu: vec![0; n],
            rank_at,
            chi: Vec::new(),
        }
    }

    /// Visits every `t >= s` in rank order with `μ(s, t)` and the
    /// coefficients (low to high) of `χ_{[s,t]}`.
    pub(crate) fn sweep(&mut self, s: usize, mut visit: impl FnMut(usize, i128, &[i128])) {
        let p = self.p;
        let below = p.below_sets();
        let up = p.upset(s);
        for &t in &up {
            self.in_up.set(p.position(t));
        }
        let rs = p.rank(s);
        let start = p.level_start(rs);
        for &t in &up {
            let rt = p.rank(t);
            let len = rt - rs;
            self.chi.clear();
            self.chi.resize(len + 1, 0);
            let mu_t = if t == s {
                self.chi[0] = 1;
                1
            } else {
                // chi[rt - rank(u)] += μ(s, u) over s <= u < t
                let (mu, rank_at, chi) = (&self.mu, &self.rank_at, &mut self.chi);
                for_each_common(&below[t], &self.in_up, start, p.level_start(rt), |q| {
                    chi[rt - rank_at[q]] += mu[q];
                });
                let m: i128 = -chi[1..].iter().sum::<i128>();
                chi[0] = m;
                m
            };
            self.mu[p.position(t)] = mu_t;
            visit(t, mu_t, &self.chi);
        }
        for &t in &up {
            self.in_up.clear(p.position(t));
            self.mu[p.position(t)] = 0;
        }
    }
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Inconsistent(format!("Möbius value {v} overflows i64")))
}

/// `μ(s, t)`; errors unless `s <= t`.
pub fn mobius(p: &GradedPoset, s: usize, t: usize) -> Result<i64> {
    let iv = p.interval(s, t)?;
    let mut out = 0;
    MobiusSweep::new(p).sweep(iv.lo, |u, m, _| {
        if u == t {
            out = m;
        }
    });
    to_i64(out)
}

/// `μ(s, t)` for every `t >= s`, in rank order.
pub fn mobius_row(p: &GradedPoset, s: usize) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    let mut err = None;
    MobiusSweep::new(p).sweep(s, |t, m, _| match to_i64(m) {
        Ok(v) => out.push((t, v)),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub(crate) fn chi_to_poly(chi: &[i128]) -> IntPoly {
    IntPoly::new(chi.iter().map(|&c| BigInt::from(c)).collect())
}

/// `χ(x) = Σ_{u ∈ I} μ(lo, u) x^{rk(hi) - rk(u)}`
pub fn characteristic_poly(iv: &Interval<'_>) -> IntPoly {
    let mut out = IntPoly::zero();
    MobiusSweep::new(iv.parent).sweep(iv.lo, |t, _, chi| {
        if t == iv.hi {
            out = chi_to_poly(chi);
        }
    });
    out
}

/// Divides `χ` by `x - 1` exactly.
pub(crate) fn reduce_chi(chi: &[i128]) -> Result<Vec<i128>> {
    if chi.len() < 2 {
        return Err(Error::RankZeroInterval);
    }
    // synthetic division by (x - 1), high to low
    let d = chi.len() - 1;
    let mut q = vec![0i128; d];
    let mut carry = 0i128;
    for i in (1..=d).rev() {
        carry += chi[i];
        q[i - 1] = carry;
    }
    if carry + chi[0] != 0 {
        return Err(Error::Inconsistent("χ(1) ≠ 0".into()));
    }
    Ok(q)
}

/// `χ̄ = χ / (x - 1)` of a positive-rank interval.
pub fn reduced_char_poly(iv: &Interval<'_>) -> Result<IntPoly> {
    if iv.rank() == 0 {
        return Err(Error::RankZeroInterval);
    }
    let mut res = Err(Error::RankZeroInterval);
    MobiusSweep::new(iv.parent).sweep(iv.lo, |t, _, chi| {
        if t == iv.hi {
            res = reduce_chi(chi).map(|q| chi_to_poly(&q));
        }
    });
    res
}
