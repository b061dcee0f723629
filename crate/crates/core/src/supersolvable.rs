//! Lattice operations, modular elements and supersolvable labelings.

use crate::bitset::{Bitset, for_each_common};
use crate::error::{Error, Result};
use crate::labeling::{is_umel, local_stats, EdgeLabeling, UmelReport};
use crate::poset::GradedPoset;

pub const MAX_LATTICE_SIZE: usize = 6000;

/// A graded poset with full join and meet tables.
pub struct Lattice<'a> {
    p: &'a GradedPoset,
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// `0̂ = m_0 ⋖ m_1 ⋖ ... ⋖ m_n = 1̂` with every `m_i` modular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularChain(pub Vec<usize>);

fn closed_sets(p: &GradedPoset, upward: bool) -> Vec<Bitset> {
    let n = p.len();
    let mut rows = vec![Bitset::new(n); n];
    let order: Vec<usize> = if upward {
        p.rank_order().iter().rev().copied().collect()
    } else {
        p.rank_order().to_vec()
    };
    for x in order {
        let mut row = Bitset::new(n);
        row.set(p.position(x));
        let nbrs = if upward { p.upper_covers(x) } else { p.lower_covers(x) };
        for &y in nbrs {
            row.union_with(&rows[y]);
        }
        rows[x] = row;
    }
    rows
}

/// The unique extreme element of `a ∩ b`, scanning positions from one end.
fn extreme(p: &GradedPoset, a: &Bitset, b: &Bitset, sets: &[Bitset], lowest: bool) -> Option<usize> {
    let mut found = None;
    let n = p.len();
    if lowest {
        for_each_common(a, b, 0, n, |q| {
            if found.is_none() {
                found = Some(q);
            }
        });
    } else {
        for_each_common(a, b, 0, n, |q| found = Some(q));
    }
    let x = p.rank_order()[found?];
    let cand = &sets[x];
    let ok = a
        .words()
        .iter()
        .zip(b.words())
        .zip(cand.words())
        .all(|((&u, &v), &c)| u & v & !c == 0);
    ok.then_some(x)
}

impl<'a> Lattice<'a> {
    pub fn new(p: &'a GradedPoset) -> Result<Self> {
        let n = p.len();
        if n > MAX_LATTICE_SIZE {
            return Err(Error::SizeLimitExceeded {
                what: format!("join table for {n} elements"),
                limit: MAX_LATTICE_SIZE as u64,
            });
        }
        let above = closed_sets(p, true);
        let below = closed_sets(p, false);
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j = extreme(p, &above[a], &above[b], &above, true).ok_or(Error::NotALattice(a, b))?;
                let m = extreme(p, &below[a], &below[b], &below, false).ok_or(Error::NotALattice(a, b))?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        Ok(Lattice { p, join, meet })
    }

    pub fn poset(&self) -> &'a GradedPoset {
        self.p
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.p.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.p.len() + b] as usize
    }

    /// `u ∨ (s ∧ t) = (u ∨ s) ∧ t` for every `u <= t`.
    pub fn is_modular_pair(&self, s: usize, t: usize) -> bool {
        let st = self.meet(s, t);
        self.p
            .downset(t)
            .into_iter()
            .all(|u| self.join(u, st) == self.meet(self.join(u, s), t))
    }

    pub fn is_modular_element(&self, s: usize) -> bool {
        (0..self.p.len()).all(|t| self.is_modular_pair(s, t) && self.is_modular_pair(t, s))
    }

    /// A first failing partner `t` for the modularity of `s`.
    pub fn modularity_witness(&self, s: usize) -> Option<usize> {
        (0..self.p.len()).find(|&t| !(self.is_modular_pair(s, t) && self.is_modular_pair(t, s)))
    }
}

/// `is_modular_element` on the poset, building the join table once.
pub fn is_modular_element(p: &GradedPoset, s: usize) -> Result<bool> {
    Ok(Lattice::new(p)?.is_modular_element(s))
}

/// Depth-first search from `0̂` through modular covers.
pub fn modular_maximal_chain(l: &Lattice<'_>) -> Option<ModularChain> {
    let p = l.poset();
    let mut memo: Vec<Option<bool>> = vec![None; p.len()];
    let mut dead = vec![false; p.len()];
    let mut chain = vec![p.bottom()];
    fn go(
        l: &Lattice<'_>,
        chain: &mut Vec<usize>,
        memo: &mut [Option<bool>],
        dead: &mut [bool],
    ) -> bool {
        let p = l.poset();
        let x = *chain.last().unwrap();
        if x == p.top() {
            return true;
        }
        for &y in p.upper_covers(x) {
            if dead[y] {
                continue;
            }
            let modular = *memo[y].get_or_insert_with(|| l.is_modular_element(y));
            if !modular {
                continue;
            }
            chain.push(y);
            if go(l, chain, memo, dead) {
                return true;
            }
            chain.pop();
            dead[y] = true;
        }
        false
    }
    go(l, &mut chain, &mut memo, &mut dead).then_some(ModularChain(chain))
}

fn validate_chain(l: &Lattice<'_>, m: &ModularChain) -> Result<()> {
    let p = l.poset();
    let c = &m.0;
    if c.len() != p.height() + 1 || c.first() != Some(&p.bottom()) || c.last() != Some(&p.top()) {
        return Err(Error::InvalidChain("not a maximal chain from 0̂ to 1̂".into()));
    }
    if let Some(w) = c.windows(2).find(|w| !p.is_cover(w[0], w[1])) {
        return Err(Error::InvalidChain(format!("{} does not cover {}", p.name(w[1]), p.name(w[0]))));
    }
    if let Some(&x) = c.iter().find(|&&x| !l.is_modular_element(x)) {
        return Err(Error::InvalidChain(format!("{} is not modular", p.name(x))));
    }
    Ok(())
}

/// `λ(s, t) = min { i : s ∨ m_i >= t }`
pub fn mcnamara_labeling(l: &Lattice<'_>, m: &ModularChain) -> Result<EdgeLabeling> {
    validate_chain(l, m)?;
    let p = l.poset();
    Ok(EdgeLabeling::from_fn(p, |s, t| {
        let i = (1..m.0.len())
            .find(|&i| p.leq(t, l.join(s, m.0[i])))
            .expect("s ∨ 1̂ contains t");
        i as i64
    }))
}

/// Result of labeling a rank-uniform supersolvable lattice.
pub struct SupersolvableLabeling {
    pub chain: ModularChain,
    pub labeling: EdgeLabeling,
    pub report: UmelReport,
}

/// Finds a modular chain, labels by it, and confirms the UMEL conditions
/// together with `des = Ind - 1` on every cover.
pub fn umel_from_supersolvable(p: &GradedPoset) -> Result<SupersolvableLabeling> {
    let l = Lattice::new(p)?;
    if !p.is_rank_uniform() {
        return Err(Error::NotRankUniform);
    }
    let chain = modular_maximal_chain(&l).ok_or(Error::NotSupersolvable)?;
    let labeling = mcnamara_labeling(&l, &chain)?;
    let report = is_umel(p, &labeling);
    if let Some(f) = &report.failure {
        return Err(Error::Inconsistent(format!("supersolvable labeling is not UMEL: {f}")));
    }
    for s in 0..p.len() {
        if s == p.top() {
            continue;
        }
        let ls = local_stats(p, &labeling, s)?;
        if let Some(&(t, ind, des)) = ls.covers.iter().find(|&&(_, ind, des)| des + 1 != ind) {
            return Err(Error::Inconsistent(format!(
                "des = {des} but Ind = {ind} on {} ⋖ {}",
                p.name(s),
                p.name(t)
            )));
        }
    }
    Ok(SupersolvableLabeling { chain, labeling, report })
}
