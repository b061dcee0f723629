//! Edge labelings of cover relations: EL verification, local label
//! statistics and the UMEL conditions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::flag::RankSet;
use crate::poset::GradedPoset;

/// Integer labels on every cover, stored parallel to `upper_covers`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: Vec<Vec<i64>>,
}

impl EdgeLabeling {
    pub fn from_fn(p: &GradedPoset, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let labels = (0..p.len())
            .map(|a| p.upper_covers(a).iter().map(|&b| f(a, b)).collect())
            .collect();
        EdgeLabeling { labels }
    }

    /// Label of the cover `a ⋖ b`. Panics if `b` does not cover `a`.
    pub fn label(&self, p: &GradedPoset, a: usize, b: usize) -> i64 {
        let i = p
            .upper_covers(a)
            .binary_search(&b)
            .unwrap_or_else(|_| panic!("{a} -> {b} is not a cover"));
        self.labels[a][i]
    }

    /// Labels of the upper covers of `a`, parallel to `p.upper_covers(a)`.
    pub fn labels_above(&self, a: usize) -> &[i64] {
        &self.labels[a]
    }

    pub fn triples<'a>(&'a self, p: &'a GradedPoset) -> impl Iterator<Item = (usize, usize, i64)> + 'a {
        (0..p.len()).flat_map(move |a| {
            p.upper_covers(a)
                .iter()
                .zip(&self.labels[a])
                .map(move |(&b, &l)| (a, b, l))
        })
    }

    /// Distinct labels above `a`, increasing.
    pub fn distinct_above(&self, a: usize) -> Vec<i64> {
        let mut v = self.labels[a].clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Attaches labels given as `(lo, hi, label)`; every cover needs exactly one.
pub fn attach_labeling(p: &GradedPoset, entries: &[(usize, usize, i64)]) -> Result<EdgeLabeling> {
    let mut slots: Vec<Vec<Option<i64>>> = (0..p.len())
        .map(|a| vec![None; p.upper_covers(a).len()])
        .collect();
    for &(a, b, l) in entries {
        if a >= p.len() || b >= p.len() {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                size: p.len(),
            });
        }
        let Ok(i) = p.upper_covers(a).binary_search(&b) else {
            return Err(Error::NotACover(a, b));
        };
        if slots[a][i].replace(l).is_some_and(|old| old != l) {
            return Err(Error::InvalidParameter(format!("cover {a} -> {b} labelled twice")));
        }
    }
    let mut labels = Vec::with_capacity(p.len());
    for (a, row) in slots.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (i, l) in row.into_iter().enumerate() {
            out.push(l.ok_or(Error::MissingCover(a, p.upper_covers(a)[i]))?);
        }
        labels.push(out);
    }
    Ok(EdgeLabeling { labels })
}

/// Why an interval violates the EL condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElWitness {
    pub lo: usize,
    pub hi: usize,
    pub reason: String,
    /// Offending maximal chains of `[lo, hi]`.
    pub chains: Vec<Vec<usize>>,
}

#[derive(Clone, Copy)]
struct Inc {
    pred: usize,
    first: usize,
    last: i64,
}

/// The unique weakly increasing chain of `[s, t]` from the memo.
fn inc_chain(memo: &[HashMap<usize, Inc>], s: usize, t: usize) -> Vec<usize> {
    let mut chain = vec![t];
    let mut x = t;
    while x != s {
        x = memo[s][&x].pred;
        chain.push(x);
    }
    chain.reverse();
    chain
}

fn chain_labels(p: &GradedPoset, l: &EdgeLabeling, chain: &[usize]) -> Vec<i64> {
    chain.windows(2).map(|w| l.label(p, w[0], w[1])).collect()
}

/// Every interval has exactly one weakly increasing maximal chain and it is
/// strictly lexicographically first.
pub fn verify_el(p: &GradedPoset, l: &EdgeLabeling) -> std::result::Result<(), ElWitness> {
    let n = p.len();
    let mut memo: Vec<HashMap<usize, Inc>> = vec![HashMap::new(); n];
    for &s in p.rank_order().iter().rev() {
        let up = p.upset(s);
        for &t in &up[1..] {
            let mut found: Option<Inc> = None;
            let mut count = 0usize;
            let mut extra = None;
            for &v in p.lower_covers(t) {
                let lab = l.label(p, v, t);
                let cand = if v == s {
                    Some(Inc { pred: s, first: t, last: lab })
                } else if let Some(d) = memo[s].get(&v) {
                    (d.last <= lab).then_some(Inc { pred: v, first: d.first, last: lab })
                } else {
                    None
                };
                if let Some(c) = cand {
                    count += 1;
                    if found.is_none() {
                        found = Some(c);
                    } else {
                        extra = Some(c);
                    }
                }
            }
            let Some(inc) = found else {
                return Err(ElWitness {
                    lo: s,
                    hi: t,
                    reason: "no weakly increasing maximal chain".into(),
                    chains: vec![],
                });
            };
            if let Some(other) = extra {
                memo[s].insert(t, inc);
                let a = inc_chain(&memo, s, t);
                let mut b = inc_chain(&memo, s, other.pred);
                b.push(t);
                return Err(ElWitness {
                    lo: s,
                    hi: t,
                    reason: format!("{count} weakly increasing maximal chains"),
                    chains: vec![a, b],
                });
            }
            memo[s].insert(t, inc);
            // lexicographic minimality against every other first step
            let u0 = inc.first;
            let l0 = l.label(p, s, u0);
            for (&u, &lu) in p.upper_covers(s).iter().zip(l.labels_above(s)) {
                if u == u0 || !p.leq(u, t) {
                    continue;
                }
                let smaller = if lu != l0 {
                    lu < l0
                } else {
                    let tail0 = chain_labels(p, l, &inc_chain(&memo, u0, t));
                    let tail = chain_labels(p, l, &inc_chain(&memo, u, t));
                    tail <= tail0
                };
                if smaller {
                    let a = inc_chain(&memo, s, t);
                    let mut b = vec![s];
                    b.extend(inc_chain(&memo, u, t));
                    return Err(ElWitness {
                        lo: s,
                        hi: t,
                        reason: "increasing chain is not lexicographically first".into(),
                        chains: vec![a, b],
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_el(p: &GradedPoset, l: &EdgeLabeling) -> bool {
    verify_el(p, l).is_ok()
}

/// Label statistics at one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalStats {
    /// Distinct labels above the element, increasing.
    pub labels: Vec<i64>,
    /// `ω(i)`: number of covers carrying `labels[i-1]`.
    pub omega: Vec<usize>,
    /// `(t, Ind(s,t), des_s(t))` for every cover `t`, indices 1-based.
    pub covers: Vec<(usize, usize, usize)>,
}

/// `ω_s`, `Ind(s, ·)` and `des_s(·)`; `des_s(1̂) = 0`.
pub fn local_stats(p: &GradedPoset, l: &EdgeLabeling, s: usize) -> Result<LocalStats> {
    if s == p.top() {
        return Err(Error::TopElement(s));
    }
    let labels = l.distinct_above(s);
    let mut omega = vec![0usize; labels.len()];
    let mut covers = Vec::with_capacity(p.upper_covers(s).len());
    for (&t, &lab) in p.upper_covers(s).iter().zip(l.labels_above(s)) {
        let ind = labels.binary_search(&lab).unwrap();
        omega[ind] += 1;
        let des = if t == p.top() {
            0
        } else {
            l.distinct_above(t).iter().filter(|&&m| m < lab).count()
        };
        covers.push((t, ind + 1, des));
    }
    Ok(LocalStats { labels, omega, covers })
}

/// Per-rank label statistics of a rank-uniform EL-labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankLabelStats {
    pub rank: usize,
    /// `ℓ_k` for `k = 0..n-1`.
    pub ell: Vec<usize>,
    /// `ω_k(i)`, `i = 1..ℓ_k` stored at `i-1`.
    pub omega: Vec<Vec<usize>>,
    /// `des_k(i)`, `i = 1..ℓ_k` stored at `i-1`.
    pub des: Vec<Vec<usize>>,
}

impl RankLabelStats {
    /// Whether `des_k` is weakly increasing at every rank.
    pub fn monotone_descents(&self) -> Option<usize> {
        self.des.iter().position(|d| d.windows(2).any(|w| w[0] > w[1]))
    }
}

/// Collects per-rank statistics, or describes the first non-uniformity.
pub(crate) fn collect_rank_stats(
    p: &GradedPoset,
    l: &EdgeLabeling,
) -> std::result::Result<RankLabelStats, String> {
    let n = p.height();
    let mut stats = RankLabelStats {
        rank: n,
        ell: vec![],
        omega: vec![],
        des: vec![],
    };
    for k in 0..n {
        let mut omega: Option<(usize, Vec<usize>)> = None;
        let mut des: Vec<Option<(usize, usize)>> = vec![];
        for &s in p.level(k) {
            let ls = local_stats(p, l, s).expect("rank below the top");
            match &omega {
                None => {
                    des = vec![None; ls.omega.len()];
                    omega = Some((s, ls.omega.clone()));
                }
                Some((s0, w0)) if *w0 != ls.omega => {
                    return Err(format!(
                        "rank {k}: ω differs at {} {:?} and {} {:?}",
                        p.name(*s0),
                        w0,
                        p.name(s),
                        ls.omega
                    ));
                }
                _ => {}
            }
            for &(t, ind, d) in &ls.covers {
                match des[ind - 1] {
                    None => des[ind - 1] = Some((t, d)),
                    Some((t0, d0)) if d0 != d => {
                        return Err(format!(
                            "rank {k}: des of index {ind} differs ({} gives {d0}, {} gives {d})",
                            p.name(t0),
                            p.name(t),
                        ));
                    }
                    _ => {}
                }
            }
        }
        let (_, w) = omega.expect("every rank below the top is nonempty");
        stats.ell.push(w.len());
        stats.omega.push(w);
        stats.des.push(des.into_iter().map(|d| d.map_or(0, |(_, v)| v)).collect());
    }
    Ok(stats)
}

/// Per-rank `ℓ_k`, `ω_k`, `des_k` of a rank-uniform EL-labeling.
pub fn rank_stats(p: &GradedPoset, l: &EdgeLabeling) -> Result<RankLabelStats> {
    if let Err(w) = verify_el(p, l) {
        return Err(Error::NotEL(format!(
            "[{}, {}]: {}",
            p.name(w.lo),
            p.name(w.hi),
            w.reason
        )));
    }
    collect_rank_stats(p, l).map_err(Error::NotRankUniformLabeling)
}

/// Outcome of the UMEL test, naming the first condition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmelReport {
    pub el: bool,
    pub uniform: bool,
    pub monotone: bool,
    pub failure: Option<String>,
    pub stats: Option<RankLabelStats>,
}

impl UmelReport {
    pub fn is_umel(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn is_umel(p: &GradedPoset, l: &EdgeLabeling) -> UmelReport {
    let mut report = UmelReport {
        el: false,
        uniform: false,
        monotone: false,
        failure: None,
        stats: None,
    };
    if let Err(w) = verify_el(p, l) {
        report.failure = Some(format!(
            "EL fails on [{}, {}]: {}",
            p.name(w.lo),
            p.name(w.hi),
            w.reason
        ));
        return report;
    }
    report.el = true;
    let stats = match collect_rank_stats(p, l) {
        Ok(s) => s,
        Err(w) => {
            report.failure = Some(format!("not rank-uniform: {w}"));
            return report;
        }
    };
    report.uniform = true;
    if let Some(k) = stats.monotone_descents() {
        report.failure = Some(format!("des at rank {k} is not weakly increasing: {:?}", stats.des[k]));
    } else {
        report.monotone = true;
    }
    report.stats = Some(stats);
    report
}

/// Descent positions `i` (1-based) with `λ_i > λ_{i+1}` along a saturated chain.
pub fn chain_descent_set(p: &GradedPoset, l: &EdgeLabeling, chain: &[usize]) -> Result<RankSet> {
    let mut labels = Vec::with_capacity(chain.len());
    for w in chain.windows(2) {
        if !p.is_cover(w[0], w[1]) {
            return Err(Error::NotACover(w[0], w[1]));
        }
        labels.push(l.label(p, w[0], w[1]));
    }
    let mut mask = 0u64;
    for (i, w) in labels.windows(2).enumerate() {
        if w[0] > w[1] {
            mask |= 1 << (i + 1);
        }
    }
    Ok(RankSet(mask))
}

/// Number of maximal chains of `p` with each descent set.
pub fn descent_set_distribution(p: &GradedPoset, l: &EdgeLabeling) -> BTreeMap<RankSet, BigInt> {
    let n = p.height();
    // state per element: (incoming label, descent mask) -> count
    let mut states: Vec<HashMap<(i64, u64), u128>> = vec![HashMap::new(); p.len()];
    let mut out = BTreeMap::new();
    if n == 0 {
        out.insert(RankSet(0), BigInt::from(1));
        return out;
    }
    for (&t, &lab) in p.upper_covers(p.bottom()).iter().zip(l.labels_above(p.bottom())) {
        *states[t].entry((lab, 0)).or_default() += 1;
    }
    for &v in p.rank_order() {
        if p.rank(v) == 0 || v == p.top() {
            continue;
        }
        let here = std::mem::take(&mut states[v]);
        let r = p.rank(v);
        for (&t, &lab) in p.upper_covers(v).iter().zip(l.labels_above(v)) {
            for (&(prev, mask), &c) in &here {
                let m = if prev > lab { mask | 1 << r } else { mask };
                let e = states[t].entry((lab, m)).or_default();
                *e = e.checked_add(c).expect("chain count overflow");
            }
        }
    }
    for (&(_, mask), &c) in &states[p.top()] {
        *out.entry(RankSet(mask)).or_insert_with(|| BigInt::from(0)) += c;
    }
    out
}
