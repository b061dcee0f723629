//! Finite graded bounded posets stored as cover DAGs.
//!
//! Elements are `0..len()`. Ranks are recomputed from the covers and every
//! cover must raise the rank by exactly one. Comparability is answered from
//! strict down-set bitsets indexed by position in rank order, built lazily.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct GradedPoset {
    names: Vec<String>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
    levels: Vec<Vec<usize>>,
    pos: Vec<usize>,
    order: Vec<usize>,
    level_start: Vec<usize>,
    below: OnceLock<Vec<Bitset>>,
}

impl Clone for GradedPoset {
    fn clone(&self) -> Self {
        GradedPoset {
            names: self.names.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            rank: self.rank.clone(),
            bottom: self.bottom,
            top: self.top,
            levels: self.levels.clone(),
            pos: self.pos.clone(),
            order: self.order.clone(),
            level_start: self.level_start.clone(),
            below: OnceLock::new(),
        }
    }
}

/// Counts `W_k(s)` of elements of rank `rk(s) + k` above `s`, for `k = 0..`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WhitneyProfile(pub Vec<usize>);

/// A closed interval `[lo, hi]` of a parent poset.
#[derive(Clone, Debug)]
pub struct Interval<'a> {
    pub parent: &'a GradedPoset,
    pub lo: usize,
    pub hi: usize,
    /// Members in rank order.
    pub members: Vec<usize>,
}

/// Builds a graded bounded poset from element names and cover pairs `(lo, hi)`.
pub fn build_poset(names: Vec<String>, covers: &[(usize, usize)]) -> Result<GradedPoset> {
    GradedPoset::new(names, covers)
}

impl GradedPoset {
    pub fn new(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotBounded("empty poset".into()));
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(covers.len());
        for &(a, b) in covers {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
            }
            if a == b {
                return Err(Error::Cyclic(a));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateCover(a, b));
            }
            up[a].push(b);
            down[b].push(a);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        let minimal: Vec<usize> = (0..n).filter(|&x| down[x].is_empty()).collect();
        let maximal: Vec<usize> = (0..n).filter(|&x| up[x].is_empty()).collect();
        if minimal.len() != 1 {
            return Err(Error::NotBounded(format!("{} minimal elements", minimal.len())));
        }
        if maximal.len() != 1 {
            return Err(Error::NotBounded(format!("{} maximal elements", maximal.len())));
        }
        let (bottom, top) = (minimal[0], maximal[0]);

        // Longest-path ranks in topological order.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut rank = vec![0usize; n];
        let mut queue = VecDeque::from([bottom]);
        let mut visited = 0;
        while let Some(x) = queue.pop_front() {
            visited += 1;
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if visited != n {
            let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
            return Err(Error::Cyclic(stuck));
        }
        for &(a, b) in covers {
            if rank[b] != rank[a] + 1 {
                return Err(Error::NotGraded {
                    lo: a,
                    hi: b,
                    rank_lo: rank[a],
                    rank_hi: rank[b],
                });
            }
        }
        Ok(Self::assemble(names, up, down, rank, bottom, top))
    }

    fn assemble(
        names: Vec<String>,
        up: Vec<Vec<usize>>,
        down: Vec<Vec<usize>>,
        rank: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Self {
        let n = names.len();
        let height = rank[top];
        let mut levels = vec![Vec::new(); height + 1];
        for x in 0..n {
            levels[rank[x]].push(x);
        }
        let mut order = Vec::with_capacity(n);
        let mut level_start = Vec::with_capacity(height + 2);
        for level in &levels {
            level_start.push(order.len());
            order.extend_from_slice(level);
        }
        level_start.push(n);
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        GradedPoset {
            names,
            up,
            down,
            rank,
            bottom,
            top,
            levels,
            pos,
            order,
            level_start,
            below: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Rank of the top element.
    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn level(&self, r: usize) -> &[usize] {
        &self.levels[r]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Elements sorted by rank, then index.
    pub fn rank_order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, x: usize) -> usize {
        self.pos[x]
    }

    pub fn level_start(&self, r: usize) -> usize {
        self.level_start[r]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.up[a].iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&b).is_ok()
    }

    /// Strict down-set of every element, over positions in rank order.
    pub fn below_sets(&self) -> &[Bitset] {
        self.below.get_or_init(|| {
            let mut rows: Vec<Bitset> = Vec::with_capacity(self.len());
            let mut by_elem: Vec<usize> = vec![usize::MAX; self.len()];
            for &x in &self.order {
                let mut row = Bitset::new(self.level_start[self.rank[x]]);
                for &y in &self.down[x] {
                    row.union_with(&rows[by_elem[y]]);
                    row.set(self.pos[y]);
                }
                by_elem[x] = rows.len();
                rows.push(row);
            }
            // rows are in rank order; re-index by element
            let mut out: Vec<Option<Bitset>> = rows.into_iter().map(Some).collect();
            (0..self.len()).map(|x| out[self.pos[x]].take().unwrap()).collect()
        })
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || (self.rank[a] < self.rank[b] && self.below_sets()[b].get(self.pos[a]))
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            Err(Error::IndexOutOfRange {
                index: x,
                size: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Elements `>= s`, sorted in rank order.
    pub fn upset(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &y in &self.up[x] {
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable_by_key(|&x| self.pos[x]);
        out
    }

    /// Elements `<= t`, sorted in rank order.
    pub fn downset(&self, t: usize) -> Vec<usize> {
        let row = &self.below_sets()[t];
        let mut out: Vec<usize> = row.ones().map(|p| self.order[p]).collect();
        out.push(t);
        out
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Result<Interval<'_>> {
        self.check_index(lo)?;
        self.check_index(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable(lo, hi));
        }
        let members = self
            .upset(lo)
            .into_iter()
            .filter(|&x| self.leq(x, hi))
            .collect();
        Ok(Interval {
            parent: self,
            lo,
            hi,
            members,
        })
    }

    /// Induced subposet on a convex set of elements; covers are inherited.
    fn convex_subposet(&self, members: &[usize]) -> GradedPoset {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let mut covers = Vec::new();
        for &x in members {
            for &y in &self.up[x] {
                if local[y] != usize::MAX {
                    covers.push((local[x], local[y]));
                }
            }
        }
        GradedPoset::new(names, &covers).expect("interval of a graded poset is graded")
    }

    pub fn dual(&self) -> GradedPoset {
        let covers: Vec<(usize, usize)> = self.covers().map(|(a, b)| (b, a)).collect();
        GradedPoset::new(self.names.clone(), &covers).expect("dual of a graded poset is graded")
    }

    /// Adjoins a new minimum below the current bottom; the new element is last.
    pub fn add_bottom(&self) -> GradedPoset {
        let mut name = String::from("bot");
        while self.names.contains(&name) {
            name.push('\'');
        }
        let mut names = self.names.clone();
        names.push(name);
        let mut covers: Vec<(usize, usize)> = self.covers().collect();
        covers.push((self.len(), self.bottom));
        GradedPoset::new(names, &covers).expect("adding a bottom preserves gradedness")
    }

    /// Induced poset on ranks `S ∪ {0, n}` with covers recomputed.
    pub fn rank_select(&self, ranks: &[usize]) -> Result<GradedPoset> {
        let n = self.height();
        let mut sel: Vec<usize> = ranks.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if let Some(&r) = sel.iter().find(|&&r| r == 0 || r >= n) {
            return Err(Error::InvalidParameter(format!(
                "rank {r} is outside 1..{}",
                n.saturating_sub(1)
            )));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let mut all = vec![0];
        all.extend(&sel);
        all.push(n);
        let members: Vec<usize> = all.iter().flat_map(|&r| self.levels[r].iter().copied()).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let below = self.below_sets();
        let mut covers = Vec::new();
        for w in all.windows(2) {
            let (r0, r1) = (w[0], w[1]);
            let start = self.level_start[r0];
            let end = self.level_start[r0 + 1];
            for &t in &self.levels[r1] {
                for p in below[t].ones_in(start, end) {
                    covers.push((local[self.order[p]], local[t]));
                }
            }
        }
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        GradedPoset::new(names, &covers)
    }

    /// Drops the top `k` proper ranks: the rank selection `{1, ..., n-k-1}`.
    pub fn truncate(&self, k: usize) -> Result<GradedPoset> {
        let n = self.height();
        let keep: Vec<usize> = (1..n.saturating_sub(k)).collect();
        self.rank_select(&keep)
    }

    pub fn whitney_profile(&self, s: usize) -> WhitneyProfile {
        let r0 = self.rank[s];
        let mut counts = vec![0usize; self.height() - r0 + 1];
        for x in self.upset(s) {
            counts[self.rank[x] - r0] += 1;
        }
        WhitneyProfile(counts)
    }

    /// Two elements of equal rank with different Whitney profiles, if any.
    pub fn rank_uniformity_witness(&self) -> Option<(usize, usize)> {
        for level in &self.levels {
            let mut first: Option<(usize, WhitneyProfile)> = None;
            for &x in level {
                let w = self.whitney_profile(x);
                match &first {
                    None => first = Some((x, w)),
                    Some((y, wy)) if *wy != w => return Some((*y, x)),
                    _ => {}
                }
            }
        }
        None
    }

    pub fn is_rank_uniform(&self) -> bool {
        self.rank_uniformity_witness().is_none()
    }

    /// Number of rank-`j` elements below a rank-`i` element, when this
    /// depends only on `i`; otherwise a pair of same-rank witnesses.
    pub fn lower_whitney_matrix(&self) -> std::result::Result<Vec<Vec<usize>>, (usize, usize)> {
        let n = self.height();
        let below = self.below_sets();
        let mut m = vec![vec![0usize; n + 1]; n + 1];
        for i in 0..=n {
            let mut first: Option<(usize, Vec<usize>)> = None;
            for &t in &self.levels[i] {
                let mut row = vec![0usize; n + 1];
                row[i] = 1;
                for p in below[t].ones() {
                    row[self.rank[self.order[p]]] += 1;
                }
                match &first {
                    None => first = Some((t, row)),
                    Some((u, r)) if *r != row => return Err((*u, t)),
                    _ => {}
                }
            }
            if let Some((_, row)) = first {
                m[i] = row;
            }
        }
        Ok(m)
    }

    pub fn is_chain(&self) -> bool {
        self.levels.iter().all(|l| l.len() == 1)
    }
}

impl<'a> Interval<'a> {
    pub fn rank(&self) -> usize {
        self.parent.rank(self.hi) - self.parent.rank(self.lo)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The interval as a standalone poset; local index `i` is `members[i]`.
    pub fn to_poset(&self) -> GradedPoset {
        self.parent.convex_subposet(&self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> GradedPoset {
        // 0̂ < A, B; A < D, E; B < E, F; D, E, F < 1̂
        let names = ["0", "A", "B", "D", "E", "F", "1"].map(String::from).to_vec();
        let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)];
        GradedPoset::new(names, &covers).unwrap()
    }

    fn chain(n: usize) -> GradedPoset {
        let names = (0..=n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        GradedPoset::new(names, &covers).unwrap()
    }

    #[test]
    fn diamond_profiles() {
        let p = diamond();
        assert_eq!(p.height(), 3);
        assert_eq!(p.whitney_profile(p.bottom()).0, vec![1, 2, 3, 1]);
        let d = p.dual();
        assert_eq!(d.whitney_profile(d.bottom()).0, vec![1, 3, 2, 1]);
        let t = p.truncate(1).unwrap();
        assert_eq!(t.whitney_profile(t.bottom()).0, vec![1, 2, 1]);
    }

    #[test]
    fn rejects_malformed_input() {
        let names = |k: usize| (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(matches!(
            GradedPoset::new(names(3), &[(0, 2), (1, 2)]),
            Err(Error::NotBounded(_))
        ));
        assert!(matches!(
            GradedPoset::new(names(4), &[(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]),
            Err(Error::NotGraded { .. })
        ));
        assert!(matches!(
            GradedPoset::new(names(4), &[(0, 1), (1, 2), (2, 1), (2, 3)]),
            Err(Error::NotBounded(_)) | Err(Error::Cyclic(_))
        ));
        assert!(matches!(
            GradedPoset::new(names(2), &[(0, 1), (0, 1)]),
            Err(Error::DuplicateCover(0, 1))
        ));
        assert!(matches!(
            GradedPoset::new(names(2), &[(0, 5)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn single_element_and_chain() {
        let p = GradedPoset::new(vec!["x".into()], &[]).unwrap();
        assert_eq!(p.height(), 0);
        assert_eq!(p.bottom(), p.top());
        let c = chain(4);
        assert!(c.is_chain());
        assert!(c.leq(1, 3) && !c.leq(3, 1));
        assert_eq!(c.rank_select(&[2]).unwrap().len(), 3);
    }

    #[test]
    fn intervals_and_comparability() {
        let p = diamond();
        let i = p.interval(1, 6).unwrap();
        assert_eq!(i.members, vec![1, 3, 4, 6]);
        assert_eq!(i.rank(), 2);
        let q = i.to_poset();
        assert_eq!(q.whitney_profile(q.bottom()).0, vec![1, 2, 1]);
        assert!(matches!(p.interval(1, 5), Err(Error::NotComparable(1, 5))));
        assert!(p.leq(0, 6) && p.leq(2, 4) && !p.leq(1, 5));
        assert_eq!(p.downset(4), vec![0, 1, 2, 4]);
    }

    #[test]
    fn add_bottom_shifts_ranks() {
        let p = diamond();
        let q = p.add_bottom();
        assert_eq!(q.height(), 4);
        assert_eq!(q.bottom(), 7);
        for x in 0..7 {
            assert_eq!(q.rank(x), p.rank(x) + 1);
        }
    }

    #[test]
    fn rank_uniformity() {
        let p = diamond();
        // A and B both have 2 elements above them at rank 2.
        assert!(p.is_rank_uniform());
        let (a, b) = diamond().dual().rank_uniformity_witness().unwrap();
        assert_eq!(p.rank(a), 2);
        assert_eq!(p.rank(b), 2);
    }
}
