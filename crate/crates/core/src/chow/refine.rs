//! Gamma and h polynomials refined by the index of the first label, computed
//! by a descent DP over covers or by transfer matrices built from rank statistics.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::labeling::{is_umel, verify_el, EdgeLabeling, RankLabelStats};
use crate::poly::{certify_interlacing, IntPoly};
use crate::poset::GradedPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineMethod {
    Enumerate,
    Recurse,
}

/// Gamma polynomials of no-double-descent chains, split by the index of the
/// first label and by whether the first two labels ascend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRefinement {
    pub rank: usize,
    pub all: Vec<IntPoly>,
    pub ascent: Vec<IntPoly>,
    pub descent: Vec<IntPoly>,
}

fn sum(v: &[IntPoly]) -> IntPoly {
    v.iter().fold(IntPoly::zero(), |a, b| &a + b)
}

fn check(f: &IntPoly, g: &IntPoly, what: String, out: &mut Vec<String>) -> Result<()> {
    if !certify_interlacing(f, g)? {
        out.push(format!("{what}: {f} does not interlace {g}"));
    }
    Ok(())
}

impl GammaRefinement {
    /// `γ(H̄_P)`
    pub fn sum_ascent(&self) -> IntPoly {
        sum(&self.ascent)
    }

    /// `γ(H_P)`
    pub fn sum_all(&self) -> IntPoly {
        sum(&self.all)
    }

    /// Every pair along a directed path of the diagram
    /// `ascent[i] → ascent[i+1]`, `all[i] → all[i+1]`, `descent[i] → descent[i+1]`,
    /// `ascent[i] → all[i] → descent[i]`, `ascent[ℓ] → descent[1]`,
    /// reported as a list of failures.
    pub fn interlacing_failures(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let l = self.all.len();
        for i in 0..l {
            for j in 0..l {
                if i < j {
                    check(&self.ascent[i], &self.ascent[j], format!("ascent {} -> {}", i + 1, j + 1), &mut out)?;
                    check(&self.all[i], &self.all[j], format!("all {} -> {}", i + 1, j + 1), &mut out)?;
                    check(&self.descent[i], &self.descent[j], format!("descent {} -> {}", i + 1, j + 1), &mut out)?;
                }
                if i <= j {
                    check(&self.ascent[i], &self.all[j], format!("ascent {} -> all {}", i + 1, j + 1), &mut out)?;
                    check(&self.all[i], &self.descent[j], format!("all {} -> descent {}", i + 1, j + 1), &mut out)?;
                }
                check(&self.ascent[i], &self.descent[j], format!("ascent {} -> descent {}", i + 1, j + 1), &mut out)?;
            }
        }
        Ok(out)
    }
}

/// `h` polynomials of the chains of `[s, 1̂]` by first label index, for `s`
/// of the given corank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRefinement {
    pub corank: usize,
    pub h: Vec<IntPoly>,
}

impl HRefinement {
    pub fn sum(&self) -> IntPoly {
        sum(&self.h)
    }

    /// Pairs `h[i] ⪯ h[j]`, `i < j`, that fail.
    pub fn interlacing_failures(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for i in 0..self.h.len() {
            for j in i + 1..self.h.len() {
                check(&self.h[i], &self.h[j], format!("corank {} h {} -> {}", self.corank, i + 1, j + 1), &mut out)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Const(usize),
    Y(usize),
}

/// A matrix of entries `0`, `ω` or `ω y` sending the refinement vector at one
/// corank to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub rows: Vec<Vec<Entry>>,
    /// Row `i` switches entry kind after column `split[i]`.
    pub split: Vec<usize>,
}

impl TransferMatrix {
    fn build(omega: &[usize], des: &[usize], cols: usize, low: fn(usize) -> Entry, high: fn(usize) -> Entry) -> Self {
        let rows = omega
            .iter()
            .zip(des)
            .map(|(&w, &d)| (0..cols).map(|j| if j < d { low(w) } else { high(w) }).collect())
            .collect();
        TransferMatrix { rows, split: des.to_vec() }
    }

    /// `ω(i) y` for `j <= des(i)`, `ω(i)` beyond.
    pub fn h_step(omega: &[usize], des: &[usize], cols: usize) -> Self {
        Self::build(omega, des, cols, Entry::Y, Entry::Const)
    }

    /// `0` for `j <= des(i)`, `ω(i)` beyond.
    pub fn ascent_step(omega: &[usize], des: &[usize], cols: usize) -> Self {
        Self::build(omega, des, cols, Entry::Const, Entry::Const).zero_where(des, true)
    }

    /// `ω(i) y` for `j <= des(i)`, `0` beyond.
    pub fn descent_step(omega: &[usize], des: &[usize], cols: usize) -> Self {
        Self::build(omega, des, cols, Entry::Y, Entry::Y).zero_where(des, false)
    }

    fn zero_where(mut self, des: &[usize], low: bool) -> Self {
        for (row, &d) in self.rows.iter_mut().zip(des) {
            for (j, e) in row.iter_mut().enumerate() {
                if (j < d) == low {
                    *e = Entry::Zero;
                }
            }
        }
        self
    }

    pub fn apply(&self, v: &[IntPoly]) -> Vec<IntPoly> {
        let y = IntPoly::monomial(BigInt::from(1), 1);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = IntPoly::zero();
                for (e, p) in row.iter().zip(v) {
                    match *e {
                        Entry::Zero => {}
                        Entry::Const(w) => acc.add_assign_scaled(p, &BigInt::from(w)),
                        Entry::Y(w) => acc.add_assign_scaled(&(p * &y), &BigInt::from(w)),
                    }
                }
                acc
            })
            .collect()
    }

    /// Whether the row thresholds weakly increase, the two-column
    /// condition under which the matrix preserves interlacing.
    pub fn is_monotone(&self) -> bool {
        self.split.windows(2).all(|w| w[0] <= w[1])
    }
}

fn umel_stats(p: &GradedPoset, l: &EdgeLabeling) -> Result<RankLabelStats> {
    let report = is_umel(p, l);
    match (report.failure, report.stats) {
        (None, Some(stats)) => Ok(stats),
        (f, _) => Err(Error::NotUMEL(f.unwrap_or_default())),
    }
}

fn require_el(p: &GradedPoset, l: &EdgeLabeling) -> Result<()> {
    verify_el(p, l).map_err(|w| Error::NotEL(format!("[{}, {}]: {}", p.name(w.lo), p.name(w.hi), w.reason)))
}

fn require_positive_rank(p: &GradedPoset) -> Result<()> {
    if p.height() == 0 {
        return Err(Error::InvalidParameter("refinements need rank at least 1".into()));
    }
    Ok(())
}

/// For each element, its upper covers' label indices (0-based) into
/// `distinct_above`.
fn cover_indices(l: &EdgeLabeling, s: usize) -> (Vec<i64>, Vec<usize>) {
    let labels = l.distinct_above(s);
    let idx = l.labels_above(s).iter().map(|x| labels.binary_search(x).unwrap()).collect();
    (labels, idx)
}

/// Per element, prefix and suffix sums of cover values over its distinct labels.
struct Continuations {
    labels: Vec<i64>,
    /// `ge[k]`: sum over covers with label `>= labels[k]`; `ge[len]` is zero.
    ge: Vec<IntPoly>,
    /// `lt[k]`: sum over covers with label `< labels[k]`; `lt[len]` is the total.
    lt: Vec<IntPoly>,
}

impl Continuations {
    fn new(labels: Vec<i64>, per_label_ge: &[IntPoly], per_label_lt: &[IntPoly]) -> Self {
        let m = labels.len();
        let mut ge = vec![IntPoly::zero(); m + 1];
        for k in (0..m).rev() {
            ge[k] = &ge[k + 1] + &per_label_ge[k];
        }
        let mut lt = vec![IntPoly::zero(); m + 1];
        for k in 0..m {
            lt[k + 1] = &lt[k] + &per_label_lt[k];
        }
        Continuations { labels, ge, lt }
    }

    /// `(Σ_{label >= λ} ge-part, Σ_{label < λ} lt-part)`
    fn split(&self, lambda: i64) -> (&IntPoly, &IntPoly) {
        let k = self.labels.partition_point(|&x| x < lambda);
        (&self.ge[k], &self.lt[k])
    }
}

/// Backward pass over covers. `edge(ge, lt)` turns the continuation sums at
/// the upper end into the value of one cover; each element is summarised by
/// the two per-label sums `(to_ge, to_lt)` of its covers' values.
fn backward<V: Clone>(
    p: &GradedPoset,
    l: &EdgeLabeling,
    edge: impl Fn(&IntPoly, &IntPoly) -> V,
    summarise: impl Fn(&V) -> (IntPoly, IntPoly),
    top_split: (IntPoly, IntPoly),
) -> Vec<Vec<V>> {
    let mut values: Vec<Vec<V>> = vec![Vec::new(); p.len()];
    let mut cont: Vec<Option<Continuations>> = (0..p.len()).map(|_| None).collect();
    for &u in p.rank_order().iter().rev() {
        if u == p.top() {
            continue;
        }
        let mut vals = Vec::with_capacity(p.upper_covers(u).len());
        for (&t, &lab) in p.upper_covers(u).iter().zip(l.labels_above(u)) {
            let v = if t == p.top() {
                edge(&top_split.0, &top_split.1)
            } else {
                let (ge, lt) = cont[t].as_ref().unwrap().split(lab);
                edge(ge, lt)
            };
            vals.push(v);
        }
        let (labels, idx) = cover_indices(l, u);
        let mut per_ge = vec![IntPoly::zero(); labels.len()];
        let mut per_lt = vec![IntPoly::zero(); labels.len()];
        for (v, &k) in vals.iter().zip(&idx) {
            let (a, b) = summarise(v);
            per_ge[k] = &per_ge[k] + &a;
            per_lt[k] = &per_lt[k] + &b;
        }
        cont[u] = Some(Continuations::new(labels, &per_ge, &per_lt));
        values[u] = vals;
    }
    values
}

fn by_index<V>(l: &EdgeLabeling, s: usize, vals: &[V], f: impl Fn(&V) -> &IntPoly) -> Vec<IntPoly> {
    let (labels, idx) = cover_indices(l, s);
    let mut out = vec![IntPoly::zero(); labels.len()];
    for (v, &k) in vals.iter().zip(&idx) {
        out[k] = &out[k] + f(v);
    }
    out
}

fn gamma_enumerate(p: &GradedPoset, l: &EdgeLabeling) -> Result<GammaRefinement> {
    require_el(p, l)?;
    require_positive_rank(p)?;
    let y = IntPoly::monomial(BigInt::from(1), 1);
    // per cover: (A, D) = no-double-descent chains from this cover on whose
    // first two labels ascend (or that stop at 1̂), respectively descend
    let vals = backward(
        p,
        l,
        |ge, lt| (ge.clone(), &y * lt),
        |(a, d)| (a + d, a.clone()),
        (IntPoly::one(), IntPoly::zero()),
    );
    let b = p.bottom();
    let ascent = by_index(l, b, &vals[b], |v| &v.0);
    let descent = by_index(l, b, &vals[b], |v| &v.1);
    let all = ascent.iter().zip(&descent).map(|(a, d)| a + d).collect();
    Ok(GammaRefinement { rank: p.height(), all, ascent, descent })
}

fn gamma_recurse(p: &GradedPoset, l: &EdgeLabeling) -> Result<GammaRefinement> {
    require_positive_rank(p)?;
    let stats = umel_stats(p, l)?;
    let n = p.height();
    let mut ascent: Vec<IntPoly> = stats.omega[n - 1].iter().map(|&w| IntPoly::constant(w.into())).collect();
    let mut descent = vec![IntPoly::zero(); ascent.len()];
    let mut all = ascent.clone();
    for r in (0..n - 1).rev() {
        let (w, d) = (&stats.omega[r], &stats.des[r]);
        let a = TransferMatrix::ascent_step(w, d, all.len()).apply(&all);
        let dd = TransferMatrix::descent_step(w, d, ascent.len()).apply(&ascent);
        all = a.iter().zip(&dd).map(|(x, y)| x + y).collect();
        ascent = a;
        descent = dd;
    }
    Ok(GammaRefinement { rank: n, all, ascent, descent })
}

pub fn gamma_refined(p: &GradedPoset, l: &EdgeLabeling, method: RefineMethod) -> Result<GammaRefinement> {
    match method {
        RefineMethod::Enumerate => gamma_enumerate(p, l),
        RefineMethod::Recurse => gamma_recurse(p, l),
    }
}

/// The weakly increasing maximal chain of `[s, 1̂]`, if any.
pub fn increasing_chain(p: &GradedPoset, l: &EdgeLabeling, s: usize) -> Option<Vec<usize>> {
    fn go(p: &GradedPoset, l: &EdgeLabeling, x: usize, min: i64, dead: &mut HashSet<(usize, i64)>, path: &mut Vec<usize>) -> bool {
        if x == p.top() {
            return true;
        }
        if dead.contains(&(x, min)) {
            return false;
        }
        let mut covers: Vec<(i64, usize)> = l.labels_above(x).iter().copied().zip(p.upper_covers(x).iter().copied()).collect();
        covers.sort_unstable();
        for (lab, t) in covers {
            if lab < min {
                continue;
            }
            path.push(t);
            if go(p, l, t, lab, dead, path) {
                return true;
            }
            path.pop();
        }
        dead.insert((x, min));
        false
    }
    let mut path = vec![s];
    go(p, l, s, i64::MIN, &mut HashSet::new(), &mut path).then_some(path)
}

fn h_enumerate(p: &GradedPoset, l: &EdgeLabeling) -> Result<Vec<HRefinement>> {
    require_el(p, l)?;
    require_positive_rank(p)?;
    let y = IntPoly::monomial(BigInt::from(1), 1);
    let vals = backward(
        p,
        l,
        |ge, lt| ge + &(&y * lt),
        |h| (h.clone(), h.clone()),
        (IntPoly::one(), IntPoly::zero()),
    );
    let chain = increasing_chain(p, l, p.bottom()).expect("EL posets have an increasing chain");
    let n = p.height();
    Ok((1..=n)
        .map(|k| {
            let s = chain[n - k];
            HRefinement { corank: k, h: by_index(l, s, &vals[s], |v| v) }
        })
        .collect())
}

fn h_recurse(p: &GradedPoset, l: &EdgeLabeling) -> Result<Vec<HRefinement>> {
    require_positive_rank(p)?;
    let stats = umel_stats(p, l)?;
    let n = p.height();
    let mut h: Vec<IntPoly> = stats.omega[n - 1].iter().map(|&w| IntPoly::constant(w.into())).collect();
    let mut out = vec![HRefinement { corank: 1, h: h.clone() }];
    for r in (0..n - 1).rev() {
        h = TransferMatrix::h_step(&stats.omega[r], &stats.des[r], h.len()).apply(&h);
        out.push(HRefinement { corank: n - r, h: h.clone() });
    }
    Ok(out)
}

/// Refinement vectors for coranks `1..=n`.
pub fn h_refined(p: &GradedPoset, l: &EdgeLabeling, method: RefineMethod) -> Result<Vec<HRefinement>> {
    match method {
        RefineMethod::Enumerate => h_enumerate(p, l),
        RefineMethod::Recurse => h_recurse(p, l),
    }
}
