//! Dowling lattices `Q_n(Z/m)` and partition lattices.

use std::collections::HashMap;

use super::{LabeledPoset, DEFAULT_MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::labeling::EdgeLabeling;
use crate::poset::GradedPoset;

/// A canonical G-partition of `{0} ∪ [n]` over `Z/m`.
///
/// `block[i-1]` is 0 for the zero block, otherwise the 1-based number of the
/// nonzero block holding `i` (blocks numbered by increasing minimum).
/// `label[i-1]` is the group label of `i`, normalised so each block minimum
/// and every zero-block entry carry 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GPartition {
    pub block: Vec<u8>,
    pub label: Vec<u8>,
}

impl GPartition {
    fn finest(n: usize) -> Self {
        GPartition {
            block: (1..=n as u8).collect(),
            label: vec![0; n],
        }
    }

    fn nonzero_blocks(&self) -> usize {
        self.block.iter().copied().max().unwrap_or(0) as usize
    }

    fn members(&self, b: u8) -> impl Iterator<Item = usize> + '_ {
        self.block.iter().enumerate().filter(move |(_, &x)| x == b).map(|(i, _)| i)
    }

    /// Smallest ground element (1-based) of nonzero block `b`.
    fn min_of(&self, b: u8) -> usize {
        self.members(b).next().unwrap() + 1
    }

    /// Renumbers nonzero blocks by first appearance and normalises labels.
    fn canonical(mut block: Vec<u8>, mut label: Vec<u8>, m: u8) -> Self {
        let mut renum: HashMap<u8, u8> = HashMap::new();
        let mut shift: HashMap<u8, u8> = HashMap::new();
        for i in 0..block.len() {
            let b = block[i];
            if b == 0 {
                label[i] = 0;
                continue;
            }
            let next = renum.len() as u8 + 1;
            let nb = *renum.entry(b).or_insert(next);
            let s = *shift.entry(b).or_insert(label[i]);
            block[i] = nb;
            label[i] = (label[i] + m - s) % m;
        }
        GPartition { block, label }
    }

    pub fn name(&self, m: u8) -> String {
        let mut parts = Vec::new();
        let zero: Vec<String> = self.members(0).map(|i| (i + 1).to_string()).collect();
        parts.push(format!("0{}", zero.iter().map(|s| format!(",{s}")).collect::<String>()));
        for b in 1..=self.nonzero_blocks() as u8 {
            let items: Vec<String> = self
                .members(b)
                .map(|i| {
                    if m > 1 && self.label[i] > 0 {
                        format!("{}^{}", i + 1, self.label[i])
                    } else {
                        (i + 1).to_string()
                    }
                })
                .collect();
            parts.push(items.join(","));
        }
        parts.join("|")
    }
}

/// Covers of `x` with their Simion labels.
fn upper_covers(x: &GPartition, m: u8) -> Vec<(GPartition, i64)> {
    let k = x.nonzero_blocks() as u8;
    let mut out = Vec::new();
    for a in 1..=k {
        // absorb block a into the zero block
        let block: Vec<u8> = x.block.iter().map(|&b| if b == a { 0 } else { b }).collect();
        out.push((GPartition::canonical(block, x.label.clone(), m), x.min_of(a) as i64));
        for b in a + 1..=k {
            // merge b into a with every relative shift g
            for g in 0..m {
                let mut block = x.block.clone();
                let mut label = x.label.clone();
                for i in 0..block.len() {
                    if block[i] == b {
                        block[i] = a;
                        label[i] = (label[i] + g) % m;
                    }
                }
                out.push((GPartition::canonical(block, label, m), x.min_of(b) as i64));
            }
        }
    }
    out
}

pub fn dowling(n: usize, m: usize) -> Result<LabeledPoset> {
    dowling_with_limit(n, m, DEFAULT_MAX_ELEMENTS)
}

/// `Q_n(Z/m)` with the Simion labeling: merging two nonzero blocks is
/// labelled by the larger of their minima, absorbing a block into the zero
/// block by its minimum.
pub fn dowling_with_limit(n: usize, m: usize, max_elements: usize) -> Result<LabeledPoset> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("dowling({n}, {m}) needs n, m >= 1")));
    }
    if n > 60 || m > 120 {
        return Err(Error::InvalidParameter(format!("dowling({n}, {m}) is out of range")));
    }
    let mm = m as u8;
    let mut index: HashMap<GPartition, usize> = HashMap::new();
    let mut elems = vec![GPartition::finest(n)];
    index.insert(elems[0].clone(), 0);
    let mut covers: Vec<(usize, usize, i64)> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        for (y, lab) in upper_covers(&x, mm) {
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elems.len() >= max_elements {
                        return Err(Error::SizeLimitExceeded {
                            what: format!("dowling({n}, {m}) elements"),
                            limit: max_elements as u64,
                        });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    elems.len() - 1
                }
            };
            covers.push((i, j, lab));
        }
        i += 1;
    }
    let names = elems.iter().map(|e| e.name(mm)).collect();
    let pairs: Vec<(usize, usize)> = covers.iter().map(|&(a, b, _)| (a, b)).collect();
    let poset = GradedPoset::new(names, &pairs)?;
    let labels: HashMap<(usize, usize), i64> = covers.into_iter().map(|(a, b, l)| ((a, b), l)).collect();
    let labeling = EdgeLabeling::from_fn(&poset, |a, b| labels[&(a, b)]);
    Ok(LabeledPoset { poset, labeling })
}

/// The partition lattice `Π_n`, realised as `Q_{n-1}` over the trivial
/// group with ground set shifted to `[n]`; a merge of blocks is labelled by
/// the larger block minimum minus one.
pub fn partition(n: usize) -> Result<LabeledPoset> {
    if n == 0 {
        return Err(Error::InvalidParameter("partition(0)".into()));
    }
    if n == 1 {
        let poset = GradedPoset::new(vec!["1".into()], &[])?;
        let labeling = EdgeLabeling::from_fn(&poset, |_, _| 0);
        return Ok(LabeledPoset { poset, labeling });
    }
    let q = dowling(n - 1, 1)?;
    let names: Vec<String> = q.poset.names().iter().map(|s| partition_name(s)).collect();
    let pairs: Vec<(usize, usize)> = q.poset.covers().collect();
    let poset = GradedPoset::new(names, &pairs)?;
    let labeling = EdgeLabeling::from_fn(&poset, |a, b| q.labeling.label(&q.poset, a, b));
    Ok(LabeledPoset { poset, labeling })
}

/// `0,2|1,3` over `{0,1,2,3}` becomes `13|24` over `[4]`.
fn partition_name(dowling_name: &str) -> String {
    let blocks: Vec<Vec<usize>> = dowling_name
        .split('|')
        .map(|b| b.split(',').map(|x| x.parse::<usize>().unwrap() + 1).collect())
        .collect();
    let wide = blocks.iter().flatten().any(|&x| x > 9);
    blocks
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            items.join(if wide { "," } else { "" })
        })
        .collect::<Vec<_>>()
        .join("|")
}
