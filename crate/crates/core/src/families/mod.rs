//! Constructors for the standard labelled families.

mod dowling;
mod linear;

pub use dowling::{dowling, dowling_with_limit, partition, GPartition};
pub use linear::{flats_from_points, projective, projective_with_limit, PointConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::labeling::EdgeLabeling;
use crate::poset::GradedPoset;

pub const DEFAULT_MAX_ELEMENTS: usize = 500_000;

/// A poset together with an edge labeling.
#[derive(Clone, Debug)]
pub struct LabeledPoset {
    pub poset: GradedPoset,
    pub labeling: EdgeLabeling,
}

pub(crate) fn subset_name(mask: u64, n: usize) -> String {
    let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Subsets of `[n]`; the cover `S ⋖ S ∪ {i}` is labelled `i`.
pub fn boolean(n: usize) -> Result<LabeledPoset> {
    if n > 20 {
        return Err(Error::SizeLimitExceeded {
            what: format!("boolean lattice of rank {n}"),
            limit: 20,
        });
    }
    let size = 1usize << n;
    let names = (0..size).map(|m| subset_name(m as u64, n)).collect();
    let mut covers = Vec::with_capacity(size * n / 2);
    for m in 0..size {
        for i in 0..n {
            if m >> i & 1 == 0 {
                covers.push((m, m | 1 << i));
            }
        }
    }
    let poset = GradedPoset::new(names, &covers)?;
    let labeling = EdgeLabeling::from_fn(&poset, |a, b| ((a ^ b).trailing_zeros() + 1) as i64);
    Ok(LabeledPoset { poset, labeling })
}

/// Lattice of flats of the uniform matroid `U_{k,n}`: subsets of size
/// `< k` plus `[n]`, each cover labelled by `min(T \ S)`.
pub fn uniform(k: usize, n: usize) -> Result<LabeledPoset> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("uniform({k}, {n}) needs 1 <= k <= n")));
    }
    if n > 24 {
        return Err(Error::SizeLimitExceeded {
            what: format!("uniform matroid on {n} elements"),
            limit: 24,
        });
    }
    let full = (1u64 << n) - 1;
    let mut masks: Vec<u64> = (0..=full).filter(|m| (m.count_ones() as usize) < k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.push(full);
    let index: std::collections::HashMap<u64, usize> =
        masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut covers = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        if m == full {
            continue;
        }
        if (m.count_ones() as usize) + 1 < k {
            for b in 0..n {
                if m >> b & 1 == 0 {
                    covers.push((i, index[&(m | 1 << b)]));
                }
            }
        } else {
            covers.push((i, index[&full]));
        }
    }
    let names = masks.iter().map(|&m| subset_name(m, n)).collect();
    let poset = GradedPoset::new(names, &covers)?;
    let labeling = EdgeLabeling::from_fn(&poset, |a, b| {
        ((masks[b] & !masks[a]).trailing_zeros() + 1) as i64
    });
    Ok(LabeledPoset { poset, labeling })
}

/// A random graded bounded poset of the given rank with at most `max_width`
/// elements per proper rank. Deterministic in `seed`.
pub fn random_graded(seed: u64, rank: usize, max_width: usize) -> GradedPoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_width = max_width.max(1);
    let mut widths = vec![1];
    for _ in 1..rank {
        widths.push(rng.gen_range(1..=max_width));
    }
    if rank > 0 {
        widths.push(1);
    }
    let mut start = vec![0];
    for w in &widths {
        start.push(start.last().unwrap() + w);
    }
    let total = *start.last().unwrap();
    let mut covers = std::collections::BTreeSet::new();
    for r in 1..widths.len() {
        let (lo, lw) = (start[r - 1], widths[r - 1]);
        let (hi, hw) = (start[r], widths[r]);
        for j in 0..hw {
            // each element gets at least one lower cover
            let first = rng.gen_range(0..lw);
            covers.insert((lo + first, hi + j));
            for i in 0..lw {
                if rng.gen_bool(0.4) {
                    covers.insert((lo + i, hi + j));
                }
            }
        }
        for i in 0..lw {
            if !covers.iter().any(|&(a, b)| a == lo + i && b >= hi && b < hi + hw) {
                covers.insert((lo + i, hi + rng.gen_range(0..hw)));
            }
        }
    }
    let names = (0..total).map(|i| format!("v{i}")).collect();
    let covers: Vec<_> = covers.into_iter().collect();
    GradedPoset::new(names, &covers).expect("levelled construction is graded and bounded")
}
