//! Subspace lattices and lattices of flats of vector configurations over `F_q`, `q` prime.

use std::collections::HashMap;

use super::{subset_name, LabeledPoset, DEFAULT_MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::labeling::EdgeLabeling;
use crate::poset::GradedPoset;
use crate::supersolvable::{mcnamara_labeling, Lattice, ModularChain};

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // q is prime
    let mut r = 1;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form over `F_q`, zero rows dropped.
fn rref(mut rows: Vec<Vec<u64>>, q: u64) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + q * q - f * y % q) % q;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

fn rank_of(rows: Vec<Vec<u64>>, q: u64) -> usize {
    rref(rows, q).len()
}

/// All vectors of `F_q^n` in lexicographic order.
fn all_vectors(n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn subspace_name(basis: &[Vec<u64>]) -> String {
    if basis.is_empty() {
        return "<0>".into();
    }
    let rows: Vec<String> = basis
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    format!("<{}>", rows.join(","))
}

pub fn projective(n: usize, q: u64) -> Result<LabeledPoset> {
    projective_with_limit(n, q, DEFAULT_MAX_ELEMENTS)
}

/// Subspaces of `F_q^n` labelled through the coordinate flag
/// `<e_1> ⊂ <e_1, e_2> ⊂ ...`.
pub fn projective_with_limit(n: usize, q: u64, max_elements: usize) -> Result<LabeledPoset> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("q = {q} must be prime")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("projective(0, q)".into()));
    }
    let vectors = (q as f64).powi(n as i32);
    if vectors > 1e6 {
        return Err(Error::SizeLimitExceeded {
            what: format!("{q}^{n} vectors"),
            limit: 1_000_000,
        });
    }
    let vecs: Vec<Vec<u64>> = all_vectors(n, q).into_iter().skip(1).collect();
    let mut index: HashMap<Vec<Vec<u64>>, usize> = HashMap::new();
    let mut elems: Vec<Vec<Vec<u64>>> = vec![vec![]];
    index.insert(vec![], 0);
    let mut covers = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let basis = elems[i].clone();
        let mut seen = std::collections::HashSet::new();
        for v in &vecs {
            let mut rows = basis.clone();
            rows.push(v.clone());
            let w = rref(rows, q);
            if w.len() == basis.len() {
                continue;
            }
            let j = match index.get(&w) {
                Some(&j) => j,
                None => {
                    if elems.len() >= max_elements {
                        return Err(Error::SizeLimitExceeded {
                            what: format!("projective({n}, {q}) subspaces"),
                            limit: max_elements as u64,
                        });
                    }
                    index.insert(w.clone(), elems.len());
                    elems.push(w);
                    elems.len() - 1
                }
            };
            if seen.insert(j) {
                covers.push((i, j));
            }
        }
        i += 1;
    }
    let names = elems.iter().map(|b| subspace_name(b)).collect();
    let poset = GradedPoset::new(names, &covers)?;
    let chain: Vec<usize> = (0..=n)
        .map(|k| {
            let basis: Vec<Vec<u64>> = (0..k)
                .map(|r| (0..n).map(|c| u64::from(c == r)).collect())
                .collect();
            index[&basis]
        })
        .collect();
    let lattice = Lattice::new(&poset)?;
    let labeling = mcnamara_labeling(&lattice, &ModularChain(chain))?;
    Ok(LabeledPoset { poset, labeling })
}

/// Nonzero, pairwise non-parallel vectors in `F_q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub q: u64,
    pub dim: usize,
    pub points: Vec<Vec<u64>>,
}

impl PointConfig {
    pub fn new(q: u64, dim: usize, points: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("q = {q} must be prime")));
        }
        if points.len() > 128 {
            return Err(Error::SizeLimitExceeded {
                what: format!("{} points", points.len()),
                limit: 128,
            });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim || p.iter().any(|&x| x >= q) {
                return Err(Error::InvalidParameter(format!("point {i} is not in F_{q}^{dim}")));
            }
            if p.iter().all(|&x| x == 0) {
                return Err(Error::InvalidParameter(format!("point {i} is zero")));
            }
            for (j, r) in points[..i].iter().enumerate() {
                if rank_of(vec![p.clone(), r.clone()], q) < 2 {
                    return Err(Error::InvalidParameter(format!("points {j} and {i} are parallel")));
                }
            }
        }
        Ok(PointConfig { q, dim, points })
    }

    /// `AG(d, q)` homogenised: the points `(1, v)` for `v ∈ F_q^d`.
    pub fn affine(d: usize, q: u64) -> Result<Self> {
        let pts = all_vectors(d, q)
            .into_iter()
            .map(|v| {
                let mut w = vec![1];
                w.extend(v);
                w
            })
            .collect();
        Self::new(q, d + 1, pts)
    }
}

/// Lattice of flats of the configuration; the cover `S ⋖ T` is labelled by
/// the smallest (1-based) point index in `T \ S`.
pub fn flats_from_points(cfg: &PointConfig) -> Result<LabeledPoset> {
    let q = cfg.q;
    let np = cfg.points.len();
    let closure = |set: u128| -> u128 {
        let rows: Vec<Vec<u64>> = (0..np).filter(|&i| set >> i & 1 == 1).map(|i| cfg.points[i].clone()).collect();
        let r = rank_of(rows.clone(), q);
        let mut out = set;
        for (i, p) in cfg.points.iter().enumerate() {
            if out >> i & 1 == 0 {
                let mut with = rows.clone();
                with.push(p.clone());
                if rank_of(with, q) == r {
                    out |= 1 << i;
                }
            }
        }
        out
    };
    let bottom = closure(0);
    let mut index: HashMap<u128, usize> = HashMap::from([(bottom, 0)]);
    let mut elems = vec![bottom];
    let mut covers = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let f = elems[i];
        let mut seen = std::collections::HashSet::new();
        for pnt in 0..np {
            if f >> pnt & 1 == 1 {
                continue;
            }
            let g = closure(f | 1 << pnt);
            let j = *index.entry(g).or_insert_with(|| {
                elems.push(g);
                elems.len() - 1
            });
            if seen.insert(j) {
                covers.push((i, j));
            }
        }
        i += 1;
    }
    let names = elems
        .iter()
        .map(|&m| {
            let lo = m as u64;
            let hi = (m >> 64) as u64;
            if hi == 0 {
                subset_name(lo, 64)
            } else {
                let items: Vec<String> = (0..128).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
        })
        .collect();
    let poset = GradedPoset::new(names, &covers)?;
    let labeling = EdgeLabeling::from_fn(&poset, |a, b| {
        ((elems[b] & !elems[a]).trailing_zeros() + 1) as i64
    });
    Ok(LabeledPoset { poset, labeling })
}
