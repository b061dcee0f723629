use std::collections::HashMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use umel_core::families::{
    boolean, dowling, flats_from_points, partition, projective, uniform, LabeledPoset, PointConfig,
};
use umel_core::flag::flag_vector;
use umel_core::labeling::{local_stats, verify_el};
use umel_core::supersolvable::{mcnamara_labeling, modular_maximal_chain, umel_from_supersolvable, Lattice};
use umel_core::GradedPoset;

fn near_pencil() -> PointConfig {
    PointConfig::new(2, 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap()
}

/// Nonzero vectors of `F_q^dim` with first nonzero coordinate 1.
fn projective_points(dim: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = vec![];
    for code in 1..q.pow(dim as u32) {
        let v: Vec<u64> = (0..dim).map(|i| code / q.pow(i as u32) % q).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

#[test]
fn shipped_labelings_are_el() {
    let mut all: Vec<(String, LabeledPoset)> = vec![];
    for n in 0..=5 {
        all.push((format!("boolean({n})"), boolean(n).unwrap()));
    }
    for n in 1..=6 {
        for k in 1..=n {
            all.push((format!("uniform({k},{n})"), uniform(k, n).unwrap()));
        }
    }
    for n in 1..=5 {
        all.push((format!("partition({n})"), partition(n).unwrap()));
    }
    for n in 1..=4 {
        for m in 1..=3 {
            all.push((format!("dowling({n},{m})"), dowling(n, m).unwrap()));
        }
    }
    for (n, q) in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)] {
        all.push((format!("projective({n},{q})"), projective(n, q).unwrap()));
    }
    all.push(("near-pencil".into(), flats_from_points(&near_pencil()).unwrap()));
    all.push(("AG(2,3)".into(), flats_from_points(&PointConfig::affine(2, 3).unwrap()).unwrap()));
    for (name, lp) in all {
        assert!(verify_el(&lp.poset, &lp.labeling).is_ok(), "{name}");
    }
}

#[test]
fn dowling_lattices_are_rank_uniform() {
    for n in 1..=4 {
        for m in 1..=3 {
            assert!(dowling(n, m).unwrap().poset.is_rank_uniform(), "dowling({n},{m})");
        }
    }
}

fn assert_geometric(p: &GradedPoset, what: &str) {
    assert!(p.len() <= 2000, "{what}");
    let l = Lattice::new(p).unwrap();
    for a in 0..p.len() {
        let atoms: Vec<usize> = p.downset(a).into_iter().filter(|&x| p.rank(x) == 1).collect();
        let join = atoms.iter().fold(p.bottom(), |j, &x| l.join(j, x));
        assert_eq!(join, a, "{what}: {} is not a join of atoms", p.name(a));
        for b in 0..p.len() {
            let lhs = p.rank(a) + p.rank(b);
            let rhs = p.rank(l.join(a, b)) + p.rank(l.meet(a, b));
            assert!(lhs >= rhs, "{what}: {} and {} violate semimodularity", p.name(a), p.name(b));
        }
    }
}

#[test]
fn point_configurations_give_geometric_lattices() {
    let configs = [
        ("near-pencil", near_pencil()),
        ("AG(2,2)", PointConfig::affine(2, 2).unwrap()),
        ("AG(2,3)", PointConfig::affine(2, 3).unwrap()),
        ("AG(3,2)", PointConfig::affine(3, 2).unwrap()),
        ("PG(2,2)", PointConfig::new(2, 3, projective_points(3, 2)).unwrap()),
        ("PG(2,3)", PointConfig::new(3, 3, projective_points(3, 3)).unwrap()),
    ];
    for (name, cfg) in configs {
        assert_geometric(&flats_from_points(&cfg).unwrap().poset, name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_point_subsets_give_geometric_lattices(seed in any::<u64>(), size in 1usize..=9) {
        let mut pts = projective_points(4, 2);
        pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pts.truncate(size);
        let f = flats_from_points(&PointConfig::new(2, 4, pts).unwrap()).unwrap();
        assert_geometric(&f.poset, "random subset of PG(3,2)");
        prop_assert!(verify_el(&f.poset, &f.labeling).is_ok());
    }
}

/// `Π_n` from restricted growth strings; covers merge two blocks.
fn partition_oracle(n: usize) -> GradedPoset {
    fn strings(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0]];
        for _ in 1..n {
            out = out
                .into_iter()
                .flat_map(|s| {
                    let m = *s.iter().max().unwrap();
                    (0..=m + 1).map(move |b| {
                        let mut t = s.clone();
                        t.push(b);
                        t
                    })
                })
                .collect();
        }
        out
    }
    fn canon(v: &[usize]) -> Vec<usize> {
        let mut map = HashMap::new();
        v.iter().map(|b| { let k = map.len(); *map.entry(*b).or_insert(k) }).collect()
    }
    let all = strings(n);
    let index: HashMap<Vec<usize>, usize> = all.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = vec![];
    for (i, s) in all.iter().enumerate() {
        let blocks = s.iter().max().unwrap() + 1;
        for a in 0..blocks {
            for b in a + 1..blocks {
                let merged: Vec<usize> = s.iter().map(|&x| if x == b { a } else { x }).collect();
                covers.push((i, index[&canon(&merged)]));
            }
        }
    }
    GradedPoset::new(all.iter().map(|s| format!("{s:?}")).collect(), &covers).unwrap()
}

#[test]
fn dowling_over_trivial_group_is_a_partition_lattice() {
    for n in 1..=4 {
        let d = flag_vector(&dowling(n, 1).unwrap().poset).unwrap();
        let oracle = partition_oracle(n + 1);
        assert_eq!(oracle.len(), dowling(n, 1).unwrap().poset.len());
        let o = flag_vector(&oracle).unwrap();
        for s in d.subsets() {
            assert_eq!(d.alpha(s), o.alpha(s), "n={n} {s:?}");
        }
    }
}

fn supersolvable_lattices() -> Vec<(String, GradedPoset)> {
    vec![
        ("boolean(4)".into(), boolean(4).unwrap().poset),
        ("partition(4)".into(), partition(4).unwrap().poset),
        ("dowling(3,2)".into(), dowling(3, 2).unwrap().poset),
        ("projective(3,2)".into(), projective(3, 2).unwrap().poset),
        ("projective(3,3)".into(), projective(3, 3).unwrap().poset),
        ("near-pencil".into(), flats_from_points(&near_pencil()).unwrap().poset),
    ]
}

#[test]
fn modular_elements_give_diamond_isomorphisms() {
    for (name, p) in supersolvable_lattices() {
        let l = Lattice::new(&p).unwrap();
        for s in (0..p.len()).filter(|&s| l.is_modular_element(s)) {
            for t in 0..p.len() {
                let (lo, hi) = (l.meet(s, t), l.join(s, t));
                for x in p.interval(lo, s).unwrap().members {
                    assert_eq!(l.meet(l.join(x, t), s), x, "{name}");
                }
                for y in p.interval(t, hi).unwrap().members {
                    assert_eq!(l.join(l.meet(y, s), t), y, "{name}");
                }
            }
        }
    }
}

#[test]
fn modular_chains_are_hereditary() {
    for (name, p) in supersolvable_lattices() {
        let l = Lattice::new(&p).unwrap();
        let chain = modular_maximal_chain(&l).unwrap().0;
        for s in 0..p.len() {
            let mut up: Vec<usize> = chain.iter().map(|&m| l.join(s, m)).collect();
            up.dedup();
            assert_eq!(up.first(), Some(&s));
            assert_eq!(up.last(), Some(&p.top()));
            assert!(up.windows(2).all(|w| p.is_cover(w[0], w[1])), "{name}: not saturated above {}", p.name(s));
            let iv = p.interval(s, p.top()).unwrap();
            let q = iv.to_poset();
            let lq = Lattice::new(&q).unwrap();
            for m in &up {
                let local = iv.members.iter().position(|x| x == m).unwrap();
                assert!(lq.is_modular_element(local), "{name}: {} not modular above {}", p.name(*m), p.name(s));
            }
        }
    }
}

#[test]
fn supersolvable_labelings_count_descents_by_index() {
    for (name, p) in supersolvable_lattices() {
        let l = Lattice::new(&p).unwrap();
        let chain = modular_maximal_chain(&l).unwrap();
        let lab = mcnamara_labeling(&l, &chain).unwrap();
        assert!(verify_el(&p, &lab).is_ok(), "{name}");
        if !p.is_rank_uniform() {
            assert!(umel_from_supersolvable(&p).is_err(), "{name}");
            continue;
        }
        let ss = umel_from_supersolvable(&p).unwrap();
        assert!(ss.report.is_umel(), "{name}");
        for s in (0..p.len()).filter(|&s| s != p.top()) {
            for (_, ind, des) in local_stats(&p, &ss.labeling, s).unwrap().covers {
                assert_eq!(des + 1, ind, "{name}");
            }
        }
    }
}
