use proptest::prelude::*;

use umel_core::families::{boolean, dowling, partition, projective, uniform, LabeledPoset};
use umel_core::labeling::{is_umel, local_stats, rank_stats, verify_el, EdgeLabeling, RankLabelStats};
use umel_core::GradedPoset;

fn families() -> Vec<(String, LabeledPoset)> {
    let mut out = vec![];
    for n in 1..=5 {
        out.push((format!("boolean({n})"), boolean(n).unwrap()));
    }
    for n in 2..=7 {
        for k in 1..=n {
            out.push((format!("uniform({k},{n})"), uniform(k, n).unwrap()));
        }
    }
    for n in 2..=5 {
        out.push((format!("partition({n})"), partition(n).unwrap()));
    }
    for (n, m) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        out.push((format!("dowling({n},{m})"), dowling(n, m).unwrap()));
    }
    for (n, q) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
        out.push((format!("projective({n},{q})"), projective(n, q).unwrap()));
    }
    out
}

/// Increasing chains of length `k` from `s`, counted by the index of their last label.
fn direct_counts(p: &GradedPoset, l: &EdgeLabeling, s: usize, k: usize) -> Vec<usize> {
    let mut out = vec![];
    fn go(p: &GradedPoset, l: &EdgeLabeling, x: usize, last: i64, left: usize, out: &mut Vec<usize>) {
        let distinct = l.distinct_above(x);
        for (&t, &lab) in p.upper_covers(x).iter().zip(l.labels_above(x)) {
            if lab < last {
                continue;
            }
            if left == 1 {
                let i = distinct.binary_search(&lab).unwrap();
                if out.len() <= i {
                    out.resize(i + 1, 0);
                }
                out[i] += 1;
            } else {
                go(p, l, t, lab, left - 1, out);
            }
        }
    }
    go(p, l, s, i64::MIN, k, &mut out);
    out
}

/// `W^i_{k+1} = ω_{r+k}(i) Σ_{j : des_{r+k-1}(j) < i} W^j_k`, starting from `W^i_1 = ω_r(i)`.
fn recursive_counts(st: &RankLabelStats, r: usize, k: usize) -> Vec<usize> {
    let mut w = st.omega[r].clone();
    for step in 1..k {
        let (omega, des) = (&st.omega[r + step], &st.des[r + step - 1]);
        w = (1..=omega.len())
            .map(|i| omega[i - 1] * w.iter().zip(des).filter(|&(_, &d)| d < i).map(|(x, _)| x).sum::<usize>())
            .collect();
    }
    while w.last() == Some(&0) {
        w.pop();
    }
    w
}

#[test]
fn umel_families_are_rank_uniform_with_recursive_whitney_counts() {
    for (name, lp) in families() {
        let (p, l) = (&lp.poset, &lp.labeling);
        let report = is_umel(p, l);
        assert!(report.is_umel(), "{name}: {:?}", report.failure);
        assert!(p.is_rank_uniform(), "{name}");
        let st = rank_stats(p, l).unwrap();
        for s in 0..p.len() {
            let r = p.rank(s);
            let profile = p.whitney_profile(s).0;
            for k in 1..=(p.height() - r).min(6) {
                let mut direct = direct_counts(p, l, s, k);
                while direct.last() == Some(&0) {
                    direct.pop();
                }
                assert_eq!(recursive_counts(&st, r, k), direct, "{name} at {} k={k}", p.name(s));
                assert_eq!(direct.iter().sum::<usize>(), profile[k], "{name} at {} k={k}", p.name(s));
            }
        }
    }
}

#[test]
fn smallest_label_never_starts_a_descent() {
    for (name, lp) in families() {
        let st = rank_stats(&lp.poset, &lp.labeling).unwrap();
        for (k, des) in st.des.iter().enumerate() {
            assert_eq!(des[0], 0, "{name} rank {k}");
        }
    }
}

#[test]
fn descent_counts_agree_with_local_stats() {
    for (name, lp) in families() {
        let (p, l) = (&lp.poset, &lp.labeling);
        let st = rank_stats(p, l).unwrap();
        for s in (0..p.len()).filter(|&s| s != p.top()) {
            let ls = local_stats(p, l, s).unwrap();
            assert_eq!(ls.omega, st.omega[p.rank(s)], "{name}");
            for &(_, ind, des) in &ls.covers {
                assert_eq!(des, st.des[p.rank(s)][ind - 1], "{name}");
            }
        }
    }
}

fn restrict(p: &GradedPoset, l: &EdgeLabeling, s: usize, t: usize) -> (GradedPoset, EdgeLabeling) {
    let iv = p.interval(s, t).unwrap();
    let q = iv.to_poset();
    let lq = EdgeLabeling::from_fn(&q, |a, b| l.label(p, iv.members[a], iv.members[b]));
    (q, lq)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restrictions_stay_el(which in 0usize..40, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let fams = families();
        let (_, lp) = &fams[which % fams.len()];
        let (p, l) = (&lp.poset, &lp.labeling);
        prop_assume!(verify_el(p, l).is_ok());
        let s = a.index(p.len());
        let up = p.upset(s);
        let t = up[b.index(up.len())];
        let (q, lq) = restrict(p, l, s, t);
        prop_assert!(verify_el(&q, &lq).is_ok());
    }
}
