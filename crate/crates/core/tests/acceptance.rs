//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use umel_core::chow::{
    aug_chow_poly, chow_poly, gamma_of, gamma_refined, h_refined, interlacing_battery, rank_selected_gamma, tn_check,
    AugMethod, ChowMethod, RefineMethod,
};
use umel_core::families::{
    boolean, dowling, flats_from_points, partition, projective, random_graded, uniform, LabeledPoset, PointConfig,
};
use umel_core::flag::{flag_beta, flag_vector, order_complex_polys, RankSet};
use umel_core::labeling::{
    attach_labeling, descent_set_distribution, is_umel, local_stats, rank_stats, verify_el, EdgeLabeling,
};
use umel_core::poly::{certify_interlacing, certify_real_rooted_nonpositive, gamma_expand, gamma_extract};
use umel_core::supersolvable::umel_from_supersolvable;
use umel_core::{Error, GradedPoset, IntPoly};

type Outcome = Result<String, String>;

struct Instance {
    name: String,
    poset: GradedPoset,
    labeling: Option<EdgeLabeling>,
    umel: bool,
}

fn labeled(name: String, lp: LabeledPoset) -> Instance {
    let umel = is_umel(&lp.poset, &lp.labeling).is_umel();
    Instance {
        name,
        poset: lp.poset,
        labeling: Some(lp.labeling),
        umel,
    }
}

fn family_set() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(labeled(format!("boolean({n})"), boolean(n).unwrap()));
    }
    for n in 1..=8 {
        for k in 1..=n {
            out.push(labeled(format!("uniform({k},{n})"), uniform(k, n).unwrap()));
        }
    }
    for n in 2..=6 {
        out.push(labeled(format!("partition({n})"), partition(n).unwrap()));
    }
    for n in 1..=4 {
        for m in 1..=3 {
            out.push(labeled(format!("dowling({n},{m})"), dowling(n, m).unwrap()));
        }
    }
    for (n, q) in [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)] {
        out.push(labeled(format!("projective({n},{q})"), projective(n, q).unwrap()));
    }
    for seed in 0..50u64 {
        let rank = 1 + (seed % 5) as usize;
        out.push(Instance {
            name: format!("random(seed {seed}, rank {rank})"),
            poset: random_graded(seed, rank, 4),
            labeling: None,
            umel: false,
        });
    }
    out
}

fn umel_instances(set: &[Instance]) -> impl Iterator<Item = (&Instance, &EdgeLabeling)> {
    set.iter().filter(|i| i.umel).map(|i| (i, i.labeling.as_ref().unwrap()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(ctx: &str, e: Error) -> String {
    format!("{ctx}: {e}")
}

fn real_rooted(f: &IntPoly, what: &str) -> Result<(), String> {
    let cert = certify_real_rooted_nonpositive(f).map_err(|e| err(what, e))?;
    ensure(cert.holds(), || format!("{what}: {f} is not real-rooted with nonpositive roots"))
}

fn criterion_1() -> Outcome {
    let golden: [(usize, &[i64]); 5] = [
        (3, &[1, 14, 1]),
        (4, &[1, 99, 99, 1]),
        (5, &[1, 622, 3162, 622, 1]),
        (6, &[1, 4051, 65812, 65812, 4051, 1]),
        (7, &[1, 28590, 1205199, 3724100, 1205199, 28590, 1]),
    ];
    let mut times = Vec::new();
    for (n, want) in golden {
        let start = Instant::now();
        let d = dowling(n, 2).map_err(|e| err(&format!("dowling({n},2)"), e))?;
        let got = chow_poly(&d.poset, ChowMethod::Recursion).map_err(|e| err("chow", e))?;
        let elapsed = start.elapsed();
        ensure(got == IntPoly::from_i64(want), || format!("n={n}: got {got}"))?;
        let budget = if n == 7 { Duration::from_secs(600) } else { Duration::from_secs(60) };
        ensure(elapsed < budget, || format!("n={n} took {elapsed:?}"))?;
        times.push(format!("n={n} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(format!("dowling(n,2), n=3..7 exact ({})", times.join(", ")))
}

fn criterion_2(set: &[Instance]) -> Outcome {
    let start = Instant::now();
    for inst in set {
        let p = &inst.poset;
        let ctx = |e| err(&inst.name, e);
        let rec = chow_poly(p, ChowMethod::Recursion).map_err(ctx)?;
        let flag = chow_poly(p, ChowMethod::Flag).map_err(ctx)?;
        ensure(rec == flag, || format!("{}: chow {rec} vs {flag}", inst.name))?;
        let sum = aug_chow_poly(p, AugMethod::Sum).map_err(ctx)?;
        let adj = aug_chow_poly(p, AugMethod::Adjoin).map_err(ctx)?;
        let fl = aug_chow_poly(p, AugMethod::Flag).map_err(ctx)?;
        ensure(sum == adj && adj == fl, || format!("{}: augmented {sum} / {adj} / {fl}", inst.name))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances agree ({:.2}s)", set.len(), elapsed.as_secs_f64()))
}

fn criterion_3(set: &[Instance]) -> Outcome {
    let mut both = 0;
    for inst in set {
        let p = &inst.poset;
        let ctx = |e| err(&inst.name, e);
        let dual = p.dual();
        let aug = aug_chow_poly(p, AugMethod::Sum).map_err(ctx)?;
        let aug_dual = aug_chow_poly(&dual, AugMethod::Sum).map_err(ctx)?;
        ensure(aug == aug_dual, || format!("{}: H = {aug}, H of dual = {aug_dual}", inst.name))?;
        if p.height() >= 2 {
            let chow_dual = chow_poly(&dual, ChowMethod::Recursion).map_err(ctx)?;
            let tr = p.truncate(1).map_err(ctx)?;
            let aug_tr = aug_chow_poly(&tr, AugMethod::Sum).map_err(ctx)?;
            ensure(chow_dual == aug_tr, || format!("{}: chow of dual {chow_dual}, H of truncation {aug_tr}", inst.name))?;
            both += 1;
        }
    }
    Ok(format!("{} instances, {both} of rank >= 2 with both identities", set.len()))
}

fn criterion_4(set: &[Instance]) -> Outcome {
    let mut count = 0;
    for (inst, _) in umel_instances(set) {
        let p = &inst.poset;
        let ctx = |e| err(&inst.name, e);
        real_rooted(&chow_poly(p, ChowMethod::Recursion).map_err(ctx)?, &format!("{} chow", inst.name))?;
        real_rooted(&aug_chow_poly(p, AugMethod::Sum).map_err(ctx)?, &format!("{} augmented", inst.name))?;
        real_rooted(&order_complex_polys(p).map_err(ctx)?.h, &format!("{} h", inst.name))?;
        count += 1;
    }
    let mut selections = 0;
    for (name, lp) in [("dowling(3,2)", dowling(3, 2).unwrap()), ("projective(3,2)", projective(3, 2).unwrap())] {
        let p = &lp.poset;
        let proper = RankSet::from_ranks(&(1..p.height()).collect::<Vec<_>>());
        for s in proper.subsets() {
            let what = format!("{name} at {s:?}");
            let ctx = |e| err(&what, e);
            let ps = p.rank_select(&s.ranks()).map_err(ctx)?;
            let chow = chow_poly(&ps, ChowMethod::Recursion).map_err(ctx)?;
            let aug = aug_chow_poly(&ps, AugMethod::Sum).map_err(ctx)?;
            real_rooted(&chow, &format!("{what} chow"))?;
            real_rooted(&aug, &format!("{what} augmented"))?;
            real_rooted(&order_complex_polys(&ps).map_err(ctx)?.h, &format!("{what} h"))?;
            let (gn, ga) = rank_selected_gamma(p, &lp.labeling, s).map_err(ctx)?;
            ensure(gn == gamma_of(&ps, false).map_err(ctx)?, || format!("{what}: non-augmented gamma {gn}"))?;
            ensure(ga == gamma_of(&ps, true).map_err(ctx)?, || format!("{what}: augmented gamma {ga}"))?;
            real_rooted(&gn, &format!("{what} gamma"))?;
            real_rooted(&ga, &format!("{what} augmented gamma"))?;
            ensure(certify_interlacing(&gn, &ga).map_err(ctx)?, || format!("{what}: {gn} does not interlace {ga}"))?;
            selections += 1;
        }
    }
    Ok(format!("{count} UMEL instances, {selections} rank selections"))
}

fn criterion_5(set: &[Instance]) -> Outcome {
    let (mut count, mut atomic) = (0, 0);
    for (inst, l) in umel_instances(set) {
        let report = interlacing_battery(&inst.poset, l).map_err(|e| err(&inst.name, e))?;
        if let Some(c) = report.failures().next() {
            return Err(format!("{}: {} ({})", inst.name, c.name, c.detail));
        }
        count += 1;
        atomic += report.atomic_case as usize;
    }
    Ok(format!("{count} UMEL instances, atomic-case check active on {atomic}"))
}

fn criterion_6(set: &[Instance]) -> Outcome {
    let (mut count, mut pairs) = (0, 0);
    for (inst, l) in umel_instances(set) {
        let p = &inst.poset;
        if p.height() == 0 {
            continue;
        }
        let ctx = |e| err(&inst.name, e);
        let ge = gamma_refined(p, l, RefineMethod::Enumerate).map_err(ctx)?;
        let gr = gamma_refined(p, l, RefineMethod::Recurse).map_err(ctx)?;
        ensure(ge == gr, || format!("{}: gamma refinements differ: {ge:?} vs {gr:?}", inst.name))?;
        let he = h_refined(p, l, RefineMethod::Enumerate).map_err(ctx)?;
        let hr = h_refined(p, l, RefineMethod::Recurse).map_err(ctx)?;
        ensure(he == hr, || format!("{}: h refinements differ", inst.name))?;
        let fails = ge.interlacing_failures().map_err(ctx)?;
        ensure(fails.is_empty(), || format!("{}: {}", inst.name, fails.join("; ")))?;
        for h in &he {
            let fails = h.interlacing_failures().map_err(ctx)?;
            ensure(fails.is_empty(), || format!("{}: {}", inst.name, fails.join("; ")))?;
            pairs += h.h.len() * h.h.len().saturating_sub(1) / 2;
        }
        let l = ge.all.len();
        pairs += 3 * l * l.saturating_sub(1) / 2 + l * (l + 1) + l * l;
        count += 1;
    }
    Ok(format!("{count} UMEL instances, {pairs} interlacing pairs certified"))
}

fn diamond(swapped: bool) -> (GradedPoset, EdgeLabeling) {
    let names = ["0", "A", "B", "D", "E", "F", "1"].map(String::from).to_vec();
    let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)];
    let p = GradedPoset::new(names, &covers).unwrap();
    let (be, bf) = if swapped { (2, 1) } else { (1, 2) };
    let labels = [(0, 1, 1), (0, 2, 2), (1, 3, 1), (1, 4, 2), (2, 4, be), (2, 5, bf), (3, 6, 1), (4, 6, 1), (5, 6, 1)];
    let l = attach_labeling(&p, &labels).unwrap();
    (p, l)
}

fn criterion_7() -> Outcome {
    let (p, l) = diamond(false);
    let st = rank_stats(&p, &l).map_err(|e| err("diamond", e))?;
    for k in 0..2 {
        ensure(st.omega[k] == [1, 1] && st.des[k] == [0, 1], || {
            format!("diamond rank {k}: omega {:?}, des {:?}", st.omega[k], st.des[k])
        })?;
    }

    let d = dowling(2, 2).unwrap();
    let ls = local_stats(&d.poset, &d.labeling, d.poset.bottom()).map_err(|e| err("dowling(2,2)", e))?;
    let mut des = vec![usize::MAX; ls.omega.len()];
    for &(_, ind, de) in &ls.covers {
        ensure(des[ind - 1] == usize::MAX || des[ind - 1] == de, || "dowling(2,2): des not uniform".into())?;
        des[ind - 1] = de;
    }
    ensure(ls.omega == [1, 3] && des == [0, 1], || format!("dowling(2,2): omega {:?}, des {des:?}", ls.omega))?;

    let mut checked = 0;
    for n in 2..=8 {
        for k in 2..=n {
            let u = uniform(k, n).unwrap();
            let st = rank_stats(&u.poset, &u.labeling).map_err(|e| err(&format!("uniform({k},{n})"), e))?;
            for r in 0..=k - 2 {
                let width = n - r;
                ensure(st.omega[r] == vec![1; width], || format!("uniform({k},{n}) rank {r}: omega {:?}", st.omega[r]))?;
                if r + 3 <= k {
                    let want: Vec<usize> = (0..width).collect();
                    ensure(st.des[r] == want, || format!("uniform({k},{n}) rank {r}: des {:?}", st.des[r]))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("diamond, dowling(2,2) and {checked} uniform ranks match"))
}

fn criterion_8() -> Outcome {
    let cfg = PointConfig::new(2, 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
    let np = flats_from_points(&cfg).unwrap().poset;
    let (a, b) = np.rank_uniformity_witness().ok_or("near-pencil passed rank uniformity")?;
    ensure(np.rank(a) == 1 && np.rank(b) == 1, || "near-pencil witness is not two atoms".into())?;

    let u = uniform(3, 5).unwrap();
    match umel_from_supersolvable(&u.poset) {
        Err(Error::NotSupersolvable) => {}
        Err(e) => return Err(format!("uniform(3,5): unexpected {e}")),
        Ok(_) => return Err("uniform(3,5) reported supersolvable".into()),
    }

    let (p, l) = diamond(true);
    ensure(verify_el(&p, &l).is_err(), || "perturbed diamond passed EL".into())?;

    let f = IntPoly::from_i64(&[1, 1, 1]);
    let cert = certify_real_rooted_nonpositive(&f).map_err(|e| err("x²+x+1", e))?;
    ensure(!cert.real_rooted, || "x²+x+1 certified real-rooted".into())?;

    let pi4 = partition(4).unwrap().poset;
    ensure(!tn_check(&pi4).map_err(|e| err("partition(4)", e))?, || "partition(4) passed tn_check".into())?;
    Ok(format!(
        "near-pencil witness ({}, {}), uniform(3,5), perturbed diamond, x²+x+1, partition(4) all rejected",
        np.name(a),
        np.name(b)
    ))
}

/// Palindromic product of `(x + a)(a x + 1)` pairs, times `x + 1` when `odd`.
fn palindromic(rng: &mut ChaCha8Rng, pairs: usize, odd: bool, min_root: i64) -> (IntPoly, usize) {
    let mut f = IntPoly::one();
    for _ in 0..pairs {
        let a = rng.gen_range(min_root..=6);
        f = &f * &IntPoly::from_i64(&[a, 1]);
        f = &f * &IntPoly::from_i64(&[1, a]);
    }
    if odd {
        f = &f * &IntPoly::from_i64(&[1, 1]);
    }
    (f, 2 * pairs + odd as usize)
}

fn obreschkoff(f: &IntPoly, g: &IntPoly, rng: &mut ChaCha8Rng, what: &str) -> Result<(), String> {
    for _ in 0..100 {
        let a = BigInt::from(rng.gen_range(1..=10));
        let b = BigInt::from(rng.gen_range(1..=10));
        let h = &f.scale(&a) + &g.scale(&b);
        let cert = certify_real_rooted_nonpositive(&h).map_err(|e| err(what, e))?;
        ensure(cert.real_rooted, || format!("{what}: {a}·f + {b}·g = {h} is not real-rooted"))?;
    }
    Ok(())
}

fn criterion_9(set: &[Instance]) -> Outcome {
    let mut flag_checks = 0;
    let mut descent_checks = 0;
    for inst in set {
        let p = &inst.poset;
        let ctx = |e| err(&inst.name, e);
        let fv = flag_vector(p).map_err(ctx)?;
        if p.height() <= 5 {
            for s in fv.subsets() {
                ensure(&flag_beta(p, s).map_err(ctx)? == fv.beta(s), || format!("{}: beta at {s:?}", inst.name))?;
                flag_checks += 1;
            }
        }
        if let Some(l) = &inst.labeling {
            if p.len() <= 5000 && verify_el(p, l).is_ok() {
                let dist = descent_set_distribution(p, l);
                for s in fv.subsets() {
                    let got = dist.get(&s).cloned().unwrap_or_default();
                    ensure(&got == fv.beta(s), || format!("{}: {got} chains with descent set {s:?}", inst.name))?;
                }
                descent_checks += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut certified = 0;
    for (inst, _) in umel_instances(set).filter(|(i, _)| i.poset.height() >= 2) {
        let ctx = |e| err(&inst.name, e);
        let gn = gamma_of(&inst.poset, false).map_err(ctx)?;
        let ga = gamma_of(&inst.poset, true).map_err(ctx)?;
        if certify_interlacing(&gn, &ga).map_err(ctx)? {
            obreschkoff(&gn, &ga, &mut rng, &inst.name)?;
            certified += 1;
        }
        let hn = chow_poly(&inst.poset, ChowMethod::Recursion).map_err(ctx)?;
        let ha = aug_chow_poly(&inst.poset, AugMethod::Sum).map_err(ctx)?;
        if certify_interlacing(&hn, &ha).map_err(ctx)? {
            obreschkoff(&hn, &ha, &mut rng, &inst.name)?;
            certified += 1;
        }
    }

    let mut agree_true = 0;
    for case in 0..200 {
        let pairs = rng.gen_range(0..=4);
        let odd = rng.gen_bool(0.5);
        let (f, d) = palindromic(&mut rng, pairs, odd, 0);
        let g = gamma_extract(&f, d).map_err(|e| err(&format!("round trip {case}"), e))?;
        ensure(gamma_expand(&g, d).ok() == Some(f.clone()), || format!("round trip {case}: {f}"))?;
        let fr = certify_real_rooted_nonpositive(&f).map_err(|e| err("f", e))?.holds();
        let gr = certify_real_rooted_nonpositive(&g).map_err(|e| err("gamma", e))?.holds();
        ensure(fr == gr, || format!("real-rootedness of {f} is {fr} but of its gamma {g} is {gr}"))?;

        let (f, d) = palindromic(&mut rng, pairs, odd, 1);
        let g = if rng.gen_bool(0.5) {
            &f * &IntPoly::from_i64(&[1, 1])
        } else if odd {
            palindromic(&mut rng, pairs + 1, false, 1).0
        } else {
            palindromic(&mut rng, pairs, true, 1).0
        };
        let ctx = |e| err(&format!("interlacing case {case}: {f} vs {g}"), e);
        let direct = certify_interlacing(&f, &g).map_err(ctx)?;
        let gf = gamma_extract(&f, d).map_err(ctx)?;
        let gg = gamma_extract(&g, d + 1).map_err(ctx)?;
        // a degree gap of two or more rules out interlacing by definition
        let via_gamma = match certify_interlacing(&gf, &gg) {
            Err(Error::DegreeGap(..)) => false,
            other => other.map_err(ctx)?,
        };
        ensure(direct == via_gamma, || format!("case {case}: {f} ⪯ {g} is {direct}, {gf} ⪯ {gg} is {via_gamma}"))?;
        agree_true += direct as usize;
    }
    Ok(format!(
        "{flag_checks} beta values, {descent_checks} EL descent distributions, {certified} pairs x 100 combinations, \
         200 gamma round trips, 200 gamma interlacing cases ({agree_true} interlacing)"
    ))
}

fn main() {
    let set = family_set();
    let umel = set.iter().filter(|i| i.umel).count();
    let expected_umel: Vec<&str> = set
        .iter()
        .filter(|i| i.labeling.is_some() && !i.umel)
        .map(|i| i.name.as_str())
        .collect();
    println!("family set: {} instances, {umel} UMEL", set.len());
    if !expected_umel.is_empty() {
        println!("labelled but not UMEL: {}", expected_umel.join(", "));
    }
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("type-B golden values", Box::new(criterion_1)),
        ("method cross-validation", Box::new(|| criterion_2(&set))),
        ("duality identities", Box::new(|| criterion_3(&set))),
        ("real-rootedness", Box::new(|| criterion_4(&set))),
        ("interlacing battery", Box::new(|| criterion_5(&set))),
        ("refinement recursions", Box::new(|| criterion_6(&set))),
        ("micro-examples", Box::new(criterion_7)),
        ("negative controls", Box::new(criterion_8)),
        ("property suites", Box::new(|| criterion_9(&set))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed += 1;
            }
        }
    }
    if !expected_umel.is_empty() {
        println!("FAIL family labelings: not UMEL");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
