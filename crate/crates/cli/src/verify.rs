//! `umel verify quick|full`: golden values plus cross-checks over a family set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use umel_core::chow::{
    aug_chow_poly, chow_poly, gamma_of, gamma_refined, h_refined, interlacing_battery, AugMethod, ChowMethod,
    RefineMethod,
};
use umel_core::families::{boolean, dowling, partition, projective, random_graded, uniform, LabeledPoset};
use umel_core::flag::{flag_vector, order_complex_polys};
use umel_core::io::{coeffs_to_json, poly_from_json};
use umel_core::labeling::{descent_set_distribution, is_umel, EdgeLabeling};
use umel_core::poly::{certify_interlacing, certify_real_rooted_nonpositive};
use umel_core::{GradedPoset, IntPoly};

use crate::input::{Failure, Outcome};
use crate::report::RunReport;

pub const DEFAULT_SEED: u64 = 2024;

const GOLDEN: [(usize, &[i64]); 5] = [
    (3, &[1, 14, 1]),
    (4, &[1, 99, 99, 1]),
    (5, &[1, 622, 3162, 622, 1]),
    (6, &[1, 4051, 65812, 65812, 4051, 1]),
    (7, &[1, 28590, 1205199, 3724100, 1205199, 28590, 1]),
];

/// `{"3": [1, 14, 1], ...}`: Chow polynomials of `dowling(n, 2)` keyed by `n`,
/// replacing the built-in values for those `n`.
pub fn parse_golden(bytes: &[u8]) -> Outcome<BTreeMap<usize, IntPoly>> {
    let v: BTreeMap<String, Value> =
        serde_json::from_slice(bytes).map_err(|e| Failure::Input(format!("golden file: {e}")))?;
    let mut out = BTreeMap::new();
    for (k, coeffs) in v {
        let n: usize = k
            .parse()
            .map_err(|_| Failure::Input(format!("golden file: key {k:?} is not a rank")))?;
        out.insert(n, poly_from_json(&coeffs)?.0);
    }
    Ok(out)
}

struct Instance {
    name: String,
    poset: GradedPoset,
    labeling: Option<EdgeLabeling>,
    umel: bool,
}

fn labeled(name: String, lp: LabeledPoset) -> Instance {
    let umel = is_umel(&lp.poset, &lp.labeling).is_umel();
    Instance { name, poset: lp.poset, labeling: Some(lp.labeling), umel }
}

fn family_set(full: bool, seed: u64) -> Result<Vec<Instance>, umel_core::Error> {
    let (bmax, umax, pmax, dmax, randoms) = if full { (6, 8, 6, 4, 50) } else { (5, 6, 5, 3, 20) };
    let mut out = Vec::new();
    for n in 1..=bmax {
        out.push(labeled(format!("boolean({n})"), boolean(n)?));
    }
    for n in 1..=umax {
        for k in 1..=n {
            out.push(labeled(format!("uniform({k},{n})"), uniform(k, n)?));
        }
    }
    for n in 2..=pmax {
        out.push(labeled(format!("partition({n})"), partition(n)?));
    }
    for n in 1..=dmax {
        for m in 1..=3 {
            out.push(labeled(format!("dowling({n},{m})"), dowling(n, m)?));
        }
    }
    let proj: &[(usize, u64)] = if full {
        &[(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)]
    } else {
        &[(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]
    };
    for &(n, q) in proj {
        out.push(labeled(format!("projective({n},{q})"), projective(n, q)?));
    }
    for i in 0..randoms {
        let s = seed.wrapping_add(i);
        let rank = 1 + (i % 5) as usize;
        out.push(Instance {
            name: format!("random(seed {s}, rank {rank})"),
            poset: random_graded(s, rank, 4),
            labeling: None,
            umel: false,
        });
    }
    Ok(out)
}

type Step = Result<(), Value>;

fn fail(msg: impl Into<String>) -> Value {
    json!({ "reason": msg.into() })
}

fn lift<T>(r: umel_core::Result<T>) -> Result<T, Value> {
    r.map_err(|e| fail(e.to_string()))
}

fn record(r: &mut RunReport, name: String, step: Step) {
    match step {
        Ok(()) => r.check(name, true, None),
        Err(w) => r.check(name, false, Some(w)),
    }
}

fn diff(want: &IntPoly, got: &IntPoly) -> Value {
    let len = want.coeffs().len().max(got.coeffs().len());
    let differences: Vec<Value> = (0..len)
        .filter(|&i| want.coeff(i) != got.coeff(i))
        .map(|i| json!({ "index": i, "expected": want.coeff(i).to_string(), "computed": got.coeff(i).to_string() }))
        .collect();
    json!({ "expected": coeffs_to_json(want), "computed": coeffs_to_json(got), "differences": differences })
}

fn golden(r: &mut RunReport, full: bool, overrides: &BTreeMap<usize, IntPoly>) {
    let mut table: BTreeMap<usize, IntPoly> = GOLDEN.iter().map(|&(n, c)| (n, IntPoly::from_i64(c))).collect();
    table.extend(overrides.iter().map(|(&n, f)| (n, f.clone())));
    for (n, want) in table {
        if n == 7 && !full {
            continue;
        }
        let step = r.timed(&format!("golden dowling({n},2)"), |_| -> Step {
            let d = lift(dowling(n, 2))?;
            let got = lift(chow_poly(&d.poset, ChowMethod::Recursion))?;
            if got == want {
                Ok(())
            } else {
                Err(diff(&want, &got))
            }
        });
        record(r, format!("golden dowling({n},2)"), step);
    }
}

fn real_rooted(f: &IntPoly, what: &str) -> Step {
    if lift(certify_real_rooted_nonpositive(f))?.holds() {
        Ok(())
    } else {
        Err(json!({ "reason": format!("{what} is not real-rooted with nonpositive roots"), "poly": coeffs_to_json(f) }))
    }
}

fn agreement(p: &GradedPoset) -> Step {
    let rec = lift(chow_poly(p, ChowMethod::Recursion))?;
    let flag = lift(chow_poly(p, ChowMethod::Flag))?;
    if rec != flag {
        return Err(json!({ "recursion": coeffs_to_json(&rec), "flag": coeffs_to_json(&flag) }));
    }
    let sum = lift(aug_chow_poly(p, AugMethod::Sum))?;
    let adj = lift(aug_chow_poly(p, AugMethod::Adjoin))?;
    let fl = lift(aug_chow_poly(p, AugMethod::Flag))?;
    if sum != adj || adj != fl {
        return Err(json!({ "sum": coeffs_to_json(&sum), "adjoin": coeffs_to_json(&adj), "flag": coeffs_to_json(&fl) }));
    }
    Ok(())
}

fn duality(p: &GradedPoset) -> Step {
    let dual = p.dual();
    let aug = lift(aug_chow_poly(p, AugMethod::Sum))?;
    let aug_dual = lift(aug_chow_poly(&dual, AugMethod::Sum))?;
    if aug != aug_dual {
        return Err(json!({ "aug_chow": coeffs_to_json(&aug), "aug_chow_of_dual": coeffs_to_json(&aug_dual) }));
    }
    if p.height() >= 2 {
        let chow_dual = lift(chow_poly(&dual, ChowMethod::Recursion))?;
        let aug_tr = lift(aug_chow_poly(&lift(p.truncate(1))?, AugMethod::Sum))?;
        if chow_dual != aug_tr {
            return Err(json!({ "chow_of_dual": coeffs_to_json(&chow_dual), "aug_chow_of_truncation": coeffs_to_json(&aug_tr) }));
        }
    }
    Ok(())
}

fn descents(p: &GradedPoset, l: &EdgeLabeling) -> Step {
    let fv = lift(flag_vector(p))?;
    let dist = descent_set_distribution(p, l);
    for s in fv.subsets() {
        let got = dist.get(&s).cloned().unwrap_or_default();
        if &got != fv.beta(s) {
            return Err(json!({ "ranks": s.ranks(), "chains": got.to_string(), "beta": fv.beta(s).to_string() }));
        }
    }
    Ok(())
}

fn umel_suite(p: &GradedPoset, l: &EdgeLabeling) -> Vec<(&'static str, Step)> {
    let mut out = Vec::new();
    out.push((
        "real-rooted",
        (|| {
            real_rooted(&lift(chow_poly(p, ChowMethod::Recursion))?, "chow")?;
            real_rooted(&lift(aug_chow_poly(p, AugMethod::Sum))?, "aug-chow")?;
            real_rooted(&lift(order_complex_polys(p))?.h, "h")
        })(),
    ));
    out.push((
        "battery",
        (|| {
            let rep = lift(interlacing_battery(p, l))?;
            let first = rep.failures().next().map(|c| json!({ "check": c.name, "detail": c.detail }));
            first.map_or(Ok(()), Err)
        })(),
    ));
    if p.height() >= 1 {
        out.push((
            "refinement",
            (|| {
                let ge = lift(gamma_refined(p, l, RefineMethod::Enumerate))?;
                let gr = lift(gamma_refined(p, l, RefineMethod::Recurse))?;
                if ge != gr {
                    return Err(fail("gamma refinements differ between enumeration and recursion"));
                }
                let he = lift(h_refined(p, l, RefineMethod::Enumerate))?;
                let hr = lift(h_refined(p, l, RefineMethod::Recurse))?;
                if he != hr {
                    return Err(fail("h refinements differ between enumeration and recursion"));
                }
                let mut fails = lift(ge.interlacing_failures())?;
                for h in &he {
                    fails.extend(lift(h.interlacing_failures())?);
                }
                if fails.is_empty() {
                    Ok(())
                } else {
                    Err(json!({ "failures": fails }))
                }
            })(),
        ));
    }
    out
}

/// Positive combinations of interlacing Chow and gamma pairs stay real-rooted.
fn obreschkoff(set: &[Instance], seed: u64) -> Result<usize, Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0;
    for inst in set.iter().filter(|i| i.umel && i.poset.height() >= 2) {
        let p = &inst.poset;
        let candidates = [
            (lift(gamma_of(p, false))?, lift(gamma_of(p, true))?),
            (lift(chow_poly(p, ChowMethod::Recursion))?, lift(aug_chow_poly(p, AugMethod::Sum))?),
        ];
        for (f, g) in candidates {
            if !lift(certify_interlacing(&f, &g))? {
                continue;
            }
            pairs += 1;
            for _ in 0..100 {
                let a = BigInt::from(rng.gen_range(1..=10));
                let b = BigInt::from(rng.gen_range(1..=10));
                let h = &f.scale(&a) + &g.scale(&b);
                if !lift(certify_real_rooted_nonpositive(&h))?.real_rooted {
                    return Err(json!({
                        "instance": inst.name,
                        "a": a.to_string(),
                        "b": b.to_string(),
                        "combination": coeffs_to_json(&h),
                    }));
                }
            }
        }
    }
    Ok(pairs)
}

pub fn run(r: &mut RunReport, full: bool, seed: u64, overrides: &BTreeMap<usize, IntPoly>) -> Outcome<()> {
    r.output("level", if full { "full" } else { "quick" });
    r.output("seed", seed);
    golden(r, full, overrides);
    let set = family_set(full, seed)?;
    r.output("instances", set.len());
    r.output("umel_instances", set.iter().filter(|i| i.umel).count());
    for inst in &set {
        let (p, name) = (&inst.poset, &inst.name);
        let step = r.timed("agreement", |_| agreement(p));
        record(r, format!("agreement {name}"), step);
        let step = r.timed("duality", |_| duality(p));
        record(r, format!("duality {name}"), step);
        let Some(l) = &inst.labeling else { continue };
        if !inst.umel {
            r.check(format!("umel {name}"), false, Some(fail("shipped labeling is not UMEL")));
            continue;
        }
        let step = r.timed("descents", |_| descents(p, l));
        record(r, format!("descent sets {name}"), step);
        for (what, step) in r.timed("umel suite", |_| umel_suite(p, l)) {
            record(r, format!("{what} {name}"), step);
        }
    }
    let step = r.timed("obreschkoff", |r| {
        obreschkoff(&set, seed).map(|pairs| r.output("obreschkoff_pairs", pairs))
    });
    record(r, "obreschkoff sampling".into(), step);
    Ok(())
}
