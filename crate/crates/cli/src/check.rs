//! `umel check ...`

use serde_json::{json, Value};
use umel_core::chow::{interlacing_battery, tn_check, tn_matrix, tn_verdict, TnVerdict};
use umel_core::io::{bigint_to_json, coeffs_to_json};
use umel_core::labeling::{is_umel, verify_el, RankLabelStats};
use umel_core::poly::{certify_interlacing, certify_real_rooted_nonpositive, RootInterval};
use umel_core::supersolvable::{modular_maximal_chain, Lattice};
use umel_core::{Error, GradedPoset, IntPoly};

use crate::input::{Failure, Loaded, Outcome};
use crate::report::RunReport;

fn names(p: &GradedPoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.name(x).to_string()).collect()
}

pub fn el(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    match verify_el(p, x.labeling()?) {
        Ok(()) => r.check("el", true, None),
        Err(w) => {
            let witness = json!({
                "interval": [p.name(w.lo), p.name(w.hi)],
                "reason": w.reason,
                "chains": w.chains.iter().map(|c| names(p, c)).collect::<Vec<_>>(),
            });
            r.check("el", false, Some(witness));
        }
    }
    Ok(())
}

fn stats_json(s: &RankLabelStats) -> Value {
    json!({ "ell": s.ell, "omega": s.omega, "des": s.des })
}

pub fn umel(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let rep = is_umel(&x.poset, x.labeling()?);
    r.check("el", rep.el, None);
    r.check("rank-uniform labeling", rep.uniform, None);
    r.check("monotone descents", rep.monotone, None);
    let ok = rep.is_umel();
    r.check("umel", ok, rep.failure.as_ref().map(|f| json!({ "reason": f })));
    if let Some(s) = &rep.stats {
        r.output("stats", stats_json(s));
    }
    Ok(())
}

pub fn rank_uniform(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    let witness = p.rank_uniformity_witness().map(|(a, b)| {
        json!({
            "elements": [p.name(a), p.name(b)],
            "profiles": [p.whitney_profile(a).0, p.whitney_profile(b).0],
        })
    });
    r.check("rank-uniform", witness.is_none(), witness);
    Ok(())
}

pub fn supersolvable(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    let lattice = match Lattice::new(p) {
        Ok(l) => l,
        Err(Error::NotALattice(a, b)) => {
            let w = json!({ "reason": "NotALattice", "elements": [p.name(a), p.name(b)] });
            r.check("supersolvable", false, Some(w));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    match modular_maximal_chain(&lattice) {
        Some(chain) => {
            r.output("modular_chain", names(p, &chain.0));
            r.check("supersolvable", true, None);
        }
        None => r.check("supersolvable", false, Some(json!({ "reason": "NotSupersolvable" }))),
    }
    Ok(())
}

pub fn tn(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    // refuses oversized matrices before the minors are enumerated
    tn_check(p)?;
    if let Ok(m) = tn_matrix(p) {
        r.output("lower_whitney_matrix", json!(m));
    }
    match tn_verdict(p) {
        TnVerdict::Tn => r.check("tn", true, None),
        TnVerdict::NegativeMinor { rows, cols, value } => r.check(
            "tn",
            false,
            Some(json!({ "rows": rows, "cols": cols, "minor": bigint_to_json(&value) })),
        ),
        TnVerdict::NotLowerRankUniform(a, b) => r.check(
            "tn",
            false,
            Some(json!({ "reason": "NotLowerRankUniform", "elements": [p.name(a), p.name(b)] })),
        ),
    }
    Ok(())
}

fn interval_json(iv: &RootInterval) -> Value {
    match iv {
        RootInterval::Exact(x) => json!({ "exact": x.to_string() }),
        RootInterval::Open(a, b) => json!({ "open": [a.to_string(), b.to_string()] }),
    }
}

pub fn realroot(r: &mut RunReport, f: &IntPoly) -> Outcome<()> {
    let cert = certify_real_rooted_nonpositive(f)?;
    r.output("poly", coeffs_to_json(f));
    r.output("distinct_real_roots", cert.distinct_real_roots);
    r.output(
        "roots",
        cert.roots
            .iter()
            .map(|x| json!({ "interval": interval_json(&x.interval), "multiplicity": x.multiplicity }))
            .collect::<Vec<_>>(),
    );
    r.check("real-rooted", cert.real_rooted, None);
    r.check("roots nonpositive", cert.nonpositive, None);
    Ok(())
}

/// `f ⪯ g`. Inputs that are not real-rooted or whose degrees are too far
/// apart fail the check instead of aborting the run.
pub fn interlace(r: &mut RunReport, f: &IntPoly, g: &IntPoly) -> Outcome<()> {
    r.output("f", coeffs_to_json(f));
    r.output("g", coeffs_to_json(g));
    match certify_interlacing(f, g) {
        Ok(ok) => r.check("interlace", ok, None),
        Err(e @ (Error::NotRealRooted | Error::DegreeGap(..))) => {
            r.check("interlace", false, Some(json!({ "reason": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn battery(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    let rep = match interlacing_battery(p, x.labeling()?) {
        Ok(rep) => rep,
        Err(e) if e.is_resource_limit() => return Err(Failure::Limit(e.to_string())),
        Err(e) => {
            r.check("battery", false, Some(json!({ "reason": e.to_string() })));
            return Ok(());
        }
    };
    r.output("atomic_case", rep.atomic_case);
    for c in rep.checks {
        let witness = (!c.passed).then(|| json!({ "detail": c.detail }));
        r.check(format!("battery: {}", c.name), c.passed, witness);
    }
    Ok(())
}
