//! `umel compute ...`

use serde_json::{json, Value};
use umel_core::chow::{aug_chow_poly, chow_poly, gamma_of, gamma_refined, AugMethod, ChowMethod, RefineMethod};
use umel_core::flag::{count_max_chains, max_chains, order_complex_polys};
use umel_core::incidence::{characteristic_poly, reduced_char_poly};
use umel_core::io::{bigint_to_json, coeffs_to_json};
use umel_core::labeling::chain_descent_set;
use umel_core::IntPoly;

use crate::input::{Failure, Loaded, Outcome};
use crate::report::RunReport;

fn poly(f: &IntPoly) -> Value {
    coeffs_to_json(f)
}

fn bad_method(what: &str, m: &str, allowed: &str) -> Failure {
    Failure::Input(format!("{what} has no method {m:?} (expected one of {allowed})"))
}

/// Records each route's result and whether all of them agree.
fn agree(r: &mut RunReport, name: &str, results: &[(&str, IntPoly)]) {
    let first = &results[0].1;
    let ok = results.iter().all(|(_, f)| f == first);
    let witness = (!ok).then(|| {
        Value::Object(results.iter().map(|(m, f)| (m.to_string(), poly(f))).collect())
    });
    r.check(name, ok, witness);
}

pub fn chow(r: &mut RunReport, x: &Loaded, method: Option<&str>) -> Outcome<()> {
    let p = &x.poset;
    let routes: Vec<(&str, ChowMethod)> = match method.unwrap_or("both") {
        "recursion" => vec![("recursion", ChowMethod::Recursion)],
        "flag" => vec![("flag", ChowMethod::Flag)],
        "both" => vec![("recursion", ChowMethod::Recursion), ("flag", ChowMethod::Flag)],
        m => return Err(bad_method("chow", m, "recursion, flag, both")),
    };
    let mut results = Vec::new();
    for (name, m) in routes {
        let f = r.timed(name, |_| chow_poly(p, m))?;
        results.push((name, f));
    }
    r.output("chow", poly(&results[0].1));
    r.output("degree", p.height().saturating_sub(1));
    if results.len() > 1 {
        agree(r, "chow methods agree", &results);
    }
    Ok(())
}

pub fn aug_chow(r: &mut RunReport, x: &Loaded, method: Option<&str>) -> Outcome<()> {
    let p = &x.poset;
    let all = [("sum", AugMethod::Sum), ("adjoin", AugMethod::Adjoin), ("flag", AugMethod::Flag)];
    let routes: Vec<(&str, AugMethod)> = match method.unwrap_or("all") {
        "all" => all.to_vec(),
        m => match all.iter().find(|(n, _)| *n == m) {
            Some(&route) => vec![route],
            None => return Err(bad_method("aug-chow", m, "sum, adjoin, flag, all")),
        },
    };
    let mut results = Vec::new();
    for (name, m) in routes {
        let f = r.timed(name, |_| aug_chow_poly(p, m))?;
        results.push((name, f));
    }
    r.output("aug_chow", poly(&results[0].1));
    r.output("degree", p.height());
    if results.len() > 1 {
        agree(r, "aug-chow methods agree", &results);
    }
    Ok(())
}

pub fn gamma(r: &mut RunReport, x: &Loaded, method: Option<&str>) -> Outcome<()> {
    let p = &x.poset;
    let chow = r.timed("recursion", |_| gamma_of(p, false))?;
    let aug = r.timed("recursion", |_| gamma_of(p, true))?;
    r.output("gamma_chow", poly(&chow));
    r.output("gamma_aug_chow", poly(&aug));
    match method.unwrap_or("recursion") {
        "recursion" => {}
        "refine" | "both" => {
            if p.height() == 0 {
                return Err(Failure::Input("refined gamma polynomials need rank >= 1".into()));
            }
            let l = x.labeling()?;
            let g = r.timed("refine", |_| gamma_refined(p, l, RefineMethod::Recurse))?;
            agree(r, "gamma chow routes agree", &[("recursion", chow), ("refine", g.sum_ascent())]);
            agree(r, "gamma aug-chow routes agree", &[("recursion", aug), ("refine", g.sum_all())]);
            r.output(
                "gamma_refined",
                json!({
                    "ascent": g.ascent.iter().map(poly).collect::<Vec<_>>(),
                    "descent": g.descent.iter().map(poly).collect::<Vec<_>>(),
                    "all": g.all.iter().map(poly).collect::<Vec<_>>(),
                }),
            );
        }
        m => return Err(bad_method("gamma", m, "recursion, refine, both")),
    }
    Ok(())
}

/// h-polynomial of the order complex, from the flag vector or from the
/// descent sets of explicitly listed maximal chains.
pub fn h(r: &mut RunReport, x: &Loaded, method: Option<&str>, max_chains_limit: u64) -> Outcome<()> {
    let p = &x.poset;
    let method = method.unwrap_or("flag");
    let flag = match method {
        "flag" | "both" => Some(r.timed("flag", |_| order_complex_polys(p))?.h),
        "enumerate" => None,
        m => return Err(bad_method("h", m, "flag, enumerate, both")),
    };
    let listed = if method == "flag" {
        None
    } else {
        let l = x.labeling()?;
        let iv = p.interval(p.bottom(), p.top())?;
        let chains = r.timed("enumerate", |_| max_chains(&iv, max_chains_limit))?;
        let mut coeffs = vec![0u64; p.height().max(1)];
        for c in &chains {
            coeffs[chain_descent_set(p, l, c)?.len()] += 1;
        }
        Some(IntPoly::new(coeffs.into_iter().map(Into::into).collect()))
    };
    match (flag, listed) {
        (Some(f), Some(e)) => {
            r.output("h", poly(&f));
            agree(r, "h methods agree", &[("flag", f), ("enumerate", e)]);
        }
        (Some(f), None) | (None, Some(f)) => r.output("h", poly(&f)),
        (None, None) => unreachable!(),
    }
    Ok(())
}

pub fn chain(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    let oc = order_complex_polys(p)?;
    let iv = p.interval(p.bottom(), p.top())?;
    r.output("chain_f", poly(&oc.f));
    r.output("maximal_chains", bigint_to_json(&count_max_chains(&iv)));
    Ok(())
}

pub fn char_poly(r: &mut RunReport, x: &Loaded) -> Outcome<()> {
    let p = &x.poset;
    let iv = p.interval(p.bottom(), p.top())?;
    let chi = characteristic_poly(&iv);
    r.output("characteristic", poly(&chi));
    r.output("mobius", bigint_to_json(&chi.coeff(0)));
    if p.height() >= 1 {
        r.output("reduced_characteristic", poly(&reduced_char_poly(&iv)?));
    }
    Ok(())
}
