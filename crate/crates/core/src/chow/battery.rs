//! Interlacing relations among gamma vectors of a UMEL poset, its atoms'
//! upper intervals, and the duality identities.

use crate::error::{Error, Result};
use crate::labeling::{is_umel, EdgeLabeling};
use crate::poly::{certify_interlacing, gamma_extract, IntPoly};
use crate::poset::GradedPoset;

use super::{aug_chow_poly, chow_poly, AugMethod, ChowMethod, ChowTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryReport {
    pub checks: Vec<BatteryCheck>,
    /// Whether `des_0(ℓ) = ℓ'`, which enables the non-augmented atom check.
    pub atomic_case: bool,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BatteryCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn gamma(f: &IntPoly, d: usize, check: &str) -> Result<IntPoly> {
    gamma_extract(f, d).map_err(|e| Error::InCheck {
        check: check.into(),
        source: Box::new(e),
    })
}

fn interlace(name: String, f: &IntPoly, g: &IntPoly, out: &mut Vec<BatteryCheck>) -> Result<()> {
    let passed = certify_interlacing(f, g).map_err(|e| Error::InCheck {
        check: name.clone(),
        source: Box::new(e),
    })?;
    out.push(BatteryCheck {
        detail: format!("{} ⪯ {}", f.display_in("y"), g.display_in("y")),
        name,
        passed,
    });
    Ok(())
}

fn equal(name: &str, f: &IntPoly, g: &IntPoly, out: &mut Vec<BatteryCheck>) {
    out.push(BatteryCheck {
        name: name.into(),
        passed: f == g,
        detail: format!("{f} vs {g}"),
    });
}

/// `H_{[s,1̂]}` from the table of upper Chow polynomials.
fn upper_augmented(p: &GradedPoset, table: &ChowTable, s: usize) -> IntPoly {
    let base = p.rank(s);
    p.upset(s)
        .into_iter()
        .fold(IntPoly::zero(), |acc, t| &acc + &table.upper(t).shift(p.rank(t) - base))
}

/// Runs the interlacing battery on a UMEL-labelled poset:
/// `γ(H̄_P) ⪯ γ(H_P)`; for each atom `a`, `γ(H_{[a,1̂]}) ⪯ γ(H̄_P)` and
/// `γ(H_{[a,1̂]}) ⪯ γ(H_P)`, plus `γ(H̄_{[a,1̂]}) ⪯ γ(H̄_P)` when
/// `des_0(ℓ) = ℓ'`; and `H̄_{P*} = H_{Tr P}`, `H_{P*} = H_P`.
pub fn interlacing_battery(p: &GradedPoset, l: &EdgeLabeling) -> Result<BatteryReport> {
    let report = is_umel(p, l);
    let stats = match (&report.failure, report.stats) {
        (None, Some(s)) => s,
        (f, _) => return Err(Error::NotUMEL(f.clone().unwrap_or_default())),
    };
    let n = p.height();
    let table = ChowTable::new(p)?;
    let chow = table.chow();
    let aug = table.augmented()?;
    let g_chow = gamma(&chow, n.saturating_sub(1), "gamma of the Chow polynomial")?;
    let g_aug = gamma(&aug, n, "gamma of the augmented Chow polynomial")?;
    let mut checks = Vec::new();
    interlace("chow ⪯ augmented".into(), &g_chow, &g_aug, &mut checks)?;

    let atomic_case = n >= 2 && {
        let ell = stats.ell[0];
        stats.des[0][ell - 1] == stats.ell[1]
    };
    if n >= 1 {
        for &a in p.level(1) {
            let name = p.name(a);
            let g_up_aug = gamma(&upper_augmented(p, &table, a), n - 1, name)?;
            interlace(format!("atom {name}: augmented upper ⪯ chow"), &g_up_aug, &g_chow, &mut checks)?;
            interlace(format!("atom {name}: augmented upper ⪯ augmented"), &g_up_aug, &g_aug, &mut checks)?;
            if atomic_case {
                let g_up = gamma(&table.upper(a), n - 2, name)?;
                interlace(format!("atom {name}: upper chow ⪯ chow"), &g_up, &g_chow, &mut checks)?;
            }
        }
    }

    let dual = p.dual();
    if n >= 2 {
        let lhs = chow_poly(&dual, ChowMethod::Recursion)?;
        let rhs = aug_chow_poly(&p.truncate(1)?, AugMethod::Sum)?;
        equal("duality: chow of dual = augmented of truncation", &lhs, &rhs, &mut checks);
    }
    let lhs = aug_chow_poly(&dual, AugMethod::Sum)?;
    equal("duality: augmented of dual = augmented", &lhs, &aug, &mut checks);
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(BatteryReport { checks, atomic_case })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{dowling, uniform};

    #[test]
    fn small_batteries_pass() {
        for f in [uniform(2, 3).unwrap(), dowling(3, 2).unwrap(), uniform(1, 2).unwrap()] {
            let r = interlacing_battery(&f.poset, &f.labeling).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        let d = dowling(3, 2).unwrap();
        assert!(interlacing_battery(&d.poset, &d.labeling).unwrap().atomic_case);
    }
}
