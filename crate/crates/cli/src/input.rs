//! Reading inputs, polynomial arguments and family specifications.

use std::io::Read;

use num_bigint::BigInt;
use umel_core::families::{
    boolean, dowling_with_limit, flats_from_points, partition, projective_with_limit, random_graded, uniform,
    LabeledPoset, PointConfig,
};
use umel_core::io::{poly_from_json, PosetDoc};
use umel_core::labeling::EdgeLabeling;
use umel_core::{Error, GradedPoset, IntPoly};

/// Why a run could not produce a report.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Limit(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Limit(m) => write!(f, "resource limit: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn read_source(path: &str) -> Outcome<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))
    }
}

pub fn write_sink(path: &str, text: &str) -> Outcome<()> {
    if path == "-" {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("writing {path}: {e}")))
    }
}

pub struct Loaded {
    pub poset: GradedPoset,
    pub labeling: Option<EdgeLabeling>,
}

impl Loaded {
    pub fn labeling(&self) -> Outcome<&EdgeLabeling> {
        self.labeling
            .as_ref()
            .ok_or_else(|| Failure::Input("this command needs a labelled poset (\"labels\" missing)".into()))
    }
}

pub fn parse_poset(bytes: &[u8], max_elements: usize) -> Outcome<Loaded> {
    let doc: PosetDoc =
        serde_json::from_slice(bytes).map_err(|e| Failure::Input(format!("poset document: {e}")))?;
    if doc.elements.len() > max_elements {
        return Err(Failure::Limit(format!(
            "{} elements exceed --max-elements {max_elements}",
            doc.elements.len()
        )));
    }
    let (poset, labeling) = doc.build()?;
    Ok(Loaded { poset, labeling })
}

/// `1,4,1`, a JSON coefficient array, or a `{"var", "coeffs"}` object.
pub fn parse_poly(arg: &str) -> Outcome<IntPoly> {
    let t = arg.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(t).map_err(|e| Failure::Input(format!("polynomial {arg:?}: {e}")))?;
        return Ok(poly_from_json(&v)?.0);
    }
    let coeffs = t
        .split(',')
        .map(|c| c.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("polynomial {arg:?} is not a comma-separated list of integers")))?;
    Ok(IntPoly::new(coeffs))
}

#[derive(Clone, Debug, Default)]
pub struct FamilyArgs {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub q: Option<u64>,
    pub width: Option<usize>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Outcome<T> {
    v.ok_or_else(|| Failure::Input(format!("family {family} needs --{flag}")))
}

fn guard(size: Option<u128>, what: &str, max: usize) -> Outcome<()> {
    match size {
        Some(s) if s <= max as u128 => Ok(()),
        _ => Err(Failure::Limit(format!("{what} exceeds --max-elements {max}"))),
    }
}

fn bell(n: usize) -> Option<u128> {
    let mut row = vec![1u128];
    for _ in 1..n {
        let mut next = vec![*row.last()?];
        for x in &row {
            next.push(next.last()?.checked_add(*x)?);
        }
        row = next;
    }
    row.last().copied()
}

/// A named family member; random posets come without a labeling.
pub fn build_family(name: &str, a: &FamilyArgs, seed: u64, max: usize) -> Outcome<Loaded> {
    let lp = match name {
        "boolean" => {
            let n = need(a.n, "n", name)?;
            guard(1u128.checked_shl(n as u32), "boolean lattice", max)?;
            boolean(n)?
        }
        "uniform" => {
            let (k, n) = (need(a.k, "k", name)?, need(a.n, "n", name)?);
            let lp = uniform(k, n)?;
            guard(Some(lp.poset.len() as u128), "uniform matroid", max)?;
            lp
        }
        "partition" => {
            let n = need(a.n, "n", name)?;
            guard(if n <= 25 { bell(n) } else { None }, "partition lattice", max)?;
            partition(n)?
        }
        "dowling" => dowling_with_limit(need(a.n, "n", name)?, need(a.m, "m", name)?, max)?,
        "projective" => projective_with_limit(need(a.n, "n", name)?, need(a.q, "q", name)?, max)?,
        "affine" => {
            let cfg = PointConfig::affine(need(a.n, "n", name)?, need(a.q, "q", name)?)?;
            flats_from_points(&cfg)?
        }
        "random" => {
            let poset = random_graded(seed, need(a.n, "n", name)?, a.width.unwrap_or(3));
            return Ok(Loaded { poset, labeling: None });
        }
        other => {
            return Err(Failure::Input(format!(
                "unknown family {other:?} (boolean, uniform, partition, dowling, projective, affine, random)"
            )))
        }
    };
    let LabeledPoset { poset, labeling } = lp;
    Ok(Loaded { poset, labeling: Some(labeling) })
}
