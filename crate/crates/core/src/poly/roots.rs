//! Exact real-root counting and isolation via Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// An isolating interval for one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootInterval {
    /// The root is this rational number.
    Exact(BigRational),
    /// The root lies in the open interval; neither endpoint is a root.
    Open(BigRational, BigRational),
}

impl RootInterval {
    pub fn lower(&self) -> &BigRational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open(a, _) => a,
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open(_, b) => b,
        }
    }

    /// Midpoint approximation as `f64`.
    pub fn approx(&self) -> f64 {
        let mid = (self.lower() + self.upper()) / BigRational::from_integer(2.into());
        ratio_to_f64(&mid)
    }
}

/// A distinct real root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub interval: RootInterval,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct RootCertificate {
    pub real_rooted: bool,
    pub nonpositive: bool,
    pub degree: usize,
    /// Sturm sequence of the square-free part.
    pub sturm: Vec<IntPoly>,
    pub distinct_real_roots: usize,
    /// Real roots in increasing order.
    pub roots: Vec<RealRoot>,
}

impl RootCertificate {
    pub fn holds(&self) -> bool {
        self.real_rooted && self.nonpositive
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Divides by the absolute content, keeping the sign.
fn positive_normalize(p: IntPoly) -> IntPoly {
    if p.is_zero() {
        return p;
    }
    let g = p.content().abs();
    IntPoly::new(p.coeffs().iter().map(|c| c / &g).collect())
}

/// Sturm sequence `p, p', -rem(p_{i-1}, p_i), ...` with content normalisation.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![positive_normalize(p.clone())];
    if p.deg0() == 0 {
        return seq;
    }
    seq.push(positive_normalize(p.derivative()));
    loop {
        let k = seq.len();
        let r = seq[k - 2].pseudo_rem(&seq[k - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(positive_normalize(-&r));
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn changes_at(seq: &[IntPoly], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| p.sign_at(x)))
}

fn lead_sign(p: &IntPoly) -> i8 {
    if p.leading().is_some_and(Signed::is_negative) {
        -1
    } else {
        1
    }
}

fn changes_at_pos_inf(seq: &[IntPoly]) -> usize {
    sign_changes(seq.iter().map(lead_sign))
}

fn changes_at_neg_inf(seq: &[IntPoly]) -> usize {
    sign_changes(seq.iter().map(|p| {
        let s = lead_sign(p);
        if p.deg0() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Distinct real roots of a square-free `p` (via its Sturm sequence).
fn count_all(seq: &[IntPoly]) -> usize {
    changes_at_neg_inf(seq) - changes_at_pos_inf(seq)
}

/// Distinct real roots of a square-free `p` in `(a, b]`.
fn count_in(seq: &[IntPoly], a: &BigRational, b: &BigRational) -> usize {
    changes_at(seq, a).saturating_sub(changes_at(seq, b))
}

/// `1 + max |a_i| / |a_n|`; every root has absolute value below it.
fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().unwrap().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    rat(1) + BigRational::new(max, lead)
}

/// Isolating intervals for the distinct real roots of a square-free `p`.
fn isolate_square_free(p: &IntPoly) -> Vec<RootInterval> {
    if p.deg0() == 0 {
        return vec![];
    }
    let seq = sturm_sequence(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let two = rat(2);
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_in(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(settle(p, &seq, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|x, y| x.lower().cmp(y.lower()));
    out
}

/// Shrinks `(lo, hi]` holding one root until it is exact or has non-root endpoints.
fn settle(p: &IntPoly, seq: &[IntPoly], mut lo: BigRational, mut hi: BigRational) -> RootInterval {
    let two = rat(2);
    loop {
        if p.sign_at(&hi) == 0 {
            return RootInterval::Exact(hi);
        }
        if p.sign_at(&lo) != 0 {
            return RootInterval::Open(lo, hi);
        }
        let mid = (&lo + &hi) / &two;
        if count_in(seq, &mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Bisects an open isolating interval of a square-free `p` until its width is below `eps`.
pub fn refine(p: &IntPoly, iv: &RootInterval, eps: &BigRational) -> RootInterval {
    let (mut lo, mut hi) = match iv {
        RootInterval::Exact(_) => return iv.clone(),
        RootInterval::Open(a, b) => (a.clone(), b.clone()),
    };
    let two = rat(2);
    let slo = p.sign_at(&lo);
    while &(&hi - &lo) >= eps {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return RootInterval::Exact(mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval::Open(lo, hi)
}

/// Yun's square-free decomposition: primitive `q_k` with `f = c * prod q_k^k`.
/// Entry `k-1` holds `q_k`; constant factors are returned as `1`.
pub fn square_free_decomposition(f: &IntPoly) -> Vec<IntPoly> {
    if f.deg0() == 0 {
        return vec![];
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = fp.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    while b.deg0() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a).expect("gcd divides b");
        let nc = d.exact_div(&a).expect("gcd divides d");
        d = &nc - &nb.derivative();
        b = nb;
        out.push(a.primitive());
    }
    out
}

fn square_free_part(f: &IntPoly) -> IntPoly {
    let g = f.gcd(&f.derivative());
    f.exact_div(&g).expect("gcd divides f").primitive()
}

/// Whether the square-free `q` vanishes at the root isolated by `iv`.
fn vanishes_in(q: &IntPoly, iv: &RootInterval) -> bool {
    match iv {
        RootInterval::Exact(r) => q.sign_at(r) == 0,
        RootInterval::Open(a, b) => q.sign_at(a) * q.sign_at(b) < 0,
    }
}

/// Distinct real roots of the product of `polys`, increasing, with the
/// multiplicity of each root in each input. Shared roots are identified
/// algebraically, never by interval overlap.
pub(crate) fn joint_roots(polys: &[&IntPoly]) -> Vec<(RootInterval, Vec<usize>)> {
    let nonzero: Vec<&IntPoly> = polys.iter().copied().filter(|p| !p.is_zero()).collect();
    let mut prod = IntPoly::one();
    for p in &nonzero {
        prod = &prod * p;
    }
    let r = square_free_part(&prod);
    let roots = isolate_square_free(&r);
    let decomps: Vec<Vec<IntPoly>> = polys.iter().map(|p| square_free_decomposition(p)).collect();
    roots
        .into_iter()
        .map(|iv| {
            let mults = decomps
                .iter()
                .map(|qs| {
                    qs.iter()
                        .enumerate()
                        .filter(|(_, q)| q.deg0() > 0 && vanishes_in(q, &iv))
                        .map(|(k, _)| k + 1)
                        .sum()
                })
                .collect();
            (iv, mults)
        })
        .collect()
}

/// Distinct real roots of `f` in increasing order with multiplicities.
pub fn real_roots(f: &IntPoly) -> Vec<RealRoot> {
    joint_roots(&[f])
        .into_iter()
        .map(|(interval, m)| RealRoot {
            interval,
            multiplicity: m[0],
        })
        .collect()
}

/// Isolating intervals of the distinct real roots of `f`.
pub fn isolate_real_roots(f: &IntPoly) -> Vec<RootInterval> {
    isolate_square_free(&square_free_part(f))
}

/// Certifies that every root of `f` is real and non-positive.
pub fn certify_real_rooted_nonpositive(f: &IntPoly) -> Result<RootCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = f.deg0();
    let sf = square_free_part(f);
    let sturm = sturm_sequence(&sf);
    let distinct = if sf.deg0() == 0 { 0 } else { count_all(&sturm) };
    let real_rooted = square_free_decomposition(f)
        .iter()
        .all(|q| q.deg0() == 0 || count_all(&sturm_sequence(q)) == q.deg0());
    let positive = if sf.deg0() == 0 {
        0
    } else {
        changes_at(&sturm, &BigRational::zero()) - changes_at_pos_inf(&sturm)
    };
    Ok(RootCertificate {
        real_rooted,
        nonpositive: positive == 0,
        degree,
        sturm,
        distinct_real_roots: distinct,
        roots: real_roots(f),
    })
}
