//! Rational unknots in lens spaces: which oriented cores are distinct, the
//! maximal rational Thurston–Bennequin invariant, and for `L(p, 1)` with `p`
//! odd the full Legendrian mountain range and transverse self-linking
//! spectrum of each tight contact structure.
//!
//! The rational unknot `K1` is the core of the second Heegaard torus; the
//! meridian disk of the other torus is a rational Seifert disk meeting its
//! boundary in a `(p, p')`-curve (product framing on `V1`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{int, Int, Rational};
use crate::invariants::{LegendrianRecord, SeifertData, Sign};
use crate::lens::{LensError, LensSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnknotError {
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error("the L(p,1) classification needs p odd and p >= 3, got p = {0}")]
    OutOfScope(String),
    #[error("{l} is not an admissible Euler class value for p = {p}")]
    NotAnEulerClass { p: String, l: String },
    #[error("rotation spectra for L({p},{q}) are not supported: only L(p,1) with p odd")]
    Unsupported { p: String, q: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Core {
    K0,
    K1,
}

/// An oriented core of a Heegaard torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnknotType {
    pub core: Core,
    pub orientation: Sign,
}

impl UnknotType {
    pub const K0: UnknotType = UnknotType { core: Core::K0, orientation: Sign::Plus };
    pub const MINUS_K0: UnknotType = UnknotType { core: Core::K0, orientation: Sign::Minus };
    pub const K1: UnknotType = UnknotType { core: Core::K1, orientation: Sign::Plus };
    pub const MINUS_K1: UnknotType = UnknotType { core: Core::K1, orientation: Sign::Minus };
}

impl fmt::Display for UnknotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.orientation == Sign::Minus { "-" } else { "" };
        write!(f, "{sign}{:?}", self.core)
    }
}

impl FromStr for UnknotType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K0" => Ok(UnknotType::K0),
            "-K0" => Ok(UnknotType::MINUS_K0),
            "K1" => Ok(UnknotType::K1),
            "-K1" => Ok(UnknotType::MINUS_K1),
            other => Err(format!("expected K0, -K0, K1 or -K1, got {other:?}")),
        }
    }
}

impl Serialize for UnknotType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Oriented rational unknots up to homeomorphism isotopic to the identity.
pub fn classify_unknots<I: Int>(lens: &LensSpace<I>) -> BTreeSet<UnknotType> {
    let (p, q) = (lens.p(), lens.q());
    if *p == int(2) {
        [UnknotType::K1].into()
    } else if q.is_one() || *q == p.clone() - I::one() {
        [UnknotType::K1, UnknotType::MINUS_K1].into()
    } else {
        [UnknotType::K0, UnknotType::MINUS_K0, UnknotType::K1, UnknotType::MINUS_K1].into()
    }
}

/// Seifert data of the rational unknot `K1`: order `p`, slope `p'`, a disk.
pub fn unknot_seifert<I: Int>(lens: &LensSpace<I>) -> SeifertData<I> {
    SeifertData::new(lens.p().clone(), lens.dual().p_dual, I::one()).expect("p >= 2")
}

/// `-p'/p`, the largest `tb_Q` of a Legendrian `K1` (or `-K1`).
pub fn max_tb<I: Int>(lens: &LensSpace<I>) -> Rational<I> {
    Rational::new(-lens.dual().p_dual, lens.p().clone()).expect("p >= 2")
}

fn check_odd<I: Int>(p: &I) -> Result<(), UnknotError> {
    if *p < int(3) || p.is_even() {
        return Err(UnknotError::OutOfScope(p.to_string()));
    }
    Ok(())
}

/// `{p - 2 - 2k : k = 0..=p-2}`, the evaluations `e(ξ)(D)` of the tight
/// structures on `L(p, 1)`, in decreasing order.
pub fn euler_classes<I: Int>(p: &I) -> Result<Vec<I>, UnknotError> {
    check_odd(p)?;
    let top = p.clone() - int(2);
    let mut out = Vec::new();
    let mut l = top.clone();
    while l >= -top.clone() {
        out.push(l.clone());
        l = l - int(2);
    }
    Ok(out)
}

fn check_class<I: Int>(p: &I, l: &I) -> Result<(), UnknotError> {
    check_odd(p)?;
    let top = p.clone() - int(2);
    if l.abs() > top || (l.clone() - top).is_odd() {
        return Err(UnknotError::NotAnEulerClass { p: p.to_string(), l: l.to_string() });
    }
    Ok(())
}

/// A realized `(tb, rot)` pair: `depth` stabilizations from the peak, `split`
/// of them negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MountainPoint<I: Int> {
    pub tb: Rational<I>,
    pub rot: Rational<I>,
    pub depth: u32,
    pub split: u32,
}

/// Peak `(tb, rot)` of `±K1` in the structure with Euler class `l`.
pub fn peak<I: Int>(p: &I, l: &I, orientation: Sign) -> Result<(Rational<I>, Rational<I>), UnknotError> {
    check_class(p, l)?;
    let tb = Rational::new(I::one() - p.clone(), p.clone()).expect("p >= 3");
    let signed_l = match orientation {
        Sign::Plus => l.clone(),
        Sign::Minus => -l.clone(),
    };
    let rot = Rational::new(signed_l, p.clone()).expect("p >= 3");
    Ok((tb, rot))
}

/// Closed form: `tb = -(p-1)/p - k`, `rot = ±l/p + k - 2m` for `0 <= m <= k <= depth`.
pub fn mountain_range<I: Int>(
    p: &I,
    l: &I,
    orientation: Sign,
    depth: u32,
) -> Result<Vec<MountainPoint<I>>, UnknotError> {
    let (tb0, rot0) = peak(p, l, orientation)?;
    let mut points = Vec::new();
    for k in 0..=depth {
        let kk = Rational::from_integer(int::<I>(k.into()));
        for m in 0..=k {
            let shift = Rational::from_integer(int::<I>(i64::from(k) - 2 * i64::from(m)));
            points.push(MountainPoint { tb: &tb0 - &kk, rot: &rot0 + &shift, depth: k, split: m });
        }
    }
    Ok(points)
}

/// The same range generated by stabilizing the peak record `depth` times.
pub fn mountain_by_stabilization<I: Int>(
    p: &I,
    l: &I,
    orientation: Sign,
    depth: u32,
) -> Result<Vec<MountainPoint<I>>, UnknotError> {
    let (tb0, rot0) = peak(p, l, orientation)?;
    let lens = LensSpace::new(p.clone(), I::one())?;
    let top = LegendrianRecord::new(unknot_seifert(&lens), tb0, rot0)
        .expect("peak values have denominator p");
    let mut seen = BTreeSet::new();
    let mut frontier = vec![(top, 0u32)];
    let mut points = Vec::new();
    for k in 0..=depth {
        let mut next = Vec::new();
        for (record, m) in frontier {
            if !seen.insert((record.tb().clone(), record.rot().clone())) {
                continue;
            }
            points.push(MountainPoint { tb: record.tb().clone(), rot: record.rot().clone(), depth: k, split: m });
            if k < depth {
                next.push((record.stabilize(Sign::Plus), m));
                next.push((record.stabilize(Sign::Minus), m + 1));
            }
        }
        frontier = next;
    }
    Ok(points)
}

/// `{tb - rot}` of the peak, stepped down by transverse stabilization:
/// `-(p ± l - 1)/p - 2j` for `0 <= j <= depth`.
pub fn sl_spectrum<I: Int>(
    p: &I,
    l: &I,
    orientation: Sign,
    depth: u32,
) -> Result<Vec<Rational<I>>, UnknotError> {
    let (tb0, rot0) = peak(p, l, orientation)?;
    let top = tb0 - rot0;
    Ok((0..=depth)
        .map(|j| &top - &Rational::from_integer(int::<I>(2 * i64::from(j))))
        .collect())
}

/// Mountain range for a general lens space; only `L(p, 1)` with `p` odd is
/// known here.
pub fn mountain_range_in<I: Int>(
    lens: &LensSpace<I>,
    l: &I,
    orientation: Sign,
    depth: u32,
) -> Result<Vec<MountainPoint<I>>, UnknotError> {
    if !lens.q().is_one() || lens.p().is_even() {
        return Err(UnknotError::Unsupported { p: lens.p().to_string(), q: lens.q().to_string() });
    }
    mountain_range(lens.p(), l, orientation, depth)
}
