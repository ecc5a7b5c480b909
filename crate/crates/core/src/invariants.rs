//! Rational classical invariants of Legendrian and transverse knots.
//!
//! Nothing here knows about an ambient manifold. A knot is represented by the
//! homological footprint of its rational Seifert surface ([`SeifertData`]) and
//! the invariant values themselves; every formula is a function of those.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, int, Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("order must be at least 1, got {0}")]
    NonPositiveOrder(String),
    #[error("{what} = {value} is not an integer")]
    NotIntegral { what: &'static str, value: String },
    #[error("singularity count {0} does not fit the integer backend")]
    CountOverflow(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(format!("expected + or -, got {other:?}")),
        }
    }
}

fn check_order<I: Int>(r: &I) -> Result<(), InvariantError> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(InvariantError::NonPositiveOrder(r.to_string()))
    }
}

/// Order `r`, Seifert slope `s` (relative to a framing fixed once per knot),
/// Euler characteristic and multiplicity `gcd(r, s)` of a rational Seifert
/// surface.
///
/// Changing the framing by `n` sends `s` to `s + n r`; see [`SeifertData::reframe`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData<I: Int> {
    order: I,
    boundary_slope: I,
    euler_char: I,
    multiplicity: I,
}

impl<I: Int> SeifertData<I> {
    pub fn new(order: I, boundary_slope: I, euler_char: I) -> Result<Self, InvariantError> {
        check_order(&order)?;
        // gcd(r, 0) = r: the (r, 0)-curve is r parallel longitudes.
        let multiplicity = gcd(&order, &boundary_slope);
        Ok(SeifertData { order, boundary_slope, euler_char, multiplicity })
    }

    /// A null-homologous knot bounding a surface of Euler characteristic `chi`.
    pub fn integral(euler_char: I) -> Self {
        SeifertData::new(I::one(), I::zero(), euler_char).expect("order 1 is valid")
    }

    pub fn order(&self) -> &I {
        &self.order
    }

    pub fn boundary_slope(&self) -> &I {
        &self.boundary_slope
    }

    pub fn euler_char(&self) -> &I {
        &self.euler_char
    }

    pub fn multiplicity(&self) -> &I {
        &self.multiplicity
    }

    pub fn reframe(&self, n: &I) -> Self {
        let slope = self.boundary_slope.clone() + n.clone() * self.order.clone();
        SeifertData::new(self.order.clone(), slope, self.euler_char.clone())
            .expect("order is unchanged")
    }

    /// Whether `order * value` is an integer.
    pub fn is_rationally_integral(&self, value: &Rational<I>) -> bool {
        value.scale(&self.order).is_integer()
    }
}

/// Tallies of the generic singular points of a characteristic foliation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SingularityCounts {
    pub e_plus: u64,
    pub e_minus: u64,
    pub h_plus: u64,
    pub h_minus: u64,
}

impl SingularityCounts {
    pub fn new(e_plus: u64, e_minus: u64, h_plus: u64, h_minus: u64) -> Self {
        SingularityCounts { e_plus, e_minus, h_plus, h_minus }
    }

    fn lift<I: Int>(n: u64) -> Result<I, InvariantError> {
        I::from_u64(n).ok_or(InvariantError::CountOverflow(n))
    }

    /// `(e_- - h_-) - (e_+ - h_+)`, the self-linking of the r-fold boundary.
    pub fn signed_excess<I: Int>(&self) -> Result<I, InvariantError> {
        let [ep, em, hp, hm] = [self.e_plus, self.e_minus, self.h_plus, self.h_minus]
            .map(Self::lift::<I>);
        Ok((em? - hm?) - (ep? - hp?))
    }

    /// `(e_+ - h_+) + (e_- - h_-)`, the index sum.
    pub fn index_sum<I: Int>(&self) -> Result<I, InvariantError> {
        let [ep, em, hp, hm] = [self.e_plus, self.e_minus, self.h_plus, self.h_minus]
            .map(Self::lift::<I>);
        Ok((ep? - hp?) + (em? - hm?))
    }
}

/// Rational linking of a knot with its push-off along framing `f`, where the
/// Seifert cable is the `(r, s)`-curve: `(r f - s) / r`.
pub fn lk_pushoff<I: Int>(r: &I, s: &I, f: &I) -> Result<Rational<I>, InvariantError> {
    check_order(r)?;
    Ok(Rational::new(r.clone() * f.clone() - s.clone(), r.clone()).expect("r > 0"))
}

/// `sl_Q = ((e_- - h_-) - (e_+ - h_+)) / r`.
pub fn sl_from_counts<I: Int>(r: &I, counts: &SingularityCounts) -> Result<Rational<I>, InvariantError> {
    check_order(r)?;
    Ok(Rational::new(counts.signed_excess()?, r.clone()).expect("r > 0"))
}

/// Poincaré–Hopf for a vector field pointing out along the boundary.
pub fn poincare_hopf_check<I: Int>(chi: &I, counts: &SingularityCounts) -> bool {
    counts.index_sum::<I>().is_ok_and(|sum| &sum == chi)
}

/// `r sl + chi`; nonpositive exactly when the Bennequin bound holds. When both
/// quantities come from the same foliation this is `2 (e_- - h_-)`.
pub fn sl_defect<I: Int>(r: &I, sl: &Rational<I>, chi: &I) -> Result<I, InvariantError> {
    check_order(r)?;
    let scaled = sl.scale(r);
    let scaled = scaled.to_integer().ok_or_else(|| InvariantError::NotIntegral {
        what: "r*sl",
        value: scaled.to_string(),
    })?;
    Ok(scaled + chi.clone())
}

/// `-chi/r - sl`: nonnegative iff `sl <= -chi/r`, and zero exactly on the
/// sharp case `r sl = -chi`.
pub fn bennequin_slack<I: Int>(sl: &Rational<I>, chi: &I, r: &I) -> Result<Rational<I>, InvariantError> {
    check_order(r)?;
    Ok(bennequin_bound(chi, r) - sl.clone())
}

/// `-chi / r`.
pub fn bennequin_bound<I: Int>(chi: &I, r: &I) -> Rational<I> {
    Rational::new(-chi.clone(), r.clone()).expect("order is nonzero")
}

/// `tb + |rot| <= -chi/r`.
pub fn bennequin_legendrian<I: Int>(
    tb: &Rational<I>,
    rot: &Rational<I>,
    chi: &I,
    r: &I,
) -> Result<bool, InvariantError> {
    check_order(r)?;
    Ok(tb + &rot.abs() <= bennequin_bound(chi, r))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LegendrianRecord<I: Int> {
    seifert: SeifertData<I>,
    tb: Rational<I>,
    rot: Rational<I>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TransverseRecord<I: Int> {
    seifert: SeifertData<I>,
    sl: Rational<I>,
}

fn require_integral<I: Int>(
    seifert: &SeifertData<I>,
    what: &'static str,
    value: &Rational<I>,
) -> Result<(), InvariantError> {
    if seifert.is_rationally_integral(value) {
        Ok(())
    } else {
        Err(InvariantError::NotIntegral { what, value: value.scale(seifert.order()).to_string() })
    }
}

impl<I: Int> LegendrianRecord<I> {
    pub fn new(seifert: SeifertData<I>, tb: Rational<I>, rot: Rational<I>) -> Result<Self, InvariantError> {
        require_integral(&seifert, "r*tb", &tb)?;
        require_integral(&seifert, "r*rot", &rot)?;
        Ok(LegendrianRecord { seifert, tb, rot })
    }

    pub fn seifert(&self) -> &SeifertData<I> {
        &self.seifert
    }

    pub fn tb(&self) -> &Rational<I> {
        &self.tb
    }

    pub fn rot(&self) -> &Rational<I> {
        &self.rot
    }

    /// Positive transverse push-off: `sl = tb - rot`.
    pub fn transverse_pushoff(&self) -> TransverseRecord<I> {
        TransverseRecord { seifert: self.seifert.clone(), sl: &self.tb - &self.rot }
    }

    /// `S_±`: `tb - 1`, `rot ± 1`.
    pub fn stabilize(&self, sign: Sign) -> Self {
        let one = Rational::one();
        let rot = match sign {
            Sign::Plus => &self.rot + &one,
            Sign::Minus => &self.rot - &one,
        };
        LegendrianRecord { seifert: self.seifert.clone(), tb: &self.tb - &one, rot }
    }

    /// `tb + |rot| <= -chi/r` for this record's surface.
    pub fn satisfies_bennequin(&self) -> bool {
        bennequin_legendrian(&self.tb, &self.rot, self.seifert.euler_char(), self.seifert.order())
            .expect("order validated at construction")
    }
}

impl<I: Int> TransverseRecord<I> {
    pub fn new(seifert: SeifertData<I>, sl: Rational<I>) -> Result<Self, InvariantError> {
        require_integral(&seifert, "r*sl", &sl)?;
        Ok(TransverseRecord { seifert, sl })
    }

    pub fn seifert(&self) -> &SeifertData<I> {
        &self.seifert
    }

    pub fn sl(&self) -> &Rational<I> {
        &self.sl
    }

    /// Transverse stabilization lowers `sl` by 2.
    pub fn stabilize(&self) -> Self {
        TransverseRecord { seifert: self.seifert.clone(), sl: &self.sl - &Rational::from_integer(int(2)) }
    }

    pub fn bennequin_slack(&self) -> Rational<I> {
        bennequin_slack(&self.sl, self.seifert.euler_char(), self.seifert.order())
            .expect("order validated at construction")
    }
}

pub fn transverse_pushoff<I: Int>(record: &LegendrianRecord<I>) -> TransverseRecord<I> {
    record.transverse_pushoff()
}

pub fn legendrian_stabilize<I: Int>(record: &LegendrianRecord<I>, sign: Sign) -> LegendrianRecord<I> {
    record.stabilize(sign)
}

pub fn transverse_stabilize<I: Int>(record: &TransverseRecord<I>) -> TransverseRecord<I> {
    record.stabilize()
}

/// True when two values differ by an integer, e.g. the `tb` of two
/// Legendrian representatives of one knot type.
pub fn differ_by_integer<I: Int>(a: &Rational<I>, b: &Rational<I>) -> bool {
    (a - b).is_integer()
}
