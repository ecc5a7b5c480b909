//! Cabling and resolution arithmetic for (rational) fibered links.
//!
//! A knot component is described by its order `r` and Seifert slope `s` in a
//! fixed framing; a cable by the homology class `p λ + q μ` on the boundary of
//! a tubular neighborhood. The new fiber is assembled from `|p|/g` copies of
//! the old one, `|rq - sp|/g` meridian disks and `|p (rq - sp)|/g` half-twisted
//! bands, where `g = gcd(p, r)`. [`assembly`] and [`assembly_oracle`] carry
//! out that bookkeeping piece by piece; the closed forms below must agree with
//! it.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, Int, Rational};
use crate::invariants::{poincare_hopf_check, SingularityCounts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CableError {
    #[error("order must be at least 1, got {0}")]
    NonPositiveOrder(String),
    #[error("cable needs p != 0, +1, -1 (got p = {0})")]
    DegenerateP(String),
    #[error("cable slope {q}/{p} equals the Seifert slope")]
    SeifertSlope { p: String, q: String },
    #[error("self-linking of a cable is only known for positive cables")]
    NotPositive,
    #[error("resolution coefficient equals the Seifert slope {0}")]
    ResolutionOnSeifertSlope(String),
    #[error("slopes and coefficients have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("a link resolution needs at least one component")]
    EmptyLink,
    #[error("singularity counts do not satisfy Poincaré–Hopf for chi = {0}")]
    PoincareHopf(String),
    #[error("piece count {0} does not fit a singularity tally")]
    CountOverflow(String),
}

fn check_order<I: Int>(r: &I) -> Result<(), CableError> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(CableError::NonPositiveOrder(r.to_string()))
    }
}

/// The class `p λ + q μ`. `(p, q)` and `(-p, -q)` describe the same unoriented
/// curve and are treated alike wherever a slope is compared.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CableParams<I: Int> {
    pub p: I,
    pub q: I,
}

impl<I: Int> CableParams<I> {
    pub fn new(p: I, q: I) -> Result<Self, CableError> {
        if p.is_zero() || p.abs().is_one() {
            return Err(CableError::DegenerateP(p.to_string()));
        }
        Ok(CableParams { p, q })
    }

    /// Same curve with `p > 0`.
    pub fn normalized(&self) -> Self {
        if self.p.is_negative() {
            CableParams { p: -self.p.clone(), q: -self.q.clone() }
        } else {
            self.clone()
        }
    }

    /// `rq - sp`, the algebraic intersection with the Seifert cable.
    pub fn twist(&self, r: &I, s: &I) -> I {
        r.clone() * self.q.clone() - s.clone() * self.p.clone()
    }

    /// Checks the cable against an `(r, s)` Seifert cable.
    pub fn check(&self, r: &I, s: &I) -> Result<(), CableError> {
        check_order(r)?;
        if self.twist(r, s).is_zero() {
            return Err(CableError::SeifertSlope { p: self.p.to_string(), q: self.q.to_string() });
        }
        Ok(())
    }
}

/// Piece counts of the assembled fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AssemblyCount<I: Int> {
    pub surface_copies: I,
    pub meridian_disks: I,
    pub bands: I,
}

impl<I: Int> AssemblyCount<I> {
    /// Each copy contributes `chi_old`, each disk `+1`, each band `-1`.
    pub fn chi(&self, chi_old: &I) -> I {
        self.surface_copies.clone() * chi_old.clone() + self.meridian_disks.clone() - self.bands.clone()
    }
}

pub fn assembly<I: Int>(r: &I, s: &I, cable: &CableParams<I>) -> Result<AssemblyCount<I>, CableError> {
    cable.check(r, s)?;
    let g = gcd(&cable.p, r);
    let twist = cable.twist(r, s).abs();
    let p = cable.p.abs();
    Ok(AssemblyCount {
        surface_copies: p.clone() / g.clone(),
        meridian_disks: twist.clone() / g.clone(),
        bands: p * twist / g,
    })
}

fn exact_div<I: Int>(n: I, d: &I, what: &str) -> I {
    let (quot, rem) = n.div_rem(d);
    assert!(rem.is_zero(), "{what}: {d} does not divide the numerator");
    quot
}

/// `(|p| chi + |ps - qr| (1 - |p|)) / gcd(p, r)`.
pub fn cable_chi<I: Int>(chi_old: &I, r: &I, s: &I, cable: &CableParams<I>) -> Result<I, CableError> {
    cable.check(r, s)?;
    let g = gcd(&cable.p, r);
    let p = cable.p.abs();
    let numerator = p.clone() * chi_old.clone() + cable.twist(r, s).abs() * (I::one() - p);
    Ok(exact_div(numerator, &g, "cable Euler characteristic"))
}

/// `r / gcd(p, r)`.
pub fn cable_order<I: Int>(r: &I, p: &I) -> Result<I, CableError> {
    check_order(r)?;
    if p.is_zero() {
        return Err(CableError::DegenerateP(p.to_string()));
    }
    Ok(r.clone() / gcd(p, r))
}

/// `gcd(r/gcd(p,r), |p (rq - sp)| / (gcd(p,r) gcd(p,q)))`.
pub fn cable_multiplicity<I: Int>(r: &I, s: &I, cable: &CableParams<I>) -> Result<I, CableError> {
    cable.check(r, s)?;
    let g = gcd(&cable.p, r);
    let d = gcd(&cable.p, &cable.q);
    let inner = exact_div(
        (cable.p.clone() * cable.twist(r, s)).abs(),
        &(g.clone() * d),
        "cable multiplicity",
    );
    Ok(gcd(&(r.clone() / g), &inner))
}

/// Slope `q/p` strictly above the Seifert slope `s/r`.
pub fn is_positive_cable<I: Int>(r: &I, s: &I, cable: &CableParams<I>) -> Result<bool, CableError> {
    check_order(r)?;
    let c = cable.normalized();
    // q/p > s/r with p, r > 0
    Ok(c.q * r.clone() > s.clone() * c.p)
}

/// Self-linking of a positive transverse cable with respect to the assembled
/// surface: `(|p| r sl + |rq - sp| (|p| - 1)) / gcd(r, p)`.
///
/// This is the singularity count `(e_- - h_-) - (e_+ - h_+)` of the new fiber,
/// i.e. `r' sl_Q` for the cable's order `r' = r / gcd(r, p)`; for an integral
/// resolution (`p = r`) it is the honest self-linking number.
pub fn cable_sl<I: Int>(
    sl: &Rational<I>,
    r: &I,
    s: &I,
    cable: &CableParams<I>,
) -> Result<Rational<I>, CableError> {
    cable.check(r, s)?;
    if !is_positive_cable(r, s, cable)? {
        return Err(CableError::NotPositive);
    }
    let g = gcd(r, &cable.p);
    let p = cable.p.abs();
    let lifted = sl.scale(&(p.clone() * r.clone()));
    let bands = Rational::from_integer(cable.twist(r, s).abs() * (p - I::one()));
    Ok((lifted + bands).checked_div(&Rational::from_integer(g)).expect("gcd with r > 0 is positive"))
}

/// The fiber of a positive cable, singularity by singularity: every old
/// singular point appears once per surface copy, every meridian disk adds a
/// positive elliptic point and every band a positive hyperbolic point.
pub fn assembly_oracle<I: Int>(
    chi_old: &I,
    counts_old: &SingularityCounts,
    r: &I,
    s: &I,
    cable: &CableParams<I>,
) -> Result<(I, SingularityCounts), CableError> {
    let pieces = assembly(r, s, cable)?;
    if !is_positive_cable(r, s, cable)? {
        return Err(CableError::NotPositive);
    }
    if !poincare_hopf_check(chi_old, counts_old) {
        return Err(CableError::PoincareHopf(chi_old.to_string()));
    }
    let to_u64 = |n: &I| n.to_u64().ok_or_else(|| CableError::CountOverflow(n.to_string()));
    let copies = to_u64(&pieces.surface_copies)?;
    let disks = to_u64(&pieces.meridian_disks)?;
    let bands = to_u64(&pieces.bands)?;
    let counts = SingularityCounts {
        e_plus: copies * counts_old.e_plus + disks,
        e_minus: copies * counts_old.e_minus,
        h_plus: copies * counts_old.h_plus + bands,
        h_minus: copies * counts_old.h_minus,
    };
    Ok((pieces.chi(chi_old), counts))
}

/// The `(r, l)`-resolution of one binding component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Resolution<I: Int> {
    /// `gcd(r, l)` new components, each of order and multiplicity 1.
    pub components: I,
    pub order: I,
    pub multiplicity: I,
    /// `|s - l| (1 - r)`, built from a single copy of the old fiber.
    pub chi_delta: I,
    /// Slope `l/r` above `s/r`.
    pub positive: bool,
}

pub fn integral_resolution<I: Int>(r: &I, s: &I, l: &I) -> Result<Resolution<I>, CableError> {
    check_order(r)?;
    if l == s {
        return Err(CableError::ResolutionOnSeifertSlope(s.to_string()));
    }
    Ok(Resolution {
        components: gcd(r, l),
        order: I::one(),
        multiplicity: I::one(),
        chi_delta: (s.clone() - l.clone()).abs() * (I::one() - r.clone()),
        positive: l > s,
    })
}

fn resolution_twist<I: Int>(r: &I, slopes: &[I], coeffs: &[I]) -> Result<I, CableError> {
    check_order(r)?;
    if slopes.len() != coeffs.len() {
        return Err(CableError::LengthMismatch(slopes.len(), coeffs.len()));
    }
    if slopes.is_empty() {
        return Err(CableError::EmptyLink);
    }
    slopes.iter().zip(coeffs).try_fold(I::zero(), |acc, (s, q)| {
        if s == q {
            Err(CableError::ResolutionOnSeifertSlope(s.to_string()))
        } else {
            Ok(acc + (s.clone() - q.clone()).abs())
        }
    })
}

/// `chi + (1 - r) Σ |s_i - q_i|` for a link with a uniform surface of order `r`.
pub fn link_resolution_chi<I: Int>(chi: &I, r: &I, slopes: &[I], coeffs: &[I]) -> Result<I, CableError> {
    let total = resolution_twist(r, slopes, coeffs)?;
    Ok(chi.clone() + (I::one() - r.clone()) * total)
}

/// `r sl + (r - 1) Σ |s_i - q_i|` for a positive integral resolution.
pub fn link_resolution_sl<I: Int>(
    sl: &Rational<I>,
    r: &I,
    slopes: &[I],
    coeffs: &[I],
) -> Result<Rational<I>, CableError> {
    let total = resolution_twist(r, slopes, coeffs)?;
    if slopes.iter().zip(coeffs).any(|(s, q)| q <= s) {
        return Err(CableError::NotPositive);
    }
    Ok(sl.scale(r) + Rational::from_integer((r.clone() - I::one()) * total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::invariants::sl_from_counts;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Q = Rational<i64>;

    fn cable(p: i64, q: i64) -> CableParams<i64> {
        CableParams::new(p, q).unwrap()
    }

    #[test]
    fn params_validation() {
        for p in [0, 1, -1] {
            assert!(matches!(CableParams::new(p, 3i64), Err(CableError::DegenerateP(_))));
        }
        // (4, 2) against (2, 1): proportional, same slope
        assert!(matches!(cable(4, 2).check(&2, &1), Err(CableError::SeifertSlope { .. })));
        assert!(matches!(cable(-4, -2).check(&2, &1), Err(CableError::SeifertSlope { .. })));
        assert!(cable(2, 2).check(&4, &2).is_ok());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(cable_chi(&1i64, &2, &1, &cable(2, 3)).unwrap(), -1);
        assert_eq!(cable_chi(&-2i64, &3, &1, &cable(2, 1)).unwrap(), -5);
        // (p, q) = (r, l) reduces to chi + |s - l| (1 - r)
        for (chi, r, s, l) in [(1i64, 3, 1, 5), (-4, 6, 2, -1), (0, 5, 7, 6)] {
            assert_eq!(
                cable_chi(&chi, &r, &s, &cable(r, l)).unwrap(),
                chi + (s - l).abs() * (1 - r)
            );
        }
        assert!(cable_chi(&1i64, &2, &1, &cable(2, 1)).is_err());
    }

    #[test]
    fn assembly_pieces_examples() {
        let a = assembly(&3i64, &1, &cable(2, 1)).unwrap();
        assert_eq!(a, AssemblyCount { surface_copies: 2, meridian_disks: 1, bands: 2 });
        assert_eq!(a.chi(&-2), -5);
    }

    #[test]
    fn order_examples() {
        assert_eq!(cable_order(&2i64, &2).unwrap(), 1);
        assert_eq!(cable_order(&6i64, &4).unwrap(), 3);
        assert_eq!(cable_order(&5i64, &10).unwrap(), 1);
        assert!(cable_order(&5i64, &0).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(cable_multiplicity(&2i64, &1, &cable(2, 3)).unwrap(), 1);
        assert_eq!(cable_multiplicity(&1i64, &0, &cable(2, 3)).unwrap(), 1);
        assert_eq!(cable_multiplicity(&4i64, &2, &cable(2, 2)).unwrap(), 2);
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive_cable(&2i64, &1, &cable(2, 3)).unwrap());
        assert!(!is_positive_cable(&2i64, &1, &cable(2, 1)).unwrap());
        assert!(!is_positive_cable(&3i64, &5, &cable(3, 4)).unwrap());
        // orientation does not matter
        assert!(is_positive_cable(&2i64, &1, &cable(-2, -3)).unwrap());
        assert!(!is_positive_cable(&2i64, &1, &cable(-2, 3)).unwrap());
    }

    #[test]
    fn sl_examples() {
        assert_eq!(cable_sl(&ratio(-3, 2), &2i64, &1, &cable(2, 3)).unwrap(), ratio(-1, 1));
        assert_eq!(cable_sl(&ratio(-1, 1), &1i64, &0, &cable(2, 1)).unwrap(), ratio(-1, 1));
        for s0 in [-3i64, 0, 4] {
            assert_eq!(cable_sl(&ratio(-7, 5), &5i64, &s0, &cable(5, s0 + 1)).unwrap(), ratio(-3, 1));
        }
        assert_eq!(cable_sl(&ratio(-1, 1), &1i64, &0, &cable(2, -1)), Err(CableError::NotPositive));
    }

    #[test]
    fn oracle_examples() {
        let disk = SingularityCounts::new(1, 0, 0, 0);
        let (chi, counts) = assembly_oracle(&1i64, &disk, &2, &1, &cable(2, 3)).unwrap();
        assert_eq!(chi, -1);
        assert_eq!(counts, SingularityCounts::new(3, 0, 4, 0));
        // the disk foliation has sl = -1/2 at order 2, and the cable formula agrees
        let sl_old: Q = sl_from_counts(&2, &disk).unwrap();
        assert_eq!(sl_old, ratio(-1, 2));
        assert_eq!(counts.signed_excess::<i64>().unwrap(), 1);
        assert_eq!(cable_sl(&sl_old, &2, &1, &cable(2, 3)).unwrap(), ratio(1, 1));

        // a foliation realizing sl = -3/2 on a disk of order 2
        let tight = SingularityCounts::new(2, 0, 0, 1);
        assert_eq!(sl_from_counts::<i64>(&2, &tight).unwrap(), ratio(-3, 2));
        let (chi, counts) = assembly_oracle(&1i64, &tight, &2, &1, &cable(2, 3)).unwrap();
        assert_eq!(chi, -1);
        assert_eq!(counts.signed_excess::<i64>().unwrap(), -1);

        let (chi, counts) = assembly_oracle(&1i64, &disk, &1, &0, &cable(2, 1)).unwrap();
        assert_eq!(chi, 1);
        assert_eq!(counts, SingularityCounts::new(3, 0, 2, 0));
        assert_eq!(sl_from_counts::<i64>(&1, &counts).unwrap(), ratio(-1, 1));

        assert!(matches!(
            assembly_oracle(&0i64, &disk, &2, &1, &cable(2, 3)),
            Err(CableError::PoincareHopf(_))
        ));
        assert_eq!(assembly_oracle(&1i64, &disk, &2, &1, &cable(2, -3)), Err(CableError::NotPositive));
    }

    #[test]
    fn resolution_examples() {
        let res = integral_resolution(&2i64, &1, &3).unwrap();
        assert_eq!((res.components, res.chi_delta, res.positive), (1, -2, true));
        assert_eq!((res.order, res.multiplicity), (1, 1));
        assert_eq!(integral_resolution(&4i64, &1, &2).unwrap().components, 2);
        assert!(!integral_resolution(&4i64, &1, &-2).unwrap().positive);
        assert!(matches!(integral_resolution(&3i64, &2, &2), Err(CableError::ResolutionOnSeifertSlope(_))));
    }

    #[test]
    fn link_resolution_examples() {
        assert_eq!(link_resolution_chi(&1i64, &2, &[1], &[3]).unwrap(), -1);
        assert_eq!(link_resolution_chi(&0i64, &3, &[1, 2], &[2, 4]).unwrap(), -6);
        assert_eq!(link_resolution_chi(&5i64, &1, &[1, 2], &[7, -4]).unwrap(), 5);
        assert_eq!(link_resolution_sl(&ratio(-3, 2), &2i64, &[1], &[3]).unwrap(), ratio(-1, 1));
        assert_eq!(link_resolution_sl(&ratio(-1, 1), &1i64, &[0], &[4]).unwrap(), ratio(-1, 1));
        assert_eq!(link_resolution_sl(&ratio(-7, 5), &5i64, &[2], &[3]).unwrap(), ratio(-3, 1));
    }

    #[test]
    fn link_resolution_errors() {
        assert_eq!(link_resolution_chi(&1i64, &2, &[1, 2], &[3]), Err(CableError::LengthMismatch(2, 1)));
        assert!(matches!(link_resolution_chi(&1i64, &2, &[1, 2], &[3, 2]), Err(CableError::ResolutionOnSeifertSlope(_))));
        assert_eq!(link_resolution_chi::<i64>(&1, &2, &[], &[]), Err(CableError::EmptyLink));
        assert_eq!(link_resolution_sl(&ratio(-1, 2), &2i64, &[1, 2], &[3, 1]), Err(CableError::NotPositive));
    }

    #[test]
    fn big_backend_matches_i64() {
        let b = |n: i64| BigInt::from(n);
        let c = CableParams::new(b(-6), b(7)).unwrap();
        assert_eq!(cable_chi(&b(-3), &b(9), &b(-4), &c).unwrap(), b(cable_chi(&-3, &9, &-4, &cable(-6, 7)).unwrap()));
        assert_eq!(
            cable_multiplicity(&b(9), &b(-4), &c).unwrap(),
            b(cable_multiplicity(&9, &-4, &cable(-6, 7)).unwrap())
        );
    }

    fn grid_point() -> impl Strategy<Value = (i64, i64, i64, i64)> {
        (1i64..=20, -20i64..=20, 2i64..=20, any::<bool>(), -20i64..=20)
            .prop_map(|(r, s, p, neg, q)| (r, s, if neg { -p } else { p }, q))
            .prop_filter("off the Seifert slope", |(r, s, p, q)| r * q != s * p)
    }

    proptest! {
        #[test]
        fn chi_numerator_is_divisible((r, s, p, q) in grid_point(), chi in -10i64..=2) {
            let g = num_integer::Integer::gcd(&p, &r);
            let numerator = p.abs() * chi + (p * s - q * r).abs() * (1 - p.abs());
            prop_assert_eq!(numerator % g, 0);
            prop_assert_eq!(cable_chi(&chi, &r, &s, &cable(p, q)).unwrap(), assembly(&r, &s, &cable(p, q)).unwrap().chi(&chi));
        }

        #[test]
        fn sharpness_survives_positive_cabling((r, s, p, q) in grid_point(), chi in -10i64..=2) {
            let c = cable(p, q);
            prop_assume!(is_positive_cable(&r, &s, &c).unwrap());
            let sharp = Q::new(-chi, r).unwrap();
            let new_chi = cable_chi(&chi, &r, &s, &c).unwrap();
            prop_assert_eq!(cable_sl(&sharp, &r, &s, &c).unwrap(), Q::from_integer(-new_chi));
        }
    }
}
