//! Lens spaces `L(p, q)`, the negative continued fraction of `-p/q`, and the
//! dual gluing parameters `(p', q')`.
//!
//! Coefficients follow the `a_i <= -2` convention, so that
//! `-p/q = a_0 - 1/(a_1 - 1/(... - 1/a_k))` holds literally. Bumping the last
//! coefficient by one and evaluating gives `-p'/q'`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, int, mod_inverse, ArithError, Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LensError {
    #[error("L({p},{q}) needs p > q > 0")]
    OutOfRange { p: String, q: String },
    #[error("L({p},{q}) needs gcd(p, q) = 1")]
    NotCoprime { p: String, q: String },
    #[error("empty continued fraction")]
    EmptyExpansion,
    #[error("continued fraction hits a zero denominator")]
    ZeroDenominator,
}

impl From<ArithError> for LensError {
    fn from(_: ArithError) -> Self {
        LensError::ZeroDenominator
    }
}

/// A validated pair with `p > q > 0` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LensSpace<I: Int> {
    p: I,
    q: I,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DualParams<I: Int> {
    pub p_dual: I,
    pub q_dual: I,
}

impl<I: Int> LensSpace<I> {
    pub fn new(p: I, q: I) -> Result<Self, LensError> {
        if !(q.is_positive() && p > q) {
            return Err(LensError::OutOfRange { p: p.to_string(), q: q.to_string() });
        }
        if !gcd(&p, &q).is_one() {
            return Err(LensError::NotCoprime { p: p.to_string(), q: q.to_string() });
        }
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> &I {
        &self.p
    }

    pub fn q(&self) -> &I {
        &self.q
    }

    pub fn ncf(&self) -> Vec<I> {
        expand(self.p.clone(), self.q.clone())
    }

    /// `(p', q')` from the bumped expansion, checked against
    /// `p' q = -1 (mod p)`.
    pub fn dual(&self) -> DualParams<I> {
        let mut coeffs = self.ncf();
        let last = coeffs.last_mut().expect("expansion is never empty");
        *last = last.clone() + I::one();
        // Every partial value stays <= -1 once the tail is <= -1, so this
        // cannot hit a zero denominator.
        let value = ncf_evaluate(&coeffs).expect("bumped expansion evaluates");
        let dual = DualParams { p_dual: -value.numer().clone(), q_dual: value.denom().clone() };

        let q_inv = mod_inverse(self.q.clone(), self.p.clone()).expect("gcd(p, q) = 1");
        let p_dual_mod = (self.p.clone() - q_inv) % self.p.clone();
        assert_eq!(
            dual.p_dual, p_dual_mod,
            "dual parameters of L({},{}) disagree between the continued fraction and p'q = -1 mod p",
            self.p, self.q
        );
        assert!(
            (self.p.clone() * dual.q_dual.clone() - dual.p_dual.clone() * self.q.clone()).is_one(),
            "p q' - p' q != 1 for L({},{})",
            self.p,
            self.q
        );
        dual
    }
}

fn expand<I: Int>(p: I, q: I) -> Vec<I> {
    let (mut n, mut d) = (p, q);
    let mut coeffs = Vec::new();
    loop {
        // a = -ceil(n/d); the remainder d*ceil(n/d) - n lies in [0, d).
        let c = n.div_ceil(&d);
        coeffs.push(-c.clone());
        let rem = d.clone() * c - n;
        if rem.is_zero() {
            return coeffs;
        }
        n = std::mem::replace(&mut d, rem);
    }
}

/// Negative continued fraction of `-p/q` with every coefficient `<= -2`.
pub fn ncf_expand<I: Int>(p: I, q: I) -> Result<Vec<I>, LensError> {
    LensSpace::new(p, q).map(|l| l.ncf())
}

/// Evaluates `a_0 - 1/(a_1 - 1/(... - 1/a_k))` exactly.
pub fn ncf_evaluate<I: Int>(coeffs: &[I]) -> Result<Rational<I>, LensError> {
    let (last, rest) = coeffs.split_last().ok_or(LensError::EmptyExpansion)?;
    let mut value = Rational::from_integer(last.clone());
    for a in rest.iter().rev() {
        value = Rational::from_integer(a.clone()) - value.recip()?;
    }
    Ok(value)
}

pub fn dual_params<I: Int>(lens: &LensSpace<I>) -> DualParams<I> {
    lens.dual()
}

/// `p' q = -1 (mod p)` and `p q' - p' q = 1` together with the size bounds.
pub fn dual_is_consistent<I: Int>(lens: &LensSpace<I>, dual: &DualParams<I>) -> bool {
    let (p, q) = (lens.p.clone(), lens.q.clone());
    let (pd, qd) = (dual.p_dual.clone(), dual.q_dual.clone());
    let det_ok = (p.clone() * qd.clone() - pd.clone() * q.clone()).is_one();
    let bounds_ok = pd.is_positive() && pd < p && qd.is_positive() && qd <= q;
    let congruence_ok = (pd * q + int::<I>(1)) % p == I::zero();
    det_ok && bounds_ok && congruence_ok
}
