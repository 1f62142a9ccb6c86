//! Compact real intervals and interval vectors.
//!
//! Endpoints are plain `f64` with no outward rounding. Every constructor
//! rejects non-finite endpoints and `lo > hi`, so a value of [`Interval`]
//! is always a well-formed element of I(R).
//!
//! Besides Moore's four operations this module provides the
//! generalized-Hukuhara difference ([`Interval::gh_sub`]), the special
//! product ([`Interval::special_mul`]) and the endpoint-wise dominance
//! order ([`Interval::classify`]).

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on `w + w' = 1` accepted by [`Weights::new`].
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval endpoints must be finite, got [{lo}, {hi}]")]
    NonFinite { lo: f64, hi: f64 },
    #[error("interval lower endpoint {lo} exceeds upper endpoint {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("division by an interval containing zero: {0}")]
    DivisionByIntervalContainingZero(Interval),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("interval vector must have at least one component")]
    EmptyVector,
    #[error("invalid weights (w = {w}, w' = {w_prime}): both must lie in [0, 1] and sum to 1")]
    InvalidWeights { w: f64, w_prime: f64 },
    #[error("cannot parse interval from {0:?}")]
    Parse(String),
}

/// A closed bounded interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[p, p]`.
    pub fn point(p: f64) -> Result<Self, IntervalError> {
        Self::new(p, p)
    }

    /// Builds `[min(a, b), max(a, b)]`. Callers guarantee finiteness.
    #[inline]
    pub(crate) fn hull2(a: f64, b: f64) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    #[inline]
    pub(crate) fn hull4(a: f64, b: f64, c: f64, d: f64) -> Self {
        Interval {
            lo: a.min(b).min(c).min(d),
            hi: a.max(b).max(c).max(d),
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Moore addition `[a.lo + b.lo, a.hi + b.hi]`.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    /// Moore subtraction `[a.lo - b.hi, a.hi - b.lo]`.
    pub fn moore_sub(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo - other.hi,
            hi: self.hi - other.lo,
        }
    }

    /// Moore product: hull of the four endpoint products.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Interval) -> Interval {
        Interval::hull4(
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
    }

    /// `λ ⊙ A`, the product with the degenerate interval `[λ, λ]`.
    pub fn scalar_mul(self, lambda: f64) -> Interval {
        if lambda >= 0.0 {
            Interval {
                lo: lambda * self.lo,
                hi: lambda * self.hi,
            }
        } else {
            Interval {
                lo: lambda * self.hi,
                hi: lambda * self.lo,
            }
        }
    }

    /// Moore quotient. Only defined when `0 ∉ other`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Interval) -> Result<Interval, IntervalError> {
        if other.contains(0.0) {
            return Err(IntervalError::DivisionByIntervalContainingZero(other));
        }
        Ok(Interval::hull4(
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ))
    }

    /// Generalized-Hukuhara difference
    /// `[min(a.lo - b.lo, a.hi - b.hi), max(a.lo - b.lo, a.hi - b.hi)]`.
    ///
    /// Unlike [`Interval::moore_sub`], `a.gh_sub(a)` is exactly `[0, 0]`.
    pub fn gh_sub(self, other: Interval) -> Interval {
        Interval::hull2(self.lo - other.lo, self.hi - other.hi)
    }

    /// Special product: hull of the same-side products `a.lo·b.lo` and `a.hi·b.hi`.
    ///
    /// `a.special_mul(a)` never has a negative lower endpoint.
    pub fn special_mul(self, other: Interval) -> Interval {
        Interval::hull2(self.lo * other.lo, self.hi * other.hi)
    }

    /// `max(|lo|, |hi|)`.
    pub fn norm(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn classify(&self, other: &Interval) -> Dominance {
        let lo = self.lo.partial_cmp(&other.lo);
        let hi = self.hi.partial_cmp(&other.hi);
        use std::cmp::Ordering::*;
        match (lo, hi) {
            (Some(Equal), Some(Equal)) => Dominance::Equal,
            (Some(Less | Equal), Some(Less | Equal)) => Dominance::DominatesStrictly,
            (Some(Greater | Equal), Some(Greater | Equal)) => Dominance::IsDominatedStrictly,
            _ => Dominance::Incomparable,
        }
    }

    /// `self ⪯ other`: both endpoints of `self` are no larger.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.classify(other).precedes()
    }

    /// `self ≺ other`: `self ⪯ other` with at least one strict endpoint.
    pub fn strictly_precedes(&self, other: &Interval) -> bool {
        self.classify(other).strictly_precedes()
    }

    /// `self ⪯ other` with `slack` added to the right-hand endpoints.
    pub fn precedes_within(&self, other: &Interval, slack: f64) -> bool {
        self.lo <= other.lo + slack && self.hi <= other.hi + slack
    }

    /// Formats both endpoints with a fixed number of decimals.
    pub fn display_with_precision(&self, decimals: usize) -> String {
        format!("[{:.*}, {:.*}]", decimals, self.lo, decimals, self.hi)
    }
}

/// Shortest decimal text that parses back to exactly `v`; switches to
/// exponent notation for very small or very large magnitudes.
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

impl fmt::Display for Interval {
    /// `[lo, hi]`; honours `{:.N}` precision, otherwise uses the shortest
    /// representation that round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", format_real(self.lo), format_real(self.hi)),
        }
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    /// Accepts `"[lo, hi]"` or `"lo,hi"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = match (t.strip_prefix('['), t.ends_with(']')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(IntervalError::Parse(s.to_string())),
        };
        let mut parts = inner.split(',');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(IntervalError::Parse(s.to_string()));
        };
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| IntervalError::Parse(s.to_string()))
        };
        Interval::new(parse(a)?, parse(b)?)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = IntervalError;

    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(v: Interval) -> Self {
        [v.lo, v.hi]
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

/// Moore subtraction. Use [`Interval::gh_sub`] for the gH-difference.
impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self.moore_sub(rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        rhs.scalar_mul(self)
    }
}

/// Classification of an ordered pair `(A, B)` under the endpoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dominance {
    /// `A ≺ B`.
    DominatesStrictly,
    /// `A ⪯ B`. Never produced by [`Interval::classify`], which always
    /// resolves a non-strict relation to `Equal` or one of the strict cases;
    /// kept so the boolean views have a home for the non-strict clause.
    Dominates,
    /// `B ⪯ A`. See [`Dominance::Dominates`].
    IsDominated,
    /// `B ≺ A`.
    IsDominatedStrictly,
    Equal,
    Incomparable,
}

impl Dominance {
    /// The classification of the reversed pair.
    pub fn mirror(self) -> Dominance {
        match self {
            Dominance::DominatesStrictly => Dominance::IsDominatedStrictly,
            Dominance::Dominates => Dominance::IsDominated,
            Dominance::IsDominated => Dominance::Dominates,
            Dominance::IsDominatedStrictly => Dominance::DominatesStrictly,
            Dominance::Equal => Dominance::Equal,
            Dominance::Incomparable => Dominance::Incomparable,
        }
    }

    /// `A ⪯ B`.
    pub fn precedes(self) -> bool {
        matches!(
            self,
            Dominance::DominatesStrictly | Dominance::Dominates | Dominance::Equal
        )
    }

    /// `A ≺ B`.
    pub fn strictly_precedes(self) -> bool {
        matches!(self, Dominance::DominatesStrictly)
    }

    /// `A ⋠ B`.
    pub fn not_precedes(self) -> bool {
        !self.precedes()
    }

    /// `A ⊀ B`.
    pub fn not_strictly_precedes(self) -> bool {
        !self.strictly_precedes()
    }
}

/// Scalarization weights `(w, w')` with `w, w' ∈ [0, 1]` and `w + w' = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    w: f64,
    w_prime: f64,
}

impl Weights {
    pub fn new(w: f64, w_prime: f64) -> Result<Self, IntervalError> {
        let in_unit = |v: f64| (0.0..=1.0).contains(&v);
        if !in_unit(w) || !in_unit(w_prime) || ((w + w_prime) - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(IntervalError::InvalidWeights { w, w_prime });
        }
        Ok(Weights { w, w_prime })
    }

    /// `(w, 1 - w)`.
    pub fn from_lower_weight(w: f64) -> Result<Self, IntervalError> {
        Self::new(w, 1.0 - w)
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn w_prime(&self) -> f64 {
        self.w_prime
    }

    /// `w·lo + w'·hi`. A degenerate interval maps to its point exactly.
    #[inline]
    pub fn scalarize(&self, a: &Interval) -> f64 {
        if a.lo == a.hi {
            a.lo
        } else {
            self.w * a.lo + self.w_prime * a.hi
        }
    }
}

/// Componentwise operations available on [`IntervalVector`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VecOp {
    Add,
    MooreSub,
    GhSub,
}

/// A non-empty element of I(R)^n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalVector(Vec<Interval>);

impl IntervalVector {
    pub fn new(components: Vec<Interval>) -> Result<Self, IntervalError> {
        if components.is_empty() {
            return Err(IntervalError::EmptyVector);
        }
        Ok(IntervalVector(components))
    }

    /// Builds from `(lo, hi)` pairs, validating each.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, IntervalError> {
        let comps = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    pub fn zeros(n: usize) -> Result<Self, IntervalError> {
        Self::new(vec![Interval::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.0
    }

    pub fn apply(&self, other: &IntervalVector, op: VecOp) -> Result<IntervalVector, IntervalError> {
        if self.len() != other.len() {
            return Err(IntervalError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let f = match op {
            VecOp::Add => Interval::add,
            VecOp::MooreSub => Interval::moore_sub,
            VecOp::GhSub => Interval::gh_sub,
        };
        Ok(IntervalVector(
            self.0.iter().zip(&other.0).map(|(a, b)| f(*a, *b)).collect(),
        ))
    }

    pub fn scalar_mul(&self, lambda: f64) -> IntervalVector {
        IntervalVector(self.0.iter().map(|a| a.scalar_mul(lambda)).collect())
    }

    /// The W map: `(w·lo_i + w'·hi_i)_i`.
    pub fn w_map(&self, weights: &Weights) -> Vec<f64> {
        self.0.iter().map(|a| weights.scalarize(a)).collect()
    }

    pub fn lower(&self) -> Vec<f64> {
        self.0.iter().map(Interval::lo).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.0.iter().map(Interval::hi).collect()
    }
}

impl Index<usize> for IntervalVector {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl TryFrom<Vec<Interval>> for IntervalVector {
    type Error = IntervalError;
    fn try_from(v: Vec<Interval>) -> Result<Self, Self::Error> {
        IntervalVector::new(v)
    }
}

impl From<IntervalVector> for Vec<Interval> {
    fn from(v: IntervalVector) -> Self {
        v.0
    }
}

impl<'a> IntoIterator for &'a IntervalVector {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt::Display::fmt(c, f)?;
        }
        write!(f, ")")
    }
}

/// `x^T ⊙ G`: `⊕_i x_i ⊙ G_i`, reduced left to right.
pub fn interval_dot(x: &[f64], g: &IntervalVector) -> Result<Interval, IntervalError> {
    if x.len() != g.len() {
        return Err(IntervalError::LengthMismatch {
            left: x.len(),
            right: g.len(),
        });
    }
    Ok(x
        .iter()
        .zip(g.iter())
        .fold(Interval::ZERO, |acc, (xi, gi)| acc.add(gi.scalar_mul(*xi))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_endpoints() {
        assert!(matches!(Interval::new(2.0, 1.0), Err(IntervalError::Inverted { .. })));
        assert!(matches!(Interval::new(f64::NAN, 1.0), Err(IntervalError::NonFinite { .. })));
        assert!(matches!(
            Interval::new(0.0, f64::INFINITY),
            Err(IntervalError::NonFinite { .. })
        ));
        assert!(Interval::new(1.0, 1.0).unwrap().is_degenerate());
    }

    #[test]
    fn addition() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 4.0), iv(4.0, 6.0));
        assert_eq!(iv(3.0, 7.0) + Interval::ZERO, iv(3.0, 7.0));
        // F(-2) of the worked example: [3, 5] ⊕ [1, 2]·|−2|
        assert_eq!(iv(3.0, 5.0) + iv(1.0, 2.0).scalar_mul(2.0), iv(5.0, 9.0));
    }

    #[test]
    fn moore_subtraction() {
        assert_eq!(iv(1.0, 2.0) - iv(1.0, 2.0), iv(-1.0, 1.0));
        assert_eq!(iv(3.0, 7.0) - Interval::ZERO, iv(3.0, 7.0));
        assert_eq!(iv(0.0, 1.0) - iv(2.0, 5.0), iv(-5.0, -1.0));
    }

    #[test]
    fn multiplication() {
        assert_eq!(iv(-1.0, 0.0) * iv(0.5, 0.5), iv(-0.5, 0.0));
        assert_eq!(Interval::ONE * iv(-3.0, 8.0), iv(-3.0, 8.0));
        assert_eq!(iv(-2.0, 3.0) * iv(-1.0, 4.0), iv(-8.0, 12.0));
    }

    #[test]
    fn scalar_multiplication() {
        let d = 0.25;
        assert_eq!(iv(-d, 0.0).scalar_mul(1.0 / d), iv(-1.0, 0.0));
        assert_eq!(iv(3.0, 7.0).scalar_mul(0.0), Interval::ZERO);
        assert_eq!(iv(0.03, 0.06).scalar_mul(-1.0), iv(-0.06, -0.03));
        assert_eq!(-1.0 * iv(0.03, 0.06), iv(-0.06, -0.03));
    }

    #[test]
    fn division() {
        assert_eq!(iv(1.0, 2.0).div(Interval::ONE).unwrap(), iv(1.0, 2.0));
        assert_eq!(iv(1.0, 2.0).div(iv(2.0, 4.0)).unwrap(), iv(0.25, 1.0));
        assert!(matches!(
            iv(1.0, 2.0).div(iv(-1.0, 1.0)),
            Err(IntervalError::DivisionByIntervalContainingZero(_))
        ));
        assert!(iv(1.0, 2.0).div(iv(0.0, 1.0)).is_err());
    }

    #[test]
    fn gh_difference() {
        let d = 0.5;
        assert_eq!(iv(4.0 - d, 7.0).gh_sub(iv(4.0, 7.0)), iv(-0.5, 0.0));
        assert_eq!(iv(3.0, 7.0).gh_sub(iv(3.0, 7.0)), Interval::ZERO);
        let d = -1.0;
        assert_eq!(iv(4.0 - d, 7.0 - 2.0 * d).gh_sub(iv(4.0, 7.0)), iv(1.0, 2.0));
    }

    #[test]
    fn special_multiplication() {
        assert_eq!(iv(-1.0, 2.0).special_mul(iv(3.0, 4.0)), iv(-3.0, 8.0));
        assert_eq!(Interval::ZERO.special_mul(iv(-5.0, 2.0)), Interval::ZERO);
        assert_eq!(iv(-2.0, 3.0).special_mul(iv(-2.0, 3.0)), iv(4.0, 9.0));
        assert_eq!(iv(-2.0, 3.0) * iv(-2.0, 3.0), iv(-6.0, 9.0));
    }

    #[test]
    fn classification() {
        assert_eq!(iv(3.0, 7.0).classify(&iv(4.0, 7.0)), Dominance::DominatesStrictly);
        assert_eq!(iv(3.0, 7.0).classify(&iv(3.0, 7.0)), Dominance::Equal);
        assert_eq!(iv(3.0, 7.0).classify(&iv(2.0, 9.0)), Dominance::Incomparable);
        assert_eq!(iv(4.0, 7.0).classify(&iv(3.0, 7.0)), Dominance::IsDominatedStrictly);
        assert!(iv(3.0, 7.0).precedes(&iv(3.0, 7.0)));
        assert!(!iv(3.0, 7.0).strictly_precedes(&iv(3.0, 7.0)));
    }

    #[test]
    fn interval_norm() {
        assert_eq!(iv(-3.0, 2.0).norm(), 3.0);
        assert_eq!(Interval::ZERO.norm(), 0.0);
        assert_eq!(iv(4.0, 7.0).gh_sub(iv(3.0, 7.0)).norm(), 1.0);
    }

    #[test]
    fn vector_ops() {
        let a = IntervalVector::from_pairs(&[(1.0, 2.0), (0.0, 1.0)]).unwrap();
        let b = IntervalVector::from_pairs(&[(3.0, 4.0), (1.0, 1.0)]).unwrap();
        let expect = IntervalVector::from_pairs(&[(4.0, 6.0), (1.0, 2.0)]).unwrap();
        assert_eq!(a.apply(&b, VecOp::Add).unwrap(), expect);
        assert_eq!(a.apply(&a, VecOp::GhSub).unwrap(), IntervalVector::zeros(2).unwrap());
        let c = IntervalVector::from_pairs(&[(0.0, 1.0); 3]).unwrap();
        assert!(matches!(
            a.apply(&c, VecOp::Add),
            Err(IntervalError::LengthMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(IntervalVector::new(vec![]), Err(IntervalError::EmptyVector)));
    }

    #[test]
    fn w_map_values() {
        let wts = Weights::from_lower_weight(2.0 / 3.0).unwrap();
        let g1 = IntervalVector::new(vec![iv(-1.5, -0.5)]).unwrap();
        assert!((g1.w_map(&wts)[0] + 7.0 / 6.0).abs() < 1e-15);
        let g2 = IntervalVector::new(vec![iv(0.0, 1.0)]).unwrap();
        assert!((g2.w_map(&wts)[0] - 1.0 / 3.0).abs() < 1e-15);
        let a = IntervalVector::from_pairs(&[(1.0, 2.0), (-4.0, 3.0)]).unwrap();
        assert_eq!(a.w_map(&Weights::new(1.0, 0.0).unwrap()), vec![1.0, -4.0]);
        assert_eq!(a.w_map(&Weights::new(0.0, 1.0).unwrap()), vec![2.0, 3.0]);
    }

    #[test]
    fn weights_validation() {
        assert!(Weights::new(0.5, 0.6).is_err());
        assert!(Weights::new(-0.1, 1.1).is_err());
        assert!(Weights::new(0.3, 0.7).is_ok());
        assert!(Weights::from_lower_weight(1.5).is_err());
    }

    #[test]
    fn dot_products() {
        let g = IntervalVector::new(vec![iv(-2.0, -1.0)]).unwrap();
        assert_eq!(interval_dot(&[-1.0], &g).unwrap(), iv(1.0, 2.0));
        let g = IntervalVector::from_pairs(&[(1.0, 2.0), (3.0, 4.0)]).unwrap();
        assert_eq!(interval_dot(&[0.0, 0.0], &g).unwrap(), Interval::ZERO);
        assert_eq!(interval_dot(&[1.0, 1.0], &g).unwrap(), iv(4.0, 6.0));
        assert!(interval_dot(&[1.0], &g).is_err());
    }

    #[test]
    fn text_format_and_parse() {
        let a = iv(0.1, 2.0 / 3.0);
        let s = a.to_string();
        assert_eq!(s.parse::<Interval>().unwrap(), a);
        assert_eq!(format!("{:.3}", iv(19.0 / 6.0, 7.0)), "[3.167, 7.000]");
        assert_eq!("1.5,2".parse::<Interval>().unwrap(), iv(1.5, 2.0));
        assert_eq!(" [ -1 , 0 ] ".parse::<Interval>().unwrap(), iv(-1.0, 0.0));
        assert!("[2, 1]".parse::<Interval>().is_err());
        assert!("[1, 2".parse::<Interval>().is_err());
        assert!("1,2,3".parse::<Interval>().is_err());
        assert!("[nan, 1]".parse::<Interval>().is_err());
    }
}
