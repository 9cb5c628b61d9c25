//! Totally ordered commutative monoids with zero.
//!
//! Values are written multiplicatively at the interface but stored
//! additively: `Unit(Rank1(q))` stands for the formal power `p^(q)` and
//! `Unit(Rank2(q, e))` for `p^(q) * eps^(e)`, with `p > 1` and `eps`
//! infinitesimally above one. Composition adds coordinates and the order is
//! the rational order (rank one) or the lexicographic order with the first
//! coordinate dominant (rank two). `Zero` is absorbing and sits below every
//! unit.
//!
//! A valuation `v` sends an element with additive p-adic order `k` to
//! `Unit(Rank1(-k))`, so `v(p) < 1` and integral elements satisfy `v(x) <= 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rank {
    One,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("rank mismatch: {left:?} vs {right:?}")]
    RankMismatch { left: Rank, right: Rank },
    #[error("zero raised to negative power {0}")]
    NegativePowerOfZero(i64),
    #[error("zero is not invertible in the value monoid")]
    ZeroNotInvertible,
    #[error("cannot parse value {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Element of the ordered group core, stored additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Rank1(BigRational),
    Rank2(BigRational, BigInt),
}

impl GroupElement {
    pub fn identity(rank: Rank) -> Self {
        match rank {
            Rank::One => GroupElement::Rank1(BigRational::zero()),
            Rank::Two => GroupElement::Rank2(BigRational::zero(), BigInt::zero()),
        }
    }

    pub fn rank(&self) -> Rank {
        match self {
            GroupElement::Rank1(_) => Rank::One,
            GroupElement::Rank2(..) => Rank::Two,
        }
    }

    fn mismatch(&self, other: &Self) -> GammaError {
        GammaError::RankMismatch {
            left: self.rank(),
            right: other.rank(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self, GammaError> {
        match (self, other) {
            (GroupElement::Rank1(a), GroupElement::Rank1(b)) => Ok(GroupElement::Rank1(a + b)),
            (GroupElement::Rank2(a, x), GroupElement::Rank2(b, y)) => {
                Ok(GroupElement::Rank2(a + b, x + y))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Rank1(a) => GroupElement::Rank1(-a),
            GroupElement::Rank2(a, x) => GroupElement::Rank2(-a, -x),
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        match self {
            GroupElement::Rank1(a) => GroupElement::Rank1(a * BigInt::from(n)),
            GroupElement::Rank2(a, x) => GroupElement::Rank2(a * BigInt::from(n), x * n),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, GammaError> {
        match (self, other) {
            (GroupElement::Rank1(a), GroupElement::Rank1(b)) => Ok(a.cmp(b)),
            (GroupElement::Rank2(a, x), GroupElement::Rank2(b, y)) => Ok(a.cmp(b).then(x.cmp(y))),
            _ => Err(self.mismatch(other)),
        }
    }
}

/// Element of `Γ₀ = Γ ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ValueMonoidElement {
    Zero,
    Unit(GroupElement),
}

impl ValueMonoidElement {
    pub fn one(rank: Rank) -> Self {
        ValueMonoidElement::Unit(GroupElement::identity(rank))
    }

    pub fn rank1(q: BigRational) -> Self {
        ValueMonoidElement::Unit(GroupElement::Rank1(q))
    }

    pub fn rank1_int(n: i64) -> Self {
        Self::rank1(BigRational::from_integer(n.into()))
    }

    pub fn rank2(q: BigRational, e: BigInt) -> Self {
        ValueMonoidElement::Unit(GroupElement::Rank2(q, e))
    }

    pub fn rank2_int(q: i64, e: i64) -> Self {
        Self::rank2(BigRational::from_integer(q.into()), e.into())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ValueMonoidElement::Zero)
    }

    pub fn is_one(&self) -> bool {
        match self {
            ValueMonoidElement::Zero => false,
            ValueMonoidElement::Unit(g) => *g == GroupElement::identity(g.rank()),
        }
    }

    /// `None` for `Zero`, which is compatible with every rank.
    pub fn rank(&self) -> Option<Rank> {
        match self {
            ValueMonoidElement::Zero => None,
            ValueMonoidElement::Unit(g) => Some(g.rank()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GammaError> {
        match (self, other) {
            (ValueMonoidElement::Unit(a), ValueMonoidElement::Unit(b)) => {
                a.compose(b).map(ValueMonoidElement::Unit)
            }
            _ => Ok(ValueMonoidElement::Zero),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, GammaError> {
        match (self, other) {
            (ValueMonoidElement::Zero, ValueMonoidElement::Zero) => Ok(Ordering::Equal),
            (ValueMonoidElement::Zero, _) => Ok(Ordering::Less),
            (_, ValueMonoidElement::Zero) => Ok(Ordering::Greater),
            (ValueMonoidElement::Unit(a), ValueMonoidElement::Unit(b)) => a.try_cmp(b),
        }
    }

    pub fn le(&self, other: &Self) -> Result<bool, GammaError> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn lt(&self, other: &Self) -> Result<bool, GammaError> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn max(&self, other: &Self) -> Result<Self, GammaError> {
        Ok(match self.try_cmp(other)? {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self, GammaError> {
        match self {
            ValueMonoidElement::Zero if n < 0 => Err(GammaError::NegativePowerOfZero(n)),
            // the empty product is One, whose rank is unknown for Zero; rank one is used
            ValueMonoidElement::Zero if n == 0 => Ok(Self::one(Rank::One)),
            ValueMonoidElement::Zero => Ok(ValueMonoidElement::Zero),
            ValueMonoidElement::Unit(g) => Ok(ValueMonoidElement::Unit(g.scale(n))),
        }
    }

    pub fn inv(&self) -> Result<Self, GammaError> {
        match self {
            ValueMonoidElement::Zero => Err(GammaError::ZeroNotInvertible),
            ValueMonoidElement::Unit(g) => Ok(ValueMonoidElement::Unit(g.inverse())),
        }
    }

    /// Multiplies every rank-one value by a positive rational exponent, and
    /// the dominant coordinate of a rank-two value likewise. Order-preserving
    /// monoid endomorphism for `factor > 0`.
    pub fn rescale(&self, factor: &BigRational) -> Self {
        debug_assert!(factor.is_positive());
        match self {
            ValueMonoidElement::Zero => ValueMonoidElement::Zero,
            ValueMonoidElement::Unit(GroupElement::Rank1(q)) => Self::rank1(q * factor),
            ValueMonoidElement::Unit(GroupElement::Rank2(q, e)) => {
                Self::rank2(q * factor, e.clone())
            }
        }
    }
}

impl PartialOrd for ValueMonoidElement {
    /// `None` exactly when two units have different ranks.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ValueMonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueMonoidElement::Zero => write!(f, "0"),
            ValueMonoidElement::Unit(GroupElement::Rank1(q)) => {
                write!(f, "p^({})", fmt_rational(q))
            }
            ValueMonoidElement::Unit(GroupElement::Rank2(q, e)) => {
                write!(f, "p^({})*eps^({})", fmt_rational(q), e)
            }
        }
    }
}

impl Serialize for ValueMonoidElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts only the canonical spelling so that printing inverts parsing.
fn parse_canonical_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let canonical_int = |t: &str, allow_sign: bool| {
        let digits = if allow_sign {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'))
            && t != "-0"
    };
    if !canonical_int(num, true) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(BigRational::from_integer(n)),
        Some(d) => {
            if !canonical_int(d, false) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d <= BigInt::from(1) {
                return None;
            }
            let q = BigRational::new(n.clone(), d.clone());
            (q.numer() == &n && q.denom() == &d).then_some(q)
        }
    }
}

impl FromStr for ValueMonoidElement {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GammaError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s == "0" {
            return Ok(ValueMonoidElement::Zero);
        }
        let rest = s
            .strip_prefix("p^(")
            .ok_or_else(|| err("expected `0` or `p^(`"))?;
        let (q_text, tail) = rest
            .split_once(')')
            .ok_or_else(|| err("unclosed exponent"))?;
        let q = parse_canonical_rational(q_text)
            .ok_or_else(|| err("exponent is not a canonical lowest-terms rational"))?;
        if tail.is_empty() {
            return Ok(Self::rank1(q));
        }
        let e_text = tail
            .strip_prefix("*eps^(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("expected `*eps^(<integer>)`"))?;
        let e = parse_canonical_rational(e_text)
            .filter(|r| r.is_integer())
            .ok_or_else(|| err("eps exponent must be a canonical integer"))?;
        Ok(Self::rank2(q, e.to_integer()))
    }
}

/// Result of an exhaustive cancellation search.
#[derive(Clone, Debug, Serialize)]
pub struct CancellationReport {
    pub cases_checked: usize,
    pub violations: Vec<[ValueMonoidElement; 3]>,
}

/// Checks `xz < yz ⇒ x < y` on every triple drawn from `values`.
/// Triples with mixed ranks are skipped.
pub fn check_cancellation(values: &[ValueMonoidElement]) -> CancellationReport {
    let mut cases_checked = 0;
    let mut violations = Vec::new();
    for x in values {
        for y in values {
            for z in values {
                let (Ok(xz), Ok(yz)) = (x.mul(z), y.mul(z)) else {
                    continue;
                };
                let (Ok(lhs), Ok(rhs)) = (xz.lt(&yz), x.lt(y)) else {
                    continue;
                };
                cases_checked += 1;
                if lhs && !rhs {
                    violations.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
    }
    CancellationReport {
        cases_checked,
        violations,
    }
}

/// Zero plus six rank-one values spread around One.
pub fn rank1_grid() -> Vec<ValueMonoidElement> {
    let mut grid = vec![ValueMonoidElement::Zero];
    for (n, d) in [(-2, 1), (-1, 2), (0, 1), (1, 3), (1, 1), (5, 2)] {
        grid.push(ValueMonoidElement::rank1(BigRational::new(
            n.into(),
            d.into(),
        )));
    }
    grid
}

/// Zero plus six rank-two values exercising both lexicographic coordinates.
pub fn rank2_grid() -> Vec<ValueMonoidElement> {
    let mut grid = vec![ValueMonoidElement::Zero];
    for (q, e) in [(-1, 0), (0, -1), (0, 0), (0, 1), (1, -2), (1, 1)] {
        grid.push(ValueMonoidElement::rank2_int(q, e));
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r1(n: i64) -> ValueMonoidElement {
        ValueMonoidElement::rank1_int(n)
    }

    #[test]
    fn mul_examples() {
        let zero = ValueMonoidElement::Zero;
        assert_eq!(zero.mul(&r1(-1)).unwrap(), zero);
        assert_eq!(r1(-1).mul(&r1(-2)).unwrap(), r1(-3));
        let a = ValueMonoidElement::rank2_int(1, 1);
        let b = ValueMonoidElement::rank2_int(1, -1);
        assert_eq!(a.mul(&b).unwrap(), ValueMonoidElement::rank2_int(2, 0));
    }

    #[test]
    fn mul_rank_mismatch_is_an_error() {
        let err = r1(1).mul(&ValueMonoidElement::rank2_int(0, 0)).unwrap_err();
        assert_eq!(
            err,
            GammaError::RankMismatch {
                left: Rank::One,
                right: Rank::Two
            }
        );
        assert!(r1(1)
            .partial_cmp(&ValueMonoidElement::rank2_int(0, 0))
            .is_none());
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(
            ValueMonoidElement::Zero.try_cmp(&r1(5)).unwrap(),
            Ordering::Less
        );
        let lo = ValueMonoidElement::rank2_int(1, -1);
        let hi = ValueMonoidElement::rank2_int(1, 1);
        assert_eq!(lo.try_cmp(&hi).unwrap(), Ordering::Less);
        assert_eq!(r1(-1).try_cmp(&r1(0)).unwrap(), Ordering::Less);
        // first coordinate dominates
        assert!(ValueMonoidElement::rank2_int(0, 100) < ValueMonoidElement::rank2_int(1, -100));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(r1(-1).pow(3).unwrap(), r1(-3));
        assert_eq!(
            ValueMonoidElement::Zero.pow(0).unwrap(),
            ValueMonoidElement::one(Rank::One)
        );
        assert_eq!(
            ValueMonoidElement::Zero.pow(4).unwrap(),
            ValueMonoidElement::Zero
        );
        assert_eq!(
            ValueMonoidElement::rank2_int(1, 1).pow(2).unwrap(),
            ValueMonoidElement::rank2_int(2, 2)
        );
        assert_eq!(
            ValueMonoidElement::Zero.pow(-1).unwrap_err(),
            GammaError::NegativePowerOfZero(-1)
        );
        assert_eq!(r1(2).pow(-2).unwrap(), r1(-4));
    }

    #[test]
    fn text_form() {
        for s in [
            "0",
            "p^(-3/2)",
            "p^(-3/2)*eps^(2)",
            "p^(0)",
            "p^(7)*eps^(-1)",
        ] {
            let v: ValueMonoidElement = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(
            "p^(-3/2)".parse::<ValueMonoidElement>().unwrap(),
            ValueMonoidElement::rank1(BigRational::new((-3).into(), 2.into()))
        );
        for bad in [
            "p^(6/4)",
            "p^(+1)",
            "p^(-0)",
            "p^(1/1)",
            "p^(01)",
            "1",
            "p^(1)*eps^(1/2)",
            "p^(1",
        ] {
            assert!(bad.parse::<ValueMonoidElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cancellation_on_grids() {
        for grid in [rank1_grid(), rank2_grid()] {
            assert_eq!(grid.len(), 7);
            let report = check_cancellation(&grid);
            assert_eq!(report.cases_checked, 343);
            assert!(report.violations.is_empty());
        }
    }

    fn arb_value(rank: Rank) -> impl Strategy<Value = ValueMonoidElement> {
        let unit = (-20i64..20, 1i64..5, -5i64..5).prop_map(move |(n, d, e)| {
            let q = BigRational::new(n.into(), d.into());
            match rank {
                Rank::One => ValueMonoidElement::rank1(q),
                Rank::Two => ValueMonoidElement::rank2(q, e.into()),
            }
        });
        prop_oneof![1 => Just(ValueMonoidElement::Zero), 6 => unit]
    }

    fn arb_triple(
    ) -> impl Strategy<Value = (ValueMonoidElement, ValueMonoidElement, ValueMonoidElement)> {
        prop_oneof![Just(Rank::One), Just(Rank::Two)]
            .prop_flat_map(|r| (arb_value(r), arb_value(r), arb_value(r)))
    }

    proptest! {
        #[test]
        fn monoid_laws((a, b, c) in arb_triple()) {
            prop_assert_eq!(ValueMonoidElement::Zero.mul(&a).unwrap(), ValueMonoidElement::Zero);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            if let Some(rank) = a.rank() {
                prop_assert_eq!(a.mul(&ValueMonoidElement::one(rank)).unwrap(), a.clone());
            }
        }

        #[test]
        fn order_laws((a, b, c) in arb_triple()) {
            let ab = a.try_cmp(&b).unwrap();
            prop_assert_eq!(ab.reverse(), b.try_cmp(&a).unwrap());
            if a.le(&b).unwrap() {
                prop_assert!(a.mul(&c).unwrap().le(&b.mul(&c).unwrap()).unwrap());
            }
            if a.mul(&c).unwrap().lt(&b.mul(&c).unwrap()).unwrap() {
                prop_assert!(a.lt(&b).unwrap());
            }
            if a.le(&b).unwrap() && b.le(&c).unwrap() {
                prop_assert!(a.le(&c).unwrap());
            }
        }

        #[test]
        fn display_round_trip(a in prop_oneof![arb_value(Rank::One), arb_value(Rank::Two)]) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<ValueMonoidElement>().unwrap(), a);
        }
    }
}
