//! Huber pairs and the point model of the adic closed unit disc
//! `Spa(ℚ_p⟨X⟩, ℤ_p⟨X⟩)` with parameters in ℚ: classical points, Gauss
//! points of rational radius, and the rank-two points next to a Gauss point.
//!
//! The topology is represented only through rational-subset membership.
//!
//! Rank-two values use the orientation of [`crate::gamma`]: the additive
//! value `(val_p(c) + i·r, side·i)` of a monomial `c (X − a)^i` is exposed as
//! `Unit(Rank2(−(val_p(c) + i·r), −side·i))`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{is_p_integral, is_prime, val_rat};
use crate::gamma::{GammaError, Rank, ValueMonoidElement};
use crate::ring::{Poly, RingElement, RingError};
use crate::valuation::{gauss_additive, is_continuous_check, ValuationDescriptor, ValuationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("point violates the Spa condition: {0}")]
    NotInSpa(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("s ∉ supp(v) failed: v({s}) = 0 at {point}")]
    SupportViolation { s: String, point: String },
    #[error("point {point} is not in {subset}")]
    NotMember { point: String, subset: String },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Classical {
        a: BigRational,
    },
    Gauss {
        a: BigRational,
        r: BigRational,
    },
    RankTwo {
        a: BigRational,
        r: BigRational,
        side: Side,
    },
}

/// A point of the adic closed unit disc over ℚ_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscPoint {
    p: u64,
    kind: PointKind,
}

impl DiscPoint {
    /// Validates the Spa condition `v(p) ≤ 1`, `v(X) ≤ 1` on the generators of ℤ_p⟨X⟩.
    pub fn new(p: u64, kind: PointKind) -> Result<Self, SpaError> {
        if !is_prime(p) {
            return Err(SpaError::NotPrime(p));
        }
        let point = DiscPoint { p, kind };
        let rank = point.rank();
        let one = ValueMonoidElement::one(rank);
        for (name, g) in [
            ("p", Poly::constant(BigRational::from_integer(p.into()))),
            ("X", Poly::x()),
        ] {
            if !point.point_eval(&g).le(&one)? {
                return Err(SpaError::NotInSpa(format!("v({name}) > 1 at {point}")));
            }
        }
        Ok(point)
    }

    pub fn classical(p: u64, a: BigRational) -> Result<Self, SpaError> {
        Self::new(p, PointKind::Classical { a })
    }

    pub fn gauss(p: u64, a: BigRational, r: BigRational) -> Result<Self, SpaError> {
        if r.is_negative() {
            return Err(SpaError::NotInSpa(format!("negative radius {r}")));
        }
        Self::new(p, PointKind::Gauss { a, r })
    }

    pub fn rank_two(p: u64, a: BigRational, r: BigRational, side: Side) -> Result<Self, SpaError> {
        Self::new(p, PointKind::RankTwo { a, r, side })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> &PointKind {
        &self.kind
    }

    pub fn rank(&self) -> Rank {
        match self.kind {
            PointKind::RankTwo { .. } => Rank::Two,
            _ => Rank::One,
        }
    }

    pub fn point_eval(&self, f: &Poly) -> ValueMonoidElement {
        match &self.kind {
            PointKind::Classical { a } => match val_rat(&f.eval(a), self.p) {
                None => ValueMonoidElement::Zero,
                Some(k) => ValueMonoidElement::rank1_int(-k),
            },
            PointKind::Gauss { a, r } => match gauss_additive(f, self.p, a, r) {
                None => ValueMonoidElement::Zero,
                Some(m) => ValueMonoidElement::rank1(-m),
            },
            PointKind::RankTwo { a, r, side } => f
                .taylor_shift(a)
                .coeffs()
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    let v = val_rat(c, self.p)?;
                    let first = BigRational::from_integer(v.into())
                        + r * BigRational::from_integer(i.into());
                    Some((first, BigInt::from(side.sign() * i as i64)))
                })
                .min()
                .map_or(ValueMonoidElement::Zero, |(q, e)| {
                    ValueMonoidElement::rank2(-q, -e)
                }),
        }
    }

    /// `cl:<a>`, `gauss:<a>:<r>`, `rk2:<a>:<r>:<+|->`.
    pub fn parse(s: &str, p: u64) -> Result<Self, SpaError> {
        let err = |reason: &str| SpaError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let rat = |t: &str| t.parse::<BigRational>().map_err(|_| err("bad rational"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            ["cl", a] => Self::classical(p, rat(a)?),
            ["gauss", a, r] => Self::gauss(p, rat(a)?, rat(r)?),
            ["rk2", a, r, side] => {
                let side = match side {
                    "+" => Side::Plus,
                    "-" => Side::Minus,
                    _ => return Err(err("side must be + or -")),
                };
                Self::rank_two(p, rat(a)?, rat(r)?, side)
            }
            _ => Err(err("expected cl:<a>, gauss:<a>:<r> or rk2:<a>:<r>:<+|->")),
        }
    }
}

impl fmt::Display for DiscPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PointKind::Classical { a } => write!(f, "cl:{a}"),
            PointKind::Gauss { a, r } => write!(f, "gauss:{a}:{r}"),
            PointKind::RankTwo { a, r, side } => {
                write!(
                    f,
                    "rk2:{a}:{r}:{}",
                    if *side == Side::Plus { "+" } else { "-" }
                )
            }
        }
    }
}

impl Serialize for DiscPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `R(T/s) = {v | v(s) ≠ 0, v(t) ≤ v(s) ∀ t ∈ T}`, normalized so that `s ∈ T`.
///
/// With `s ∈ T` the ideal `T·A` contains `s`; in the Tate algebra this is
/// recorded as the openness witness for the shipped instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubsetDescriptor {
    s: Poly,
    t: Vec<Poly>,
}

impl RationalSubsetDescriptor {
    pub fn new(t: Vec<Poly>, s: Poly) -> Self {
        let mut unique: Vec<Poly> = Vec::with_capacity(t.len() + 1);
        for f in t.into_iter().chain(std::iter::once(s.clone())) {
            if !unique.contains(&f) {
                unique.push(f);
            }
        }
        RationalSubsetDescriptor { s, t: unique }
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    pub fn t(&self) -> &[Poly] {
        &self.t
    }

    /// `R(T₁T₂ / s₁s₂)` with `T₁T₂` the pairwise products.
    pub fn intersect(&self, other: &Self) -> Self {
        let t = self
            .t
            .iter()
            .flat_map(|a| other.t.iter().map(move |b| a * b))
            .collect();
        RationalSubsetDescriptor::new(t, &self.s * &other.s)
    }

    /// Multiplies `s` and every `t` by the same nonzero element.
    pub fn scale(&self, c: &Poly) -> Self {
        RationalSubsetDescriptor::new(self.t.iter().map(|t| t * c).collect(), &self.s * c)
    }

    /// `R(t1,t2,.../s)`; the symbol `p` denotes the prime.
    pub fn parse(text: &str, p: u64) -> Result<Self, SpaError> {
        let err = |reason: &str| SpaError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix("R(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("expected R(<T>/<s>)"))?;
        let (ts, s) = inner.rsplit_once('/').ok_or_else(|| err("missing `/`"))?;
        let poly = |src: &str| -> Result<Poly, SpaError> {
            RingElement::parse_with_prime(src, p)?
                .to_poly()
                .ok_or_else(|| err("elements must be polynomials"))
        };
        let t = ts.split(',').map(poly).collect::<Result<Vec<_>, _>>()?;
        Ok(RationalSubsetDescriptor::new(t, poly(s)?))
    }
}

impl fmt::Display for RationalSubsetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.t.iter().map(|t| t.to_string()).collect();
        write!(f, "R({}/{})", ts.join(","), self.s)
    }
}

impl Serialize for RationalSubsetDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn rational_subset_member(
    x: &DiscPoint,
    subset: &RationalSubsetDescriptor,
) -> Result<bool, SpaError> {
    let vs = x.point_eval(&subset.s);
    if vs.is_zero() {
        return Ok(false);
    }
    for t in &subset.t {
        if !x.point_eval(t).le(&vs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipDetail {
    pub member: bool,
    pub v_of_s: ValueMonoidElement,
    pub v_of_t: BTreeMap<String, ValueMonoidElement>,
}

pub fn membership_detail(
    x: &DiscPoint,
    subset: &RationalSubsetDescriptor,
) -> Result<MembershipDetail, SpaError> {
    Ok(MembershipDetail {
        member: rational_subset_member(x, subset)?,
        v_of_s: x.point_eval(&subset.s),
        v_of_t: subset
            .t
            .iter()
            .map(|t| (t.to_string(), x.point_eval(t)))
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionViolation {
    pub point: DiscPoint,
    pub in_first: bool,
    pub in_second: bool,
    pub in_product: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub first: RationalSubsetDescriptor,
    pub second: RationalSubsetDescriptor,
    pub points_checked: usize,
    pub violations: Vec<IntersectionViolation>,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pointwise check of `R(T₁/s₁) ∩ R(T₂/s₂) = R(T₁T₂/s₁s₂)`.
pub fn intersection_identity_check(
    first: &RationalSubsetDescriptor,
    second: &RationalSubsetDescriptor,
    points: &[DiscPoint],
) -> Result<IntersectionReport, SpaError> {
    let product = first.intersect(second);
    let mut violations = Vec::new();
    for x in points {
        let in_first = rational_subset_member(x, first)?;
        let in_second = rational_subset_member(x, second)?;
        let in_product = rational_subset_member(x, &product)?;
        if (in_first && in_second) != in_product {
            violations.push(IntersectionViolation {
                point: x.clone(),
                in_first,
                in_second,
                in_product,
            });
        }
    }
    Ok(IntersectionReport {
        first: first.clone(),
        second: second.clone(),
        points_checked: points.len(),
        violations,
    })
}

/// `v_x(a / sⁿ) = v_x(a) · v_x(s)^(−n)`, defined when `v_x(s) ≠ 0`.
pub fn germ_valuation(
    x: &DiscPoint,
    a: &Poly,
    s: &Poly,
    n: i64,
) -> Result<ValueMonoidElement, SpaError> {
    let vs = x.point_eval(s);
    if vs.is_zero() {
        return Err(SpaError::SupportViolation {
            s: s.to_string(),
            point: x.to_string(),
        });
    }
    Ok(x.point_eval(a).mul(&vs.pow(-n)?)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub point: DiscPoint,
    pub subset: RationalSubsetDescriptor,
    pub s_invertible: bool,
    /// `v_x(t/s)` for each `t ∈ T`.
    pub t_over_s: BTreeMap<String, ValueMonoidElement>,
    pub all_power_bounded: bool,
    pub representatives_checked: usize,
    pub representative_violations: Vec<(Poly, i64)>,
}

impl LocalizationReport {
    pub fn passed(&self) -> bool {
        self.s_invertible && self.all_power_bounded && self.representative_violations.is_empty()
    }
}

/// Valuation-level shadow of the universal property of `A(T/s)` at a point
/// of `R(T/s)`: `s` becomes invertible, each `t/s` is power-bounded
/// (`v_x(t/s) ≤ 1`), and germ values do not depend on the fraction chosen.
pub fn localization_universal_check(
    x: &DiscPoint,
    subset: &RationalSubsetDescriptor,
    fractions: &[(Poly, i64)],
) -> Result<LocalizationReport, SpaError> {
    if !rational_subset_member(x, subset)? {
        return Err(SpaError::NotMember {
            point: x.to_string(),
            subset: subset.to_string(),
        });
    }
    let s = subset.s();
    let one_poly = Poly::constant(BigRational::one());
    let one = ValueMonoidElement::one(x.rank());
    let s_invertible = germ_valuation(x, s, s, 0)?
        .mul(&germ_valuation(x, &one_poly, s, 1)?)?
        .is_one();
    let mut t_over_s = BTreeMap::new();
    let mut all_power_bounded = true;
    for t in subset.t() {
        let value = germ_valuation(x, t, s, 1)?;
        for k in 1..=4 {
            all_power_bounded &= germ_valuation(x, &t.pow(k), s, k as i64)?.le(&one)?;
        }
        t_over_s.insert(t.to_string(), value);
    }
    let mut representative_violations = Vec::new();
    for (a, n) in fractions {
        if germ_valuation(x, a, s, *n)? != germ_valuation(x, &(a * s), s, n + 1)? {
            representative_violations.push((a.clone(), *n));
        }
    }
    Ok(LocalizationReport {
        point: x.clone(),
        subset: subset.clone(),
        s_invertible,
        t_over_s,
        all_power_bounded,
        representatives_checked: fractions.len(),
        representative_violations,
    })
}

/// A pair `((X − a)^d, p^n)` with `r = n/d` on which the two rank-two points
/// next to `GaussPt(a, r)` induce opposite orders.
pub fn separating_pair(a: &BigRational, r: &BigRational, p: u64) -> (Poly, Poly) {
    let shift = Poly::new(vec![-a.clone(), BigRational::one()]);
    let d = r
        .denom()
        .to_string()
        .parse::<u32>()
        .expect("small denominator");
    let n = r
        .numer()
        .to_string()
        .parse::<u32>()
        .expect("small numerator");
    (
        shift.pow(d),
        Poly::constant(BigRational::from_integer(crate::arith::pow_int(p, n))),
    )
}

/// Huber pairs with their ring of definition and ideal generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HuberPairDescriptor {
    /// `(ℚ_p, ℤ_p)`, `A₀ = ℤ_p`, `I = (p)`.
    QpZp(u64),
    /// `(ℚ_p⟨X⟩, ℤ_p⟨X⟩)`, `A₀ = A⁺`, `I = (p)`.
    TateAlgebraPair(u64),
    /// `(k((X)), k[[X]])` over `k = F_p`, `I = (X)`.
    LaurentSeriesPair(u64),
}

impl HuberPairDescriptor {
    pub fn prime(&self) -> u64 {
        match *self {
            HuberPairDescriptor::QpZp(p)
            | HuberPairDescriptor::TateAlgebraPair(p)
            | HuberPairDescriptor::LaurentSeriesPair(p) => p,
        }
    }

    pub fn ring_of_definition(&self) -> &'static str {
        match self {
            HuberPairDescriptor::QpZp(_) => "Z_p",
            HuberPairDescriptor::TateAlgebraPair(_) => "Z_p<X>",
            HuberPairDescriptor::LaurentSeriesPair(_) => "F_p[[X]]",
        }
    }

    /// Generator of the finitely generated ideal of definition.
    pub fn ideal_generator(&self) -> RingElement {
        match self {
            HuberPairDescriptor::LaurentSeriesPair(_) => RingElement::x(),
            _ => RingElement::from(self.prime() as i64),
        }
    }

    /// Every shipped pair is Tate: the ideal generator is a topologically
    /// nilpotent unit of `A`.
    pub fn pseudo_uniformizer(&self) -> RingElement {
        self.ideal_generator()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaQpZpReport {
    pub valuation: ValuationDescriptor,
    pub prime: u64,
    /// `v(x) ≤ 1` on every sampled `x ∈ ℤ_(p)`.
    pub bounded: bool,
    /// Sampled continuity for the p-adic topology.
    pub continuous: bool,
    pub witness: Option<RingElement>,
}

impl SpaQpZpReport {
    pub fn passed(&self) -> bool {
        self.bounded && self.continuous
    }
}

/// Whether `v` defines a point of `Spa(ℚ_p, ℤ_p)` on the sample: bounded by
/// one on ℤ_(p), and continuous.
pub fn spa_qp_zp_check(
    v: &ValuationDescriptor,
    p: u64,
    sample: &[RingElement],
) -> Result<SpaQpZpReport, SpaError> {
    if !is_prime(p) {
        return Err(SpaError::NotPrime(p));
    }
    let integral: Vec<RingElement> = sample
        .iter()
        .filter(|x| x.as_rational().is_some_and(|q| is_p_integral(q, p)))
        .cloned()
        .collect();
    let mut witness = None;
    for x in &integral {
        if !crate::valuation::is_bounded_by_one(v, x)? {
            witness = Some(x.clone());
            break;
        }
    }
    let bounded = witness.is_none();
    let gammas: Vec<ValueMonoidElement> = [0i64, -1, -3, 2]
        .iter()
        .map(|&k| ValueMonoidElement::rank1_int(k))
        .collect();
    let mut perturbations = integral.clone();
    perturbations.push(RingElement::one());
    let continuity = is_continuous_check(
        v,
        &RingElement::from(p as i64),
        &gammas,
        sample,
        &perturbations,
        16,
    )?;
    let continuous = continuity.passed();
    if witness.is_none() {
        witness = continuity.failures.first().map(|f| f.center.clone());
    }
    Ok(SpaQpZpReport {
        valuation: v.clone(),
        prime: p,
        bounded,
        continuous,
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HuberPairReport {
    pub pair: HuberPairDescriptor,
    /// `I ⊆ A⁺` on the sample, so `A⁺` is open.
    pub open: bool,
    pub power_bounded: bool,
    /// No sampled `x ∉ A⁺` is a root of a sampled monic polynomial over `A⁺`.
    pub integrally_closed: bool,
}

/// Sampled sanity check that `(ℚ_p, ℤ_(p))` is a Huber pair.
pub fn qp_zp_pair_check(p: u64, sample: &[BigRational]) -> Result<HuberPairReport, SpaError> {
    use crate::adic::{AdicRingInstance, BoundedSearchBudget, PowerBoundedAnswer};
    let ring = AdicRingInstance::rationals(p).map_err(|_| SpaError::NotPrime(p))?;
    let budget = BoundedSearchBudget { max_power: 16 };
    let mut open = true;
    let mut power_bounded = true;
    let mut integrally_closed = true;
    let integral: Vec<&BigRational> = sample.iter().filter(|q| is_p_integral(q, p)).collect();
    for q in sample {
        let x = RingElement::Rational(q.clone());
        let in_ideal = ring.in_ideal_power(&x, 1).expect("rational");
        open &= !in_ideal || is_p_integral(q, p);
        if is_p_integral(q, p) {
            power_bounded &=
                ring.is_power_bounded(&x, budget).expect("rational") == PowerBoundedAnswer::Yes;
        } else {
            // x^2 + c1 x + c0 with c_i ∈ ℤ_(p): the x^2 term has strictly largest value
            for c1 in integral.iter().take(6) {
                for c0 in integral.iter().take(6) {
                    let value = q * q + *c1 * q + *c0;
                    integrally_closed &= !value.is_zero();
                }
            }
        }
    }
    Ok(HuberPairReport {
        pair: HuberPairDescriptor::QpZp(p),
        open,
        power_bounded,
        integrally_closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 3;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(s: &str) -> Poly {
        RingElement::parse_with_prime(s, P)
            .unwrap()
            .to_poly()
            .unwrap()
    }

    fn subset(s: &str) -> RationalSubsetDescriptor {
        RationalSubsetDescriptor::parse(s, P).unwrap()
    }

    #[test]
    fn point_eval_examples() {
        let gauss = DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap();
        assert!(gauss.point_eval(&Poly::x()).is_one());
        let origin = DiscPoint::classical(P, q(0, 1)).unwrap();
        assert!(origin.point_eval(&Poly::x()).is_zero());
        let plus = DiscPoint::rank_two(P, q(0, 1), q(1, 1), Side::Plus).unwrap();
        let minus = DiscPoint::rank_two(P, q(0, 1), q(1, 1), Side::Minus).unwrap();
        // additive values (1, 1) and (1, -1)
        assert_eq!(
            plus.point_eval(&Poly::x()),
            ValueMonoidElement::rank2_int(-1, -1)
        );
        assert_eq!(
            minus.point_eval(&Poly::x()),
            ValueMonoidElement::rank2_int(-1, 1)
        );
        assert_ne!(plus.point_eval(&Poly::x()), minus.point_eval(&Poly::x()));
    }

    #[test]
    fn construction_enforces_spa_condition() {
        assert!(DiscPoint::classical(P, q(1, 3)).is_err());
        assert!(DiscPoint::gauss(P, q(0, 1), q(-1, 2)).is_err());
        assert!(DiscPoint::gauss(P, q(1, 9), q(1, 1)).is_err());
        assert!(DiscPoint::rank_two(P, q(0, 1), q(0, 1), Side::Minus).is_err());
        assert!(DiscPoint::rank_two(P, q(0, 1), q(0, 1), Side::Plus).is_ok());
        assert!(DiscPoint::classical(4, q(0, 1)).is_err());
    }

    #[test]
    fn membership_examples() {
        let r = subset("R(p,X/X)");
        assert_eq!(r.t().len(), 2);
        let gauss = DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap();
        assert!(rational_subset_member(&gauss, &r).unwrap());
        assert!(!rational_subset_member(&DiscPoint::classical(P, q(0, 1)).unwrap(), &r).unwrap());
        assert!(rational_subset_member(&DiscPoint::classical(P, q(3, 1)).unwrap(), &r).unwrap());
        assert!(!rational_subset_member(&DiscPoint::classical(P, q(9, 1)).unwrap(), &r).unwrap());
        let detail = membership_detail(&gauss, &r).unwrap();
        assert_eq!(detail.v_of_s.to_string(), "p^(0)");
        assert_eq!(detail.v_of_t["3"].to_string(), "p^(-1)");
    }

    #[test]
    fn intersection_examples() {
        let r1 = subset("R(p,X/X)");
        let r2 = subset("R(X,p/p)");
        let gauss = DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap();
        assert!(!rational_subset_member(&gauss, &r2).unwrap());
        let report = intersection_identity_check(&r1, &r2, std::slice::from_ref(&gauss)).unwrap();
        assert!(report.passed());
        assert!(!rational_subset_member(&gauss, &r1.intersect(&r2)).unwrap());
        let idem = intersection_identity_check(&r1, &r1, &[gauss]).unwrap();
        assert!(idem.passed());
    }

    #[test]
    fn germ_examples() {
        let gauss = DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap();
        let x = Poly::x();
        let p = poly("p");
        assert_eq!(
            germ_valuation(&gauss, &p, &x, 1).unwrap(),
            ValueMonoidElement::rank1_int(-1)
        );
        assert!(germ_valuation(&gauss, &x, &x, 1).unwrap().is_one());
        let origin = DiscPoint::classical(P, q(0, 1)).unwrap();
        assert!(matches!(
            germ_valuation(&origin, &p, &x, 1),
            Err(SpaError::SupportViolation { .. })
        ));
    }

    #[test]
    fn localization_examples() {
        let r = subset("R(p,X/X)");
        let fractions = vec![(poly("1 + X"), 2), (poly("p*X^2"), -1), (poly("7"), 0)];
        for point in [
            DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap(),
            DiscPoint::classical(P, q(3, 1)).unwrap(),
            DiscPoint::rank_two(P, q(0, 1), q(1, 2), Side::Minus).unwrap(),
        ] {
            let report = localization_universal_check(&point, &r, &fractions).unwrap();
            assert!(report.passed(), "{point}");
        }
        let gauss = DiscPoint::gauss(P, q(0, 1), q(0, 1)).unwrap();
        let report = localization_universal_check(&gauss, &r, &[]).unwrap();
        assert_eq!(report.t_over_s["3"], ValueMonoidElement::rank1_int(-1));
        assert!(report.t_over_s["X"].is_one());
        let cl = DiscPoint::classical(P, q(3, 1)).unwrap();
        assert!(localization_universal_check(&cl, &r, &[]).unwrap().t_over_s["3"].is_one());
        let origin = DiscPoint::classical(P, q(0, 1)).unwrap();
        assert!(matches!(
            localization_universal_check(&origin, &r, &[]),
            Err(SpaError::NotMember { .. })
        ));
    }

    #[test]
    fn spa_qp_zp_examples() {
        let sample: Vec<RingElement> = [(1, 2), (2, 1), (3, 1), (1, 3), (5, 7), (9, 4), (0, 1)]
            .iter()
            .map(|&(n, d)| RingElement::rational(n, d))
            .collect();
        let v3 = ValuationDescriptor::padic(3).unwrap();
        assert!(spa_qp_zp_check(&v3, 3, &sample).unwrap().passed());
        let trivial = spa_qp_zp_check(&ValuationDescriptor::Trivial, 3, &sample).unwrap();
        assert!(trivial.bounded);
        assert!(!trivial.continuous);
        let v2 = spa_qp_zp_check(&ValuationDescriptor::padic(2).unwrap(), 3, &sample).unwrap();
        assert!(!v2.passed());
        assert_eq!(v2.witness, Some(RingElement::rational(1, 2)));
    }

    #[test]
    fn qp_zp_is_a_huber_pair_on_samples() {
        let sample: Vec<BigRational> = (-30..30)
            .flat_map(|n| [q(n, 1), q(n, 3), q(n, 7), q(n, 9)])
            .collect();
        let report = qp_zp_pair_check(3, &sample).unwrap();
        assert!(report.open && report.power_bounded && report.integrally_closed);
        assert_eq!(
            HuberPairDescriptor::TateAlgebraPair(5).ring_of_definition(),
            "Z_p<X>"
        );
        assert_eq!(
            HuberPairDescriptor::LaurentSeriesPair(2).pseudo_uniformizer(),
            RingElement::x()
        );
    }

    #[test]
    fn rank_two_sides_separate() {
        for (a, r) in [(q(0, 1), q(1, 1)), (q(1, 1), q(2, 3)), (q(-2, 5), q(5, 2))] {
            let (f, g) = separating_pair(&a, &r, P);
            let plus = DiscPoint::rank_two(P, a.clone(), r.clone(), Side::Plus).unwrap();
            let minus = DiscPoint::rank_two(P, a.clone(), r.clone(), Side::Minus).unwrap();
            let gauss = DiscPoint::gauss(P, a.clone(), r.clone()).unwrap();
            assert_eq!(gauss.point_eval(&f), gauss.point_eval(&g));
            let by_plus = plus.point_eval(&f).le(&plus.point_eval(&g)).unwrap();
            let by_minus = minus.point_eval(&f).le(&minus.point_eval(&g)).unwrap();
            assert_ne!(by_plus, by_minus);
        }
    }

    #[test]
    fn parse_and_display() {
        for s in ["cl:1/3", "gauss:0:1/2", "rk2:0:1:+", "rk2:2:1/3:-"] {
            let result = DiscPoint::parse(s, 5);
            if s == "cl:1/3" {
                assert!(DiscPoint::parse(s, 3).is_err());
            }
            assert_eq!(result.unwrap().to_string(), s);
        }
        assert!(DiscPoint::parse("rk2:0:1:*", 3).is_err());
        assert_eq!(subset("R(p,X/X)").to_string(), "R(3,X/X)");
        assert!(RationalSubsetDescriptor::parse("R(X^-1/X)", 3).is_err());
        assert!(RationalSubsetDescriptor::parse("(p/X)", 3).is_err());
    }
}
