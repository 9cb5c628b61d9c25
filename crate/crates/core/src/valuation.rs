//! Concrete valuation families with exact evaluation into `Γ₀`, the
//! valuation axioms as checkable properties, supports, equivalence via
//! induced preorders, and a sampled continuity check.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{is_prime, val_rat};
use crate::gamma::{GammaError, ValueMonoidElement};
use crate::ring::{Domain, Poly, RingElement};
use crate::spa::{DiscPoint, SpaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("{valuation} is not defined on elements of {domain:?}")]
    DomainMismatch { valuation: String, domain: Domain },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("rescaling factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("cannot parse valuation {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Point(#[from] Box<SpaError>),
}

/// A valuation family instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationDescriptor {
    /// p-adic valuation on ℚ.
    PAdic {
        p: u64,
    },
    /// `X`-adic valuation on ℚ[X, X⁻¹], trivial on ℚ.
    XAdic,
    /// Gauss valuation on ℚ[X]: additive value `min_i val_p(c_i) + i·radius`
    /// for `f = Σ c_i (X - center)^i`.
    Gauss {
        p: u64,
        center: BigRational,
        radius: BigRational,
    },
    Trivial,
    DiscPoint(DiscPoint),
    /// `base` with its value group rescaled by a positive rational exponent.
    Rescaled {
        base: Box<ValuationDescriptor>,
        factor: BigRational,
    },
}

impl ValuationDescriptor {
    pub fn padic(p: u64) -> Result<Self, ValuationError> {
        if !is_prime(p) {
            return Err(ValuationError::NotPrime(p));
        }
        Ok(ValuationDescriptor::PAdic { p })
    }

    pub fn gauss(p: u64, center: BigRational, radius: BigRational) -> Result<Self, ValuationError> {
        if !is_prime(p) {
            return Err(ValuationError::NotPrime(p));
        }
        Ok(ValuationDescriptor::Gauss { p, center, radius })
    }

    pub fn rescaled(
        base: ValuationDescriptor,
        factor: BigRational,
    ) -> Result<Self, ValuationError> {
        if !factor.is_positive() {
            return Err(ValuationError::NonPositiveScale(factor.to_string()));
        }
        Ok(ValuationDescriptor::Rescaled {
            base: Box::new(base),
            factor,
        })
    }

    /// Largest ring of the tower ℚ ⊂ ℚ[X] ⊂ ℚ[X, X⁻¹] the valuation is defined on.
    pub fn domain(&self) -> Domain {
        match self {
            ValuationDescriptor::PAdic { .. } => Domain::Rationals,
            ValuationDescriptor::Gauss { .. } | ValuationDescriptor::DiscPoint(_) => {
                Domain::Polynomials
            }
            ValuationDescriptor::XAdic | ValuationDescriptor::Trivial => Domain::Laurent,
            ValuationDescriptor::Rescaled { base, .. } => base.domain(),
        }
    }

    /// The underlying prime when the valuation is a (rescaled) p-adic one.
    fn padic_prime(&self) -> Option<u64> {
        match self {
            ValuationDescriptor::PAdic { p } => Some(*p),
            ValuationDescriptor::Rescaled { base, .. } => base.padic_prime(),
            _ => None,
        }
    }

    pub fn eval(&self, x: &RingElement) -> Result<ValueMonoidElement, ValuationError> {
        if x.domain() > self.domain() {
            return Err(ValuationError::DomainMismatch {
                valuation: self.to_string(),
                domain: x.domain(),
            });
        }
        Ok(match self {
            ValuationDescriptor::PAdic { p } => {
                let q = x.as_rational().expect("domain checked");
                match val_rat(q, *p) {
                    None => ValueMonoidElement::Zero,
                    Some(k) => ValueMonoidElement::rank1_int(-k),
                }
            }
            ValuationDescriptor::XAdic => match x.to_laurent().order() {
                None => ValueMonoidElement::Zero,
                Some(k) => ValueMonoidElement::rank1_int(-k),
            },
            ValuationDescriptor::Gauss { p, center, radius } => {
                let f = x.to_poly().expect("domain checked");
                match gauss_additive(&f, *p, center, radius) {
                    None => ValueMonoidElement::Zero,
                    Some(m) => ValueMonoidElement::rank1(-m),
                }
            }
            ValuationDescriptor::Trivial => {
                if x.is_zero() {
                    ValueMonoidElement::Zero
                } else {
                    ValueMonoidElement::rank1_int(0)
                }
            }
            ValuationDescriptor::DiscPoint(point) => {
                point.point_eval(&x.to_poly().expect("domain checked"))
            }
            ValuationDescriptor::Rescaled { base, factor } => base.eval(x)?.rescale(factor),
        })
    }

    pub fn support_member(&self, x: &RingElement) -> Result<bool, ValuationError> {
        Ok(self.eval(x)?.is_zero())
    }
}

/// Additive Gauss value `min_i val_p(c_i) + i·r` of `f` expanded around `center`;
/// `None` for the zero polynomial.
pub fn gauss_additive(
    f: &Poly,
    p: u64,
    center: &BigRational,
    radius: &BigRational,
) -> Option<BigRational> {
    f.taylor_shift(center)
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            val_rat(c, p).map(|v| {
                BigRational::from_integer(v.into()) + radius * BigRational::from_integer(i.into())
            })
        })
        .min()
}

impl fmt::Display for ValuationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationDescriptor::PAdic { p } => write!(f, "padic:{p}"),
            ValuationDescriptor::XAdic => write!(f, "xadic"),
            ValuationDescriptor::Gauss { p, center, radius } => {
                write!(f, "gauss:{p}:{center}:{radius}")
            }
            ValuationDescriptor::Trivial => write!(f, "trivial"),
            ValuationDescriptor::DiscPoint(pt) => write!(f, "disc:{}:{pt}", pt.prime()),
            ValuationDescriptor::Rescaled { base, factor } => write!(f, "scaled:{factor}:{base}"),
        }
    }
}

impl Serialize for ValuationDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    s.trim().parse::<BigRational>().ok()
}

impl FromStr for ValuationDescriptor {
    type Err = ValuationError;

    /// `padic:3`, `gauss:3:0:1/2`, `trivial`, `xadic`, `disc:3:gauss:0:1/2`,
    /// `scaled:2:padic:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ValuationError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let prime = |t: &str| t.parse::<u64>().map_err(|_| err("expected a prime"));
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "trivial" if rest.is_empty() => Ok(ValuationDescriptor::Trivial),
            "xadic" if rest.is_empty() => Ok(ValuationDescriptor::XAdic),
            "padic" => ValuationDescriptor::padic(prime(rest)?),
            "gauss" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let [p, a, r] = parts[..] else {
                    return Err(err("expected gauss:<p>:<center>:<radius>"));
                };
                let a = parse_rational(a).ok_or_else(|| err("bad center"))?;
                let r = parse_rational(r).ok_or_else(|| err("bad radius"))?;
                ValuationDescriptor::gauss(prime(p)?, a, r)
            }
            "disc" => {
                let (p, point) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected disc:<p>:<point>"))?;
                let point = DiscPoint::parse(point, prime(p)?)
                    .map_err(|e| ValuationError::Point(Box::new(e)))?;
                Ok(ValuationDescriptor::DiscPoint(point))
            }
            "scaled" => {
                let (factor, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected scaled:<factor>:<valuation>"))?;
                let factor = parse_rational(factor).ok_or_else(|| err("bad factor"))?;
                ValuationDescriptor::rescaled(inner.parse()?, factor)
            }
            _ => Err(err("unknown valuation family")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    ZeroToZero,
    OneToOne,
    Multiplicative,
    Ultrametric,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: RingElement,
    pub y: RingElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub valuation: ValuationDescriptor,
    pub pairs_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `v(0) = 0`, `v(1) = 1`, and on every pair `v(xy) = v(x)v(y)` and
/// `v(x+y) ≤ max(v(x), v(y))`. Comparisons are exact.
pub fn check_axioms(
    v: &ValuationDescriptor,
    samples: &[(RingElement, RingElement)],
) -> Result<AxiomReport, ValuationError> {
    let mut violations = Vec::new();
    let zero = RingElement::zero();
    let one = RingElement::one();
    if !v.eval(&zero)?.is_zero() {
        violations.push(AxiomViolation {
            axiom: Axiom::ZeroToZero,
            x: zero.clone(),
            y: zero.clone(),
        });
    }
    if !v.eval(&one)?.is_one() {
        violations.push(AxiomViolation {
            axiom: Axiom::OneToOne,
            x: one.clone(),
            y: one,
        });
    }
    for (x, y) in samples {
        let vx = v.eval(x)?;
        let vy = v.eval(y)?;
        if v.eval(&(x * y))? != vx.mul(&vy)? {
            violations.push(AxiomViolation {
                axiom: Axiom::Multiplicative,
                x: x.clone(),
                y: y.clone(),
            });
        }
        if !v.eval(&(x + y))?.le(&vx.max(&vy)?)? {
            violations.push(AxiomViolation {
                axiom: Axiom::Ultrametric,
                x: x.clone(),
                y: y.clone(),
            });
        }
    }
    Ok(AxiomReport {
        valuation: v.clone(),
        pairs_checked: samples.len(),
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupportProperty {
    /// `1 ∉ supp(v)`.
    Proper,
    /// `x, y ∈ supp ⇒ x + y ∈ supp`.
    AdditiveClosure,
    /// `x ∈ supp ⇒ xy ∈ supp`.
    Absorbing,
    /// `xy ∈ supp ⇒ x ∈ supp ∨ y ∈ supp`.
    Prime,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub pairs_checked: usize,
    pub violations: Vec<(SupportProperty, RingElement, RingElement)>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sampled check that `supp(v)` is a prime ideal.
pub fn support_prime_check(
    v: &ValuationDescriptor,
    samples: &[(RingElement, RingElement)],
) -> Result<SupportReport, ValuationError> {
    let mut violations = Vec::new();
    if v.support_member(&RingElement::one())? {
        violations.push((
            SupportProperty::Proper,
            RingElement::one(),
            RingElement::one(),
        ));
    }
    for (x, y) in samples {
        let sx = v.support_member(x)?;
        let sy = v.support_member(y)?;
        let sxy = v.support_member(&(x * y))?;
        let push = |prop, out: &mut Vec<_>| out.push((prop, x.clone(), y.clone()));
        if sx && sy && !v.support_member(&(x + y))? {
            push(SupportProperty::AdditiveClosure, &mut violations);
        }
        if (sx || sy) && !sxy {
            push(SupportProperty::Absorbing, &mut violations);
        }
        if sxy && !sx && !sy {
            push(SupportProperty::Prime, &mut violations);
        }
    }
    Ok(SupportReport {
        pairs_checked: samples.len(),
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquivalenceMethod {
    /// Decided for the whole ring within the p-adic family.
    Exact,
    /// Decided on the supplied pairs only.
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub method: EquivalenceMethod,
    pub witness: Option<(RingElement, RingElement)>,
}

fn preorder_disagreement(
    v: &ValuationDescriptor,
    w: &ValuationDescriptor,
    pairs: &[(RingElement, RingElement)],
) -> Result<Option<(RingElement, RingElement)>, ValuationError> {
    for (a, b) in pairs {
        let by_v = v.eval(a)?.le(&v.eval(b)?)?;
        let by_w = w.eval(a)?.le(&w.eval(b)?)?;
        if by_v != by_w {
            return Ok(Some((a.clone(), b.clone())));
        }
    }
    Ok(None)
}

/// Compares the preorders `a ≤_v b ⇔ v(a) ≤ v(b)` induced by `v` and `w`.
///
/// Two (rescaled) p-adic valuations are decided exactly: they are equivalent
/// iff their primes agree. Otherwise the answer holds on `pairs` only.
pub fn equivalent(
    v: &ValuationDescriptor,
    w: &ValuationDescriptor,
    pairs: &[(RingElement, RingElement)],
) -> Result<EquivalenceVerdict, ValuationError> {
    if v.domain() != w.domain() {
        return Err(ValuationError::DomainMismatch {
            valuation: w.to_string(),
            domain: v.domain(),
        });
    }
    let sampled = preorder_disagreement(v, w, pairs)?;
    if let (Some(p), Some(q)) = (v.padic_prime(), w.padic_prime()) {
        if p == q {
            debug_assert!(sampled.is_none());
            return Ok(EquivalenceVerdict {
                equivalent: true,
                method: EquivalenceMethod::Exact,
                witness: None,
            });
        }
        // v_p(p) < v_p(q) = 1 while v_q(p) = 1 > v_q(q)
        let witness = sampled.unwrap_or((RingElement::from(p as i64), RingElement::from(q as i64)));
        return Ok(EquivalenceVerdict {
            equivalent: false,
            method: EquivalenceMethod::Exact,
            witness: Some(witness),
        });
    }
    Ok(EquivalenceVerdict {
        equivalent: sampled.is_none(),
        method: EquivalenceMethod::Sampled,
        witness: sampled,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityFailure {
    pub gamma: ValueMonoidElement,
    pub center: RingElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityReport {
    pub cases_checked: usize,
    pub failures: Vec<ContinuityFailure>,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled semi-decision for continuity of `v` in the `ideal_gen`-adic topology.
///
/// For every `γ` and every sampled `x` with `v(x) < γ`, looks for `n ≤ bound`
/// such that every sampled perturbation `x + ideal_genⁿ·z` stays in
/// `{a | v(a) < γ}`. A failure means no such `n` was found within the bound;
/// a pass is evidence, not proof.
pub fn is_continuous_check(
    v: &ValuationDescriptor,
    ideal_gen: &RingElement,
    gammas: &[ValueMonoidElement],
    centers: &[RingElement],
    perturbations: &[RingElement],
    bound: u32,
) -> Result<ContinuityReport, ValuationError> {
    let mut cases_checked = 0;
    let mut failures = Vec::new();
    let powers: Vec<RingElement> = (0..=bound as i64)
        .map(|n| ideal_gen.pow(n).expect("non-negative power"))
        .collect();
    for gamma in gammas {
        for x in centers {
            if !v.eval(x)?.lt(gamma)? {
                continue;
            }
            cases_checked += 1;
            let mut found = false;
            for g in &powers {
                let mut inside = true;
                for z in perturbations {
                    let y = x + &(g * z);
                    if !v.eval(&y)?.lt(gamma)? {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    found = true;
                    break;
                }
            }
            if !found {
                failures.push(ContinuityFailure {
                    gamma: gamma.clone(),
                    center: x.clone(),
                });
            }
        }
    }
    Ok(ContinuityReport {
        cases_checked,
        failures,
    })
}

/// Whether `v(x) ≤ 1`, i.e. `x` lies in the valuation ring of `v`.
pub fn is_bounded_by_one(v: &ValuationDescriptor, x: &RingElement) -> Result<bool, ValuationError> {
    let value = v.eval(x)?;
    let one = match value.rank() {
        Some(r) => ValueMonoidElement::one(r),
        None => return Ok(true),
    };
    Ok(value.le(&one)?)
}

/// `1` as a rank-one value, used as the default unit-ball radius.
pub fn one_rank1() -> ValueMonoidElement {
    ValueMonoidElement::rank1(BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spa::DiscPoint;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn r(n: i64, d: i64) -> RingElement {
        RingElement::rational(n, d)
    }

    #[test]
    fn padic_eval_examples() {
        let v = ValuationDescriptor::padic(3).unwrap();
        assert_eq!(v.eval(&r(9, 2)).unwrap(), ValueMonoidElement::rank1_int(-2));
        assert!(v.eval(&RingElement::one()).unwrap().is_one());
        assert!(v.eval(&RingElement::zero()).unwrap().is_zero());
        assert!(matches!(
            v.eval(&RingElement::x()),
            Err(ValuationError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn gauss_eval_by_brute_force_minimum() {
        // 3 + 9X at p = 3, a = 0, r = 1/2: monomial values 1 + 0 and 2 + 1/2
        let v = ValuationDescriptor::gauss(3, q(0, 1), q(1, 2)).unwrap();
        let f = RingElement::parse("3 + 9*X").unwrap();
        assert_eq!(v.eval(&f).unwrap(), ValueMonoidElement::rank1_int(-1));
        let laurent = RingElement::parse("X^-1").unwrap();
        assert!(v.eval(&laurent).is_err());
    }

    #[test]
    fn every_family_sends_one_to_one() {
        let fams = [
            ValuationDescriptor::padic(5).unwrap(),
            ValuationDescriptor::XAdic,
            ValuationDescriptor::gauss(2, q(1, 3), q(3, 2)).unwrap(),
            ValuationDescriptor::Trivial,
            ValuationDescriptor::DiscPoint(DiscPoint::classical(3, q(1, 2)).unwrap()),
            ValuationDescriptor::rescaled(ValuationDescriptor::padic(3).unwrap(), q(2, 1)).unwrap(),
        ];
        for v in fams {
            assert!(v.eval(&RingElement::one()).unwrap().is_one(), "{v}");
            assert!(v.eval(&RingElement::zero()).unwrap().is_zero(), "{v}");
        }
    }

    #[test]
    fn gauss_at_origin_restricts_to_padic() {
        let g = ValuationDescriptor::gauss(7, q(0, 1), q(0, 1)).unwrap();
        let v = ValuationDescriptor::padic(7).unwrap();
        for (n, d) in [(49, 3), (1, 7), (-14, 5), (0, 1), (22, 343)] {
            assert_eq!(g.eval(&r(n, d)).unwrap(), v.eval(&r(n, d)).unwrap());
        }
    }

    #[test]
    fn supports() {
        let at_zero = ValuationDescriptor::DiscPoint(DiscPoint::classical(3, q(0, 1)).unwrap());
        assert!(at_zero.support_member(&RingElement::x()).unwrap());
        let g = ValuationDescriptor::gauss(3, q(0, 1), q(1, 1)).unwrap();
        assert!(!g
            .support_member(&RingElement::parse("X^2 - 9").unwrap())
            .unwrap());
        assert!(g.support_member(&RingElement::zero()).unwrap());
        assert!(ValuationDescriptor::Trivial
            .support_member(&RingElement::zero())
            .unwrap());
    }

    #[test]
    fn support_prime_examples() {
        let at_zero = ValuationDescriptor::DiscPoint(DiscPoint::classical(3, q(0, 1)).unwrap());
        let x = RingElement::x();
        let xm1 = RingElement::parse("X - 1").unwrap();
        assert!(at_zero.support_member(&(&x * &xm1)).unwrap());
        assert!(!at_zero.support_member(&xm1).unwrap());
        let report =
            support_prime_check(&at_zero, &[(x.clone(), xm1.clone()), (xm1.clone(), xm1)]).unwrap();
        assert!(report.passed());
        let samples = vec![(r(3, 1), r(0, 1)), (r(0, 1), r(0, 1)), (r(5, 2), r(1, 5))];
        assert!(support_prime_check(&ValuationDescriptor::Trivial, &samples)
            .unwrap()
            .passed());
        assert!(
            support_prime_check(&ValuationDescriptor::padic(5).unwrap(), &samples)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn equivalence_examples() {
        let v3 = ValuationDescriptor::padic(3).unwrap();
        let squared = ValuationDescriptor::rescaled(v3.clone(), q(2, 1)).unwrap();
        assert_eq!(
            squared.eval(&r(9, 1)).unwrap(),
            ValueMonoidElement::rank1_int(-4)
        );
        let pairs = vec![(r(2, 1), r(3, 1)), (r(9, 1), r(1, 3)), (r(6, 1), r(7, 1))];
        let verdict = equivalent(&v3, &squared, &pairs).unwrap();
        assert!(verdict.equivalent);
        assert_eq!(verdict.method, EquivalenceMethod::Exact);

        let v2 = ValuationDescriptor::padic(2).unwrap();
        let verdict = equivalent(&v2, &v3, &pairs).unwrap();
        assert!(!verdict.equivalent);
        assert_eq!(verdict.witness, Some((r(2, 1), r(3, 1))));
        // witness synthesized when the sample misses one
        let verdict = equivalent(&v2, &v3, &[]).unwrap();
        assert_eq!(verdict.witness, Some((r(2, 1), r(3, 1))));

        let g = ValuationDescriptor::gauss(3, q(0, 1), q(1, 2)).unwrap();
        let poly_pairs = vec![(RingElement::x(), r(3, 1))];
        assert!(equivalent(&g, &g, &poly_pairs).unwrap().equivalent);
        assert!(equivalent(&g, &v3, &pairs).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "padic:3",
            "gauss:3:0:1/2",
            "trivial",
            "xadic",
            "scaled:2:padic:3",
            "disc:3:rk2:0:1:+",
        ] {
            let v: ValuationDescriptor = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!(matches!(
            "padic:4".parse::<ValuationDescriptor>(),
            Err(ValuationError::NotPrime(4))
        ));
        assert!("scaled:-1:padic:3".parse::<ValuationDescriptor>().is_err());
        assert!("bogus".parse::<ValuationDescriptor>().is_err());
    }

    #[test]
    fn continuity_of_padic_but_not_trivial() {
        let gammas = vec![
            one_rank1(),
            ValueMonoidElement::rank1_int(-2),
            ValueMonoidElement::rank1_int(3),
        ];
        let centers: Vec<RingElement> = [(0, 1), (3, 1), (1, 2), (27, 5), (1, 9)]
            .iter()
            .map(|&(n, d)| r(n, d))
            .collect();
        let zs: Vec<RingElement> = [(1, 1), (2, 1), (1, 2), (-7, 4), (5, 1)]
            .iter()
            .map(|&(n, d)| r(n, d))
            .collect();
        let three = RingElement::from(3);
        let v3 = ValuationDescriptor::padic(3).unwrap();
        let report = is_continuous_check(&v3, &three, &gammas, &centers, &zs, 10).unwrap();
        assert!(report.passed());
        assert!(report.cases_checked > 0);
        let trivial = is_continuous_check(
            &ValuationDescriptor::Trivial,
            &three,
            &gammas,
            &centers,
            &zs,
            10,
        )
        .unwrap();
        assert!(!trivial.passed());
        let v2 = ValuationDescriptor::padic(2).unwrap();
        assert!(
            !is_continuous_check(&v2, &three, &gammas, &centers, &zs, 10)
                .unwrap()
                .passed()
        );
    }

    fn arb_rat() -> impl Strategy<Value = RingElement> {
        (-400i64..400, 1i64..400).prop_map(|(n, d)| r(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = RingElement> {
        proptest::collection::vec((-30i64..30, 1i64..9), 0..7)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| q(n, d)).collect()).into())
    }

    proptest! {
        #[test]
        fn padic_axioms(x in arb_rat(), y in arb_rat(), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
            let v = ValuationDescriptor::padic(p).unwrap();
            prop_assert!(check_axioms(&v, &[(x, y)]).unwrap().passed());
        }

        #[test]
        fn gauss_and_xadic_axioms(f in arb_poly(), g in arb_poly(), n in -3i64..3, d in 1i64..4) {
            let pairs = [(f, g)];
            let gauss = ValuationDescriptor::gauss(2, q(n, d), q(d, 2)).unwrap();
            prop_assert!(check_axioms(&gauss, &pairs).unwrap().passed());
            prop_assert!(check_axioms(&ValuationDescriptor::XAdic, &pairs).unwrap().passed());
            prop_assert!(check_axioms(&ValuationDescriptor::Trivial, &pairs).unwrap().passed());
        }

        #[test]
        fn equivalence_is_an_equivalence(pairs in proptest::collection::vec((arb_rat(), arb_rat()), 1..6),
                                         a in 1i64..5, b in 1i64..5) {
            let v = ValuationDescriptor::padic(3).unwrap();
            let va = ValuationDescriptor::rescaled(v.clone(), q(a, 1)).unwrap();
            let vb = ValuationDescriptor::rescaled(v.clone(), q(1, b)).unwrap();
            let w = ValuationDescriptor::padic(5).unwrap();
            prop_assert!(equivalent(&v, &v, &pairs).unwrap().equivalent);
            prop_assert_eq!(equivalent(&va, &vb, &pairs).unwrap().equivalent,
                            equivalent(&vb, &va, &pairs).unwrap().equivalent);
            prop_assert!(equivalent(&va, &vb, &pairs).unwrap().equivalent);
            prop_assert!(!equivalent(&va, &w, &pairs).unwrap().equivalent);
            // sampled route agrees with the exact decision on same-prime pairs
            prop_assert!(preorder_disagreement(&va, &vb, &pairs).unwrap().is_none());
        }
    }
}
