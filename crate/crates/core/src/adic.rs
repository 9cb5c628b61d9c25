//! I-adic and valuation topologies on computable principal rings.
//!
//! Every shipped instance has a principal ideal of definition with an
//! explicit generator, so membership in `Iⁿ` is exact divisibility.
//! Predicates that are only semi-decidable take a [`BoundedSearchBudget`]
//! and never report a negative answer as a disproof.
//!
//! # The `T · U` openness lemma in ℤ
//!
//! [`mul_t_open_check`] checks instances of "if the ideal generated by `T` is
//! open, then for every open subgroup `U` the ℤ-span of `T · U` is open".
//! For `ℤ` with the 3-adic topology, `T = {2}` and `U = 9ℤ`, the ideal
//! generated by `T` is `2ℤ`, not `ℤ`. Since `2ℤ` contains no `3ⁿℤ`, the
//! hypothesis fails, and the check returns `Refuted`. The lemma is therefore
//! not contradicted. Its conclusion also fails here: `T · U` spans `18ℤ`,
//! which is not open. Both facts are confirmed by a brute-force subgroup
//! closure in the tests. In a PID the check reduces to gcds:
//! `span_ℤ(T·U) = gcd(T)·u`, and `uℤ` is open iff `u` is a unit times a
//! power of the generator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, rat_mod_p, val_int, val_rat};
use crate::gamma::{GammaError, ValueMonoidElement};
use crate::ring::{Poly, RingElement};
use crate::valuation::{ValuationDescriptor, ValuationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{element} is not an element of {ring}")]
    NotInRing { element: String, ring: String },
    #[error("the ball of radius 0 is empty and is not a neighbourhood")]
    ZeroRadius,
    #[error("instance {0} is not supported by this check")]
    UnsupportedInstance(String),
    #[error("cannot parse ring {0:?}; expected int:<p>, poly:<p> or rat:<p>")]
    Parse(String),
    #[error("budget must allow at least one power")]
    EmptyBudget,
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// Ring with a principal ideal of definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdicRingInstance {
    /// ℤ with the p-adic topology, `I = (p)`.
    IntWithP(u64),
    /// F_p[X] with the X-adic topology, `I = (X)`.
    PolyOverFp(u64),
    /// ℚ with the p-adic topology; ring of definition ℤ_(p), `I = pℤ_(p)`.
    RationalsWithPAdicTopology(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedSearchBudget {
    pub max_power: u32,
}

impl BoundedSearchBudget {
    pub fn new(max_power: u32) -> Result<Self, AdicError> {
        if max_power == 0 {
            return Err(AdicError::EmptyBudget);
        }
        Ok(BoundedSearchBudget { max_power })
    }
}

impl std::fmt::Display for AdicRingInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdicRingInstance::IntWithP(p) => write!(f, "int:{p}"),
            AdicRingInstance::PolyOverFp(p) => write!(f, "poly:{p}"),
            AdicRingInstance::RationalsWithPAdicTopology(p) => write!(f, "rat:{p}"),
        }
    }
}

impl std::str::FromStr for AdicRingInstance {
    type Err = AdicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, p) = s
            .split_once(':')
            .ok_or_else(|| AdicError::Parse(s.to_string()))?;
        let p: u64 = p.parse().map_err(|_| AdicError::Parse(s.to_string()))?;
        match kind {
            "int" => AdicRingInstance::int(p),
            "poly" => AdicRingInstance::poly(p),
            "rat" => AdicRingInstance::rationals(p),
            _ => Err(AdicError::Parse(s.to_string())),
        }
    }
}

/// Polynomial over F_p, coefficients in `0..p`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("nonzero divisor");
        let lead_inv = crate::arith::inv_mod_prime(divisor.coeffs[d], self.p).expect("field");
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let factor = r[top] * lead_inv % self.p;
            if factor != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + i;
                    r[idx] = (r[idx] + self.p - factor * c % self.p) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(self.p, r)
    }

    /// Monic gcd; zero if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let inv = crate::arith::inv_mod_prime(a.coeffs[d], a.p).expect("field");
                FpPoly::new(a.p, a.coeffs.iter().map(|c| c * inv).collect())
            }
        }
    }

    /// `Some(k)` when the polynomial is a nonzero constant times `X^k`.
    pub fn monomial_degree(&self) -> Option<usize> {
        let order = self.order()?;
        (order == self.degree()?).then_some(order)
    }
}

/// Topologically nilpotent: witnesses `n ↦ k(n)` with `x^k(n) ∈ Iⁿ`, minimal `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum NilpotenceAnswer {
    Yes {
        witnesses: Vec<(u32, u32)>,
    },
    /// No witness up to the budget. Not a disproof.
    NoWithinBudget {
        reached: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum PowerBoundedAnswer {
    Yes,
    /// `x^k` has additive valuation at most `-n`: the powers leave `p^(1-n)·A₀`.
    NoEvidence {
        n: u32,
        k: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MulTOpenOutcome {
    /// `Iⁿ ⊆ span(T · U)` with `n` minimal.
    Verified {
        n: u32,
        span_generator: String,
    },
    /// A hypothesis of the lemma fails for this instance.
    Refuted {
        reason: String,
    },
    Inconclusive,
}

impl AdicRingInstance {
    pub fn int(p: u64) -> Result<Self, AdicError> {
        Self::checked(p, AdicRingInstance::IntWithP(p))
    }

    pub fn poly(p: u64) -> Result<Self, AdicError> {
        Self::checked(p, AdicRingInstance::PolyOverFp(p))
    }

    pub fn rationals(p: u64) -> Result<Self, AdicError> {
        Self::checked(p, AdicRingInstance::RationalsWithPAdicTopology(p))
    }

    fn checked(p: u64, instance: Self) -> Result<Self, AdicError> {
        if is_prime(p) {
            Ok(instance)
        } else {
            Err(AdicError::NotPrime(p))
        }
    }

    pub fn prime(&self) -> u64 {
        match *self {
            AdicRingInstance::IntWithP(p)
            | AdicRingInstance::PolyOverFp(p)
            | AdicRingInstance::RationalsWithPAdicTopology(p) => p,
        }
    }

    /// Generator of the ideal of definition.
    pub fn ideal_generator(&self) -> RingElement {
        match self {
            AdicRingInstance::PolyOverFp(_) => RingElement::x(),
            _ => RingElement::from(self.prime() as i64),
        }
    }

    fn not_in_ring(&self, x: &RingElement) -> AdicError {
        AdicError::NotInRing {
            element: x.to_string(),
            ring: self.to_string(),
        }
    }

    fn reduce_element(&self, x: &RingElement) -> Result<FpPoly, AdicError> {
        let p = self.prime();
        let poly = x.to_poly().ok_or_else(|| self.not_in_ring(x))?;
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| rat_mod_p(c, p))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| self.not_in_ring(x))?;
        Ok(FpPoly::new(p, coeffs))
    }

    /// "Order" of `x` with respect to the ideal of definition: the largest `n`
    /// with `x ∈ Iⁿ`, `None` for zero. Negative for ℚ elements outside ℤ_(p).
    fn ideal_order(&self, x: &RingElement) -> Result<Option<i64>, AdicError> {
        let p = self.prime();
        match self {
            AdicRingInstance::IntWithP(_) => {
                let n = x.as_integer().ok_or_else(|| self.not_in_ring(x))?;
                Ok(val_int(&n, p))
            }
            AdicRingInstance::PolyOverFp(_) => {
                Ok(self.reduce_element(x)?.order().map(|o| o as i64))
            }
            AdicRingInstance::RationalsWithPAdicTopology(_) => {
                let q = x.as_rational().ok_or_else(|| self.not_in_ring(x))?;
                Ok(val_rat(q, p))
            }
        }
    }

    /// Decides `x ∈ Iⁿ`. For ℚ this is `x ∈ pⁿℤ_(p)`.
    pub fn in_ideal_power(&self, x: &RingElement, n: u32) -> Result<bool, AdicError> {
        Ok(match self.ideal_order(x)? {
            None => true,
            Some(order) => order >= n as i64,
        })
    }

    /// Searches `k ≤ max_power` with `x^k ∈ Iⁿ` for every `n ≤ max_power`.
    pub fn is_topologically_nilpotent(
        &self,
        x: &RingElement,
        budget: BoundedSearchBudget,
    ) -> Result<NilpotenceAnswer, AdicError> {
        let mut witnesses = Vec::new();
        let mut power = x.clone();
        let mut k = 1u32;
        for n in 1..=budget.max_power {
            while !self.in_ideal_power(&power, n)? {
                if k >= budget.max_power {
                    return Ok(NilpotenceAnswer::NoWithinBudget { reached: n - 1 });
                }
                power = &power * x;
                k += 1;
            }
            witnesses.push((n, k));
        }
        Ok(NilpotenceAnswer::Yes { witnesses })
    }

    /// Power-boundedness through the valuation bound `v(x) ≤ 1`.
    ///
    /// In ℤ and F_p[X] the ring of definition is the whole ring, so every
    /// element is power-bounded. In ℚ the answer is exact: `x` is
    /// power-bounded iff `x ∈ ℤ_(p)`, and otherwise the evidence exhibits a
    /// power escaping `p^(1-n)ℤ_(p)` for `n = max_power`.
    pub fn is_power_bounded(
        &self,
        x: &RingElement,
        budget: BoundedSearchBudget,
    ) -> Result<PowerBoundedAnswer, AdicError> {
        let order = self.ideal_order(x)?;
        match (self, order) {
            (_, None) => Ok(PowerBoundedAnswer::Yes),
            (AdicRingInstance::RationalsWithPAdicTopology(p), Some(v)) if v < 0 => {
                let v_p = ValuationDescriptor::padic(*p)?;
                debug_assert!(!crate::valuation::is_bounded_by_one(&v_p, x)?);
                let n = budget.max_power;
                let k = (n as u64).div_ceil((-v) as u64) as u32;
                Ok(PowerBoundedAnswer::NoEvidence { n, k })
            }
            _ => Ok(PowerBoundedAnswer::Yes),
        }
    }
}

/// Decides `v(y − x) < γ`.
pub fn valuation_ball_member(
    v: &ValuationDescriptor,
    center: &RingElement,
    gamma: &ValueMonoidElement,
    y: &RingElement,
) -> Result<bool, AdicError> {
    if gamma.is_zero() {
        return Err(AdicError::ZeroRadius);
    }
    Ok(v.eval(&(y - center))?.lt(gamma)?)
}

/// Checks an instance of the `T · U` openness lemma. `u_gen` generates the
/// additive subgroup `U` (for ℚ, `U = u_gen·ℤ_(p)`).
pub fn mul_t_open_check(
    ring: &AdicRingInstance,
    t: &[RingElement],
    u_gen: &RingElement,
) -> Result<MulTOpenOutcome, AdicError> {
    let p = ring.prime();
    match ring {
        AdicRingInstance::IntWithP(_) => {
            let ints = t
                .iter()
                .map(|x| x.as_integer().ok_or_else(|| ring.not_in_ring(x)))
                .collect::<Result<Vec<_>, _>>()?;
            let u = u_gen.as_integer().ok_or_else(|| ring.not_in_ring(u_gen))?;
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let open_exponent = |n: &BigInt| -> Option<u32> {
                let v = val_int(n, p)?;
                let rest = n.abs() / crate::arith::pow_int(p, v as u32);
                rest.is_one().then_some(v as u32)
            };
            let Some(a) = open_exponent(&g) else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: format!("span(T) = {g}Z contains no power of ({p})"),
                });
            };
            let Some(b) = open_exponent(&u) else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: format!("U = {}Z is not an open subgroup", u.abs()),
                });
            };
            Ok(MulTOpenOutcome::Verified {
                n: a + b,
                span_generator: (g.abs() * u.abs()).to_string(),
            })
        }
        AdicRingInstance::PolyOverFp(_) => {
            let polys = t
                .iter()
                .map(|x| ring.reduce_element(x))
                .collect::<Result<Vec<_>, _>>()?;
            let u = ring.reduce_element(u_gen)?;
            let g = polys
                .iter()
                .fold(FpPoly::new(p, vec![]), |acc, x| acc.gcd(x));
            let Some(a) = g.monomial_degree() else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: "span(T) contains no power of (X)".to_string(),
                });
            };
            let Some(b) = u.monomial_degree() else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: "U is not an open subgroup".to_string(),
                });
            };
            Ok(MulTOpenOutcome::Verified {
                n: (a + b) as u32,
                span_generator: format!("X^{}", a + b),
            })
        }
        AdicRingInstance::RationalsWithPAdicTopology(_) => {
            let orders = t
                .iter()
                .map(|x| ring.ideal_order(x))
                .collect::<Result<Vec<_>, _>>()?;
            let Some(a) = orders.into_iter().flatten().min() else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: "span(T) = 0 is not open".to_string(),
                });
            };
            let Some(b) = ring.ideal_order(u_gen)? else {
                return Ok(MulTOpenOutcome::Refuted {
                    reason: "U = 0 is not an open subgroup".to_string(),
                });
            };
            let n = (a + b).max(0) as u32;
            Ok(MulTOpenOutcome::Verified {
                n,
                span_generator: format!("{p}^{}", a + b),
            })
        }
    }
}

/// Rational `p^k` for building ball radii.
pub fn radius(k: i64) -> ValueMonoidElement {
    ValueMonoidElement::rank1(BigRational::from_integer(k.into()))
}

/// Reduction of a polynomial with p-integral coefficients into F_p[X].
pub fn reduce_poly(p: u64, f: &Poly) -> Option<FpPoly> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| rat_mod_p(c, p))
        .collect::<Option<Vec<_>>>()?;
    Some(FpPoly::new(p, coeffs))
}
