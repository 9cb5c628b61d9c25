//! Precision-tracked completions.
//!
//! [`PadicNumber`] is the residue model of ℚ_p: a unit times a power of `p`,
//! known to a stated relative precision, or an explicit zero known only
//! modulo `p^N`. [`CauchySequence`] is an independent model of the same
//! completion built from rational sequences with a modulus of convergence;
//! [`compare_completions`] checks that the canonical map between the two is
//! a valuation-preserving ring morphism.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{
    inv_mod_prime, is_prime, mod_floor_uint, pow_int, pow_rat, pow_uint, split_rat, val_rat,
};
use crate::gamma::ValueMonoidElement;
use crate::ring::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relative precision must be at least 1")]
    ZeroPrecision,
    #[error("insufficient precision: need absolute precision {needed}, have {available} (short by {})", needed - available)]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("evaluation point is not integral (valuation {0})")]
    NonIntegral(i64),
    #[error("function undefined at the truncated input")]
    Undefined,
    #[error("digit form needs 2 <= p <= 36 and positive absolute precision")]
    DigitFormUnavailable,
    #[error("cannot parse p-adic {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("base mismatch between truncated series")]
    BaseMismatch,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
}

/// Inverse of a p-adic unit modulo `p^n` by Newton iteration
/// `x ← x(2 − u·x)`, doubling the precision each step.
pub fn hensel_inverse(u: &BigUint, p: u64, n: u32) -> BigUint {
    let residue = (u % p).to_u64().expect("residue below p");
    let x0 = inv_mod_prime(residue, p).expect("argument must be a p-adic unit");
    let mut x = BigUint::from(x0);
    let mut k = 1u32;
    while k < n {
        k = (2 * k).min(n);
        let m = pow_uint(p, k);
        let ux = (u * &x) % &m;
        let two = BigUint::from(2u32) % &m;
        let correction = (two + &m - ux) % &m;
        x = (x * correction) % &m;
    }
    if n == 0 {
        BigUint::zero()
    } else {
        x % pow_uint(p, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Known to be `≡ 0 mod p^abs`.
    ZeroToPrecision { abs: i64 },
    /// `unit · p^exponent`, `unit` known modulo `p^rel`.
    Unit {
        exponent: i64,
        unit: BigUint,
        rel: u32,
    },
}

/// Element of ℚ_p known to finite precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u64,
    repr: Repr,
}

/// What is known about the valuation of a precision-limited element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ValuationBound {
    Exact(ValueMonoidElement),
    /// The element is indistinguishable from zero; its value is at most this.
    AtMost(ValueMonoidElement),
}

impl PadicNumber {
    fn check_prime(p: u64) -> Result<(), CompletionError> {
        if is_prime(p) {
            Ok(())
        } else {
            Err(CompletionError::NotPrime(p))
        }
    }

    pub fn zero(p: u64, abs: i64) -> Result<Self, CompletionError> {
        Self::check_prime(p)?;
        Ok(PadicNumber {
            p,
            repr: Repr::ZeroToPrecision { abs },
        })
    }

    /// `q` known modulo `p^abs`.
    pub fn from_rational(p: u64, q: &BigRational, abs: i64) -> Result<Self, CompletionError> {
        Self::check_prime(p)?;
        let Some((e, u)) = split_rat(q, p) else {
            return Ok(PadicNumber {
                p,
                repr: Repr::ZeroToPrecision { abs },
            });
        };
        if abs <= e {
            return Ok(PadicNumber {
                p,
                repr: Repr::ZeroToPrecision { abs },
            });
        }
        let rel = u32::try_from(abs - e).expect("precision fits in u32");
        let unit = crate::arith::rat_mod_pow(&u, p, rel).expect("unit part is p-integral");
        Ok(PadicNumber {
            p,
            repr: Repr::Unit {
                exponent: e,
                unit,
                rel,
            },
        })
    }

    /// Nonzero `q` with `rel` significant p-adic digits; zero maps to
    /// `ZeroToPrecision(rel)`.
    pub fn from_rational_rel(p: u64, q: &BigRational, rel: u32) -> Result<Self, CompletionError> {
        if rel == 0 {
            return Err(CompletionError::ZeroPrecision);
        }
        let abs = val_rat(q, p).unwrap_or(0) + rel as i64;
        Self::from_rational(p, q, abs)
    }

    pub fn from_int(p: u64, n: i64, abs: i64) -> Result<Self, CompletionError> {
        Self::from_rational(p, &BigRational::from_integer(n.into()), abs)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::ZeroToPrecision { .. })
    }

    /// Additive valuation; `None` for a zero-to-precision value.
    pub fn exponent(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { exponent, .. } => Some(exponent),
            Repr::ZeroToPrecision { .. } => None,
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            Repr::ZeroToPrecision { .. } => None,
        }
    }

    pub fn relative_precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Unit { rel, .. } => Some(rel),
            Repr::ZeroToPrecision { .. } => None,
        }
    }

    /// The value is known modulo `p^absolute_precision()`.
    pub fn absolute_precision(&self) -> i64 {
        match self.repr {
            Repr::Unit { exponent, rel, .. } => exponent + rel as i64,
            Repr::ZeroToPrecision { abs } => abs,
        }
    }

    /// The canonical rational representative `unit · p^exponent`.
    pub fn to_rational(&self) -> BigRational {
        match &self.repr {
            Repr::ZeroToPrecision { .. } => BigRational::zero(),
            Repr::Unit { exponent, unit, .. } => {
                BigRational::from_integer(BigInt::from_biguint(Sign::Plus, unit.clone()))
                    * pow_rat(self.p, *exponent)
            }
        }
    }

    /// Residue modulo `p^n` of an integral value known at least that far.
    pub fn residue(&self, n: u32) -> Option<BigUint> {
        if self.absolute_precision() < n as i64 || self.exponent().is_some_and(|e| e < 0) {
            return None;
        }
        crate::arith::rat_mod_pow(&self.to_rational(), self.p, n)
    }

    /// Forgets precision beyond `p^abs`.
    pub fn reduce(&self, abs: i64) -> Self {
        if abs >= self.absolute_precision() {
            return self.clone();
        }
        Self::from_rational(self.p, &self.to_rational(), abs).expect("prime already checked")
    }

    /// Equal modulo the smaller of the two absolute precisions.
    pub fn congruent(&self, other: &Self) -> bool {
        let abs = self.absolute_precision().min(other.absolute_precision());
        self.p == other.p && self.reduce(abs) == other.reduce(abs)
    }

    fn same_prime(&self, other: &Self) -> Result<(), CompletionError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CompletionError::PrimeMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    /// Sum known to the smaller absolute precision; cancellation lowers the
    /// relative precision of the result.
    pub fn add(&self, other: &Self) -> Result<Self, CompletionError> {
        self.same_prime(other)?;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let sum = self.to_rational() + other.to_rational();
        Self::from_rational(self.p, &sum, abs)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::ZeroToPrecision { .. } => self.clone(),
            Repr::Unit {
                exponent,
                unit,
                rel,
            } => {
                let m = pow_uint(self.p, *rel);
                let neg = (&m - unit % &m) % &m;
                PadicNumber {
                    p: self.p,
                    repr: Repr::Unit {
                        exponent: *exponent,
                        unit: neg,
                        rel: *rel,
                    },
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CompletionError> {
        self.add(&other.neg())
    }

    /// Product; the relative precision is the smaller of the operands'.
    pub fn mul(&self, other: &Self) -> Result<Self, CompletionError> {
        self.same_prime(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::ZeroToPrecision { abs: a }, Repr::ZeroToPrecision { abs: b }) => {
                Repr::ZeroToPrecision { abs: a + b }
            }
            (Repr::ZeroToPrecision { abs }, Repr::Unit { exponent, .. })
            | (Repr::Unit { exponent, .. }, Repr::ZeroToPrecision { abs }) => {
                Repr::ZeroToPrecision {
                    abs: abs + exponent,
                }
            }
            (
                Repr::Unit {
                    exponent: ea,
                    unit: ua,
                    rel: ra,
                },
                Repr::Unit {
                    exponent: eb,
                    unit: ub,
                    rel: rb,
                },
            ) => {
                let rel = (*ra).min(*rb);
                Repr::Unit {
                    exponent: ea + eb,
                    unit: (ua * ub) % pow_uint(self.p, rel),
                    rel,
                }
            }
        };
        Ok(PadicNumber { p: self.p, repr })
    }

    /// Multiplicative inverse; a zero-to-precision value maps to itself.
    pub fn inv(&self) -> Self {
        match &self.repr {
            Repr::ZeroToPrecision { .. } => self.clone(),
            Repr::Unit {
                exponent,
                unit,
                rel,
            } => PadicNumber {
                p: self.p,
                repr: Repr::Unit {
                    exponent: -exponent,
                    unit: hensel_inverse(unit, self.p, *rel),
                    rel: *rel,
                },
            },
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, CompletionError> {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc =
            Self::from_int(self.p, 1, self.absolute_precision().max(1)).expect("prime checked");
        if let Some(rel) = self.relative_precision() {
            acc = Self::from_rational_rel(self.p, &BigRational::one(), rel).expect("prime checked");
        }
        for _ in 0..n {
            acc = acc.mul(self).expect("same prime");
        }
        acc
    }

    /// Valuation extended to the completion, with values in the same monoid.
    pub fn valuation(&self) -> ValuationBound {
        match self.repr {
            Repr::Unit { exponent, .. } => {
                ValuationBound::Exact(ValueMonoidElement::rank1_int(-exponent))
            }
            Repr::ZeroToPrecision { abs } => {
                ValuationBound::AtMost(ValueMonoidElement::rank1_int(-abs))
            }
        }
    }

    fn digit_char(d: u32) -> char {
        std::char::from_digit(d, 36).expect("digit below 36")
    }

    /// Digit form `…d_{N-1}…d_1d_0.d_{-1}…;p=P;N=N` with the `p^0` digit left
    /// of the point and `N` the absolute precision.
    pub fn to_digits(&self) -> Result<String, CompletionError> {
        let n = self.absolute_precision();
        if self.p > 36 || n < 1 {
            return Err(CompletionError::DigitFormUnavailable);
        }
        let low = self.exponent().map_or(0, |e| e.min(0));
        let scaled = self.to_rational() * pow_rat(self.p, -low);
        let mut value = scaled
            .to_integer()
            .to_biguint()
            .expect("representative is non-negative");
        let mut digits = Vec::new();
        for _ in low..n {
            let (q, r) = value.div_rem(&BigUint::from(self.p));
            digits.push(Self::digit_char(r.to_u32().expect("digit below p")));
            value = q;
        }
        digits.reverse();
        let int_len = n as usize;
        let mut text = String::from("…");
        text.extend(&digits[..int_len]);
        if low < 0 {
            text.push('.');
            text.extend(&digits[int_len..]);
        }
        Ok(format!("{text};p={};N={n}", self.p))
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_digits() {
            Ok(s) => write!(f, "{s}"),
            Err(_) => match &self.repr {
                Repr::ZeroToPrecision { abs } => write!(f, "O({}^{abs})", self.p),
                Repr::Unit {
                    exponent,
                    unit,
                    rel,
                } => {
                    write!(
                        f,
                        "{unit}*{}^{exponent} + O({}^{})",
                        self.p,
                        self.p,
                        exponent + *rel as i64
                    )
                }
            },
        }
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for PadicNumber {
    type Err = CompletionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| CompletionError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s
            .strip_prefix('…')
            .or_else(|| s.strip_prefix("..."))
            .ok_or_else(|| err("expected leading `…`"))?;
        let mut parts = body.split(';');
        let digits = parts.next().unwrap_or_default();
        let p: u64 = parts
            .next()
            .and_then(|t| t.strip_prefix("p="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("expected `;p=<prime>`"))?;
        let n: i64 = parts
            .next()
            .and_then(|t| t.strip_prefix("N="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("expected `;N=<precision>`"))?;
        if parts.next().is_some() {
            return Err(err("trailing fields"));
        }
        if !is_prime(p) || p > 36 {
            return Err(err("p must be a prime at most 36"));
        }
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if n < 1 || int_part.chars().count() as i64 != n {
            return Err(err("the number of integer digits must equal N"));
        }
        if digits.contains('.') && (frac_part.is_empty() || frac_part.ends_with('0')) {
            return Err(err("fractional digits must end in a nonzero digit"));
        }
        let mut value = BigInt::zero();
        for c in int_part.chars().chain(frac_part.chars()) {
            let d = c
                .to_digit(36)
                .filter(|&d| (d as u64) < p && !c.is_ascii_uppercase())
                .ok_or_else(|| err("digit out of range"))?;
            value = value * p + d;
        }
        let q = BigRational::from_integer(value) * pow_rat(p, -(frac_part.len() as i64));
        PadicNumber::from_rational(p, &q, n)
    }
}

/// Valuation of a completion element: exact for determined values, an
/// upper bound for values indistinguishable from zero.
pub fn extend_valuation(x: &PadicNumber) -> ValuationBound {
    x.valuation()
}

type TermFn = dyn Fn(u64) -> BigRational + Send + Sync;
type ModulusFn = dyn Fn(i64) -> u64 + Send + Sync;

/// Rational sequence with a modulus: for `i, j ≥ modulus(k)`,
/// `val_p(a_i − a_j) ≥ k`. Every term is zero or has valuation at least
/// `valuation_floor`.
#[derive(Clone)]
pub struct CauchySequence {
    p: u64,
    terms: Arc<TermFn>,
    modulus: Arc<ModulusFn>,
    valuation_floor: i64,
}

impl fmt::Debug for CauchySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CauchySequence")
            .field("p", &self.p)
            .field("valuation_floor", &self.valuation_floor)
            .finish_non_exhaustive()
    }
}

impl CauchySequence {
    pub fn new(
        p: u64,
        terms: impl Fn(u64) -> BigRational + Send + Sync + 'static,
        modulus: impl Fn(i64) -> u64 + Send + Sync + 'static,
        valuation_floor: i64,
    ) -> Result<Self, CompletionError> {
        PadicNumber::check_prime(p)?;
        Ok(CauchySequence {
            p,
            terms: Arc::new(terms),
            modulus: Arc::new(modulus),
            valuation_floor,
        })
    }

    /// The image of a rational under the dense embedding.
    pub fn constant(p: u64, q: BigRational) -> Result<Self, CompletionError> {
        let floor = val_rat(&q, p).unwrap_or(0);
        Self::new(p, move |_| q.clone(), |_| 0, floor)
    }

    /// Partial sums `Σ_{i<n} c_i p^i` of p-integral coefficients.
    pub fn partial_sums(p: u64, coeffs: Vec<BigRational>) -> Result<Self, CompletionError> {
        let prefix: Vec<BigRational> = coeffs
            .iter()
            .enumerate()
            .scan(BigRational::zero(), |acc, (i, c)| {
                let before = acc.clone();
                *acc += c * pow_rat(p, i as i64);
                Some(before)
            })
            .chain(std::iter::once(
                coeffs
                    .iter()
                    .enumerate()
                    .fold(BigRational::zero(), |acc, (i, c)| {
                        acc + c * pow_rat(p, i as i64)
                    }),
            ))
            .collect();
        let last = prefix.len() as u64 - 1;
        Self::new(
            p,
            move |n| prefix[n.min(last) as usize].clone(),
            |k| k.max(0) as u64,
            0,
        )
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn term(&self, n: u64) -> BigRational {
        (self.terms)(n)
    }

    pub fn modulus(&self, k: i64) -> u64 {
        (self.modulus)(k)
    }

    pub fn valuation_floor(&self) -> i64 {
        self.valuation_floor
    }

    pub fn add(&self, other: &Self) -> Result<Self, CompletionError> {
        if self.p != other.p {
            return Err(CompletionError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        let (ma, mb) = (self.modulus.clone(), other.modulus.clone());
        Self::new(
            self.p,
            move |n| a.term(n) + b.term(n),
            move |k| ma(k).max(mb(k)),
            self.valuation_floor.min(other.valuation_floor),
        )
    }

    /// `a_i b_i − a_j b_j = a_i (b_i − b_j) + b_j (a_i − a_j)` bounds the product's modulus.
    pub fn mul(&self, other: &Self) -> Result<Self, CompletionError> {
        if self.p != other.p {
            return Err(CompletionError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        let (ma, mb) = (self.modulus.clone(), other.modulus.clone());
        let (fa, fb) = (self.valuation_floor, other.valuation_floor);
        Self::new(
            self.p,
            move |n| a.term(n) * b.term(n),
            move |k| ma(k - fb).max(mb(k - fa)),
            fa + fb,
        )
    }
}

/// The image of `s` in the residue model, known modulo `p^n`.
pub fn limit_of_cauchy(s: &CauchySequence, n: i64) -> PadicNumber {
    let index = s.modulus(n);
    PadicNumber::from_rational(s.p, &s.term(index), n).expect("prime checked at construction")
}

/// Random Cauchy sequence `r + Σ_{i<n} c_i p^(i+s) + p^(n+s)·w_n`, with
/// p-integral noise `w_n` so that terms are not plain truncations.
pub fn random_cauchy_sequence(p: u64, rng: &mut impl Rng) -> CauchySequence {
    const LEN: usize = 96;
    let shift: i64 = rng.gen_range(-3..=3);
    let base = {
        let num: i64 = rng.gen_range(-500..=500);
        let den: i64 = coprime_to(p, rng.gen_range(1..=60));
        BigRational::new(num.into(), den.into()) * pow_rat(p, rng.gen_range(-2..=2))
    };
    let coeffs: Vec<BigRational> = (0..LEN)
        .map(|_| BigRational::from_integer(rng.gen_range(0..p).into()))
        .collect();
    let noise: Vec<BigRational> = (0..LEN)
        .map(|_| {
            let num: i64 = rng.gen_range(-40..=40);
            BigRational::new(num.into(), coprime_to(p, rng.gen_range(1..=30)).into())
        })
        .collect();
    let mut partial = vec![base.clone()];
    for (i, c) in coeffs.iter().enumerate() {
        let next = &partial[i] + c * pow_rat(p, i as i64 + shift);
        partial.push(next);
    }
    let floor = val_rat(&base, p).unwrap_or(shift).min(shift);
    CauchySequence::new(
        p,
        move |n| {
            let i = (n as usize).min(LEN);
            let w = if i < LEN {
                noise[i].clone()
            } else {
                BigRational::zero()
            };
            &partial[i] + w * pow_rat(p, i as i64 + shift)
        },
        move |k| (k - shift).clamp(0, LEN as i64) as u64,
        floor,
    )
    .expect("prime supplied by caller")
}

fn coprime_to(p: u64, n: i64) -> i64 {
    let mut n = n.max(1);
    while n % p as i64 == 0 {
        n /= p as i64;
    }
    n
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionViolation {
    pub sample: usize,
    pub property: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionComparisonReport {
    pub prime: u64,
    pub precision: i64,
    pub sequences_checked: usize,
    pub violations: Vec<CompletionViolation>,
}

impl CompletionComparisonReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks on `samples` random pairs of Cauchy sequences that the canonical
/// map to the residue model respects sums, products, the embedding of ℚ,
/// and the valuation, modulo `p^n`.
pub fn compare_completions(
    p: u64,
    n: i64,
    samples: usize,
    rng: &mut impl Rng,
) -> CompletionComparisonReport {
    let mut violations = Vec::new();
    let mut flag = |sample, property| violations.push(CompletionViolation { sample, property });
    for i in 0..samples {
        let a = random_cauchy_sequence(p, rng);
        let b = random_cauchy_sequence(p, rng);

        let sum_limit = limit_of_cauchy(&a.add(&b).expect("same prime"), n);
        let limit_sum = limit_of_cauchy(&a, n)
            .add(&limit_of_cauchy(&b, n))
            .expect("same prime");
        if sum_limit != limit_sum {
            flag(i, "additive");
        }

        // factors are taken far enough out that their product is known mod p^n
        let extra = -(a.valuation_floor().min(0)) - b.valuation_floor().min(0);
        let prod_limit = limit_of_cauchy(&a.mul(&b).expect("same prime"), n);
        let limit_prod = limit_of_cauchy(&a, n + extra)
            .mul(&limit_of_cauchy(&b, n + extra))
            .expect("same prime");
        if limit_prod.absolute_precision() < n || limit_prod.reduce(n) != prod_limit {
            flag(i, "multiplicative");
        }

        let q: BigRational = a.term(0);
        let embedded = limit_of_cauchy(&CauchySequence::constant(p, q.clone()).expect("prime"), n);
        if embedded != PadicNumber::from_rational(p, &q, n).expect("prime") {
            flag(i, "embedding");
        }

        let limit = limit_of_cauchy(&a, n);
        if let ValuationBound::Exact(value) = limit.valuation() {
            for index in [a.modulus(n), a.modulus(n) + 5] {
                let eventual =
                    val_rat(&a.term(index), p).map(|k| ValueMonoidElement::rank1_int(-k));
                if eventual.as_ref() != Some(&value) {
                    flag(i, "valuation");
                }
            }
        }
    }
    CompletionComparisonReport {
        prime: p,
        precision: n,
        sequences_checked: samples,
        violations,
    }
}

/// Extends a function on ℚ to the completion through a caller-supplied
/// modulus of continuity: to know `f(x)` modulo `p^n` it suffices to know
/// `x` modulo `p^modulus(n)`. The function is evaluated on the canonical
/// rational truncation of `x`.
pub fn extend_by_continuity(
    f: impl Fn(&BigRational) -> Option<BigRational>,
    modulus: impl Fn(i64) -> i64,
    x: &PadicNumber,
    n: i64,
) -> Result<PadicNumber, CompletionError> {
    let needed = modulus(n);
    let available = x.absolute_precision();
    if available < needed {
        return Err(CompletionError::InsufficientPrecision { needed, available });
    }
    let value = f(&x.to_rational()).ok_or(CompletionError::Undefined)?;
    PadicNumber::from_rational(x.prime(), &value, n)
}

/// Extends a locally constant function with discrete values: `f` is constant
/// on the ball of absolute precision `radius` around `x`.
pub fn extend_locally_constant<T>(
    f: impl Fn(&BigRational) -> Option<T>,
    radius: i64,
    x: &PadicNumber,
) -> Result<T, CompletionError> {
    let available = x.absolute_precision();
    if available < radius {
        return Err(CompletionError::InsufficientPrecision {
            needed: radius,
            available,
        });
    }
    f(&x.to_rational()).ok_or(CompletionError::Undefined)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesBase {
    Fp(u64),
    Rationals,
}

/// Power series known modulo `X^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    base: SeriesBase,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(
        base: SeriesBase,
        coeffs: Vec<BigRational>,
        precision: usize,
    ) -> Result<Self, CompletionError> {
        if let SeriesBase::Fp(p) = base {
            PadicNumber::check_prime(p)?;
        }
        let mut coeffs = coeffs;
        coeffs.resize(precision, BigRational::zero());
        let coeffs = coeffs
            .into_iter()
            .map(|c| Self::normalize(base, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { base, coeffs })
    }

    fn normalize(base: SeriesBase, c: BigRational) -> Result<BigRational, CompletionError> {
        match base {
            SeriesBase::Rationals => Ok(c),
            SeriesBase::Fp(p) => crate::arith::rat_mod_p(&c, p)
                .map(|r| BigRational::from_integer(r.into()))
                .ok_or(CompletionError::NotInvertible),
        }
    }

    pub fn from_poly(
        base: SeriesBase,
        f: &Poly,
        precision: usize,
    ) -> Result<Self, CompletionError> {
        let mut coeffs = f.coeffs().to_vec();
        coeffs.truncate(precision);
        Self::new(base, coeffs, precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `X`-adic order; `None` when zero to the known precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn same_base(&self, other: &Self) -> Result<(), CompletionError> {
        (self.base == other.base)
            .then_some(())
            .ok_or(CompletionError::BaseMismatch)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CompletionError> {
        self.same_base(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self::new(self.base, coeffs, n)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CompletionError> {
        self.same_base(other)?;
        let n = self.precision().min(other.precision());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Self::new(self.base, coeffs, n)
    }

    /// Product known to the smaller precision; no coefficient beyond it is claimed.
    pub fn mul(&self, other: &Self) -> Result<Self, CompletionError> {
        self.same_base(other)?;
        let n = self.precision().min(other.precision());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.base, coeffs, n)
    }

    /// Inverse by Newton iteration `g ← g(2 − f·g)`; needs an invertible constant term.
    pub fn inv(&self) -> Result<Self, CompletionError> {
        let n = self.precision();
        let c0 = self
            .coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        if c0.is_zero() {
            return Err(CompletionError::NotInvertible);
        }
        let c0_inv = match self.base {
            SeriesBase::Rationals => c0.recip(),
            SeriesBase::Fp(p) => {
                let r = c0.to_integer().to_u64().expect("residue");
                BigRational::from_integer(
                    inv_mod_prime(r, p)
                        .ok_or(CompletionError::NotInvertible)?
                        .into(),
                )
            }
        };
        let mut g = Self::new(self.base, vec![c0_inv], n.min(1))?;
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let f_k = Self::new(self.base, self.coeffs[..k].to_vec(), k)?;
            let g_k = Self::new(self.base, g.coeffs.clone(), k)?;
            let two = Self::new(self.base, vec![BigRational::from_integer(2.into())], k)?;
            g = g_k.mul(&two.sub(&f_k.mul(&g_k)?)?)?;
        }
        Ok(g)
    }

    /// Equality up to the smaller precision.
    pub fn congruent(&self, other: &Self) -> bool {
        let n = self.precision().min(other.precision());
        self.base == other.base && self.coeffs[..n] == other.coeffs[..n]
    }
}

/// Polynomial in the dense subring of ℚ_p⟨X⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TatePolynomial {
    p: u64,
    poly: Poly,
}

impl TatePolynomial {
    pub fn new(p: u64, poly: Poly) -> Result<Self, CompletionError> {
        PadicNumber::check_prime(p)?;
        Ok(TatePolynomial { p, poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// `max_i |c_i|`, in the multiplicative convention.
    pub fn gauss_norm(&self) -> ValueMonoidElement {
        self.poly
            .coeffs()
            .iter()
            .filter_map(|c| val_rat(c, self.p))
            .min()
            .map_or(ValueMonoidElement::Zero, |k| {
                ValueMonoidElement::rank1_int(-k)
            })
    }

    /// Whether the polynomial lies in ℤ_p⟨X⟩.
    pub fn is_integral(&self) -> bool {
        self.poly
            .coeffs()
            .iter()
            .all(|c| crate::arith::is_p_integral(c, self.p))
    }

    /// Horner evaluation at an integral point; the result is known modulo
    /// `p^min(n, precision allowed by a)`.
    pub fn eval_at(&self, a: &PadicNumber, n: i64) -> Result<PadicNumber, CompletionError> {
        if a.prime() != self.p {
            return Err(CompletionError::PrimeMismatch {
                left: self.p,
                right: a.prime(),
            });
        }
        if let Some(e) = a.exponent().filter(|&e| e < 0) {
            return Err(CompletionError::NonIntegral(e));
        }
        let lift = |c: &BigRational| PadicNumber::from_rational(self.p, c, n);
        let mut acc = PadicNumber::zero(self.p, n)?;
        for c in self.poly.coeffs().iter().rev() {
            acc = acc.mul(a)?.add(&lift(c)?)?;
        }
        Ok(acc.reduce(n))
    }
}

/// Reduces an integer to a residue modulo `p^n`; exposed for oracles in tests.
pub fn int_residue(x: &BigInt, p: u64, n: u32) -> BigUint {
    mod_floor_uint(x, &pow_int(p, n).to_biguint().expect("positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pad(p: u64, n: i64, d: i64, abs: i64) -> PadicNumber {
        PadicNumber::from_rational(p, &q(n, d), abs).unwrap()
    }

    /// Extended-gcd inverse, independent of the Newton route.
    fn egcd_inverse(a: i64, m: i64) -> i64 {
        let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
        assert!(e.gcd.is_one());
        e.x.mod_floor(&BigInt::from(m)).to_i64().unwrap()
    }

    #[test]
    fn add_example_with_cancellation() {
        let a = pad(3, 4, 1, 4);
        let b = pad(3, 2, 1, 4);
        let s = a.add(&b).unwrap();
        assert_eq!(s.exponent(), Some(1));
        assert_eq!(s.unit(), Some(&BigUint::from(2u32)));
        assert_eq!(s.absolute_precision(), 4);
        assert_eq!(s.relative_precision(), Some(3));
        assert_eq!(s.residue(4), Some(BigUint::from(6u32)));
        let zero = PadicNumber::zero(3, 10).unwrap();
        assert_eq!(a.add(&zero).unwrap(), a);
        let one = pad(3, 1, 1, 10);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn inverse_examples() {
        let two = pad(5, 2, 1, 4);
        let inv = two.inv();
        assert_eq!(egcd_inverse(2, 625), 313);
        assert_eq!(inv.residue(4), Some(BigUint::from(313u32)));
        assert_eq!(pad(5, 1, 1, 4).inv(), pad(5, 1, 1, 4));
        let z = PadicNumber::zero(5, 4).unwrap();
        assert_eq!(z.inv(), z);
        // x / p has negative exponent and the same relative precision
        let third = pad(3, 1, 3, 3);
        assert_eq!(third.exponent(), Some(-1));
        assert_eq!(third.inv(), pad(3, 3, 1, 5));
    }

    #[test]
    fn hensel_matches_extended_gcd() {
        for p in [2u64, 3, 5, 7, 11] {
            let m = (p as i64).pow(6);
            for a in (1..200).filter(|a| a % p as i64 != 0) {
                let newton = hensel_inverse(&BigUint::from(a as u64), p, 6);
                assert_eq!(
                    newton,
                    BigUint::from(egcd_inverse(a, m) as u64),
                    "p={p} a={a}"
                );
            }
        }
    }

    #[test]
    fn prime_mismatch_is_an_error() {
        let a = pad(3, 1, 1, 4);
        let b = pad(5, 1, 1, 4);
        assert_eq!(
            a.add(&b).unwrap_err(),
            CompletionError::PrimeMismatch { left: 3, right: 5 }
        );
        assert!(a.mul(&b).is_err());
        assert!(matches!(
            PadicNumber::zero(4, 1),
            Err(CompletionError::NotPrime(4))
        ));
    }

    #[test]
    fn digit_form_round_trips() {
        let x = pad(3, -1, 2, 4);
        assert_eq!(x.to_digits().unwrap(), "…1111;p=3;N=4");
        assert_eq!(pad(3, 16, 1, 4).to_digits().unwrap(), "…0121;p=3;N=4");
        assert_eq!(pad(3, 6, 1, 4).to_digits().unwrap(), "…0020;p=3;N=4");
        assert_eq!(pad(3, 7, 9, 2).to_digits().unwrap(), "…00.21;p=3;N=2");
        assert_eq!(
            PadicNumber::zero(3, 3).unwrap().to_digits().unwrap(),
            "…000;p=3;N=3"
        );
        for s in [
            "…0121;p=3;N=4",
            "…00.21;p=3;N=2",
            "…000;p=3;N=3",
            "…a9;p=11;N=2",
        ] {
            let x: PadicNumber = s.parse().unwrap();
            assert_eq!(x.to_digits().unwrap(), s);
        }
        assert_eq!(
            "...0121;p=3;N=4".parse::<PadicNumber>().unwrap(),
            pad(3, 16, 1, 4)
        );
        for bad in [
            "0121;p=3;N=4",
            "…0121;p=3;N=3",
            "…0131;p=3;N=4",
            "…01.10;p=3;N=2",
            "…01;p=4;N=2",
            "…01.;p=3;N=2",
        ] {
            assert!(bad.parse::<PadicNumber>().is_err(), "{bad}");
        }
        assert!(pad(3, 1, 27, 0).to_digits().is_err());
    }

    #[test]
    fn limits_of_cauchy_sequences() {
        let seven = CauchySequence::constant(2, q(7, 1)).unwrap();
        assert_eq!(limit_of_cauchy(&seven, 5), pad(2, 7, 1, 5));

        let ones = CauchySequence::partial_sums(3, vec![q(1, 1); 30]).unwrap();
        let lim = limit_of_cauchy(&ones, 4);
        assert_eq!(lim.residue(4), Some(BigUint::from(40u32)));
        // independent of the chosen index beyond the modulus
        for idx in ones.modulus(4)..20 {
            assert_eq!(
                PadicNumber::from_rational(3, &ones.term(idx), 4).unwrap(),
                lim
            );
        }
        // geometric series: Σ 3^i = 1/(1 - 3)
        let geometric = pad(3, 1, 1, 16).sub(&pad(3, 3, 1, 16)).unwrap().inv();
        assert!(limit_of_cauchy(&ones, 16).congruent(&geometric));
        assert_eq!(pad(3, -1, 2, 4).residue(4), Some(BigUint::from(40u32)));
    }

    #[test]
    fn completions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5] {
            let report = compare_completions(p, 12, 40, &mut rng);
            assert!(report.passed(), "{:?}", report.violations);
        }
    }

    #[test]
    fn continuity_extension_examples() {
        let square = |x: &BigRational| Some(x * x);
        let x = pad(3, 13, 1, 3);
        let y = extend_by_continuity(square, |n| n, &x, 3).unwrap();
        assert_eq!(y.residue(3), Some(BigUint::from(7u32)));
        let id = extend_by_continuity(|x| Some(x.clone()), |n| n, &x, 3).unwrap();
        assert_eq!(id, x);
        let err = extend_by_continuity(square, |n| n + 2, &x, 3).unwrap_err();
        assert_eq!(
            err,
            CompletionError::InsufficientPrecision {
                needed: 5,
                available: 3
            }
        );
        let v3 = |x: &BigRational| val_rat(x, 3);
        assert_eq!(
            extend_locally_constant(v3, 3, &pad(3, 18, 1, 5)).unwrap(),
            2
        );
        assert!(extend_locally_constant(v3, 3, &PadicNumber::zero(3, 5).unwrap()).is_err());
    }

    #[test]
    fn valuation_extension_examples() {
        assert_eq!(
            extend_valuation(&pad(3, 9, 1, 5)),
            ValuationBound::Exact(ValueMonoidElement::rank1_int(-2))
        );
        assert_eq!(
            extend_valuation(&pad(3, 1, 1, 5)),
            ValuationBound::Exact(ValueMonoidElement::rank1_int(0))
        );
        assert_eq!(
            extend_valuation(&PadicNumber::zero(3, 4).unwrap()),
            ValuationBound::AtMost(ValueMonoidElement::rank1_int(-4))
        );
    }

    #[test]
    fn tate_polynomial_examples() {
        let f = TatePolynomial::new(3, Poly::from_ints(&[3, 1])).unwrap();
        assert!(f.gauss_norm().is_one());
        assert!(f.is_integral());
        let zero = TatePolynomial::new(3, Poly::zero()).unwrap();
        assert!(zero.gauss_norm().is_zero());
        let g = TatePolynomial::new(3, Poly::from_ints(&[1, 0, 1])).unwrap();
        let y = g.eval_at(&pad(3, 3, 1, 4), 4).unwrap();
        assert_eq!(y.residue(4), Some(BigUint::from(10u32)));
        assert_eq!(
            g.eval_at(&pad(3, 1, 3, 4), 4).unwrap_err(),
            CompletionError::NonIntegral(-1)
        );
        let h = TatePolynomial::new(3, Poly::new(vec![q(1, 9), q(1, 1)])).unwrap();
        assert_eq!(h.gauss_norm(), ValueMonoidElement::rank1_int(2));
        assert!(!h.is_integral());
    }

    #[test]
    fn series_partial_sums_converge() {
        // 1/(1 - X) over F_5 is Σ X^i; partial sums approach it X-adically
        let base = SeriesBase::Fp(5);
        let n = 12;
        let one_minus_x = TruncatedSeries::from_poly(base, &Poly::from_ints(&[1, -1]), n).unwrap();
        let target = one_minus_x.inv().unwrap();
        assert!(target.coeffs().iter().all(|c| c.is_one()));
        for m in 0..2 * n {
            let partial = Poly::from_ints(&vec![1; m]);
            let s = TruncatedSeries::from_poly(base, &partial, n).unwrap();
            let order = target.sub(&s).unwrap().order();
            if m >= n {
                assert_eq!(order, None);
            } else {
                assert_eq!(order, Some(m));
            }
        }
        let rational =
            TruncatedSeries::from_poly(SeriesBase::Rationals, &Poly::from_ints(&[2, 1]), 6)
                .unwrap();
        let inv = rational.inv().unwrap();
        assert_eq!(inv.coeffs()[3], q(-1, 16));
        assert!(
            TruncatedSeries::from_poly(base, &Poly::from_ints(&[0, 1]), 4)
                .unwrap()
                .inv()
                .is_err()
        );
    }

    fn arb_padic(p: u64) -> impl Strategy<Value = PadicNumber> {
        (-2000i64..2000, 1i64..300, -2i64..3, 6i64..20).prop_map(move |(n, d, s, abs)| {
            PadicNumber::from_rational(p, &(q(n, d) * pow_rat(p, s)), abs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ops_agree_with_rational_oracle(a in arb_padic(3), b in arb_padic(3)) {
            let qa = a.to_rational();
            let qb = b.to_rational();
            let sum = a.add(&b).unwrap();
            prop_assert!(sum.congruent(&PadicNumber::from_rational(3, &(&qa + &qb), sum.absolute_precision()).unwrap()));
            prop_assert_eq!(sum.absolute_precision(), a.absolute_precision().min(b.absolute_precision()));
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod, PadicNumber::from_rational(3, &(&qa * &qb), a.mul(&b).unwrap().absolute_precision()).unwrap());
            if !a.is_zero_to_precision() {
                let one = a.mul(&a.inv()).unwrap();
                prop_assert_eq!(one.exponent(), Some(0));
                prop_assert!(one.unit().unwrap().is_one());
            }
        }

        #[test]
        fn ultrametric_on_determined_values(a in arb_padic(5), b in arb_padic(5)) {
            let s = a.add(&b).unwrap();
            if let (ValuationBound::Exact(va), ValuationBound::Exact(vb), ValuationBound::Exact(vs)) =
                (a.valuation(), b.valuation(), s.valuation()) {
                prop_assert!(vs.le(&va.max(&vb).unwrap()).unwrap());
            }
        }

        #[test]
        fn digits_round_trip(a in arb_padic(3)) {
            if let Ok(text) = a.to_digits() {
                prop_assert_eq!(text.parse::<PadicNumber>().unwrap(), a);
            }
        }

        #[test]
        fn continuity_extension_commutes_with_embedding(n in -300i64..300, d in 1i64..50) {
            let x = q(n, d);
            let prec = 10i64;
            let low = val_rat(&x, 3).unwrap_or(0).min(0);
            let modulus = move |k: i64| k - low;
            let embedded = PadicNumber::from_rational(3, &x, modulus(prec)).unwrap();
            let extended = extend_by_continuity(|y| Some(y * y), modulus, &embedded, prec).unwrap();
            prop_assert_eq!(extended, PadicNumber::from_rational(3, &(&x * &x), prec).unwrap());
        }
    }
}
