//! Perfectoid-field checks on two model rings: ℚ_p, and the finite levels
//! `ℤ_p[p^(1/p^k)]` of the ring of integers of the completed perfectoid
//! field `ℚ_p(p^(1/p^∞))^`.
//!
//! A level ring element is a coordinate vector over the basis
//! `ϖ_k^j = p^(j/p^k)`, `0 ≤ j < p^k`, with coordinates in `ℤ/p^N`.
//! Level zero is the ℚ_p model.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::adic::{AdicRingInstance, BoundedSearchBudget, NilpotenceAnswer};
use crate::arith::is_prime;
use crate::gamma::ValueMonoidElement;
use crate::ring::RingElement;

/// Largest coordinate modulus; products of two residues fit in `u128`.
const MODULUS_LIMIT: u128 = 1 << 62;
const MAX_LEVEL_DIMENSION: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerfectoidError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p^N exceeds the coordinate range for p = {p}, N = {precision}")]
    PrecisionTooLarge { p: u64, precision: u32 },
    #[error("level {level} has too many coordinates for p = {p}")]
    LevelTooLarge { p: u64, level: u32 },
    #[error("the zero ring (precision 0) has no Tate structure")]
    ZeroRing,
    #[error("elements belong to different level rings")]
    RingMismatch,
    #[error("cannot parse model {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// `ℤ_p[ϖ]/(p^N)` with `ϖ^(p^k) = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LevelRing {
    p: u64,
    level: u32,
    precision: u32,
    #[serde(skip)]
    modulus: u128,
    #[serde(skip)]
    dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelElement {
    ring: LevelRing,
    coords: Vec<u128>,
}

/// Additive valuation of a level element known modulo `p^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelValuation {
    Exact(BigRational),
    /// The element is zero modulo `p^N`.
    AtLeast(u32),
}

impl LevelRing {
    pub fn new(p: u64, level: u32, precision: u32) -> Result<Self, PerfectoidError> {
        if !is_prime(p) {
            return Err(PerfectoidError::NotPrime(p));
        }
        let modulus = (p as u128)
            .checked_pow(precision)
            .filter(|&m| m <= MODULUS_LIMIT)
            .ok_or(PerfectoidError::PrecisionTooLarge { p, precision })?;
        let dimension = (p as usize)
            .checked_pow(level)
            .filter(|&d| d <= MAX_LEVEL_DIMENSION)
            .ok_or(PerfectoidError::LevelTooLarge { p, level })?;
        Ok(LevelRing {
            p,
            level,
            precision,
            modulus,
            dimension,
        })
    }

    /// Largest `N ≤ 16` with `p^N` in range.
    pub fn default_precision(p: u64) -> u32 {
        (1..=16)
            .take_while(|&n| {
                (p as u128)
                    .checked_pow(n)
                    .is_some_and(|m| m <= MODULUS_LIMIT)
            })
            .last()
            .unwrap_or(1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^k`, the number of coordinates.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero_ring(&self) -> bool {
        self.modulus == 1
    }

    pub fn zero(&self) -> LevelElement {
        LevelElement {
            ring: *self,
            coords: vec![0; self.dimension],
        }
    }

    pub fn one(&self) -> LevelElement {
        self.monomial(1, 0)
    }

    /// `c·ϖ^j`, with `j ≥ p^k` folded through `ϖ^(p^k) = p`.
    pub fn monomial(&self, c: u128, j: usize) -> LevelElement {
        let mut x = self.zero();
        let carries = (j / self.dimension) as u32;
        let scale = (self.p as u128)
            .checked_pow(carries)
            .map_or(0, |s| s % self.modulus);
        x.coords[j % self.dimension] = (c % self.modulus) * scale % self.modulus;
        x
    }

    pub fn from_coords(&self, coords: Vec<u128>) -> Result<LevelElement, PerfectoidError> {
        if coords.len() != self.dimension {
            return Err(PerfectoidError::RingMismatch);
        }
        Ok(LevelElement {
            ring: *self,
            coords: coords.into_iter().map(|c| c % self.modulus).collect(),
        })
    }

    /// `p` as an element.
    pub fn p_element(&self) -> LevelElement {
        self.monomial(self.p as u128, 0)
    }

    /// `ϖ_k = p^(1/p^k)`.
    pub fn uniformizer(&self) -> LevelElement {
        self.monomial(1, 1)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> LevelElement {
        LevelElement {
            ring: *self,
            coords: (0..self.dimension)
                .map(|_| rng.gen_range(0..self.modulus))
                .collect(),
        }
    }

    /// Level `k` embeds in level `k+1` through `ϖ_k = ϖ_(k+1)^p`.
    pub fn embed_into_next(&self, x: &LevelElement) -> Result<LevelElement, PerfectoidError> {
        let next = LevelRing::new(self.p, self.level + 1, self.precision)?;
        let mut y = next.zero();
        for (j, &c) in x.coords.iter().enumerate() {
            y.coords[j * self.p as usize] = c;
        }
        Ok(y)
    }
}

impl LevelElement {
    pub fn ring(&self) -> &LevelRing {
        &self.ring
    }

    pub fn coords(&self) -> &[u128] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &LevelElement) -> Result<(), PerfectoidError> {
        if self.ring != other.ring {
            return Err(PerfectoidError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &LevelElement) -> Result<LevelElement, PerfectoidError> {
        self.check(other)?;
        let m = self.ring.modulus;
        Ok(LevelElement {
            ring: self.ring,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % m)
                .collect(),
        })
    }

    pub fn neg(&self) -> LevelElement {
        let m = self.ring.modulus;
        LevelElement {
            ring: self.ring,
            coords: self.coords.iter().map(|&a| (m - a) % m).collect(),
        }
    }

    pub fn mul(&self, other: &LevelElement) -> Result<LevelElement, PerfectoidError> {
        self.check(other)?;
        let m = self.ring.modulus;
        let d = self.ring.dimension;
        let p = self.ring.p as u128 % m;
        let mut out = vec![0u128; d];
        for (i, &a) in self.coords.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coords.iter().enumerate().filter(|(_, &b)| b != 0) {
                let term = a * b % m;
                if i + j < d {
                    out[i + j] = (out[i + j] + term) % m;
                } else {
                    out[i + j - d] = (out[i + j - d] + term * p % m) % m;
                }
            }
        }
        Ok(LevelElement {
            ring: self.ring,
            coords: out,
        })
    }

    pub fn pow(&self, mut e: u64) -> LevelElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Reduction of every coordinate modulo `p`.
    pub fn reduce_mod_p(&self) -> Result<LevelElement, PerfectoidError> {
        let target = LevelRing::new(self.ring.p, self.ring.level, 1)?;
        target.from_coords(self.coords.clone())
    }

    /// `min_j val_p(c_j) + j/p^k`; distinct `j` have distinct fractional parts.
    pub fn valuation(&self) -> LevelValuation {
        let p = self.ring.p as u128;
        let d = self.ring.dimension as i64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let mut c = c;
                let mut v = 0i64;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                BigRational::new(BigInt::from(v * d + j as i64), BigInt::from(d))
            })
            .min()
            .map_or(
                LevelValuation::AtLeast(self.ring.precision),
                LevelValuation::Exact,
            )
    }

    /// Multiplicative value `p^(−val)`, or `Zero` when zero modulo `p^N`.
    pub fn value(&self) -> ValueMonoidElement {
        match self.valuation() {
            LevelValuation::Exact(q) => ValueMonoidElement::rank1(-q),
            LevelValuation::AtLeast(_) => ValueMonoidElement::Zero,
        }
    }
}

impl fmt::Display for LevelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ring.dimension;
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => c.to_string(),
                _ => {
                    let e = BigRational::new(BigInt::from(j), BigInt::from(d));
                    if c == 1 {
                        format!("p^({e})")
                    } else {
                        format!("{c}*p^({e})")
                    }
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// The models under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerfectoidModel {
    QpModel(u64),
    /// Levels `0..=k_max` of the tower.
    LevelTower {
        p: u64,
        k_max: u32,
    },
}

impl PerfectoidModel {
    pub fn prime(&self) -> u64 {
        match *self {
            PerfectoidModel::QpModel(p) | PerfectoidModel::LevelTower { p, .. } => p,
        }
    }

    pub fn top_level(&self) -> u32 {
        match *self {
            PerfectoidModel::QpModel(_) => 0,
            PerfectoidModel::LevelTower { k_max, .. } => k_max,
        }
    }
}

impl fmt::Display for PerfectoidModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerfectoidModel::QpModel(p) => write!(f, "qp:{p}"),
            PerfectoidModel::LevelTower { p, k_max } => write!(f, "tower:{p}:{k_max}"),
        }
    }
}

impl FromStr for PerfectoidModel {
    type Err = PerfectoidError;

    /// `qp:<p>` or `tower:<p>:<k_max>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PerfectoidError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = s.split(':').collect();
        let prime = |t: &str| -> Result<u64, PerfectoidError> {
            let p: u64 = t.parse().map_err(|_| err("bad prime"))?;
            if !is_prime(p) {
                return Err(PerfectoidError::NotPrime(p));
            }
            Ok(p)
        };
        match parts[..] {
            ["qp", p] => Ok(PerfectoidModel::QpModel(prime(p)?)),
            ["tower", p, k] => Ok(PerfectoidModel::LevelTower {
                p: prime(p)?,
                k_max: k.parse().map_err(|_| err("bad level"))?,
            }),
            _ => Err(err("expected qp:<p> or tower:<p>:<k_max>")),
        }
    }
}

impl Serialize for PerfectoidModel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FieldVerdict {
    Pass { witness: String },
    PassByConstruction { certificate: String },
    SampledPass { samples: usize },
    Fail { witness: String },
}

impl FieldVerdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, FieldVerdict::Fail { .. })
    }
}

/// Tate: `p` is a topologically nilpotent unit; at level `k ≥ 1`, so is `ϖ_k`
/// since `ϖ_k^(p^k) = p`.
pub fn tate_check(ring: &LevelRing) -> Result<FieldVerdict, PerfectoidError> {
    if ring.is_zero_ring() {
        return Err(PerfectoidError::ZeroRing);
    }
    let p = ring.prime();
    let adic = AdicRingInstance::rationals(p).map_err(|_| PerfectoidError::NotPrime(p))?;
    let budget = BoundedSearchBudget { max_power: 8 };
    let answer = adic
        .is_topologically_nilpotent(&RingElement::from(p as i64), budget)
        .map_err(|_| PerfectoidError::NotPrime(p))?;
    if !matches!(answer, NilpotenceAnswer::Yes { .. }) {
        return Ok(FieldVerdict::Fail {
            witness: format!("p = {p} not topologically nilpotent within budget"),
        });
    }
    if ring.level() == 0 {
        return Ok(FieldVerdict::Pass {
            witness: "p".into(),
        });
    }
    let varpi = ring.uniformizer();
    if varpi.pow(ring.dimension() as u64) != ring.p_element() {
        return Ok(FieldVerdict::Fail {
            witness: format!("ϖ^(p^k) ≠ p at level {}", ring.level()),
        });
    }
    Ok(FieldVerdict::Pass {
        witness: format!("p, p^(1/{})", ring.dimension()),
    })
}

/// Searches monomials `p^e·ϖ^j` with valuation in `(0, 1]`, `e ≤ search_depth`,
/// for a pseudo-uniformizer `ϖ` with `ϖ^p | p` in `A°`. A hit is certified by
/// the exact identity `ϖ^p · q = p` with `q ∈ A°` a monomial.
pub fn ramified_check(
    ring: &LevelRing,
    search_depth: u32,
) -> Result<FieldVerdict, PerfectoidError> {
    if ring.is_zero_ring() {
        return Err(PerfectoidError::ZeroRing);
    }
    let p = ring.prime() as usize;
    let d = ring.dimension();
    let mut candidates = 0usize;
    for e in 0..=search_depth as usize {
        for j in 0..d {
            // additive valuation (e·d + j)/d
            let numerator = e * d + j;
            if numerator == 0 || numerator > d {
                continue;
            }
            candidates += 1;
            if p * numerator > d {
                continue;
            }
            let exponent = e * d + j;
            let varpi = ring.monomial(1, exponent);
            let quotient = ring.monomial(1, d - p * numerator);
            if varpi.pow(p as u64).mul(&quotient)? == ring.p_element() {
                return Ok(FieldVerdict::Pass {
                    witness: format!(
                        "ϖ = {varpi}, ϖ^{p} · {} = p",
                        if quotient == ring.one() {
                            "1".to_string()
                        } else {
                            quotient.to_string()
                        }
                    ),
                });
            }
        }
    }
    Ok(FieldVerdict::Fail {
        witness: format!(
            "value group gap: val(A \\ 0) ⊆ (1/{d})ℤ has no element in (0, 1/{p}]; \
             {candidates} candidate(s) with valuation in (0, 1] checked"
        ),
    })
}

/// Frobenius surjectivity on `A°/p` from level `k` to level `k+1`: the
/// transport `c·ϖ_k^j ↦ c·ϖ_(k+1)^j` is a p-th root modulo `p`, verified exactly.
/// At level zero with `to_next = false` the root of `a ∈ F_p` is `a` itself.
pub fn frobenius_surjectivity_check<R: Rng>(
    p: u64,
    k: u32,
    samples: usize,
    to_next: bool,
    rng: &mut R,
) -> Result<FieldVerdict, PerfectoidError> {
    let source = LevelRing::new(p, k, 1)?;
    if !to_next {
        for _ in 0..samples {
            let a = source.random_element(rng);
            if a.pow(p) != a {
                return Ok(FieldVerdict::Fail {
                    witness: format!("{a}^p ≠ {a} mod p"),
                });
            }
        }
        return Ok(FieldVerdict::SampledPass { samples });
    }
    let target = LevelRing::new(p, k + 1, 1)?;
    for _ in 0..samples {
        let a = source.random_element(rng);
        let root = target.from_coords({
            let mut coords = vec![0; target.dimension()];
            coords[..source.dimension()].copy_from_slice(a.coords());
            coords
        })?;
        if root.pow(p) != source.embed_into_next(&a)? {
            return Ok(FieldVerdict::Fail {
                witness: format!("no p-th root found for {a} at level {}", k + 1),
            });
        }
    }
    Ok(FieldVerdict::SampledPass { samples })
}

/// Sampled boundedness of `A°`: integral samples keep valuation `≥ 0` under
/// powers up to `budget`.
pub fn uniform_check<R: Rng>(
    ring: &LevelRing,
    samples: usize,
    budget: u64,
    rng: &mut R,
) -> FieldVerdict {
    let mut elements = vec![ring.one(), ring.uniformizer()];
    elements.extend((0..samples).map(|_| ring.random_element(rng)));
    for x in &elements {
        let mut power = ring.one();
        for n in 1..=budget {
            power = power.mul(x).expect("same ring");
            if let LevelValuation::Exact(v) = power.valuation() {
                if v < BigRational::from_integer(0.into()) {
                    return FieldVerdict::Fail {
                        witness: format!("({x})^{n} has negative valuation"),
                    };
                }
            }
        }
    }
    FieldVerdict::SampledPass {
        samples: elements.len(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerfectoidConfig {
    pub samples: usize,
    pub search_depth: u32,
    pub uniform_budget: u64,
    pub seed: u64,
}

impl Default for PerfectoidConfig {
    fn default() -> Self {
        PerfectoidConfig {
            samples: 1000,
            search_depth: 4,
            uniform_budget: 50,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectoidCheckReport {
    pub model: PerfectoidModel,
    pub precision: u32,
    pub complete: FieldVerdict,
    pub uniform: FieldVerdict,
    pub tate: FieldVerdict,
    pub ramified: FieldVerdict,
    pub frobenius: FieldVerdict,
    pub perfectoid_consistent: bool,
}

impl PerfectoidCheckReport {
    pub fn failing_fields(&self) -> Vec<&'static str> {
        [
            ("complete", &self.complete),
            ("uniform", &self.uniform),
            ("tate", &self.tate),
            ("ramified", &self.ramified),
            ("frobenius", &self.frobenius),
        ]
        .into_iter()
        .filter(|(_, v)| v.is_fail())
        .map(|(name, _)| name)
        .collect()
    }
}

/// Runs every field check. Tate, uniform and ramified run on the top level;
/// Frobenius runs `k → k+1` for each level `k ≤ k_max` of a tower, and as the
/// identity on `F_p` for the ℚ_p model.
pub fn perfectoid_report(
    model: PerfectoidModel,
    config: &PerfectoidConfig,
) -> Result<PerfectoidCheckReport, PerfectoidError> {
    let p = model.prime();
    let precision = LevelRing::default_precision(p);
    let top = LevelRing::new(p, model.top_level(), precision)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let complete = FieldVerdict::PassByConstruction {
        certificate: format!("coordinates are exact residues mod p^{precision}; every p-adic Cauchy sequence is stationary modulo p^{precision}"),
    };
    let tate = tate_check(&top)?;
    let uniform = uniform_check(
        &top,
        config.samples.min(100),
        config.uniform_budget,
        &mut rng,
    );
    let ramified = ramified_check(&top, config.search_depth)?;
    let frobenius = match model {
        PerfectoidModel::QpModel(_) => {
            frobenius_surjectivity_check(p, 0, config.samples, false, &mut rng)?
        }
        PerfectoidModel::LevelTower { k_max, .. } => {
            let mut verdict = FieldVerdict::SampledPass { samples: 0 };
            let mut total = 0;
            for k in 0..=k_max {
                verdict = frobenius_surjectivity_check(p, k, config.samples, true, &mut rng)?;
                if verdict.is_fail() {
                    break;
                }
                total += config.samples;
            }
            if verdict.is_fail() {
                verdict
            } else {
                FieldVerdict::SampledPass { samples: total }
            }
        }
    };
    let mut report = PerfectoidCheckReport {
        model,
        precision,
        complete,
        uniform,
        tate,
        ramified,
        frobenius,
        perfectoid_consistent: false,
    };
    report.perfectoid_consistent = report.failing_fields().is_empty();
    Ok(report)
}
