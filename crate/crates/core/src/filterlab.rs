//! Filters and topologies on finite carriers, with exhaustive checks of the
//! lattice identities relating pushforward, pullback, products and
//! neighbourhood filters.
//!
//! Subsets are bitmasks over element indices. A family of subsets is a
//! 512-bit set indexed by mask, enough for product carriers of up to nine
//! points. The improper filter (containing ∅) is an ordinary value.
//!
//! Two evaluation routes exist. The family route follows the set-theoretic
//! definitions literally. The kernel route uses the fact that on a finite
//! carrier every filter is the principal filter of its kernel, and every
//! neighbourhood filter is principal on the minimal open set; it is used for
//! the large exhaustive search and is cross-checked against the family route.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub const MAX_CARRIER: usize = 5;
pub const MAX_PRODUCT_CARRIER: usize = 9;
pub const MAX_IDENTITY_SIZE: usize = 3;

pub type Subset = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("carrier size {size} outside 1..={max}")]
    CarrierSize { size: usize, max: usize },
    #[error("carrier mismatch: {left} vs {right} points")]
    CarrierMismatch { left: usize, right: usize },
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("invalid function table: {0}")]
    BadFunction(String),
    #[error("point {point} outside carrier of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("requested size {requested} exceeds budget {max}")]
    BudgetExceeded { requested: usize, max: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// The carrier `{0, …, size−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteCarrier {
    size: usize,
}

impl FiniteCarrier {
    pub fn new(size: usize) -> Result<Self, FilterError> {
        if size == 0 || size > MAX_CARRIER {
            return Err(FilterError::CarrierSize {
                size,
                max: MAX_CARRIER,
            });
        }
        Ok(FiniteCarrier { size })
    }

    /// Carrier of pairs, `(a, b) ↦ a·|right| + b`.
    pub fn product(left: FiniteCarrier, right: FiniteCarrier) -> Result<Self, FilterError> {
        let size = left.size * right.size;
        if size > MAX_PRODUCT_CARRIER {
            return Err(FilterError::CarrierSize {
                size,
                max: MAX_PRODUCT_CARRIER,
            });
        }
        Ok(FiniteCarrier { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full(&self) -> Subset {
        ((1u32 << self.size) - 1) as Subset
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        0..=self.full()
    }

    fn check_point(&self, x: usize) -> Result<(), FilterError> {
        if x >= self.size {
            return Err(FilterError::PointOutOfRange {
                point: x,
                size: self.size,
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &FiniteCarrier) -> Result<(), FilterError> {
        if self != other {
            return Err(FilterError::CarrierMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

fn is_subset(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

/// A set of subsets, as a bitset indexed by mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct SubsetFamily([u64; 8]);

impl SubsetFamily {
    pub fn empty() -> Self {
        SubsetFamily([0; 8])
    }

    pub fn from_sets(sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut family = SubsetFamily::empty();
        for s in sets {
            family.insert(s);
        }
        family
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.0[(s >> 6) as usize] >> (s & 63) & 1 == 1
    }

    pub fn insert(&mut self, s: Subset) {
        self.0[(s >> 6) as usize] |= 1 << (s & 63);
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| (i * 64 + b) as Subset)
        })
    }

    /// Members with no proper subset in the family.
    pub fn minimal_members(&self) -> Vec<Subset> {
        self.iter()
            .filter(|&m| {
                let mut sub = m;
                while sub != 0 {
                    sub = (sub - 1) & m;
                    if self.contains(sub) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }

    /// All subsets of the carrier containing some member.
    pub fn upward_closure(&self, carrier: FiniteCarrier) -> SubsetFamily {
        let minimal = self.minimal_members();
        SubsetFamily::from_sets(
            carrier
                .subsets()
                .filter(|&s| minimal.iter().any(|&g| is_subset(g, s))),
        )
    }
}

/// A function between finite carriers, as a lookup table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    domain: FiniteCarrier,
    codomain: FiniteCarrier,
    map: Vec<usize>,
}

impl FunctionTable {
    pub fn new(
        domain: FiniteCarrier,
        codomain: FiniteCarrier,
        map: Vec<usize>,
    ) -> Result<Self, FilterError> {
        if map.len() != domain.size {
            return Err(FilterError::BadFunction(format!(
                "table has {} entries for a domain of {} points",
                map.len(),
                domain.size
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= codomain.size) {
            return Err(FilterError::BadFunction(format!(
                "value {y} outside codomain"
            )));
        }
        Ok(FunctionTable {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(carrier: FiniteCarrier) -> Self {
        FunctionTable {
            domain: carrier,
            codomain: carrier,
            map: (0..carrier.size).collect(),
        }
    }

    pub fn constant(
        domain: FiniteCarrier,
        codomain: FiniteCarrier,
        y: usize,
    ) -> Result<Self, FilterError> {
        Self::new(domain, codomain, vec![y; domain.size])
    }

    pub fn left_projection(left: FiniteCarrier, right: FiniteCarrier) -> Result<Self, FilterError> {
        let product = FiniteCarrier::product(left, right)?;
        Self::new(
            product,
            left,
            (0..product.size).map(|i| i / right.size).collect(),
        )
    }

    pub fn right_projection(
        left: FiniteCarrier,
        right: FiniteCarrier,
    ) -> Result<Self, FilterError> {
        let product = FiniteCarrier::product(left, right)?;
        Self::new(
            product,
            right,
            (0..product.size).map(|i| i % right.size).collect(),
        )
    }

    /// All `|codomain|^|domain|` functions.
    pub fn all(domain: FiniteCarrier, codomain: FiniteCarrier) -> Vec<FunctionTable> {
        let count = codomain.size.pow(domain.size as u32);
        (0..count)
            .map(|mut code| {
                let map = (0..domain.size)
                    .map(|_| {
                        let y = code % codomain.size;
                        code /= codomain.size;
                        y
                    })
                    .collect();
                FunctionTable {
                    domain,
                    codomain,
                    map,
                }
            })
            .collect()
    }

    pub fn domain(&self) -> FiniteCarrier {
        self.domain
    }

    pub fn codomain(&self) -> FiniteCarrier {
        self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn preimage(&self, s: Subset) -> Subset {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &y)| s >> y & 1 == 1)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    pub fn image(&self, s: Subset) -> Subset {
        self.map
            .iter()
            .enumerate()
            .filter(|(x, _)| s >> x & 1 == 1)
            .fold(0, |acc, (_, &y)| acc | 1 << y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FunctionTable) -> Result<FunctionTable, FilterError> {
        inner.codomain.check_same(&self.domain)?;
        Ok(FunctionTable {
            domain: inner.domain,
            codomain: self.codomain,
            map: inner.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    /// `z ↦ (f z, g z)`.
    pub fn pair(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable, FilterError> {
        f.domain.check_same(&g.domain)?;
        let codomain = FiniteCarrier::product(f.codomain, g.codomain)?;
        Ok(FunctionTable {
            domain: f.domain,
            codomain,
            map: (0..f.domain.size)
                .map(|z| f.map[z] * g.codomain.size + g.map[z])
                .collect(),
        })
    }
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.map.iter().map(|y| y.to_string()).collect();
        write!(f, "[{}]", values.join(","))
    }
}

fn fmt_subset(s: Subset) -> String {
    let points: Vec<String> = (0..16)
        .filter(|i| s >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", points.join(","))
}

/// A filter on a finite carrier, stored as its full family of members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFilter {
    carrier: FiniteCarrier,
    family: SubsetFamily,
}

impl FiniteFilter {
    pub fn from_family(carrier: FiniteCarrier, family: SubsetFamily) -> Result<Self, FilterError> {
        if !family.contains(carrier.full()) {
            return Err(FilterError::NotAFilter("missing the whole carrier".into()));
        }
        if family.iter().any(|s| s > carrier.full()) {
            return Err(FilterError::NotAFilter("member outside the carrier".into()));
        }
        let members: Vec<Subset> = family.iter().collect();
        for &a in &members {
            for &b in &members {
                if !family.contains(a & b) {
                    return Err(FilterError::NotAFilter(format!(
                        "{} ∩ {} missing",
                        fmt_subset(a),
                        fmt_subset(b)
                    )));
                }
            }
            for s in carrier.subsets() {
                if is_subset(a, s) && !family.contains(s) {
                    return Err(FilterError::NotAFilter(format!(
                        "superset {} of {} missing",
                        fmt_subset(s),
                        fmt_subset(a)
                    )));
                }
            }
        }
        Ok(FiniteFilter { carrier, family })
    }

    /// The smallest filter containing `sets`.
    pub fn generated_by(carrier: FiniteCarrier, sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut family = SubsetFamily::from_sets(std::iter::once(carrier.full()).chain(sets));
        loop {
            let members: Vec<Subset> = family.iter().collect();
            let before = family;
            for &a in &members {
                for &b in &members {
                    family.insert(a & b);
                }
            }
            if family == before {
                break;
            }
        }
        FiniteFilter {
            carrier,
            family: family.upward_closure(carrier),
        }
    }

    pub fn principal(carrier: FiniteCarrier, s: Subset) -> Self {
        FiniteFilter {
            carrier,
            family: SubsetFamily::from_sets(carrier.subsets().filter(|&t| is_subset(s, t))),
        }
    }

    /// The top element `{X}`.
    pub fn top(carrier: FiniteCarrier) -> Self {
        Self::principal(carrier, carrier.full())
    }

    /// The bottom element: every subset, including ∅.
    pub fn improper(carrier: FiniteCarrier) -> Self {
        Self::principal(carrier, 0)
    }

    pub fn carrier(&self) -> FiniteCarrier {
        self.carrier
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.family
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.family.contains(s)
    }

    pub fn is_proper(&self) -> bool {
        !self.family.contains(0)
    }

    /// Intersection of all members.
    pub fn kernel(&self) -> Subset {
        self.family
            .iter()
            .fold(self.carrier.full(), |acc, s| acc & s)
    }

    /// `self ≤ other`: `other ⊆ self` as families.
    pub fn leq(&self, other: &FiniteFilter) -> Result<bool, FilterError> {
        self.carrier.check_same(&other.carrier)?;
        Ok(other.family.is_subfamily_of(&self.family))
    }

    /// Greatest lower bound: generated by `A ∩ B`, `A ∈ self`, `B ∈ other`.
    pub fn inf(&self, other: &FiniteFilter) -> Result<FiniteFilter, FilterError> {
        self.carrier.check_same(&other.carrier)?;
        let left = self.family.minimal_members();
        let right = other.family.minimal_members();
        let meets =
            SubsetFamily::from_sets(left.iter().flat_map(|&a| right.iter().map(move |&b| a & b)));
        Ok(FiniteFilter {
            carrier: self.carrier,
            family: meets.upward_closure(self.carrier),
        })
    }

    /// `{S ⊆ Y | f⁻¹(S) ∈ F}`.
    pub fn pushforward(&self, f: &FunctionTable) -> Result<FiniteFilter, FilterError> {
        self.carrier.check_same(&f.domain)?;
        Ok(FiniteFilter {
            carrier: f.codomain,
            family: SubsetFamily::from_sets(
                f.codomain
                    .subsets()
                    .filter(|&s| self.contains(f.preimage(s))),
            ),
        })
    }

    /// `{S ⊆ X | ∃ T ∈ G, f⁻¹(T) ⊆ S}`.
    pub fn pullback(&self, f: &FunctionTable) -> Result<FiniteFilter, FilterError> {
        self.carrier.check_same(&f.codomain)?;
        let preimages = SubsetFamily::from_sets(self.family.iter().map(|t| f.preimage(t)));
        Ok(FiniteFilter {
            carrier: f.domain,
            family: preimages.upward_closure(f.domain),
        })
    }

    /// `inf(pr₁* F, pr₂* G)` on the product carrier.
    pub fn product(&self, other: &FiniteFilter) -> Result<FiniteFilter, FilterError> {
        let pr1 = FunctionTable::left_projection(self.carrier, other.carrier)?;
        let pr2 = FunctionTable::right_projection(self.carrier, other.carrier)?;
        self.pullback(&pr1)?.inf(&other.pullback(&pr2)?)
    }
}

impl fmt::Display for FiniteFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.family.iter().map(fmt_subset).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// All filters on a carrier, generated by closing `{X}` under adjoining one
/// set at a time; memoized per size.
pub fn all_filters(carrier: FiniteCarrier) -> &'static [FiniteFilter] {
    static CACHE: [OnceLock<Vec<FiniteFilter>>; MAX_CARRIER + 1] =
        [const { OnceLock::new() }; MAX_CARRIER + 1];
    CACHE[carrier.size].get_or_init(|| {
        let mut found = vec![FiniteFilter::top(carrier)];
        let mut frontier = found.clone();
        while let Some(filter) = frontier.pop() {
            for s in carrier.subsets() {
                if filter.contains(s) {
                    continue;
                }
                let next = FiniteFilter::generated_by(
                    carrier,
                    filter.family.iter().chain(std::iter::once(s)),
                );
                if !found.contains(&next) {
                    found.push(next);
                    frontier.push(next);
                }
            }
        }
        found.sort_by_key(|f| f.family.0);
        found
    })
}

/// A topology on a finite carrier, stored as its family of open sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    carrier: FiniteCarrier,
    opens: SubsetFamily,
}

impl FiniteTopology {
    pub fn from_opens(carrier: FiniteCarrier, opens: SubsetFamily) -> Result<Self, FilterError> {
        if !opens.contains(0) || !opens.contains(carrier.full()) {
            return Err(FilterError::NotATopology(
                "must contain ∅ and the carrier".into(),
            ));
        }
        let members: Vec<Subset> = opens.iter().collect();
        if members.iter().any(|&s| s > carrier.full()) {
            return Err(FilterError::NotATopology(
                "open set outside the carrier".into(),
            ));
        }
        for &a in &members {
            for &b in &members {
                if !opens.contains(a & b) || !opens.contains(a | b) {
                    return Err(FilterError::NotATopology(format!(
                        "not closed under ∪/∩ at {}, {}",
                        fmt_subset(a),
                        fmt_subset(b)
                    )));
                }
            }
        }
        Ok(FiniteTopology { carrier, opens })
    }

    pub fn discrete(carrier: FiniteCarrier) -> Self {
        FiniteTopology {
            carrier,
            opens: SubsetFamily::from_sets(carrier.subsets()),
        }
    }

    pub fn indiscrete(carrier: FiniteCarrier) -> Self {
        FiniteTopology {
            carrier,
            opens: SubsetFamily::from_sets([0, carrier.full()]),
        }
    }

    /// Opens `∅, {0}, {0,1}` on two points.
    pub fn sierpinski() -> Self {
        FiniteTopology {
            carrier: FiniteCarrier { size: 2 },
            opens: SubsetFamily::from_sets([0b00, 0b01, 0b11]),
        }
    }

    /// The topology whose opens are the up-sets of a preorder, given as
    /// `leq[x]` = bitmask of `{y | x ≤ y}`.
    fn from_preorder(carrier: FiniteCarrier, up: &[Subset]) -> Self {
        let opens = carrier
            .subsets()
            .filter(|&s| (0..carrier.size).all(|x| s >> x & 1 == 0 || is_subset(up[x], s)));
        FiniteTopology {
            carrier,
            opens: SubsetFamily::from_sets(opens),
        }
    }

    /// Coarsest topology containing every set of `sets`.
    pub fn generated_by(carrier: FiniteCarrier, sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut basis = SubsetFamily::from_sets([carrier.full()].into_iter().chain(sets));
        loop {
            let members: Vec<Subset> = basis.iter().collect();
            let before = basis;
            for &a in &members {
                for &b in &members {
                    basis.insert(a & b);
                }
            }
            if basis == before {
                break;
            }
        }
        Self::unions_of(carrier, &basis.iter().collect::<Vec<_>>())
    }

    fn unions_of(carrier: FiniteCarrier, basis: &[Subset]) -> Self {
        let opens = carrier.subsets().filter(|&s| {
            basis
                .iter()
                .filter(|&&b| is_subset(b, s))
                .fold(0, |acc, &b| acc | b)
                == s
        });
        FiniteTopology {
            carrier,
            opens: SubsetFamily::from_sets(opens),
        }
    }

    /// Opens are the unions of boxes `U × V`.
    pub fn product(&self, other: &FiniteTopology) -> Result<FiniteTopology, FilterError> {
        let carrier = FiniteCarrier::product(self.carrier, other.carrier)?;
        let pr1 = FunctionTable::left_projection(self.carrier, other.carrier)?;
        let pr2 = FunctionTable::right_projection(self.carrier, other.carrier)?;
        let mut boxes = Vec::new();
        for u in self.opens.iter() {
            for v in other.opens.iter() {
                boxes.push(pr1.preimage(u) & pr2.preimage(v));
            }
        }
        Ok(Self::unions_of(carrier, &boxes))
    }

    /// `{f⁻¹(U) | U open}`.
    pub fn induced(&self, f: &FunctionTable) -> Result<FiniteTopology, FilterError> {
        self.carrier.check_same(&f.codomain)?;
        Ok(FiniteTopology {
            carrier: f.domain,
            opens: SubsetFamily::from_sets(self.opens.iter().map(|u| f.preimage(u))),
        })
    }

    /// Infimum in the order where finer topologies are smaller: generated by both.
    pub fn inf(&self, other: &FiniteTopology) -> Result<FiniteTopology, FilterError> {
        self.carrier.check_same(&other.carrier)?;
        Ok(Self::generated_by(
            self.carrier,
            self.opens.iter().chain(other.opens.iter()),
        ))
    }

    pub fn carrier(&self) -> FiniteCarrier {
        self.carrier
    }

    pub fn opens(&self) -> &SubsetFamily {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(s)
    }

    /// Intersection of the opens containing `x`.
    pub fn minimal_open(&self, x: usize) -> Subset {
        self.opens
            .iter()
            .filter(|u| u >> x & 1 == 1)
            .fold(self.carrier.full(), |acc, u| acc & u)
    }

    /// `{S | ∃ U open, x ∈ U ⊆ S}`.
    pub fn nhds(&self, x: usize) -> Result<FiniteFilter, FilterError> {
        self.carrier.check_point(x)?;
        let around = SubsetFamily::from_sets(self.opens.iter().filter(|u| u >> x & 1 == 1));
        Ok(FiniteFilter {
            carrier: self.carrier,
            family: around.upward_closure(self.carrier),
        })
    }

    /// `f_* 𝓝x ≤ 𝓝(f x)`.
    pub fn continuous_at(
        &self,
        f: &FunctionTable,
        target: &FiniteTopology,
        x: usize,
    ) -> Result<bool, FilterError> {
        self.nhds(x)?.pushforward(f)?.leq(&target.nhds(f.apply(x))?)
    }
}

/// All topologies on a carrier, one per preorder; memoized per size.
pub fn all_topologies(carrier: FiniteCarrier) -> &'static [FiniteTopology] {
    static CACHE: [OnceLock<Vec<FiniteTopology>>; MAX_CARRIER + 1] =
        [const { OnceLock::new() }; MAX_CARRIER + 1];
    CACHE[carrier.size].get_or_init(|| {
        let n = carrier.size;
        let off_diagonal: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        let mut result = Vec::new();
        for code in 0u32..1 << off_diagonal.len() {
            let mut up: Vec<Subset> = (0..n).map(|x| 1 << x).collect();
            for (bit, &(x, y)) in off_diagonal.iter().enumerate() {
                if code >> bit & 1 == 1 {
                    up[x] |= 1 << y;
                }
            }
            let transitive = (0..n).all(|x| {
                (0..n)
                    .filter(|y| up[x] >> y & 1 == 1)
                    .all(|y| is_subset(up[y], up[x]))
            });
            if transitive {
                result.push(FiniteTopology::from_preorder(carrier, &up));
            }
        }
        result
    })
}

/// The identities checked exhaustively by [`verify_identity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FilterIdentity {
    /// `f_*F ≤ G ⟺ F ≤ f^*G`.
    GaloisConnection,
    /// `(f∘g)_* = f_* ∘ g_*`.
    PushforwardFunctoriality,
    /// `(f∘g)^* = g^* ∘ f^*`.
    PullbackFunctoriality,
    /// `F ≤ F'` implies `f_*F ≤ f_*F'`, and likewise for pullbacks.
    Monotonicity,
    /// `𝓝(x, y) = 𝓝x × 𝓝y`.
    NhdsProduct,
    /// `⟨f,g⟩_* F ≤ f_*F × g_*F`.
    PairPushforward,
    /// Continuity of `f` and `g` at `z₀` gives continuity of `z ↦ (f z, g z)`.
    ProdMk,
    /// Proper `F` with `F × F ≤ 𝓤` converges for the topology of `𝓤`.
    CauchyConvergence,
}

impl FilterIdentity {
    pub const ALL: [FilterIdentity; 8] = [
        FilterIdentity::GaloisConnection,
        FilterIdentity::PushforwardFunctoriality,
        FilterIdentity::PullbackFunctoriality,
        FilterIdentity::Monotonicity,
        FilterIdentity::NhdsProduct,
        FilterIdentity::PairPushforward,
        FilterIdentity::ProdMk,
        FilterIdentity::CauchyConvergence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FilterIdentity::GaloisConnection => "galois",
            FilterIdentity::PushforwardFunctoriality => "pushforward-functoriality",
            FilterIdentity::PullbackFunctoriality => "pullback-functoriality",
            FilterIdentity::Monotonicity => "monotonicity",
            FilterIdentity::NhdsProduct => "nhds-product",
            FilterIdentity::PairPushforward => "pair-pushforward",
            FilterIdentity::ProdMk => "prod-mk",
            FilterIdentity::CauchyConvergence => "cauchy",
        }
    }
}

impl fmt::Display for FilterIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterIdentity {
    type Err = FilterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| FilterError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for FilterIdentity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub identity: FilterIdentity,
    pub carrier_size: usize,
    pub cases_checked: u64,
    pub counterexamples: Vec<String>,
}

impl FilterReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

const MAX_RECORDED: usize = 20;

struct Tally {
    cases: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !holds && self.counterexamples.len() < MAX_RECORDED {
            self.counterexamples.push(describe());
        }
    }

    fn report(self, identity: FilterIdentity, carrier_size: usize) -> FilterReport {
        FilterReport {
            identity,
            carrier_size,
            cases_checked: self.cases,
            counterexamples: self.counterexamples,
        }
    }
}

fn carriers_up_to(max_size: usize) -> Vec<FiniteCarrier> {
    (1..=max_size).map(|n| FiniteCarrier { size: n }).collect()
}

/// Checks `identity` on every carrier of size `1..=max_size` (at most 3).
pub fn verify_identity(
    identity: FilterIdentity,
    max_size: usize,
) -> Result<FilterReport, FilterError> {
    if max_size == 0 {
        return Err(FilterError::CarrierSize {
            size: 0,
            max: MAX_IDENTITY_SIZE,
        });
    }
    if max_size > MAX_IDENTITY_SIZE {
        return Err(FilterError::BudgetExceeded {
            requested: max_size,
            max: MAX_IDENTITY_SIZE,
        });
    }
    let carriers = carriers_up_to(max_size);
    let mut tally = Tally::new();
    match identity {
        FilterIdentity::GaloisConnection => {
            for &x in &carriers {
                for &y in &carriers {
                    for f in FunctionTable::all(x, y) {
                        for big_f in all_filters(x) {
                            let pushed = big_f.pushforward(&f)?;
                            for big_g in all_filters(y) {
                                let lhs = pushed.leq(big_g)?;
                                let rhs = big_f.leq(&big_g.pullback(&f)?)?;
                                tally.check(lhs == rhs, || format!("f={f} F={big_f} G={big_g}"));
                            }
                        }
                    }
                }
            }
        }
        FilterIdentity::PushforwardFunctoriality | FilterIdentity::PullbackFunctoriality => {
            let push = identity == FilterIdentity::PushforwardFunctoriality;
            for &x in &carriers {
                for &y in &carriers {
                    for &z in &carriers {
                        let gs = FunctionTable::all(x, y);
                        for f in FunctionTable::all(y, z) {
                            for g in &gs {
                                let fg = f.compose(g)?;
                                if push {
                                    for big_f in all_filters(x) {
                                        let lhs = big_f.pushforward(&fg)?;
                                        let rhs = big_f.pushforward(g)?.pushforward(&f)?;
                                        tally
                                            .check(lhs == rhs, || format!("f={f} g={g} F={big_f}"));
                                    }
                                } else {
                                    for big_h in all_filters(z) {
                                        let lhs = big_h.pullback(&fg)?;
                                        let rhs = big_h.pullback(&f)?.pullback(g)?;
                                        tally
                                            .check(lhs == rhs, || format!("f={f} g={g} H={big_h}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        FilterIdentity::Monotonicity => {
            for &x in &carriers {
                for &y in &carriers {
                    for f in FunctionTable::all(x, y) {
                        for a in all_filters(x) {
                            for b in all_filters(x) {
                                if a.leq(b)? {
                                    let holds = a.pushforward(&f)?.leq(&b.pushforward(&f)?)?;
                                    tally.check(holds, || format!("push f={f} {a} ≤ {b}"));
                                }
                            }
                        }
                        for a in all_filters(y) {
                            for b in all_filters(y) {
                                if a.leq(b)? {
                                    let holds = a.pullback(&f)?.leq(&b.pullback(&f)?)?;
                                    tally.check(holds, || format!("pull f={f} {a} ≤ {b}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        FilterIdentity::NhdsProduct => {
            for &x in &carriers {
                for &y in &carriers {
                    for s in all_topologies(x) {
                        for t in all_topologies(y) {
                            let product = s.product(t)?;
                            for a in 0..x.size {
                                let na = s.nhds(a)?;
                                for b in 0..y.size {
                                    let lhs = product.nhds(a * y.size + b)?;
                                    let rhs = na.product(&t.nhds(b)?)?;
                                    tally.check(lhs == rhs, || {
                                        format!("point ({a},{b}) in {x:?}×{y:?}")
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        FilterIdentity::PairPushforward => {
            for &z in &carriers {
                for &x in &carriers {
                    for &y in &carriers {
                        let gs = FunctionTable::all(z, y);
                        for f in FunctionTable::all(z, x) {
                            for g in &gs {
                                let h = FunctionTable::pair(&f, g)?;
                                for big_f in all_filters(z) {
                                    let lhs = big_f.pushforward(&h)?;
                                    let rhs =
                                        big_f.pushforward(&f)?.product(&big_f.pushforward(g)?)?;
                                    tally
                                        .check(lhs.leq(&rhs)?, || format!("f={f} g={g} F={big_f}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        FilterIdentity::ProdMk => return check_prod_mk_lemma(max_size),
        FilterIdentity::CauchyConvergence => {
            for &x in &carriers {
                let square = FiniteCarrier::product(x, x)?;
                let diagonal = (0..x.size).fold(0, |acc, a| acc | 1 << (a * x.size + a));
                let entourage_filters: Vec<FiniteFilter> = all_filters_on_product(square)
                    .into_iter()
                    .filter(|u| is_subset(diagonal, u.kernel()))
                    .collect();
                for uniformity in &entourage_filters {
                    for big_f in all_filters(x).iter().filter(|f| f.is_proper()) {
                        if !big_f.product(big_f)?.leq(uniformity)? {
                            continue;
                        }
                        let converges = (0..x.size).any(|p| {
                            big_f
                                .leq(&uniform_nhds(uniformity, x, p))
                                .expect("same carrier")
                        });
                        tally.check(converges, || format!("U={uniformity} F={big_f}"));
                    }
                }
            }
        }
    }
    Ok(tally.report(identity, max_size))
}

/// Filters on a product carrier of up to nine points.
fn all_filters_on_product(carrier: FiniteCarrier) -> Vec<FiniteFilter> {
    carrier
        .subsets()
        .map(|k| FiniteFilter::principal(carrier, k))
        .collect()
}

/// `{S | ∃ V ∈ 𝓤, V[x] ⊆ S}`.
fn uniform_nhds(uniformity: &FiniteFilter, x: FiniteCarrier, p: usize) -> FiniteFilter {
    let sections = SubsetFamily::from_sets(uniformity.family.iter().map(|v| {
        (0..x.size)
            .filter(|&q| v >> (p * x.size + q) & 1 == 1)
            .fold(0, |acc, q| acc | 1 << q)
    }));
    FiniteFilter {
        carrier: x,
        family: sections.upward_closure(x),
    }
}

/// Exhaustive check of the `prod_mk` continuity lemma over all topologies on
/// `Z`, `X`, `Y` of size `1..=budget`, all `f: Z → X`, `g: Z → Y` and `z₀`.
///
/// Uses the kernel route: continuity at `z₀` is `f(K(z₀)) ⊆ K(f z₀)` for
/// minimal open sets `K`, and the product topology has minimal opens
/// `K(x) × K(y)` computed from its open sets.
pub fn check_prod_mk_lemma(budget: usize) -> Result<FilterReport, FilterError> {
    if budget == 0 {
        return Err(FilterError::CarrierSize {
            size: 0,
            max: MAX_IDENTITY_SIZE,
        });
    }
    if budget > MAX_IDENTITY_SIZE {
        return Err(FilterError::BudgetExceeded {
            requested: budget,
            max: MAX_IDENTITY_SIZE,
        });
    }
    let carriers = carriers_up_to(budget);
    let mut tally = Tally::new();
    for &z in &carriers {
        for &x in &carriers {
            for &y in &carriers {
                let fs = FunctionTable::all(z, x);
                let gs = FunctionTable::all(z, y);
                for tx in all_topologies(x) {
                    let kx: Vec<Subset> = (0..x.size).map(|p| tx.minimal_open(p)).collect();
                    for ty in all_topologies(y) {
                        let ky: Vec<Subset> = (0..y.size).map(|p| ty.minimal_open(p)).collect();
                        let product = tx.product(ty)?;
                        let kp: Vec<Subset> = (0..x.size * y.size)
                            .map(|p| product.minimal_open(p))
                            .collect();
                        for tz in all_topologies(z) {
                            let kz: Vec<Subset> = (0..z.size).map(|p| tz.minimal_open(p)).collect();
                            for z0 in 0..z.size {
                                let f_ok: Vec<bool> = fs
                                    .iter()
                                    .map(|f| is_subset(f.image(kz[z0]), kx[f.apply(z0)]))
                                    .collect();
                                let g_ok: Vec<bool> = gs
                                    .iter()
                                    .map(|g| is_subset(g.image(kz[z0]), ky[g.apply(z0)]))
                                    .collect();
                                for (f, &fc) in fs.iter().zip(&f_ok) {
                                    for (g, &gc) in gs.iter().zip(&g_ok) {
                                        let pair_image = (0..z.size)
                                            .filter(|&p| kz[z0] >> p & 1 == 1)
                                            .fold(0 as Subset, |acc, p| {
                                                acc | 1 << (f.apply(p) * y.size + g.apply(p))
                                            });
                                        let target = kp[f.apply(z0) * y.size + g.apply(z0)];
                                        let holds = !(fc && gc) || is_subset(pair_image, target);
                                        tally.check(holds, || format!("z0={z0} f={f} g={g}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(tally.report(FilterIdentity::ProdMk, budget))
}

/// The same lemma through the literal filter definitions; slow, used to
/// validate the kernel route.
pub fn check_prod_mk_lemma_by_families(budget: usize) -> Result<FilterReport, FilterError> {
    if budget > 2 {
        return Err(FilterError::BudgetExceeded {
            requested: budget,
            max: 2,
        });
    }
    let carriers = carriers_up_to(budget);
    let mut tally = Tally::new();
    for &z in &carriers {
        for &x in &carriers {
            for &y in &carriers {
                for tz in all_topologies(z) {
                    for tx in all_topologies(x) {
                        for ty in all_topologies(y) {
                            let product = tx.product(ty)?;
                            for f in FunctionTable::all(z, x) {
                                for g in FunctionTable::all(z, y) {
                                    let h = FunctionTable::pair(&f, &g)?;
                                    for z0 in 0..z.size {
                                        let premise = tz.continuous_at(&f, tx, z0)?
                                            && tz.continuous_at(&g, ty, z0)?;
                                        let holds =
                                            !premise || tz.continuous_at(&h, &product, z0)?;
                                        tally.check(holds, || format!("z0={z0} f={f} g={g}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(tally.report(FilterIdentity::ProdMk, budget))
}
