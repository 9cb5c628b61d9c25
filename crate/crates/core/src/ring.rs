//! Exact ring elements over ℚ: rationals, polynomials in `X`, and Laurent
//! polynomials, plus a small expression parser for all three.
//!
//! `RingElement` is always stored in the smallest of the nested domains
//! `ℚ ⊂ ℚ[X] ⊂ ℚ[X, X⁻¹]` that contains it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("parse error at byte {pos} in {input:?}: {reason}")]
    Parse {
        input: String,
        pos: usize,
        reason: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by {0} is not exact in the Laurent ring")]
    InexactDivision(String),
    #[error("symbol `p` used without a prime in context")]
    UnboundPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Domain {
    Rationals,
    Polynomials,
    Laurent,
}

/// Dense polynomial over ℚ with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, a: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * a + c)
    }

    /// Coefficients of `f(X + a)`, i.e. the expansion of `f` in powers of `X - a`.
    pub fn taylor_shift(&self, a: &BigRational) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// `X^low * (c_0 + c_1 X + ...)` with `c_0 ≠ 0`; zero is `low = 0` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn new(low: i64, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::default();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of vanishing at `X = 0`; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn top(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: i64) -> BigRational {
        if i < self.low {
            return BigRational::zero();
        }
        self.coeffs
            .get((i - self.low) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficients, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    fn combine(&self, rhs: &Self, f: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        if self.is_zero() && rhs.is_zero() {
            return LaurentPoly::default();
        }
        let low = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => rhs.low,
            (_, true) => self.low,
            _ => self.low.min(rhs.low),
        };
        let top = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => rhs.top(),
            (_, true) => self.top(),
            _ => self.top().max(rhs.top()),
        };
        LaurentPoly::new(
            low,
            (low..=top)
                .map(|i| f(self.coeff(i), rhs.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::default();
        }
        let a = Poly {
            coeffs: self.coeffs.clone(),
        };
        let b = Poly {
            coeffs: rhs.coeffs.clone(),
        };
        LaurentPoly::new(self.low + rhs.low, (&a * &b).coeffs)
    }

    /// Single-term elements are the only units; returns their inverse.
    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.coeffs.len() != 1 {
            return Err(RingError::InexactDivision(
                RingElement::from(self.clone()).to_string(),
            ));
        }
        Ok(LaurentPoly::new(-self.low, vec![self.coeffs[0].recip()]))
    }
}

/// Element of ℚ, ℚ[X] or ℚ[X, X⁻¹], kept in the smallest such ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    Rational(BigRational),
    Poly(Poly),
    Laurent(LaurentPoly),
}

impl From<LaurentPoly> for RingElement {
    fn from(l: LaurentPoly) -> Self {
        if l.is_zero() {
            return RingElement::Rational(BigRational::zero());
        }
        if l.low < 0 {
            return RingElement::Laurent(l);
        }
        if l.low == 0 && l.coeffs.len() == 1 {
            return RingElement::Rational(l.coeffs[0].clone());
        }
        let mut coeffs = vec![BigRational::zero(); l.low as usize];
        coeffs.extend(l.coeffs);
        RingElement::Poly(Poly::new(coeffs))
    }
}

impl From<Poly> for RingElement {
    fn from(p: Poly) -> Self {
        LaurentPoly::new(0, p.coeffs).into()
    }
}

impl From<BigRational> for RingElement {
    fn from(q: BigRational) -> Self {
        RingElement::Rational(q)
    }
}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        RingElement::Rational(BigRational::from_integer(n.into()))
    }
}

impl RingElement {
    pub fn rational(n: i64, d: i64) -> Self {
        RingElement::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn x() -> Self {
        Poly::x().into()
    }

    pub fn zero() -> Self {
        RingElement::from(0)
    }

    pub fn one() -> Self {
        RingElement::from(1)
    }

    pub fn domain(&self) -> Domain {
        match self {
            RingElement::Rational(_) => Domain::Rationals,
            RingElement::Poly(_) => Domain::Polynomials,
            RingElement::Laurent(_) => Domain::Laurent,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RingElement::Rational(q) if q.is_zero())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        match self {
            RingElement::Rational(q) => LaurentPoly::new(0, vec![q.clone()]),
            RingElement::Poly(p) => LaurentPoly::new(0, p.coeffs.clone()),
            RingElement::Laurent(l) => l.clone(),
        }
    }

    /// The element as a polynomial, if it lies in ℚ[X].
    pub fn to_poly(&self) -> Option<Poly> {
        match self {
            RingElement::Rational(q) => Some(Poly::constant(q.clone())),
            RingElement::Poly(p) => Some(p.clone()),
            RingElement::Laurent(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RingElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The element as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn pow(&self, n: i64) -> Result<Self, RingError> {
        let base = if n < 0 {
            self.to_laurent().inverse()?
        } else {
            self.to_laurent()
        };
        let mut acc = LaurentPoly::new(0, vec![BigRational::one()]);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc.into())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RingError> {
        let inv = rhs.to_laurent().inverse()?;
        Ok(self.to_laurent().mul(&inv).into())
    }

    pub fn parse(input: &str) -> Result<Self, RingError> {
        Parser::new(input, None).parse_all()
    }

    /// Like [`RingElement::parse`], with the symbol `p` bound to `prime`.
    pub fn parse_with_prime(input: &str, prime: u64) -> Result<Self, RingError> {
        Parser::new(input, Some(prime)).parse_all()
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.to_laurent()
            .combine(&rhs.to_laurent(), |a, b| a + b)
            .into()
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.to_laurent()
            .combine(&rhs.to_laurent(), |a, b| a - b)
            .into()
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.to_laurent().mul(&rhs.to_laurent()).into()
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let l = self.to_laurent();
        LaurentPoly::new(l.low, l.coeffs.iter().map(|c| -c).collect()).into()
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.to_laurent();
        if l.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in l.terms().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_coeff(&mag))?,
                (false, true) => write!(f, "{var}")?,
                (false, false) => write!(f, "{}*{var}", fmt_coeff(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        RingElement::from(self.clone()).fmt(f)
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Recursive-descent parser:
///
/// ```text
/// expr  := term (('+' | '-') term)*
/// term  := unary (('*' | '/') unary)*
/// unary := '-' unary | power
/// power := atom ('^' '-'? integer)?
/// atom  := integer | 'X' | 'p' | '(' expr ')'
/// ```
struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
    prime: Option<u64>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, prime: Option<u64>) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
            prime,
        }
    }

    fn error(&self, reason: impl Into<String>) -> RingError {
        RingError::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<RingElement, RingError> {
        let value = self.expr()?;
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(value)
    }

    fn expr(&mut self) -> Result<RingElement, RingError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement, RingError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElement, RingError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElement, RingError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp = self
            .integer()?
            .to_i64()
            .filter(|e| *e <= 4096)
            .ok_or_else(|| self.error("exponent too large"))?;
        base.pow(if negative { -exp } else { exp })
    }

    fn integer(&mut self) -> Result<BigInt, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.input[start..self.pos].parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<RingElement, RingError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(RingElement::x())
            }
            Some(b'p') => {
                self.pos += 1;
                let p = self.prime.ok_or(RingError::UnboundPrime)?;
                Ok(RingElement::from(p as i64))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RingElement::Rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_spec_forms() {
        assert_eq!(
            RingElement::parse("3/2").unwrap(),
            RingElement::rational(3, 2)
        );
        assert_eq!(
            RingElement::parse("3 + 9*X").unwrap(),
            RingElement::Poly(Poly::from_ints(&[3, 9]))
        );
        let laurent = RingElement::parse("X^-2 + 1").unwrap();
        assert_eq!(laurent.domain(), Domain::Laurent);
        assert_eq!(laurent.to_laurent().order(), Some(-2));
        assert_eq!(
            RingElement::parse("1/(1-3)").unwrap(),
            RingElement::rational(-1, 2)
        );
        assert_eq!(
            RingElement::parse("(1+3)^2").unwrap(),
            RingElement::from(16)
        );
        assert_eq!(
            RingElement::parse_with_prime("p^2 - X", 3)
                .unwrap()
                .to_string(),
            "9 - X"
        );
        assert_eq!(RingElement::parse("p"), Err(RingError::UnboundPrime));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            RingElement::parse("1/0"),
            Err(RingError::DivisionByZero)
        ));
        assert!(matches!(
            RingElement::parse("1/(1+X)"),
            Err(RingError::InexactDivision(_))
        ));
        assert!(matches!(
            RingElement::parse("3 +"),
            Err(RingError::Parse { .. })
        ));
        assert!(matches!(
            RingElement::parse("3 3"),
            Err(RingError::Parse { .. })
        ));
    }

    #[test]
    fn canonical_kinds() {
        let x = RingElement::x();
        let diff = &(&x + &RingElement::one()) - &x;
        assert_eq!(diff, RingElement::one());
        let inv = RingElement::one().checked_div(&x).unwrap();
        assert_eq!((&inv * &x), RingElement::one());
        assert_eq!(inv.domain(), Domain::Laurent);
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            RingElement::parse("3 + 9*X").unwrap().to_string(),
            "3 + 9*X"
        );
        assert_eq!(
            RingElement::parse("X^-2 + 1").unwrap().to_string(),
            "X^-2 + 1"
        );
        assert_eq!(
            RingElement::parse("-X^3 + 1/2*X - 4").unwrap().to_string(),
            "-4 + 1/2*X - X^3"
        );
    }

    #[test]
    fn taylor_shift_matches_expansion() {
        // X^2 + 1 around a = 3: (X-3)^2 + 6(X-3) + 10
        let f = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(f.taylor_shift(&q(3, 1)), Poly::from_ints(&[10, 6, 1]));
    }

    fn arb_elem() -> impl Strategy<Value = RingElement> {
        (
            -2i64..2,
            proptest::collection::vec((-9i64..9, 1i64..4), 0..5),
        )
            .prop_map(|(low, cs)| {
                LaurentPoly::new(low, cs.into_iter().map(|(n, d)| q(n, d)).collect()).into()
            })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in arb_elem()) {
            prop_assert_eq!(RingElement::parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn taylor_shift_preserves_values(cs in proptest::collection::vec(-5i64..5, 0..6), a in -4i64..4, t in -4i64..4) {
            let f = Poly::from_ints(&cs);
            let g = f.taylor_shift(&q(a, 1));
            prop_assert_eq!(g.eval(&q(t, 1)), f.eval(&q(t + a, 1)));
        }
    }
}
