use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{is_identifier, RingSpec};
use super::{CoeffError, Specialization};

/// Exponent vector in the variable order of the owning [`RingSpec`].
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// sequence lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer Laurent polynomial in the variables of a [`RingSpec`]; only
/// variables flagged invertible may appear with negative exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        LaurentPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Arc<RingSpec>, value: impl Into<BigInt>) -> Self {
        Self::monomial(ring, value, Monomial::one(ring.len()))
    }

    /// A single term. Panics if the exponent vector has the wrong length or a
    /// negative exponent on a non-invertible variable.
    pub fn monomial(ring: &Arc<RingSpec>, coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        assert_eq!(mono.0.len(), ring.len(), "exponent vector length mismatch");
        assert!(
            exponents_allowed(ring, &mono),
            "negative exponent on a non-invertible variable"
        );
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        LaurentPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable `name` raised to `exp`.
    pub fn var(ring: &Arc<RingSpec>, name: &str, exp: i32) -> Result<Self, CoeffError> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| CoeffError::UnknownVariable(name.to_owned()))?;
        if exp < 0 && !ring.is_invertible(idx) {
            return Err(CoeffError::NotInvertible(name.to_owned()));
        }
        let mut mono = Monomial::one(ring.len());
        mono.0[idx] = exp;
        Ok(Self::monomial(ring, 1, mono))
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The constant term, if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), CoeffError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(CoeffError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(LaurentPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_ring(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                debug_assert!(exponents_allowed(&self.ring, &m));
                add_term(&mut terms, m, c1 * c2);
            }
        }
        Ok(LaurentPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        LaurentPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The inverse of a unit `±m` where `m` only involves invertible
    /// variables; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        exponents_allowed(&self.ring, &inv).then(|| Self::monomial(&self.ring, c.clone(), inv))
    }

    /// Exact division by a single term `k·m`; fails when the quotient would
    /// leave the ring (fractional coefficient or a forbidden negative
    /// exponent).
    pub fn div_by_term(&self, divisor: &Self) -> Result<Self, CoeffError> {
        self.same_ring(divisor)?;
        if divisor.terms.len() != 1 {
            return Err(CoeffError::NotDivisible {
                numerator: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        let (dm, dc) = divisor.terms.iter().next().unwrap();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let q = Monomial(m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            if !exponents_allowed(&self.ring, &q) || !(c % dc).is_zero() {
                return Err(CoeffError::NotDivisible {
                    numerator: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            terms.insert(q, c / dc);
        }
        Ok(LaurentPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Exact rational value under `spec`.
    pub fn specialize(&self, spec: &Specialization) -> BigRational {
        assert!(
            spec.ring().as_ref() == self.ring.as_ref(),
            "specialization ring mismatch"
        );
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    v *= pow_rational(&spec.values()[i], e);
                }
            }
            acc += v;
        }
        acc
    }

    /// Largest exponent of variable `index` over all terms.
    pub fn max_exponent(&self, index: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[index]).max()
    }

    /// Parses the textual form, e.g. `2*a*c^-1 + b - 3`.
    pub fn parse(ring: &Arc<RingSpec>, text: &str) -> Result<Self, CoeffError> {
        Parser {
            ring,
            src: text,
            pos: 0,
        }
        .parse_sum()
    }
}

pub(crate) fn pow_rational(base: &BigRational, exp: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn exponents_allowed(ring: &RingSpec, mono: &Monomial) -> bool {
    mono.0
        .iter()
        .enumerate()
        .all(|(i, &e)| e >= 0 || ring.is_invertible(i))
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        LaurentPoly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub<LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms from the largest monomial down; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, &e) in self.ring.variables().iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Grammar:
///
/// ```text
/// sum    := ["-"] term (("+" | "-") term)*
/// term   := factor ("*" factor)*
/// factor := integer | ident ["^" ["-"] integer]
/// ```
struct Parser<'a> {
    ring: &'a Arc<RingSpec>,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Parse {
            input: self.src.to_owned(),
            pos: self.pos,
            msg: msg.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn parse_sum(&mut self) -> Result<LaurentPoly, CoeffError> {
        let mut acc = LaurentPoly::zero(self.ring);
        let mut negative = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let term = self.parse_term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            match self.peek() {
                None => return Ok(acc),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }

    fn parse_term(&mut self) -> Result<LaurentPoly, CoeffError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<LaurentPoly, CoeffError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(LaurentPoly::constant(self.ring, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self
                    .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
                    .to_owned();
                debug_assert!(is_identifier(&name));
                let mut exp = 1i32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let neg = self.peek() == Some('-');
                    if neg {
                        self.pos += 1;
                    }
                    self.skip_ws();
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    exp = digits.parse().map_err(|_| self.err("bad exponent"))?;
                    if neg {
                        exp = -exp;
                    }
                }
                LaurentPoly::var(self.ring, &name, exp)
            }
            _ => Err(self.err("expected integer or variable")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(&["a", "b", "c", "d", "e"], &["c", "e"]).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&ring(), s).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((p("b*c^-1") + p("-b*c^-1")).is_zero());
    }

    #[test]
    fn addition_examples() {
        let s = p("a") + p("b");
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s, p("b + a"));
        assert_eq!(p("c + c^-1") + p("c"), p("2*c + c^-1"));
    }

    #[test]
    fn multiplication_examples() {
        assert!((p("c^-1") * p("c")).is_one());
        assert!((p("e^-1") * p("e")).is_one());
        assert_eq!((p("a + b")) * p("c"), p("a*c + b*c"));
    }

    #[test]
    fn specialization_examples() {
        let r = ring();
        let at = |vals: [i64; 5]| {
            Specialization::new(
                &r,
                vals.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(
            p("c^-1").specialize(&at([0, 0, 1, 0, 1])),
            BigRational::one()
        );
        assert_eq!(
            p("a + c").specialize(&at([0, 0, 1, 0, 1])),
            BigRational::one()
        );
        // oracle: 2^9 by repeated doubling
        let mut expected = BigInt::one();
        for _ in 0..9 {
            expected *= 2;
        }
        assert_eq!(
            p("c^9").specialize(&at([0, 0, 2, 0, 1])),
            BigRational::from_integer(expected)
        );
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "2*a*c^-1 + b",
            "0",
            "1",
            "-c^-1",
            "a^2*b - 3*d + 7",
            "-e^-2 - 1",
        ] {
            let q = p(s);
            assert_eq!(
                LaurentPoly::parse(&ring(), &q.to_string()).unwrap(),
                q,
                "{s}"
            );
        }
        assert_eq!(p("b + 2*a*c^-1").to_string(), "b + 2*a*c^-1");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LaurentPoly::parse(&ring(), "a^-1").is_err());
        assert!(LaurentPoly::parse(&ring(), "x").is_err());
        assert!(LaurentPoly::parse(&ring(), "a +").is_err());
        assert!(LaurentPoly::parse(&ring(), "a b").is_err());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = RingSpec::new(&["a"], &[] as &[&str]).unwrap();
        let x = LaurentPoly::var(&other, "a", 1).unwrap();
        assert!(matches!(
            p("a").checked_add(&x),
            Err(CoeffError::RingMismatch { .. })
        ));
        assert!(p("a").checked_mul(&x).is_err());
    }

    #[test]
    fn units_and_division() {
        assert_eq!(p("-c^2*e").unit_inverse().unwrap(), p("-c^-2*e^-1"));
        assert!(p("a").unit_inverse().is_none());
        assert!(p("2*c").unit_inverse().is_none());
        assert_eq!(
            p("2*c^3 + 4*a*c").div_by_term(&p("2*c")).unwrap(),
            p("c^2 + 2*a")
        );
        assert!(p("a").div_by_term(&p("a^2")).is_err());
        assert!(p("3*c").div_by_term(&p("2")).is_err());
    }
}
