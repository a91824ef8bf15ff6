//! Exact coefficient arithmetic: integer Laurent polynomials over a
//! [`RingSpec`], rationals, and the cyclotomic field Q(j).

mod cyclo;
mod laurent;
mod ring;
mod specialization;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cyclo::CycloQ3;
pub use laurent::{LaurentPoly, Monomial};
pub use ring::RingSpec;
pub use specialization::Specialization;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("invalid variable name {0:?}")]
    BadVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {0:?} is not invertible")]
    NotInvertible(String),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("{numerator} is not divisible by {divisor}")]
    NotDivisible { numerator: String, divisor: String },
    #[error("specialization does not assign variable {0:?}")]
    IncompleteSpecialization(String),
    #[error("invertible variable {0:?} specialized to zero")]
    ZeroUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error in {input:?} at byte {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
}

/// Coefficients of algebra elements: a commutative ring with a textual form.
///
/// `Context` carries whatever is needed to build constants (the ring of a
/// Laurent polynomial; nothing for rationals).
pub trait Coefficient: Clone + PartialEq + fmt::Display + fmt::Debug {
    type Context: Clone + fmt::Debug;

    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn parse(ctx: &Self::Context, text: &str) -> Result<Self, CoeffError>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coefficient for LaurentPoly {
    type Context = Arc<RingSpec>;

    fn zero(ctx: &Arc<RingSpec>) -> Self {
        LaurentPoly::zero(ctx)
    }
    fn one(ctx: &Arc<RingSpec>) -> Self {
        LaurentPoly::one(ctx)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn parse(ctx: &Arc<RingSpec>, text: &str) -> Result<Self, CoeffError> {
        LaurentPoly::parse(ctx, text)
    }
}

impl Coefficient for BigRational {
    type Context = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn parse(_: &(), text: &str) -> Result<Self, CoeffError> {
        text.trim().parse().map_err(|_| CoeffError::Parse {
            input: text.to_owned(),
            pos: 0,
            msg: "bad rational".to_owned(),
        })
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(&["a", "b", "c"], &["c"]).unwrap()
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-5i64..=5, 0i32..3, 0i32..3, -3i32..=3), 0..5).prop_map(|terms| {
            let r = ring();
            terms
                .into_iter()
                .fold(LaurentPoly::zero(&r), |acc, (k, a, b, c)| {
                    acc + LaurentPoly::monomial(&r, BigInt::from(k), Monomial(vec![a, b, c]))
                })
        })
    }

    fn spec() -> impl Strategy<Value = Specialization> {
        (-9i64..=9, -9i64..=9, 1i64..=9, any::<bool>()).prop_map(|(a, b, c, neg)| {
            let c = if neg { -c } else { c };
            let vals = [a, b, c]
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect();
            Specialization::new(&ring(), vals).unwrap()
        })
    }

    fn cyclo() -> impl Strategy<Value = CycloQ3> {
        (-20i64..=20, 1i64..=7, -20i64..=20, 1i64..=7).prop_map(|(a, b, c, d)| {
            CycloQ3::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn laurent_ring_axioms(p in poly(), q in poly(), r in poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn specialization_is_homomorphism(p in poly(), q in poly(), s in spec()) {
            prop_assert_eq!((&p * &q).specialize(&s), p.specialize(&s) * q.specialize(&s));
            prop_assert_eq!((&p + &q).specialize(&s), p.specialize(&s) + q.specialize(&s));
        }

        #[test]
        fn laurent_text_round_trip(p in poly()) {
            prop_assert_eq!(LaurentPoly::parse(&ring(), &p.to_string()).unwrap(), p);
        }

        #[test]
        fn cyclo_field_axioms(u in cyclo(), v in cyclo(), w in cyclo()) {
            prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
            prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
            prop_assert_eq!(&u * &v, &v * &u);
            if !u.is_zero() {
                prop_assert!((&u * &u.inv().unwrap()).is_one());
            }
        }
    }
}
