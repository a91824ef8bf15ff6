//! Braid words, their finite linear combinations, and reduction of
//! generator powers into exponent windows.

mod element;
mod window;
mod word;

pub use element::{AlgebraElement, ElementDisplay};
pub use window::{OrderRule, WindowPolicy};
pub use word::{Alphabet, Gen, Letter, Word, WordDisplay};

use crate::coeff::CoeffError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("too many generators ({0})")]
    TooManyGenerators(usize),
    #[error("invalid exponent in {0:?}")]
    BadExponent(String),
    #[error("malformed element {0:?}")]
    BadElement(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::coeff::{Coefficient, LaurentPoly, RingSpec, Specialization};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(&["a", "b", "c", "d", "e"], &["c", "e"]).unwrap()
    }

    fn policy<K: Coefficient>(lift: impl Fn(&str) -> K) -> WindowPolicy<K> {
        let cubic = OrderRule {
            coeffs: vec![lift("c"), lift("b"), lift("a")],
            inv_constant: lift("c^-1"),
        };
        let quad = OrderRule {
            coeffs: vec![lift("e"), lift("d")],
            inv_constant: lift("e^-1"),
        };
        WindowPolicy::new(vec![Some(cubic.clone()), Some(cubic), Some(quad)])
    }

    fn element() -> impl Strategy<Value = AlgebraElement<LaurentPoly>> {
        let word = prop::collection::vec((0u8..3, -4i32..=4), 0..5).prop_map(Word::from_letters);
        prop::collection::vec((word, -3i64..=3), 0..4).prop_map(|terms| {
            let r = ring();
            let mut x = AlgebraElement::zero(&r);
            for (w, k) in terms {
                x.add_term(w, LaurentPoly::constant(&r, BigInt::from(k)));
            }
            x
        })
    }

    fn spec() -> impl Strategy<Value = Specialization> {
        prop::collection::vec(1i64..=7, 5).prop_map(|v| {
            Specialization::new(
                &ring(),
                v.into_iter()
                    .map(|x| BigRational::from_integer(x.into()))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(x in element()) {
            let r = ring();
            let pol = policy(|s| LaurentPoly::parse(&r, s).unwrap());
            let once = pol.reduce(&x);
            prop_assert!(once.terms().all(|(w, _)| pol.is_reduced(w)));
            prop_assert_eq!(pol.reduce(&once), once);
        }

        #[test]
        fn reduction_commutes_with_specialization(x in element(), s in spec()) {
            let r = ring();
            let generic = policy(|t| LaurentPoly::parse(&r, t).unwrap());
            let special = policy(|t| LaurentPoly::parse(&r, t).unwrap().specialize(&s));
            let lhs = generic.reduce(&x).map_coeffs(&(), |c| c.specialize(&s));
            let rhs = special.reduce(&x.map_coeffs(&(), |c| c.specialize(&s)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
