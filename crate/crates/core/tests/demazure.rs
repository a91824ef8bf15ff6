use hecke_core::coeff::CycloQ3;
use hecke_core::demazure::{
    braid_failure_check, braid_targets, check_nilpotent, cyclo, delta, delta_word,
    displayed_values, reflect, Poly2,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn mono(a: u32, b: u32) -> Poly2 {
    Poly2::monomial(CycloQ3::one(), (a, b))
}

#[test]
fn braid_relation_fails_up_to_scalar() {
    let cert = braid_failure_check().unwrap();
    assert_eq!(cert.table.len(), 8);
    let wrong: Vec<_> = cert.table_mismatches().map(|e| e.label.as_str()).collect();
    assert_eq!(wrong, ["3 δ2 x^2"]);
    assert_ne!(cert.determinant, "0");
    assert_eq!(cert.nilpotent_up_to_degree, 12);
}

#[test]
fn target_vectors() {
    let y4 = mono(0, 4);
    let three = CycloQ3::from_ints(3, 0);
    let nine = CycloQ3::from_ints(9, 0);
    let (tu, tv) = braid_targets();
    let u = delta_word(&[1, 2, 1], &y4).unwrap();
    let v = delta_word(&[2, 1, 2], &y4).unwrap();
    assert_eq!(u.scale(&three), tu);
    assert_eq!(v.scale(&nine), tv);
    // 3u = (5j^2 - 2j) x + (10j + 8j^2) y
    assert_eq!(tu.coeff((1, 0)), cyclo(0, -2, 5));
    assert_eq!(tu.coeff((0, 1)), cyclo(0, 10, 8));
    // no scalar λ with u = λ v
    let lambda = &u.coeff((1, 0)) / &v.coeff((1, 0));
    assert_ne!(v.scale(&lambda), u);
}

#[test]
fn displayed_values_except_the_x2_misprint() {
    let values = displayed_values();
    let labels: Vec<_> = values.iter().map(|d| d.label).collect();
    assert_eq!(
        labels,
        [
            "3 δ2 y",
            "3 δ2 x",
            "3 δ2 y^2",
            "3 δ2 xy",
            "3 δ2 x^2",
            "9 δ2 y^3",
            "9 δ2 y^4",
            "δ1 y^4"
        ]
    );
    for d in values {
        let k = CycloQ3::from_ints(d.scale as i64, 0);
        let computed = delta(d.op, &d.argument).unwrap().scale(&k);
        if d.label == "3 δ2 x^2" {
            assert_ne!(computed, d.target);
        } else {
            assert_eq!(computed, d.target, "{}", d.label);
        }
    }
}

/// `(s2 x)^2 − x^2 = (−4x^2 + 4j^2 xy − 4j y^2)/3 = (x + y)(−4x − 4j y)/3`.
#[test]
fn x2_entry_by_hand() {
    let s2x =
        Poly2::monomial(cyclo(1, 2, 0), (1, 0)).add(&Poly2::monomial(cyclo(-2, 2, 0), (0, 1)));
    let third = CycloQ3::rational(BigRational::new(1.into(), 3.into()));
    assert_eq!(reflect(2, &Poly2::x()).unwrap(), s2x.scale(&third));
    let nine_diff = s2x
        .mul(&s2x)
        .sub(&mono(2, 0).scale(&CycloQ3::from_ints(9, 0)));
    let expected = Poly2::monomial(cyclo(-12, 0, 0), (2, 0))
        .add(&Poly2::monomial(cyclo(0, 0, 12), (1, 1)))
        .add(&Poly2::monomial(cyclo(0, -12, 0), (0, 2)));
    assert_eq!(nine_diff, expected);
    let exact =
        Poly2::monomial(cyclo(-4, 0, 0), (1, 0)).add(&Poly2::monomial(cyclo(0, -4, 0), (0, 1)));
    assert_eq!(
        delta(2, &mono(2, 0))
            .unwrap()
            .scale(&CycloQ3::from_ints(3, 0)),
        exact
    );
}

#[test]
fn delta1_on_monomials() {
    for a in 0..5 {
        for b in 0..6 {
            let expected = if b == 0 {
                Poly2::zero()
            } else {
                Poly2::monomial(&CycloQ3::j().pow(b) - &CycloQ3::one(), (a, b - 1))
            };
            assert_eq!(delta(1, &mono(a, b)).unwrap(), expected, "x^{a} y^{b}");
        }
    }
    assert_eq!(
        delta(1, &mono(0, 4)).unwrap(),
        mono(0, 3).scale(&cyclo(-1, 1, 0))
    );
}

#[test]
fn nilpotency_and_order_three() {
    check_nilpotent(12).unwrap();
    for i in [1, 2] {
        for d in 0..=12u32 {
            for a in 0..=d {
                let m = mono(a, d - a);
                let back = reflect(i, &reflect(i, &reflect(i, &m).unwrap()).unwrap()).unwrap();
                assert_eq!(back, m, "s{i}^3 on x^{a} y^{}", d - a);
            }
        }
    }
}

#[test]
fn s2_image_of_x() {
    let third = CycloQ3::rational(BigRational::new(1.into(), 3.into()));
    let expected =
        Poly2::monomial(cyclo(0, 1, -1), (1, 0)).add(&Poly2::monomial(cyclo(0, 4, 2), (0, 1)));
    assert_eq!(reflect(2, &Poly2::x()).unwrap(), expected.scale(&third));
}

fn small_poly() -> impl Strategy<Value = Poly2> {
    proptest::collection::vec((0u32..4, 0u32..4, -3i64..4, -3i64..4), 1..5).prop_map(|terms| {
        let mut p = Poly2::zero();
        for (a, b, r0, r1) in terms {
            p.add_term((a, b), CycloQ3::from_ints(r0, r1));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_leibniz(p in small_poly(), q in small_poly(), i in 1usize..3) {
        let lhs = delta(i, &p.mul(&q)).unwrap();
        let rhs = delta(i, &p).unwrap().mul(&q).add(&reflect(i, &p).unwrap().mul(&delta(i, &q).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_is_multiplicative(p in small_poly(), q in small_poly(), i in 1usize..3) {
        prop_assert_eq!(reflect(i, &p.mul(&q)).unwrap(), reflect(i, &p).unwrap().mul(&reflect(i, &q).unwrap()));
    }
}
