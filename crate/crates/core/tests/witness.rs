use hecke_core::presentations::catalogue;
use hecke_core::witness::{
    certify_module, check_relations, growth_witness, torsion_witness, witness_catalogue,
    witness_module, Vector, WitnessError, WitnessModule,
};
use proptest::prelude::*;

fn image(m: &WitnessModule, word: &str, family: &str, index: i64) -> String {
    let v = Vector::basis(m.symbol(family, index).unwrap());
    m.display(&m.act_by(&m.generators.parse(word).unwrap(), &v).unwrap())
        .to_string()
}

#[test]
fn shipped_modules_certify_at_full_bounds() {
    for (name, _) in witness_catalogue() {
        let m = witness_module(name).unwrap();
        let cert = certify_module(&m, 100, 50).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(cert.relations.symbolic, "{name}");
        assert_eq!(cert.relations.symbols, 100 * m.families.len());
        assert_eq!(cert.growth.orbit.len(), 51);
        assert!(
            cert.growth.indices.windows(2).all(|p| p[1] > p[0]),
            "{name}"
        );
    }
}

#[test]
fn action_tables() {
    let g4 = witness_module("G4-nil").unwrap();
    assert_eq!(image(&g4, "s2", "w", 5), "y[6]");
    assert_eq!(image(&g4, "s1", "w", 5), "0");
    assert_eq!(image(&g4, "s1^2 s2^2", "w", 1), "w[3]");
    let cubed = g4.generators.parse("s1^2 s2^2").unwrap().pow(3);
    let v = g4
        .act_by(&cubed, &Vector::basis(g4.symbol("w", 1).unwrap()))
        .unwrap();
    assert_eq!(g4.display(&v).to_string(), "w[7]");

    let nil = witness_module("G12-nil").unwrap();
    assert_eq!(image(&nil, "A B", "w+", 1), "w+[3]");
    let idem = witness_module("G12-idem").unwrap();
    assert_eq!(image(&idem, "B", "w-", 4), "w+[5]");
    assert_eq!(image(&idem, "B A", "w+", 2), "w+[4]");
    let ak = witness_module("Gd12-nil").unwrap();
    for r in 1..6 {
        assert_eq!(image(&ak, "s t^2", "w", r), format!("w[{}]", r + 1));
    }
}

#[test]
fn growth_progressions() {
    for (name, step) in [
        ("G4-nil", 2),
        ("G12-nil", 2),
        ("G12-idem", 2),
        ("Gd12-nil", 1),
        ("G422-AB-nil", 2),
    ] {
        let m = witness_module(name).unwrap();
        let cert = growth_witness(&m, &m.growth_word, m.growth_start, 50).unwrap();
        assert_eq!(cert.step, step, "{name}");
        assert_eq!(*cert.indices.last().unwrap(), 1 + 50 * step);
    }
}

#[test]
fn wrong_presentation_is_caught() {
    let m = witness_module("G4-nil").unwrap();
    let p = catalogue("G4-nil(2)").unwrap();
    match check_relations(&m, &p, 10) {
        Err(WitnessError::Violated {
            relation, symbol, ..
        }) => {
            assert_eq!(relation, "order of s1");
            assert_eq!(symbol, "w[1]");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        check_relations(&m, &p, 3),
        Err(WitnessError::BoundTooSmall(3))
    ));
}

#[test]
fn perturbed_action_is_rejected() {
    let text = witness_catalogue()[0]
        .1
        .replace("act s2 w'[r] = 0", "act s2 w'[r] = y[r]");
    let m = WitnessModule::parse(&text).unwrap();
    let err = check_relations(&m, &m.load_presentation().unwrap(), 100).unwrap_err();
    assert!(matches!(err, WitnessError::Violated { .. }), "{err}");
    let text = witness_catalogue()[1]
        .1
        .replace("act B w-[r] = 0", "act B w-[r] = w-[r]");
    let m = WitnessModule::parse(&text).unwrap();
    assert!(matches!(
        check_relations(&m, &m.load_presentation().unwrap(), 100),
        Err(WitnessError::Violated { .. })
    ));
}

#[test]
fn orbit_leaving_single_symbols_is_reported() {
    let m = witness_module("G12-idem").unwrap();
    let w = m.generators.parse("A").unwrap();
    let start = m.symbol("w-", 1).unwrap();
    assert!(matches!(
        growth_witness(&m, &w, start, 3),
        Err(WitnessError::Orbit { iteration: 1, .. })
    ));
    let w = m.generators.parse("C").unwrap();
    assert!(matches!(
        growth_witness(&m, &w, start, 3),
        Err(WitnessError::Orbit { iteration: 1, .. })
    ));
}

#[test]
fn torsion_certificate() {
    let cert = torsion_witness().unwrap();
    assert_eq!(cert.module_image, "w[13]");
    assert_eq!(cert.trace.end, "[c^9] 1");
    assert!(cert.group_identity);
    assert_eq!(
        cert.element,
        "s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 - c^8"
    );
}

proptest! {
    #[test]
    fn growth_is_translation_invariant(which in 0usize..5, start in 1i64..40, k in 1usize..20) {
        let (name, _) = witness_catalogue()[which];
        let m = witness_module(name).unwrap();
        let s = m.growth_start;
        let shifted = hecke_core::witness::Symbol { family: s.family, index: start };
        let base = growth_witness(&m, &m.growth_word, s, k).unwrap();
        let moved = growth_witness(&m, &m.growth_word, shifted, k).unwrap();
        let offsets: Vec<i64> = base.indices.iter().map(|i| i - s.index).collect();
        let moved_offsets: Vec<i64> = moved.indices.iter().map(|i| i - start).collect();
        prop_assert_eq!(offsets, moved_offsets);
    }
}
