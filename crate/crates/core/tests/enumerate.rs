use hecke_core::coeff::Specialization;
use hecke_core::enumerate::candidate::{a3_family, generators_54, parabolic_s2t_family};
use hecke_core::enumerate::sparse::{self, SparseMatrix};
use hecke_core::enumerate::{
    build_candidate_1296, certify_spanning, enumerate, resume, start, verify_result, Budget,
    Checkpoint, EnumerationError, EnumerationResult, RankMethod,
};
use hecke_core::freealg::Word;
use hecke_core::presentations::{catalogue, Presentation};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn run(name: &str, seed: Option<u64>) -> EnumerationResult {
    let p = catalogue(name).unwrap();
    let s = match seed {
        Some(k) => Specialization::random(&p.ring, k),
        None => p.group_specialization().unwrap(),
    };
    let r = enumerate(&p, &s, seed, Budget::default()).unwrap();
    verify_result(&r).unwrap();
    r
}

#[test]
fn g12_matches_group_coset_enumeration() {
    // the group specialization enumerates cosets of the trivial subgroup
    let group = run("G12", None);
    assert_eq!(group.dimension(), 48);
    for seed in 0..5 {
        assert_eq!(
            run("G12", Some(seed)).dimension(),
            group.dimension(),
            "seed {seed}"
        );
    }
}

#[test]
fn rank_two_dimensions_are_specialization_independent() {
    for (name, dim) in [
        ("G4", 24),
        ("Gd12(2)", 8),
        ("Gd12(3)", 18),
        ("Gd12(4)", 32),
        ("G26-parabolic-s2t", 18),
    ] {
        assert_eq!(run(name, None).dimension(), dim, "{name}");
        for seed in 0..5 {
            assert_eq!(run(name, Some(seed)).dimension(), dim, "{name} seed {seed}");
        }
    }
}

#[test]
fn identity_presentation_is_trivially_certified() {
    let p = Presentation::parse("name trivial\nring\ngenerators\n").unwrap();
    let s = Specialization::parse(&p.ring, "").unwrap();
    let r = enumerate(&p, &s, None, Budget::default()).unwrap();
    assert_eq!(r.dimension(), 1);
    verify_result(&r).unwrap();
    assert!(r.eval_word(&Word::identity()).is_identity());
}

#[test]
fn perturbed_matrix_is_rejected() {
    let r = run("G4", Some(3));
    for g in 0..2 {
        for (row, col) in [(0usize, 0usize), (5, 7), (23, 1)] {
            let mut bad = r.clone();
            let m = &mut bad.matrices[g];
            let v = m.get(row, col) + BigRational::one();
            let mut entries: Vec<_> = m.rows[row]
                .iter()
                .filter(|(j, _)| *j as usize != col)
                .cloned()
                .collect();
            entries.push((col as u32, v));
            m.rows[row] = sparse::collect(entries);
            assert!(
                matches!(verify_result(&bad), Err(EnumerationError::Falsified(_))),
                "g {g} ({row},{col})"
            );
        }
    }
}

#[test]
fn invalid_specialization_is_refused() {
    let p = catalogue("G4").unwrap();
    let s = Specialization::parse(&p.ring, "a=1,b=1,c=1").unwrap();
    let mut q = catalogue("G12").unwrap();
    assert!(matches!(
        enumerate(&q, &s, None, Budget::default()),
        Err(EnumerationError::InvalidSpecialization(_))
    ));
    q.order_relations[0].coeffs[0] = hecke_core::coeff::LaurentPoly::var(&q.ring, "a", 1).unwrap();
    let s = Specialization::parse(&q.ring, "a=0,b=1").unwrap();
    assert!(matches!(
        enumerate(&q, &s, None, Budget::default()),
        Err(EnumerationError::InvalidSpecialization(_))
    ));
}

#[test]
fn budget_is_enforced() {
    let p = catalogue("G12").unwrap();
    let s = p.group_specialization().unwrap();
    let err = enumerate(
        &p,
        &s,
        None,
        Budget {
            max_dim: 10,
            max_len: 64,
        },
    )
    .unwrap_err();
    assert!(
        matches!(err, EnumerationError::BudgetExceeded { .. }),
        "{err}"
    );
    let err = enumerate(
        &p,
        &s,
        None,
        Budget {
            max_dim: 1000,
            max_len: 3,
        },
    )
    .unwrap_err();
    assert!(
        matches!(err, EnumerationError::BudgetExceeded { .. }),
        "{err}"
    );
}

#[test]
fn ariki_koike_relations_at_d3() {
    let p = catalogue("Gd12(3)").unwrap();
    let s = Specialization::random(&p.ring, 11);
    let r = enumerate(&p, &s, Some(11), Budget::default()).unwrap();
    assert_eq!(r.dimension(), 18);
    let w = |t: &str| r.eval_word(&r.alphabet.parse(t).unwrap());
    let (t, sm, u) = (w("t"), w("s"), w("s t s"));
    assert_eq!(t.mul(&u), u.mul(&t));
    let alpha = s.value("alpha").unwrap();
    let beta = s.value("beta").unwrap();
    let rhs = w("s t").scale(beta).add_scaled(&u, alpha);
    assert_eq!(u.mul(&sm), rhs);
}

#[test]
fn a3_family_has_rank_24() {
    let r = run("G4", Some(5));
    let fam = a3_family();
    assert_eq!(fam.len(), 30);
    let cert = certify_spanning(&fam, &r).unwrap();
    assert_eq!(cert.rank, 24);
    assert_eq!(cert.method, RankMethod::Exact);
}

#[test]
fn parabolic_family_is_a_basis() {
    for seed in [None, Some(4)] {
        let r = run("G26-parabolic-s2t", seed);
        let cert = certify_spanning(&parabolic_s2t_family(), &r).unwrap();
        assert!(cert.is_basis());
    }
}

#[test]
fn deficient_family_reports_first_dependent_word() {
    let r = run("G4", Some(5));
    let fam: Vec<Word> = ["s1", "s2", "s1^-1 s1^2", "s1 s2"]
        .iter()
        .map(|t| r.alphabet.parse(t).unwrap())
        .collect();
    match certify_spanning(&fam, &r) {
        Err(EnumerationError::RankDeficit {
            rank,
            dimension,
            first_dependent,
        }) => {
            assert_eq!((rank, dimension), (3, 24));
            assert_eq!(first_dependent.as_deref(), Some("s1"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn words_outside_the_alphabet_are_refused() {
    let r = run("G4", None);
    let err = certify_spanning(&build_candidate_1296(), &r).unwrap_err();
    assert!(matches!(err, EnumerationError::Malformed(_)), "{err}");
}

#[test]
fn candidate_shape() {
    let list = build_candidate_1296();
    assert_eq!(list.len(), 1296);
    assert!(list.iter().any(Word::is_identity));
    let mut sorted = list.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 1296);
    let g26 = catalogue("G26").unwrap();
    let policy = g26.window_policy().unwrap();
    assert!(list.iter().all(|w| policy.is_reduced(w)));
    let prefix = g26.alphabet.parse("t s2 s1 t s2 t").unwrap();
    assert!(list
        .iter()
        .any(|w| w.letters().starts_with(prefix.letters())));
    assert_eq!(generators_54().len(), 54);
}

#[test]
fn g26_group_algebra_and_centre() {
    let r = run("G26", None);
    assert_eq!(r.dimension(), 1296);
    let c = r.eval_word(&r.alphabet.parse("t s2 s1 t s2 s1 t s2 s1").unwrap());
    for m in &r.matrices {
        assert_eq!(c.mul(m), m.mul(&c));
    }
    let mut p = SparseMatrix::identity(r.dimension());
    let mut order = 0;
    for k in 1..=6 {
        p = p.mul(&c);
        if p.is_identity() {
            order = k;
            break;
        }
    }
    assert_eq!(order, 6);
    let cert = certify_spanning(&build_candidate_1296(), &r).unwrap();
    assert!(cert.is_basis());
}

#[test]
fn checkpoint_resume_is_bit_identical() {
    let p = catalogue("G12").unwrap();
    let s = Specialization::random(&p.ring, 9);
    let straight = enumerate(&p, &s, Some(9), Budget::default()).unwrap();
    let mut snapshot = None;
    let mut calls = 0;
    let first = resume(
        &p,
        &s,
        Some(9),
        start(&p, &s, Budget::default()).unwrap(),
        |st| {
            calls += 1;
            if calls == 20 {
                snapshot = Some(Checkpoint::capture(st, &p, &s, Some(9)));
            }
            Ok(())
        },
    )
    .unwrap();
    let dir = std::env::temp_dir().join(format!("hecke-ckpt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g12.json");
    snapshot.unwrap().save(&path).unwrap();
    let loaded = Checkpoint::load(&path).unwrap();
    let resumed = resume(
        &p,
        &s,
        loaded.seed(),
        loaded.restore(&p, &s).unwrap(),
        |_| Ok(()),
    )
    .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(straight.to_json(false), first.to_json(false));
    assert_eq!(straight.to_json(false), resumed.to_json(false));
    let other = Specialization::random(&p.ring, 10);
    assert!(matches!(
        loaded.restore(&p, &other),
        Err(EnumerationError::Checkpoint(_))
    ));
}

#[test]
fn json_round_trip_and_determinism() {
    let a = run("Gd12(3)", Some(2));
    let b = run("Gd12(3)", Some(2));
    let text = a.to_json(false);
    assert_eq!(text, b.to_json(false));
    let back = EnumerationResult::from_json(&text).unwrap();
    assert_eq!(back.to_json(false), text);
    verify_result(&back).unwrap();
    assert!(!text.contains("timings"));
    assert!(a.to_json(true).contains("enumerate_ms"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_right_consistency(seed in 0u64..4, b in 0usize..24, g in 0u8..2, h in 0u8..2) {
        let p = catalogue("G4").unwrap();
        let s = Specialization::random(&p.ring, seed);
        let r = enumerate(&p, &s, Some(seed), Budget::default()).unwrap();
        let bg = r.basis[b].mul(&Word::gen(g));
        let left = r.matrices[h as usize].vec_mul(&r.coordinates(&bg));
        let reduced = p.specialized_policy(&s).unwrap().reduce_word(&(), bg.mul(&Word::gen(h)));
        let mut parts = Vec::new();
        for (w, c) in reduced.terms() {
            parts.extend(r.coordinates(w).into_iter().map(|(j, d)| (j, c * d)));
        }
        prop_assert_eq!(left, sparse::collect(parts));
    }
}
