use std::collections::BTreeMap;

use hecke_core::coeff::Specialization;
use hecke_core::enumerate::{enumerate, Budget, EnumerationResult, SparseMatrix};
use hecke_core::presentations::catalogue;
use hecke_core::rewrite::{
    apply_rule, check_trace, replay, shipped_trace, trace_catalogue, Element, RewriteError,
    RewriteTrace,
};
use num_rational::BigRational;
use num_traits::Zero;

fn evaluate(
    x: &Element,
    tr: &RewriteTrace,
    spec: &Specialization,
    r: &EnumerationResult,
) -> SparseMatrix {
    let mut out = SparseMatrix::zero(r.dimension());
    for (w, c) in x.terms() {
        let word = r.alphabet.parse(&tr.alphabet.format(w)).unwrap();
        out = out.add_scaled(&r.eval_word(&word), &c.specialize(spec));
    }
    out
}

#[test]
fn shipped_traces_certify() {
    for (name, text) in trace_catalogue() {
        let tr = RewriteTrace::parse(text).unwrap();
        check_trace(&tr).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn torsion_trace_endpoints() {
    let tr = shipped_trace("g4-torsion").unwrap();
    let cert = check_trace(&tr).unwrap();
    assert_eq!(
        cert.start,
        "[c] s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2 s1^2 s2^2"
    );
    assert_eq!(cert.end, "[c^9] 1");
    assert_eq!(cert.rules, ["braid", "s1cube", "s2cube"]);
    assert_eq!(cert.steps, 15);
}

#[test]
fn perturbed_position_is_rejected_at_that_step() {
    let tr = shipped_trace("g4-torsion").unwrap();
    let states = replay(&tr).unwrap();
    let mut rejected = 0;
    for i in 0..tr.steps.len() {
        for delta in [1usize, 2] {
            let mut bad = tr.clone();
            bad.steps[i].pos += delta;
            let outcome = check_trace(&bad);
            match apply_rule(&states[i], &bad.rules, &bad.alphabet, &bad.steps[i], i) {
                Err(_) => {
                    assert!(
                        matches!(outcome, Err(RewriteError::Mismatch { step, .. }) if step == i),
                        "step {i}"
                    );
                    rejected += 1;
                }
                // another occurrence of the same pattern with the same result
                Ok(x) if x == states[i + 1] => assert!(outcome.is_ok()),
                // insertions match the empty word anywhere and fail later
                Ok(_) => assert!(
                    matches!(outcome, Err(RewriteError::Mismatch { step, .. }) if step > i)
                        || matches!(outcome, Err(RewriteError::EndMismatch { .. })),
                    "step {i}"
                ),
            }
        }
    }
    assert!(rejected > 20);
    let mut bad = tr.clone();
    bad.steps[3].pos += 1;
    assert!(matches!(
        check_trace(&bad),
        Err(RewriteError::Mismatch { step: 3, .. })
    ));
}

#[test]
fn empty_trace() {
    let text =
        "hecke-trace 1\nring c\ninvertible\ngenerators s1 s2\nstart [c] s1 s2\nend [c] s1 s2\n";
    let cert = check_trace(&RewriteTrace::parse(text).unwrap()).unwrap();
    assert_eq!(cert.steps, 0);
    let text = text.replace("end [c] s1 s2", "end [c] s2 s1");
    assert!(matches!(
        check_trace(&RewriteTrace::parse(&text).unwrap()),
        Err(RewriteError::EndMismatch { .. })
    ));
}

#[test]
fn malformed_files_are_refused() {
    for text in [
        "",
        "hecke-trace 2\nring\ninvertible\ngenerators s\nstart s\nend s\n",
        "hecke-trace 1\nring\ninvertible\ngenerators s\nstart s\n",
        "hecke-trace 1\nring\ninvertible\ngenerators s\nstart s\nend s\nterm=0 pos=0 rule=x dir=fwd\n",
        "hecke-trace 1\nring\ninvertible\ngenerators s\nrule r: s = s\nstart s\nend s\nterm=0 pos=0 rule=r dir=up\n",
    ] {
        assert!(matches!(RewriteTrace::parse(text), Err(RewriteError::Parse { .. })), "{text:?}");
    }
}

/// Every step of the torsion trace holds in the regular representation of
/// `G4` at `a = b = 0` and ten random values of `c`.
#[test]
fn torsion_steps_preserve_the_quotient_image() {
    let tr = shipped_trace("g4-torsion").unwrap();
    let states = replay(&tr).unwrap();
    let g4 = catalogue("G4").unwrap();
    for seed in 0..10 {
        let c = Specialization::random(&g4.ring, seed)
            .value("c")
            .unwrap()
            .clone();
        let mut map = BTreeMap::new();
        map.insert("a".to_owned(), BigRational::zero());
        map.insert("b".to_owned(), BigRational::zero());
        map.insert("c".to_owned(), c.clone());
        let spec = Specialization::from_map(&g4.ring, &map).unwrap();
        let r = enumerate(&g4, &spec, Some(seed), Budget::default()).unwrap();
        assert_eq!(r.dimension(), 24);
        let local =
            Specialization::from_map(&tr.ring, &BTreeMap::from([("c".to_owned(), c)])).unwrap();
        let first = evaluate(&states[0], &tr, &local, &r);
        for (i, s) in states.iter().enumerate().skip(1) {
            assert_eq!(evaluate(s, &tr, &local, &r), first, "seed {seed} step {i}");
        }
    }
}

/// The braid-only traces hold in the `G26` group algebra.
#[test]
fn braid_traces_hold_in_g26() {
    let g26 = catalogue("G26").unwrap();
    let r = enumerate(
        &g26,
        &g26.group_specialization().unwrap(),
        None,
        Budget::default(),
    )
    .unwrap();
    for name in [
        "g26-central-s1",
        "g26-central-s2",
        "g26-central-t",
        "g26-central-form",
    ] {
        let tr = shipped_trace(name).unwrap();
        let empty = Specialization::parse(&tr.ring, "").unwrap();
        let states = replay(&tr).unwrap();
        let first = evaluate(&states[0], &tr, &empty, &r);
        let last = evaluate(states.last().unwrap(), &tr, &empty, &r);
        assert_eq!(first, last, "{name}");
    }
}
