//! Checker behaviour on operators that are known to pass or fail.

use morphlog::postulates::{
    abduction_configs, check_abduction, check_merging, check_revision, find, find_counterexample,
    merging_op, postulate_matrix, Mode, Sweep, Target, Verdict,
};
use morphlog_core::abduction::{Relation, TheoryContext};
use morphlog_core::merging::{check_sym_exhaustive, Aggregation};
use morphlog_core::revision::revise;
use morphlog_core::{StructuringElement, WorldSet};

fn verdict(reports: &[morphlog::postulates::PostulateReport], p: &str) -> Verdict {
    find(reports, p)
        .unwrap_or_else(|| panic!("no {p} report"))
        .verdict
}

#[test]
fn broken_revision_violates_vacuity() {
    let broken = |_: &WorldSet, psi: &WorldSet| psi.clone();
    let reports = check_revision(&broken, "returns psi", 2, Sweep::Exhaustive);
    let r2 = find(&reports, "R2").unwrap();
    assert_eq!(r2.verdict, Verdict::Violated);
    let w = &r2.witnesses[0];
    assert!(w.inputs.contains_key("phi") && w.outputs.contains_key("phi & psi"));
    assert_eq!(verdict(&reports, "R1"), Verdict::Holds);
}

#[test]
fn hamming_revision_passes_exhaustively() {
    let h = StructuringElement::hamming(2, 1);
    let op = |p: &WorldSet, q: &WorldSet| revise(p, q, &h).unwrap().result;
    let reports = check_revision(&op, "revise", 2, Sweep::Exhaustive);
    assert!(reports.iter().all(|r| r.holds()), "{reports:?}");
    assert!(reports
        .iter()
        .all(|r| r.mode == Mode::Exhaustive { atoms: 2 } && r.instances == 3600));
}

#[test]
fn credibility_limited_revision() {
    let r = StructuringElement::restricted(3, 0b011, 1);
    let op = |p: &WorldSet, q: &WorldSet| revise(p, q, &r).unwrap().result;
    let reports = check_revision(
        &op,
        "limited",
        3,
        Sweep::Sampled {
            seed: 5,
            count: 5000,
        },
    );
    assert_eq!(verdict(&reports, "R1"), Verdict::Violated);
    assert_eq!(verdict(&reports, "modified-success"), Verdict::Holds);
}

#[test]
fn unified_revision_keeps_modified_success_but_not_vacuity() {
    let h = StructuringElement::hamming(3, 1);
    let op = |p: &WorldSet, q: &WorldSet| {
        TheoryContext::new(p.clone(), h.clone())
            .unwrap()
            .revise_f(q)
            .unwrap()
    };
    let reports = check_revision(
        &op,
        "revise_f",
        3,
        Sweep::Sampled {
            seed: 9,
            count: 20_000,
        },
    );
    assert_eq!(verdict(&reports, "R2"), Verdict::Violated);
    for p in ["R1", "R3", "R4", "R5", "R6", "modified-success"] {
        assert_eq!(verdict(&reports, p), Verdict::Holds, "{p}");
    }
}

#[test]
fn max_merging_separates_ic6_from_its_weakening() {
    let h = StructuringElement::hamming(2, 1);
    let op = merging_op(Aggregation::Max, &h);
    let reports = check_merging(&op, "max", 2, 1..=2, Sweep::Exhaustive);
    assert_eq!(verdict(&reports, "IC6'"), Verdict::Holds);
    assert!(find(&reports, "IC6").is_some());
}

/// `B_ω = {ω, ω + 1 mod 4}`: every world is reachable but the relation is
/// not symmetric.
fn cyclic() -> StructuringElement {
    let rows = (0..4u32)
        .map(|w| WorldSet::from_worlds(2, [w, (w + 1) % 4]))
        .collect();
    StructuringElement::explicit_unchecked(2, rows).unwrap()
}

#[test]
fn fairness_tracks_symmetry() {
    let n = 2;
    for se in [
        StructuringElement::hamming(n, 1),
        StructuringElement::restricted(n, 0b01, 1),
        cyclic(),
    ] {
        let sym = check_sym_exhaustive(&se).unwrap();
        for agg in [Aggregation::Max, Aggregation::Sum] {
            let op = merging_op(agg, &se);
            let reports = check_merging(&op, "fairness", n, 1..=2, Sweep::Exhaustive);
            let ic4 = find(&reports, "IC4").unwrap();
            assert_eq!(ic4.holds(), sym.holds(), "{:?} {agg:?}", se.kind());
        }
    }
    let se = cyclic();
    let op = merging_op(Aggregation::Max, &se);
    let ic4 = find(
        &check_merging(&op, "cyclic", n, 1..=2, Sweep::Exhaustive),
        "IC4",
    )
    .cloned()
    .unwrap();
    assert!(!ic4.witnesses.is_empty());
}

#[test]
fn known_instance_leads_cumulativity_witnesses() {
    let configs = abduction_configs(0, 0);
    let reports = postulate_matrix(Relation::Lneu, &configs);
    let cm = find(&reports, "E-CM").unwrap();
    let w = &cm.witnesses[0];
    assert_eq!(w.inputs["case"], "cm");
    assert_eq!(w.inputs["alpha"], "!a | b | c");
    assert_eq!(w.inputs["gamma"], "!a & b & c");
}

#[test]
fn top_theory_with_consistency_relation_satisfies_everything() {
    let configs = abduction_configs(0, 0);
    let top = configs
        .iter()
        .find(|c| c.sigma.n() == 3 && c.sigma.is_full() && c.se_name == "hamming:1")
        .unwrap();
    assert!(check_abduction(Relation::Lc, top).iter().all(|r| r.holds()));
    let lned = check_abduction(Relation::Lned, top);
    assert_eq!(verdict(&lned, "E-W-CM"), Verdict::Holds);
}

#[test]
fn reflexivity_fails_for_restricted_elements() {
    let configs = abduction_configs(0, 0);
    let reports = postulate_matrix(Relation::Lned, &configs);
    let refl = find(&reports, "E-Reflexivity").unwrap();
    assert_eq!(refl.witnesses[0].inputs["case"], "reflexivity");
    assert_eq!(refl.witnesses[0].inputs["se"], "restricted:a,b:1");
}

#[test]
fn counterexample_search() {
    let lor = find_counterexample("LOR", Target::Abduction(Relation::Lned), 100).unwrap();
    assert!(lor.outputs.contains_key("gamma |> alpha | beta"));
    assert!(find_counterexample("E-C-Cut", Target::Abduction(Relation::Lneu), 100).is_some());
    assert!(find_counterexample("LOR", Target::Abduction(Relation::Lc), 100).is_none());
    let h2 = StructuringElement::hamming(2, 1);
    let h3 = StructuringElement::hamming(3, 1);
    let op = |p: &WorldSet, q: &WorldSet| {
        let se = if p.n() == 2 { &h2 } else { &h3 };
        revise(p, q, se).unwrap().result
    };
    assert!(find_counterexample("R1", Target::Revision(&op), 20_000).is_none());
    let broken = |_: &WorldSet, q: &WorldSet| q.clone();
    assert!(find_counterexample("R2", Target::Revision(&broken), 20_000).is_some());
    assert!(find_counterexample("no-such-postulate", Target::Revision(&broken), 10).is_none());
}
