//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use morphlog::postulates::{
    known_cases, replay, suite, PostulateReport, SuiteSize, ABDUCTION_POSTULATES,
};
use morphlog_core::abduction::{Relation, TheoryContext};
use morphlog_core::formula::{minimize, models};
use morphlog_core::merging::{merge, Aggregation, Profile};
use morphlog_core::morphology::{
    close, connected_components, iterate, last_erosion, open, skeleton, stratify, ultimate_erosion,
    ultimate_erosion_recursive, Mode,
};
use morphlog_core::revision::revise;
use morphlog_core::syntactic::{
    components_dnf, dilate_dnf, dilate_vardisjoint, erode_cnf, prime_implicates,
};
use morphlog_core::worlds::{parse_world, Distance};
use morphlog_core::{Alphabet, CnfForm, Cube, DnfForm, Formula, StructuringElement, WorldSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn m3(s: &str) -> WorldSet {
    models(&Formula::parse(s).unwrap(), &Alphabet::letters(3).unwrap()).unwrap()
}

fn h(n: usize) -> StructuringElement {
    StructuringElement::hamming(n, 1)
}

fn ab() -> StructuringElement {
    StructuringElement::restricted(3, 0b011, 1)
}

fn golden_examples() -> Outcome {
    let eq = |name: &str, got: WorldSet, want: WorldSet| {
        ensure(got == want, || format!("{name}: got {got:?}"))
    };
    eq(
        "dilation",
        h(3).dilate(&m3("(a&b&c)|(!a&!b&c)")),
        m3("(!a|b|c)&(a|!b|c)"),
    )?;
    eq("erosion", h(3).erode(&m3("c|(!a&!b)")), m3("!a&!b&c"))?;
    let phi = m3("(a|!b|!c)&(a|b|c)");
    eq(
        "erosion of observation",
        h(3).erode(&phi),
        m3("(a&!b&c)|(a&b&!c)"),
    )?;
    let (last, depth) = last_erosion(&phi, &h(3)).unwrap();
    eq("last erosion", last, m3("(a&!b&c)|(a&b&!c)"))?;
    ensure(depth == 1, || format!("last erosion depth {depth}"))?;
    let maj = m3("(a&b)|(a&c)|(b&c)|(!a&!b&!c)");
    eq("opening", open(&maj, &h(3)), m3("(a&b)|(a&c)|(b&c)"))?;
    eq("skeleton", skeleton(&maj, &h(3)), m3("(!a&!b&!c)|(a&b&c)"))?;
    let n4 = Alphabet::letters(4).unwrap();
    let ue_in = models(
        &Formula::parse("(a&b)|(a&c)|(b&c)|(!a&!b&!c&!d)").unwrap(),
        &n4,
    )
    .unwrap();
    let ue_want = models(&Formula::parse("(a&b&c)|(!a&!b&!c&!d)").unwrap(), &n4).unwrap();
    let comps = connected_components(&ue_in, &h(4));
    ensure(comps.len() == 2, || format!("{} components", comps.len()))?;
    eq(
        "ultimate erosion",
        ultimate_erosion(&ue_in, &h(4)),
        ue_want.clone(),
    )?;
    let eroded: WorldSet = comps
        .iter()
        .fold(WorldSet::empty(4), |acc, c| acc.union(&h(4).erode(c)));
    eq("component erosion", eroded, h(4).erode(&ue_in))?;

    let sigma1 = m3("(a->c)&(b->c)");
    let tables = [
        (
            h(3),
            [
                ("001", 0),
                ("000", 1),
                ("101", 1),
                ("011", 1),
                ("111", 1),
                ("100", 2),
                ("010", 2),
                ("110", 2),
            ],
        ),
        (
            ab(),
            [
                ("001", 0),
                ("101", 0),
                ("011", 0),
                ("111", 0),
                ("000", 1),
                ("100", 2),
                ("010", 2),
                ("110", 3),
            ],
        ),
    ];
    for (se, rows) in tables {
        let st = stratify(&sigma1, &se).unwrap();
        for (w, r) in rows {
            let got = st.rank(parse_world(w, 3).unwrap());
            ensure(got == Distance::Finite(r), || format!("rank of {w}: {got}"))?;
        }
    }

    eq(
        "linda",
        revise(&m3("a&b&c"), &m3("!c"), &h(3)).unwrap().result,
        m3("a&b&!c"),
    )?;
    let two_sources = Profile::new(vec![m3("!a&!b&!c"), m3("a&b&!c")]).unwrap();
    let top = WorldSet::full(3);
    eq(
        "max merging",
        merge(&two_sources, &top, Aggregation::Max, &h(3))
            .unwrap()
            .result,
        m3("(a&!b&!c)|(!a&b&!c)"),
    )?;

    let sigma2 = m3("(a&c)|(b&c)");
    let ab2 = StructuringElement::restricted_exact2(3, 0b011);
    let cells = [
        (&sigma1, h(3), "!a&!b&c"),
        (&sigma1, ab(), "c"),
        (&sigma1, ab2.clone(), "c"),
        (&sigma2, h(3), "(a&c)|(b&c)"),
        (&sigma2, ab(), "a&b&c"),
        (&sigma2, ab2, "(a&!b&c)|(!a&b&c)"),
    ];
    for (sigma, se, want) in cells {
        let ctx = TheoryContext::new(sigma.clone(), se).unwrap();
        let core = ctx
            .preferred_explanation(&m3("c"), Relation::Lc)
            .unwrap()
            .core;
        eq("explanation cell", core, m3(want))?;
    }

    let ctx = TheoryContext::new(sigma1.clone(), h(3)).unwrap();
    eq(
        "central, consistent",
        ctx.central(&m3("(!a&!b&!c)|(!a&!b&c)|(!a&b&!c)")).unwrap(),
        m3("!a&!b&c"),
    )?;
    eq(
        "central, inconsistent",
        ctx.central(&m3("!a&b&!c")).unwrap(),
        m3("!a&b&!c"),
    )?;
    Ok(())
}

fn shipped(n: usize) -> Vec<StructuringElement> {
    let mask = (1u32 << n.min(2)) - 1;
    let mut v = vec![
        h(n),
        StructuringElement::hamming(n, 2),
        StructuringElement::restricted(n, mask, 1),
    ];
    if n >= 2 {
        v.push(StructuringElement::restricted_exact2(n, mask));
    }
    v
}

fn algebraic_laws() -> Outcome {
    for n in 1..=3 {
        let all: Vec<WorldSet> = WorldSet::all_sets(n).collect();
        for se in shipped(n) {
            let dil: Vec<WorldSet> = all.iter().map(|s| se.dilate(s)).collect();
            let ero: Vec<WorldSet> = all.iter().map(|s| se.erode(s)).collect();
            for (i, a) in all.iter().enumerate() {
                let fail = |law: &str| format!("{law} at {a:?} under {:?}", se.kind());
                ensure(ero[i] == se.dilate(&a.complement()).complement(), || {
                    fail("duality")
                })?;
                ensure(a.is_subset(&dil[i]) && ero[i].is_subset(a), || {
                    fail("extensivity")
                })?;
                let (o, c) = (open(a, &se), close(a, &se));
                ensure(o.is_subset(a) && a.is_subset(&c), || fail("filter bounds"))?;
                ensure(open(&o, &se) == o && close(&c, &se) == c, || {
                    fail("idempotence")
                })?;
                let (ext, int) = morphlog_core::morphology::boundaries(a, &se);
                ensure(
                    ext == dil[i].difference(a) && int == a.difference(&ero[i]),
                    || fail("boundaries"),
                )?;
                for (j, b) in all.iter().enumerate() {
                    ensure(dil[i].is_subset(b) == a.is_subset(&ero[j]), || {
                        fail("adjunction")
                    })?;
                    let u = a.union(b).to_u64() as usize;
                    let x = a.intersection(b).to_u64() as usize;
                    ensure(dil[u] == dil[i].union(&dil[j]), || fail("join commutation"))?;
                    ensure(ero[x] == ero[i].intersection(&ero[j]), || {
                        fail("meet commutation")
                    })?;
                    if a.is_subset(b) {
                        ensure(
                            dil[i].is_subset(&dil[j]) && ero[i].is_subset(&ero[j]),
                            || fail("monotonicity"),
                        )?;
                    }
                }
            }
        }
        for a in &all {
            for p in 0..=n {
                for q in 0..=n {
                    for mode in [Mode::Dilate, Mode::Erode] {
                        let once = iterate(a, &h(n), p + q, mode);
                        let twice = iterate(&iterate(a, &h(n), p, mode), &h(n), q, mode);
                        ensure(once == twice, || format!("iteration law at {a:?}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_cubes(rng: &mut ChaCha8Rng, n: usize) -> Vec<Cube> {
    let k = rng.gen_range(1..=6);
    (0..k)
        .map(|_| Cube::new(rng.gen::<u32>() & ((1 << n) - 1), rng.gen()))
        .collect()
}

fn maximal_ball_centers(s: &WorldSet) -> WorldSet {
    let n = s.n();
    let ball = |c: u32, r: u32| {
        WorldSet::from_worlds(n, (0..1u32 << n).filter(|&x| (x ^ c).count_ones() <= r))
    };
    let inside: Vec<(u32, u32, WorldSet)> = (0..1u32 << n)
        .flat_map(|c| (0..=n as u32).map(move |r| (c, r)))
        .map(|(c, r)| (c, r, ball(c, r)))
        .filter(|(_, _, b)| b.is_subset(s))
        .collect();
    let maximal = inside.iter().filter(|(_, r, b)| {
        !b.is_full() && !inside.iter().any(|(_, r2, b2)| r2 > r && b.is_subset(b2))
    });
    WorldSet::from_worlds(n, maximal.map(|(c, _, _)| *c))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 3..=5 {
        let alphabet = Alphabet::letters(n).unwrap();
        for _ in 0..1000 {
            let d = DnfForm::new(n, random_cubes(&mut rng, n));
            let c = CnfForm::new(n, random_cubes(&mut rng, n));
            for k in 0..=n {
                ensure(
                    dilate_dnf(&d, k).models() == iterate(&d.models(), &h(n), k, Mode::Dilate),
                    || format!("dnf dilation {d:?}"),
                )?;
                ensure(
                    erode_cnf(&c, k).models() == iterate(&c.models(), &h(n), k, Mode::Erode),
                    || format!("cnf erosion {c:?}"),
                )?;
            }
            let mut syn: Vec<WorldSet> = components_dnf(&d).iter().map(DnfForm::models).collect();
            let mut sem = connected_components(&d.models(), &h(n));
            syn.sort();
            sem.sort();
            ensure(syn == sem, || format!("components {d:?}"))?;
            // split the atoms in two and conjoin a term over each half
            let split = rng.gen_range(1..n);
            let lo = DnfForm::new(n, vec![Cube::new((1 << split) - 1, rng.gen())]);
            let hi = DnfForm::new(
                n,
                vec![Cube::new(((1 << n) - 1) ^ ((1 << split) - 1), rng.gen())],
            );
            let parts = [lo.to_formula(&alphabet), hi.to_formula(&alphabet)];
            let conj = lo.models().intersection(&hi.models());
            let f = dilate_vardisjoint(&parts, &alphabet).map_err(|e| e.to_string())?;
            ensure(models(&f, &alphabet).unwrap() == h(n).dilate(&conj), || {
                "disjoint dilation".into()
            })?;
        }
    }
    for n in 1..=4 {
        let alphabet = Alphabet::letters(n).unwrap();
        for s in WorldSet::all_sets(n) {
            ensure(
                ultimate_erosion(&s, &h(n)) == ultimate_erosion_recursive(&s, &h(n)),
                || format!("UE {s:?}"),
            )?;
            ensure(skeleton(&s, &h(n)) == maximal_ball_centers(&s), || {
                format!("skeleton {s:?}")
            })?;
            if s.is_empty() || s.is_full() {
                continue;
            }
            let (_, depth) = last_erosion(&s, &h(n)).unwrap();
            let f = minimize(&s, None).to_formula(&alphabet);
            let shortest = prime_implicates(&f, &alphabet)
                .unwrap()
                .iter()
                .map(Cube::len)
                .min()
                .unwrap();
            ensure(depth < n && depth < shortest, || {
                format!("last erosion depth of {s:?}")
            })?;
        }
    }
    Ok(())
}

fn holds_all(
    reports: &[PostulateReport],
    subject: &str,
    postulates: &[&str],
    min_instances: u64,
) -> Outcome {
    for p in postulates {
        let matching: Vec<&PostulateReport> = reports
            .iter()
            .filter(|r| r.subject == subject && r.postulate == *p)
            .collect();
        ensure(!matching.is_empty(), || {
            format!("no {p} report for {subject}")
        })?;
        for r in matching {
            ensure(r.holds(), || {
                format!("{p} violated by {subject}: {:?}", r.witnesses.first())
            })?;
            ensure(r.instances >= min_instances, || {
                format!("{p}: {}", r.coverage)
            })?;
        }
    }
    Ok(())
}

fn sampled_at_least(
    reports: &[PostulateReport],
    subject: &str,
    postulate: &str,
    n: u64,
) -> Outcome {
    let ok = reports.iter().any(|r| {
        r.subject == subject
            && r.postulate == postulate
            && matches!(r.mode, morphlog::postulates::Mode::Sampled { atoms: 3, .. })
            && r.instances >= n
    });
    ensure(ok, || {
        format!("{subject} {postulate}: fewer than {n} sampled instances at 3 atoms")
    })
}

fn exhaustive_at_two(reports: &[PostulateReport], subject: &str, postulate: &str) -> Outcome {
    let ok = reports.iter().any(|r| {
        r.subject == subject
            && r.postulate == postulate
            && r.mode == morphlog::postulates::Mode::Exhaustive { atoms: 2 }
    });
    ensure(ok, || {
        format!("{subject} {postulate}: no exhaustive sweep at 2 atoms")
    })
}

fn revision_postulates(reports: &[PostulateReport]) -> Outcome {
    let subject = "revise hamming:1";
    holds_all(
        reports,
        subject,
        &["R1", "R2", "R3", "R4", "R5", "R6", "representation"],
        0,
    )?;
    sampled_at_least(reports, subject, "R5", 100_000)?;
    sampled_at_least(reports, subject, "representation", 1)?;
    exhaustive_at_two(reports, subject, "R5")?;
    let r1 = reports
        .iter()
        .find(|r| r.subject == "revise restricted:a,b:1" && r.postulate == "R1");
    ensure(
        r1.is_some_and(|r| !r.holds() && !r.witnesses.is_empty()),
        || "no success witness".into(),
    )?;
    holds_all(reports, "revise restricted:a,b:1", &["modified-success"], 1)
}

fn merging_postulates(reports: &[PostulateReport]) -> Outcome {
    let ic = [
        "IC0", "IC1", "IC2", "IC3", "IC4", "IC5", "IC6", "IC7", "IC8",
    ];
    holds_all(reports, "merge sum hamming:1", &ic, 0)?;
    holds_all(
        reports,
        "merge max hamming:1",
        &[
            "IC0", "IC1", "IC2", "IC3", "IC4", "IC5", "IC6'", "IC7", "IC8",
        ],
        0,
    )?;
    sampled_at_least(reports, "merge sum hamming:1", "IC5", 10_000)?;
    exhaustive_at_two(reports, "merge sum hamming:1", "IC5")?;
    exhaustive_at_two(reports, "merge max hamming:1", "IC5")?;
    sampled_at_least(reports, "merge max hamming:1", "IC5", 10_000)?;
    for agg in ["sum", "max", "gmax"] {
        holds_all(reports, &format!("merge {agg} hamming:1"), &["tuples"], 1)?;
    }
    let two_sources = Profile::new(vec![m3("!a&!b&!c"), m3("a&b&!c")]).unwrap();
    let sum = merge(&two_sources, &WorldSet::full(3), Aggregation::Sum, &h(3))
        .unwrap()
        .result;
    ensure(sum == m3("!c"), || format!("sum merging gave {sum:?}"))
}

/// `(postulate, lneu, lned, lc)`.
const EXPECTED_MATRIX: [(&str, bool, bool, bool); 13] = [
    ("LLE", true, true, true),
    ("RLE", true, true, true),
    ("E-CM", false, false, true),
    ("E-W-CM", true, true, true),
    ("E-C-Cut", false, false, true),
    ("E-R-Cut", false, false, true),
    ("E-W-C-Cut", true, false, true),
    ("E-Reflexivity", true, false, true),
    ("ROR", true, true, true),
    ("RS", false, true, true),
    ("LOR", false, false, true),
    ("E-DR", false, false, true),
    ("E-Con", true, true, true),
];

fn abduction_postulates(reports: &[PostulateReport]) -> Outcome {
    ensure(EXPECTED_MATRIX.len() == ABDUCTION_POSTULATES.len(), || {
        "table size".into()
    })?;
    for (p, lneu, lned, lc) in EXPECTED_MATRIX {
        for (rel, want) in [("lneu", lneu), ("lned", lned), ("lc", lc)] {
            let r = reports
                .iter()
                .find(|r| r.subject == rel && r.postulate == p)
                .ok_or_else(|| format!("no {p} report for {rel}"))?;
            ensure(r.holds() == want, || {
                format!("{p} under {rel}: holds = {}", r.holds())
            })?;
            ensure(want || !r.witnesses.is_empty(), || {
                format!("{p} under {rel} has no witness")
            })?;
        }
    }
    for case in known_cases() {
        for &rel in case.relations {
            let w = replay(&case, rel).map_err(|e| e.to_string())?;
            ensure(w.is_some(), || {
                format!(
                    "case {} does not violate {} under {}",
                    case.id,
                    case.postulate,
                    rel.name()
                )
            })?;
        }
    }
    holds_all(
        reports,
        "lc and f",
        &[
            "representation",
            "unified-consistent",
            "unified-inconsistent",
        ],
        1,
    )
}

#[test]
fn acceptance() {
    let size = SuiteSize::default();
    let first = suite(42, size);
    let second = suite(42, size);
    let json = |r: &[PostulateReport]| serde_json::to_string_pretty(r).unwrap();
    let criteria: [(&str, Outcome); 7] = [
        ("golden examples", golden_examples()),
        ("algebraic laws", algebraic_laws()),
        ("oracle equivalence", oracle_equivalence()),
        ("revision postulates", revision_postulates(&first)),
        ("merging postulates", merging_postulates(&first)),
        ("abduction postulates", abduction_postulates(&first)),
        (
            "determinism",
            ensure(json(&first) == json(&second), || {
                "reports differ between runs".into()
            }),
        ),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        match outcome {
            Ok(()) => println!("criterion {}: pass ({name})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0);
}
