//! Revision postulates over triples `(φ, ψ, θ)` with `φ` and `ψ` nonempty.

use morphlog_core::revision::{revise, revise_via_order};
use morphlog_core::{StructuringElement, WorldSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_set, sweep, Mode, PostulateReport, Sweep, Tally, Witness};

/// A revision operator `(φ, ψ) ↦ φ ∘ ψ` on model sets.
pub type RevisionOp<'a> = dyn Fn(&WorldSet, &WorldSet) -> WorldSet + Sync + 'a;

pub const REVISION_POSTULATES: [&str; 7] = ["R1", "R2", "R3", "R4", "R5", "R6", "modified-success"];

type Triple = (WorldSet, WorldSet, WorldSet);

/// Every triple at `n` atoms, or `count` seeded samples.
pub fn revision_instances(n: usize, sweep: Sweep) -> Vec<Triple> {
    match sweep {
        Sweep::Exhaustive => exhaustive(n).collect(),
        Sweep::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let phi = random_set(&mut rng, n, true);
                    let psi = random_set(&mut rng, n, true);
                    (phi, psi, random_set(&mut rng, n, false))
                })
                .collect()
        }
    }
}

fn exhaustive(n: usize) -> impl Iterator<Item = Triple> {
    let all: Vec<WorldSet> = WorldSet::all_sets(n).collect();
    let nonempty: Vec<WorldSet> = all.iter().filter(|s| !s.is_empty()).cloned().collect();
    let pairs: Vec<(WorldSet, WorldSet)> = nonempty
        .iter()
        .flat_map(|p| nonempty.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    pairs.into_iter().flat_map(move |(p, q)| {
        all.clone()
            .into_iter()
            .map(move |t| (p.clone(), q.clone(), t))
    })
}

fn evaluate(op: &RevisionOp<'_>, (phi, psi, theta): &Triple, t: &mut [Tally]) {
    let r = op(phi, psi);
    let base = || {
        Witness::new()
            .set("phi", phi)
            .set("psi", psi)
            .result("phi * psi", &r)
    };
    t[0].record(r.is_subset(psi), base);
    let both = phi.intersection(psi);
    t[1].record(both.is_empty() || r == both, || {
        base().result("phi & psi", &both)
    });
    t[2].record(!r.is_empty(), base);
    // syntax independence is structural: equal model sets are the same input
    let again = op(&phi.clone(), &psi.clone());
    t[3].record(again == r, || base().result("repeat", &again));
    let rt = r.intersection(theta);
    let pt = psi.intersection(theta);
    if pt.is_empty() {
        // revising by an inconsistent formula lies outside the operator's domain
        t[4].checked += 1;
        t[5].checked += 1;
    } else {
        let r2 = op(phi, &pt);
        let full = || {
            base()
                .set("theta", theta)
                .result("phi * (psi & theta)", &r2)
        };
        t[4].record(rt.is_subset(&r2), full);
        t[5].record(rt.is_empty() || r2.is_subset(&rt), full);
    }
    t[6].record(r.is_subset(psi) || r == *phi, base);
}

/// One report per postulate in [`REVISION_POSTULATES`].
pub fn check_revision(
    op: &RevisionOp<'_>,
    subject: &str,
    n: usize,
    sweep_mode: Sweep,
) -> Vec<PostulateReport> {
    let instances = revision_instances(n, sweep_mode);
    let tallies = sweep(&instances, REVISION_POSTULATES.len(), |inst, t| {
        evaluate(op, inst, t)
    });
    tallies
        .into_iter()
        .zip(REVISION_POSTULATES)
        .map(|(t, p)| t.report(p, subject, Mode::of(sweep_mode, n), "triple"))
        .collect()
}

/// Dilation revision against the minimum of `ψ` under the faithful order of
/// `φ`, on every instance that is not credibility-limited.
pub fn check_revision_representation(
    se: &StructuringElement,
    subject: &str,
    sweep_mode: Sweep,
) -> PostulateReport {
    let n = se.n();
    let instances = revision_instances(n, sweep_mode);
    let tallies = sweep(&instances, 1, |(phi, psi, _), t| {
        let out = revise(phi, psi, se).expect("nonempty belief");
        if out.limited {
            return;
        }
        let by_order = revise_via_order(phi, psi, se).expect("nonempty belief");
        t[0].record(by_order == out.result, || {
            Witness::new()
                .set("phi", phi)
                .set("psi", psi)
                .result("phi * psi", &out.result)
                .result("min(psi, order)", &by_order)
        });
    });
    tallies.into_iter().next().unwrap().report(
        "representation",
        subject,
        Mode::of(sweep_mode, n),
        "pair",
    )
}

pub(super) fn search(op: &RevisionOp<'_>, postulate: &str, budget: usize) -> Option<Witness> {
    let idx = REVISION_POSTULATES.iter().position(|p| *p == postulate)?;
    let mut t = vec![Tally::default(); REVISION_POSTULATES.len()];
    for inst in exhaustive(2).chain(exhaustive(3)).take(budget) {
        evaluate(op, &inst, &mut t);
        if let Some(w) = t[idx].witnesses.first() {
            return Some(w.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_instances_are_reproducible() {
        let s = Sweep::Sampled { seed: 3, count: 50 };
        assert_eq!(revision_instances(3, s), revision_instances(3, s));
        assert!(revision_instances(3, s)
            .iter()
            .all(|(p, q, _)| !p.is_empty() && !q.is_empty()));
    }

    #[test]
    fn exhaustive_count() {
        assert_eq!(revision_instances(2, Sweep::Exhaustive).len(), 15 * 15 * 16);
    }
}
