//! Rationality-postulate checkers. Every checker quantifies over model sets
//! and reports how much of the instance space it covered. The first
//! violating instances in enumeration order are kept as replayable witnesses.

mod abduction;
mod merging;
mod revision;

use std::collections::BTreeMap;

use morphlog_core::{Alphabet, WorldSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use abduction::{
    abduction_configs, check_abduction, check_unified, known_cases, postulate_matrix, replay,
    AbductionConfig, KnownCase, ABDUCTION_POSTULATES,
};
pub use merging::{check_merging, check_merging_oracle, merging_op, MergingOp, MERGING_POSTULATES};
pub use revision::{
    check_revision, check_revision_representation, revision_instances, RevisionOp,
    REVISION_POSTULATES,
};

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 3;

/// How an instance space is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive {
        atoms: usize,
    },
    Sampled {
        atoms: usize,
        seed: u64,
        count: usize,
    },
}

impl Mode {
    fn of(sweep: Sweep, atoms: usize) -> Self {
        match sweep {
            Sweep::Exhaustive => Mode::Exhaustive { atoms },
            Sweep::Sampled { seed, count } => Mode::Sampled { atoms, seed, count },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
}

/// A concrete instance, with formulas rendered over `a, b, c, …`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

impl Witness {
    pub fn new() -> Self {
        Witness::default()
    }

    pub fn input(mut self, key: &str, value: impl Into<String>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<String>) -> Self {
        self.outputs.insert(key.into(), value.into());
        self
    }

    pub fn set(self, key: &str, ws: &WorldSet) -> Self {
        self.input(key, text(ws))
    }

    pub fn result(self, key: &str, ws: &WorldSet) -> Self {
        self.output(key, text(ws))
    }

    pub fn claim(self, key: &str, value: bool) -> Self {
        self.output(key, value.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PostulateReport {
    pub postulate: String,
    pub subject: String,
    pub mode: Mode,
    /// Plain-language extent of the sweep; a `holds` verdict means only that
    /// nothing failed within it.
    pub coverage: String,
    pub instances: u64,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl PostulateReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Finds the report for `postulate`.
pub fn find<'a>(reports: &'a [PostulateReport], postulate: &str) -> Option<&'a PostulateReport> {
    reports.iter().find(|r| r.postulate == postulate)
}

/// Model set rendered as a minimized formula over `a, b, c, …`.
pub fn text(ws: &WorldSet) -> String {
    let alphabet = Alphabet::letters(ws.n()).expect("small universe");
    crate::io::render(ws, &alphabet)
}

/// Running count of one postulate over a stream of instances.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

impl Tally {
    /// Counts one instance; `witness` is built only for a kept violation.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations += other.violations;
        let room = MAX_WITNESSES - self.witnesses.len();
        self.witnesses
            .extend(other.witnesses.into_iter().take(room));
    }

    pub fn report(self, postulate: &str, subject: &str, mode: Mode, unit: &str) -> PostulateReport {
        let coverage = match &mode {
            Mode::Exhaustive { atoms } => {
                format!("every {unit} at {atoms} atoms ({} checked)", self.checked)
            }
            Mode::Sampled { atoms, seed, .. } => {
                format!(
                    "{} sampled {unit}s at {atoms} atoms, seed {seed}",
                    self.checked
                )
            }
        };
        PostulateReport {
            postulate: postulate.into(),
            subject: subject.into(),
            mode,
            coverage,
            instances: self.checked,
            verdict: if self.violations == 0 {
                Verdict::Holds
            } else {
                Verdict::Violated
            },
            witnesses: self.witnesses,
        }
    }
}

/// Runs `check` over `instances` in parallel chunks and merges the tallies
/// in instance order, so the kept witnesses do not depend on scheduling.
pub(crate) fn sweep<I, F>(instances: &[I], postulates: usize, check: F) -> Vec<Tally>
where
    I: Sync,
    F: Fn(&I, &mut [Tally]) + Sync,
{
    let parts: Vec<Vec<Tally>> = instances
        .par_chunks(512)
        .map(|chunk| {
            let mut t = vec![Tally::default(); postulates];
            for inst in chunk {
                check(inst, &mut t);
            }
            t
        })
        .collect();
    let mut total = vec![Tally::default(); postulates];
    for part in parts {
        for (acc, t) in total.iter_mut().zip(part) {
            acc.absorb(t);
        }
    }
    total
}

/// Uniform random model set, optionally nonempty.
pub(crate) fn random_set(rng: &mut ChaCha8Rng, n: usize, nonempty: bool) -> WorldSet {
    let size = 1u64 << n;
    let full = if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    };
    loop {
        let bits = rng.gen::<u64>() & full;
        if !nonempty || bits != 0 {
            return WorldSet::from_u64(n, bits);
        }
    }
}

/// What [`find_counterexample`] searches.
#[derive(Clone, Copy)]
pub enum Target<'a> {
    /// A revision operator, searched over all triples at 2 atoms, then 3.
    Revision(&'a RevisionOp<'a>),
    /// An explanatory relation, searched configuration by configuration.
    Abduction(morphlog_core::abduction::Relation),
}

/// The first violation of `postulate` in deterministic enumeration order,
/// examining at most `budget` instances (revision) or theory
/// configurations (abduction).
pub fn find_counterexample(postulate: &str, target: Target<'_>, budget: usize) -> Option<Witness> {
    match target {
        Target::Revision(op) => revision::search(op, postulate, budget),
        Target::Abduction(rel) => abduction::search(rel, postulate, budget),
    }
}

/// Sample sizes for [`suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSize {
    pub revision_samples: usize,
    pub merging_samples: usize,
    pub theory_samples: usize,
}

impl Default for SuiteSize {
    fn default() -> Self {
        SuiteSize {
            revision_samples: 100_000,
            merging_samples: 10_000,
            theory_samples: 12,
        }
    }
}

/// Every checker on its shipped operators, in a fixed order:
///
/// * dilation revision under the unit Hamming ball, exhaustive at 2 atoms
///   and sampled at 3, with its order representation;
/// * credibility-limited revision under an element restricted to `a, b`;
/// * the unified revision `Σ ∘_f α`;
/// * sum and max merging at 2 and 3 atoms, and all three aggregations
///   against the dilation-tuple construction;
/// * the three erosion-based relations and the unified ordering.
pub fn suite(seed: u64, size: SuiteSize) -> Vec<PostulateReport> {
    use morphlog_core::abduction::{Relation, TheoryContext};
    use morphlog_core::merging::Aggregation;
    use morphlog_core::revision::revise;
    use morphlog_core::StructuringElement;

    let mut out = Vec::new();
    let sampled = |k: u64, count: usize| Sweep::Sampled {
        seed: seed.wrapping_add(k),
        count,
    };
    for n in [2, 3] {
        let h = StructuringElement::hamming(n, 1);
        let sweep_mode = if n == 2 {
            Sweep::Exhaustive
        } else {
            sampled(1, size.revision_samples)
        };
        let op = |p: &WorldSet, q: &WorldSet| revise(p, q, &h).expect("nonempty belief").result;
        out.extend(check_revision(&op, "revise hamming:1", n, sweep_mode));
        out.push(check_revision_representation(
            &h,
            "revise hamming:1",
            sweep_mode,
        ));
    }
    let r = StructuringElement::restricted(3, 0b011, 1);
    let limited = |p: &WorldSet, q: &WorldSet| revise(p, q, &r).expect("nonempty belief").result;
    out.extend(check_revision(
        &limited,
        "revise restricted:a,b:1",
        3,
        sampled(2, size.revision_samples / 5),
    ));
    let h3 = StructuringElement::hamming(3, 1);
    let unified = |p: &WorldSet, q: &WorldSet| {
        TheoryContext::new(p.clone(), h3.clone())
            .and_then(|c| c.revise_f(q))
            .expect("nonempty theory")
    };
    out.extend(check_revision(
        &unified,
        "revise_f hamming:1",
        3,
        sampled(3, size.revision_samples / 5),
    ));

    for n in [2, 3] {
        let h = StructuringElement::hamming(n, 1);
        for agg in [Aggregation::Sum, Aggregation::Max] {
            let subject = format!("merge {} hamming:1", agg.name());
            let op = merging_op(agg, &h);
            let reports = if n == 2 {
                check_merging(&op, &subject, n, 1..=2, Sweep::Exhaustive)
            } else {
                check_merging(&op, &subject, n, 2..=4, sampled(4, size.merging_samples))
            };
            out.extend(reports);
        }
        for agg in [Aggregation::Sum, Aggregation::Max, Aggregation::GMax] {
            let subject = format!("merge {} hamming:1", agg.name());
            out.push(if n == 2 {
                check_merging_oracle(agg, &h, &subject, 1..=2, Sweep::Exhaustive)
            } else {
                check_merging_oracle(agg, &h, &subject, 2..=4, sampled(5, size.merging_samples))
            });
        }
    }

    let configs = abduction_configs(seed, size.theory_samples);
    for rel in [Relation::Lneu, Relation::Lned, Relation::Lc] {
        out.extend(postulate_matrix(rel, &configs));
    }
    out.extend(check_unified(&configs));
    out
}
