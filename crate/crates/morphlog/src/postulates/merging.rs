//! Integrity-constraint merging postulates over profiles of model sets.

use std::ops::RangeInclusive;

use morphlog_core::merging::{merge, merge_via_dilation_tuples, Aggregation, Profile};
use morphlog_core::{Error, StructuringElement, WorldSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{random_set, sweep, text, Mode, PostulateReport, Sweep, Tally, Witness};

/// A merging operator `(E, μ) ↦ Δ_μ(E)`. Failures are reported as `∅`.
pub type MergingOp<'a> = dyn Fn(&Profile, &WorldSet) -> WorldSet + Sync + 'a;

pub const MERGING_POSTULATES: [&str; 10] = [
    "IC0", "IC1", "IC2", "IC3", "IC4", "IC5", "IC6", "IC6'", "IC7", "IC8",
];

/// The distance-based operator as a [`MergingOp`].
pub fn merging_op(
    agg: Aggregation,
    se: &StructuringElement,
) -> impl Fn(&Profile, &WorldSet) -> WorldSet + Sync + '_ {
    move |e, mu| {
        merge(e, mu, agg, se)
            .map(|o| o.result)
            .unwrap_or_else(|_| WorldSet::empty(mu.n()))
    }
}

fn profile_text(e: &Profile) -> String {
    let parts: Vec<String> = e.members().iter().map(text).collect();
    format!("[{}]", parts.join("; "))
}

fn reversed(e: &Profile) -> Profile {
    Profile::new(e.members().iter().rev().cloned().collect()).expect("nonempty profile")
}

/// Every multiset of nonempty sets with a size in `sizes`.
fn all_profiles(n: usize, sizes: &RangeInclusive<usize>) -> Vec<Profile> {
    let sets: Vec<WorldSet> = WorldSet::all_sets(n).filter(|s| !s.is_empty()).collect();
    let mut out = Vec::new();
    let mut idx = Vec::new();
    fn rec(
        sets: &[WorldSet],
        start: usize,
        idx: &mut Vec<usize>,
        sizes: &RangeInclusive<usize>,
        out: &mut Vec<Profile>,
    ) {
        if sizes.contains(&idx.len()) {
            out.push(
                Profile::new(idx.iter().map(|&i| sets[i].clone()).collect()).expect("nonempty"),
            );
        }
        if idx.len() == *sizes.end() {
            return;
        }
        for i in start..sets.len() {
            idx.push(i);
            rec(sets, i, idx, sizes, out);
            idx.pop();
        }
    }
    rec(&sets, 0, &mut idx, sizes, &mut out);
    out
}

const IC0: usize = 0;
const IC4: usize = 4;
const IC5: usize = 5;
const IC7: usize = 8;

/// IC0 to IC3 on one `(E, μ)` with `r = Δ_μ(E)`.
fn single(op: &MergingOp<'_>, e: &Profile, mu: &WorldSet, r: &WorldSet, t: &mut [Tally]) {
    let base = || {
        Witness::new()
            .input("E", profile_text(e))
            .set("mu", mu)
            .result("merge", r)
    };
    t[IC0].record(r.is_subset(mu), base);
    t[IC0 + 1].record(!r.is_empty(), base);
    let both = e.conjunction().intersection(mu);
    t[IC0 + 2].record(both.is_empty() || *r == both, || {
        base().result("/\\E & mu", &both)
    });
    let rev = op(&reversed(e), mu);
    t[IC0 + 3].record(rev == *r, || base().result("merge(reversed E)", &rev));
}

/// IC4 on `E = {φ1, φ2}` with both inside `μ`.
fn fairness(e: &Profile, mu: &WorldSet, r: &WorldSet, t: &mut [Tally]) {
    let (p1, p2) = (&e.members()[0], &e.members()[1]);
    t[IC4].record(r.intersects(p1) == r.intersects(p2), || {
        Witness::new()
            .set("phi1", p1)
            .set("phi2", p2)
            .set("mu", mu)
            .result("merge", r)
    });
}

/// IC5, IC6 and IC6' from `Δ_μ(E1)`, `Δ_μ(E2)` and `Δ_μ(E1 ⊔ E2)`.
fn joint(
    e1: &Profile,
    e2: &Profile,
    mu: &WorldSet,
    r1: &WorldSet,
    r2: &WorldSet,
    r: &WorldSet,
    t: &mut [Tally],
) {
    let both = r1.intersection(r2);
    let base = || {
        Witness::new()
            .input("E1", profile_text(e1))
            .input("E2", profile_text(e2))
            .set("mu", mu)
            .result("merge E1", r1)
            .result("merge E2", r2)
            .result("merge E1+E2", r)
    };
    t[IC5].record(both.is_subset(r), base);
    t[IC5 + 1].record(both.is_empty() || r.is_subset(&both), base);
    t[IC5 + 2].record(both.is_empty() || r.is_subset(&r1.union(r2)), base);
}

/// IC7 and IC8 from `Δ_μ1(E)` and `Δ_μ1∧μ2(E)` (absent when `μ1 ∧ μ2` is
/// inconsistent).
fn constraints(
    e: &Profile,
    mu1: &WorldSet,
    mu2: &WorldSet,
    r1: &WorldSet,
    r12: Option<&WorldSet>,
    t: &mut [Tally],
) {
    let left = r1.intersection(mu2);
    let base = || {
        Witness::new()
            .input("E", profile_text(e))
            .set("mu1", mu1)
            .set("mu2", mu2)
            .result("merge mu1", r1)
    };
    match r12 {
        None => {
            t[IC7].record(left.is_empty(), base);
            // the conjunction of constraints is outside the operator's domain
            t[IC7 + 1].checked += 1;
        }
        Some(r12) => {
            let full = || base().result("merge mu1 & mu2", r12);
            t[IC7].record(left.is_subset(r12), full);
            t[IC7 + 1].record(left.is_empty() || r12.is_subset(&left), full);
        }
    }
}

/// One report per postulate in [`MERGING_POSTULATES`]. Exhaustive sweeps
/// take `E`, `E1` and `E2` over every profile with a size in `sizes`;
/// sampled sweeps draw `E` with a size in `sizes` and split it into `E1`
/// and `E2`.
pub fn check_merging(
    op: &MergingOp<'_>,
    subject: &str,
    n: usize,
    sizes: RangeInclusive<usize>,
    sweep_mode: Sweep,
) -> Vec<PostulateReport> {
    let k = MERGING_POSTULATES.len();
    let tallies = match sweep_mode {
        Sweep::Exhaustive => exhaustive(op, n, &sizes),
        Sweep::Sampled { seed, count } => sampled(op, n, &sizes, seed, count),
    };
    debug_assert_eq!(tallies.len(), k);
    tallies
        .into_iter()
        .zip(MERGING_POSTULATES)
        .map(|(t, p)| t.report(p, subject, Mode::of(sweep_mode, n), "instance"))
        .collect()
}

fn exhaustive(op: &MergingOp<'_>, n: usize, sizes: &RangeInclusive<usize>) -> Vec<Tally> {
    let k = MERGING_POSTULATES.len();
    let profiles = all_profiles(n, sizes);
    let sets: Vec<WorldSet> = WorldSet::all_sets(n).collect();
    // table[p][mask of μ]; μ = ∅ is left empty
    let table: Vec<Vec<WorldSet>> = profiles
        .par_iter()
        .map(|e| {
            sets.iter()
                .map(|mu| if mu.is_empty() { mu.clone() } else { op(e, mu) })
                .collect()
        })
        .collect();
    let get = |p: usize, mu: &WorldSet| &table[p][mu.to_u64() as usize];

    let mut total = vec![Tally::default(); k];
    let indices: Vec<usize> = (0..profiles.len()).collect();
    let singles = sweep(&indices, k, |&p, t| {
        let e = &profiles[p];
        for mu1 in sets.iter().filter(|s| !s.is_empty()) {
            let r = get(p, mu1);
            single(op, e, mu1, r, t);
            if e.len() == 2 && e.members().iter().all(|m| m.is_subset(mu1)) {
                fairness(e, mu1, r, t);
            }
            for mu2 in &sets {
                let both = mu1.intersection(mu2);
                let r12 = (!both.is_empty()).then(|| get(p, &both));
                constraints(e, mu1, mu2, r, r12, t);
            }
        }
    });
    let pairs: Vec<(usize, usize)> = indices
        .iter()
        .flat_map(|&i| indices.iter().map(move |&j| (i, j)))
        .collect();
    let joints = sweep(&pairs, k, |&(i, j), t| {
        let (e1, e2) = (&profiles[i], &profiles[j]);
        let e = e1.join(e2);
        for mu in sets.iter().filter(|s| !s.is_empty()) {
            let r = op(&e, mu);
            joint(e1, e2, mu, get(i, mu), get(j, mu), &r, t);
        }
    });
    for part in [singles, joints] {
        for (acc, t) in total.iter_mut().zip(part) {
            acc.absorb(t);
        }
    }
    total
}

struct Sample {
    e1: Profile,
    e2: Profile,
    mu1: WorldSet,
    mu2: WorldSet,
    fair: Profile,
}

fn random_profile(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<WorldSet> {
    (0..len).map(|_| random_set(rng, n, true)).collect()
}

fn sampled(
    op: &MergingOp<'_>,
    n: usize,
    sizes: &RangeInclusive<usize>,
    seed: u64,
    count: usize,
) -> Vec<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (*sizes.start()).max(2);
    let samples: Vec<Sample> = (0..count)
        .map(|_| {
            let len = rng.gen_range(lo..=*sizes.end().max(&lo));
            let mut members = random_profile(&mut rng, n, len);
            let split = rng.gen_range(1..len);
            let rest = members.split_off(split);
            let mu1 = random_set(&mut rng, n, true);
            let mu2 = random_set(&mut rng, n, false);
            // two nonempty subsets of μ1
            let mut sub = || loop {
                let s = random_set(&mut rng, n, true).intersection(&mu1);
                if !s.is_empty() {
                    break s;
                }
            };
            let fair = vec![sub(), sub()];
            Sample {
                e1: Profile::new(members).expect("nonempty"),
                e2: Profile::new(rest).expect("nonempty"),
                mu1,
                mu2,
                fair: Profile::new(fair).expect("nonempty"),
            }
        })
        .collect();
    sweep(&samples, MERGING_POSTULATES.len(), |s, t| {
        let e = s.e1.join(&s.e2);
        let r = op(&e, &s.mu1);
        single(op, &e, &s.mu1, &r, t);
        fairness(&s.fair, &s.mu1, &op(&s.fair, &s.mu1), t);
        joint(
            &s.e1,
            &s.e2,
            &s.mu1,
            &op(&s.e1, &s.mu1),
            &op(&s.e2, &s.mu1),
            &r,
            t,
        );
        let both = s.mu1.intersection(&s.mu2);
        let r12 = (!both.is_empty()).then(|| op(&e, &both));
        constraints(&e, &s.mu1, &s.mu2, &r, r12.as_ref(), t);
    })
}

/// Score-based merging against the literal dilation-tuple construction,
/// over `(E, μ)` pairs. Both sides failing as unreachable counts as agreement.
pub fn check_merging_oracle(
    agg: Aggregation,
    se: &StructuringElement,
    subject: &str,
    sizes: RangeInclusive<usize>,
    sweep_mode: Sweep,
) -> PostulateReport {
    let n = se.n();
    let instances: Vec<(Profile, WorldSet)> = match sweep_mode {
        Sweep::Exhaustive => {
            let mus: Vec<WorldSet> = WorldSet::all_sets(n).filter(|s| !s.is_empty()).collect();
            all_profiles(n, &sizes)
                .into_iter()
                .flat_map(|e| mus.iter().map(move |mu| (e.clone(), mu.clone())))
                .collect()
        }
        Sweep::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let len = rng.gen_range(sizes.clone());
                    let e = Profile::new(random_profile(&mut rng, n, len)).expect("nonempty");
                    (e, random_set(&mut rng, n, true))
                })
                .collect()
        }
    };
    let tallies = sweep(&instances, 1, |(e, mu), t| {
        let a = merge(e, mu, agg, se).map(|o| o.result);
        let b = merge_via_dilation_tuples(e, mu, agg, se);
        let agree = match (&a, &b) {
            (Ok(x), Ok(y)) => x == y,
            (Err(Error::Unreachable), Err(Error::Unreachable)) => true,
            _ => false,
        };
        t[0].record(agree, || {
            let show = |r: &Result<WorldSet, Error>| match r {
                Ok(ws) => text(ws),
                Err(err) => err.to_string(),
            };
            Witness::new()
                .input("E", profile_text(e))
                .set("mu", mu)
                .output("scores", show(&a))
                .output("tuples", show(&b))
        });
    });
    tallies.into_iter().next().unwrap().report(
        "tuples",
        subject,
        Mode::of(sweep_mode, n),
        "instance",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_counts() {
        assert_eq!(all_profiles(2, &(1..=2)).len(), 15 + 120);
        assert_eq!(all_profiles(2, &(2..=2)).len(), 120);
    }
}
