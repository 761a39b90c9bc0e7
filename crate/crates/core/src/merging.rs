//! Merging under integrity constraints. Each source `φ_i` scores a world by
//! the dilation depth needed to reach it; scores are aggregated by max, sum
//! or leximax and the best worlds of the constraint `μ` are kept.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::revision::faithful_order;
use crate::worlds::{Distance, StructuringElement, World, WorldSet};
use crate::{Error, Result};

/// Ordered multiset of nonempty model sets over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    members: Vec<WorldSet>,
}

impl Profile {
    pub fn new(members: Vec<WorldSet>) -> Result<Self> {
        if members.is_empty() || members.iter().any(WorldSet::is_empty) {
            return Err(Error::EmptyProfile);
        }
        for m in &members[1..] {
            members[0].same_universe(m)?;
        }
        Ok(Profile { members })
    }

    pub fn members(&self) -> &[WorldSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    /// `⋀E`.
    pub fn conjunction(&self) -> WorldSet {
        self.members[1..]
            .iter()
            .fold(self.members[0].clone(), |acc, m| acc.intersection(m))
    }

    /// Multiset union `E ⊔ E'`.
    pub fn join(&self, other: &Profile) -> Profile {
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        Profile { members }
    }

    /// Equivalence up to a bijection between members.
    pub fn equivalent(&self, other: &Profile) -> bool {
        let mut a = self.members.clone();
        let mut b = other.members.clone();
        a.sort();
        b.sort();
        a == b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregation {
    Max,
    Sum,
    /// Distance vectors sorted in decreasing order, compared lexicographically.
    GMax,
}

impl Aggregation {
    pub fn name(self) -> &'static str {
        match self {
            Aggregation::Max => "max",
            Aggregation::Sum => "sum",
            Aggregation::GMax => "gmax",
        }
    }

    pub fn aggregate(self, distances: &[Distance]) -> Score {
        match self {
            Aggregation::Max => Score(vec![distances
                .iter()
                .copied()
                .max()
                .unwrap_or(Distance::Finite(0))]),
            Aggregation::Sum => Score(vec![distances
                .iter()
                .fold(Distance::Finite(0), |a, d| a.saturating_add(*d))]),
            Aggregation::GMax => {
                let mut v = distances.to_vec();
                v.sort_unstable_by(|a, b| b.cmp(a));
                Score(v)
            }
        }
    }
}

impl core::str::FromStr for Aggregation {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "max" => Ok(Aggregation::Max),
            "sum" => Ok(Aggregation::Sum),
            "gmax" => Ok(Aggregation::GMax),
            _ => Err(()),
        }
    }
}

/// An aggregated score; a single entry for max and sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(pub Vec<Distance>);

impl Score {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|d| d.is_finite())
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [d] = self.0.as_slice() {
            return write!(f, "{d}");
        }
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeOutcome {
    pub result: WorldSet,
    /// Score of every model of `μ`, in world order.
    pub per_world_scores: Vec<(World, Score)>,
    pub aggregation: Aggregation,
}

/// Per-source distance of every world: the least `k` with `ω ∈ δ^k(φ_i)`.
pub fn distances(profile: &Profile, se: &StructuringElement) -> Result<Vec<Vec<Distance>>> {
    let orders = profile
        .members()
        .iter()
        .map(|m| faithful_order(m, se))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..1u32 << profile.n())
        .map(|w| orders.iter().map(|o| o.rank(w)).collect())
        .collect())
}

/// `Δ_μ(E)`: the models of `μ` with the best aggregated score. Fails with
/// [`Error::Unreachable`] when every model of `μ` is out of reach of some
/// source.
pub fn merge(
    profile: &Profile,
    mu: &WorldSet,
    agg: Aggregation,
    se: &StructuringElement,
) -> Result<MergeOutcome> {
    profile.members()[0].same_universe(mu)?;
    if mu.is_empty() {
        return Err(Error::EmptyConstraint);
    }
    let dist = distances(profile, se)?;
    let per_world_scores: Vec<(World, Score)> = mu
        .iter()
        .map(|w| (w, agg.aggregate(&dist[w as usize])))
        .collect();
    if !mu
        .iter()
        .any(|w| dist[w as usize].iter().all(|d| d.is_finite()))
    {
        return Err(Error::Unreachable);
    }
    let best = per_world_scores
        .iter()
        .map(|(_, s)| s)
        .min()
        .expect("μ is nonempty");
    let result = WorldSet::from_worlds(
        mu.n(),
        per_world_scores
            .iter()
            .filter(|(_, s)| s == best)
            .map(|(w, _)| *w),
    );
    Ok(MergeOutcome {
        result,
        per_world_scores,
        aggregation: agg,
    })
}

/// The same operator computed literally from dilation tuples: among the depth
/// vectors `(n_1, …, n_m)` for which `δ^{n_1}(φ_1) ∧ … ∧ δ^{n_m}(φ_m) ∧ μ` is
/// consistent, keep those with the best aggregate and join their
/// conjunctions.
pub fn merge_via_dilation_tuples(
    profile: &Profile,
    mu: &WorldSet,
    agg: Aggregation,
    se: &StructuringElement,
) -> Result<WorldSet> {
    profile.members()[0].same_universe(mu)?;
    if mu.is_empty() {
        return Err(Error::EmptyConstraint);
    }
    // every iterated dilation of each source up to its fixed point
    let chains: Vec<Vec<WorldSet>> = profile
        .members()
        .iter()
        .map(|m| {
            let mut chain = vec![m.clone()];
            loop {
                let next = se.dilate(chain.last().unwrap());
                if chain.contains(&next) {
                    break chain;
                }
                chain.push(next);
            }
        })
        .collect();
    let mut tuple = vec![0usize; chains.len()];
    let mut best: Option<(Score, WorldSet)> = None;
    loop {
        let conj = tuple
            .iter()
            .zip(&chains)
            .fold(mu.clone(), |acc, (&k, c)| acc.intersection(&c[k]));
        if !conj.is_empty() {
            let d: Vec<Distance> = tuple.iter().map(|&k| Distance::Finite(k as u32)).collect();
            let s = agg.aggregate(&d);
            best = match best {
                None => Some((s, conj)),
                Some((bs, bw)) => match s.cmp(&bs) {
                    core::cmp::Ordering::Less => Some((s, conj)),
                    core::cmp::Ordering::Equal => Some((bs, bw.union(&conj))),
                    core::cmp::Ordering::Greater => Some((bs, bw)),
                },
            };
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return best.map(|(_, w)| w).ok_or(Error::Unreachable);
            }
            tuple[i] += 1;
            if tuple[i] < chains[i].len() {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// Result of a symmetry sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymReport {
    pub checked: usize,
    /// `(φ, φ', n)` with `δ^n(φ) ∧ φ'` consistent but `δ^n(φ') ∧ φ` not.
    pub witness: Option<(WorldSet, WorldSet, usize)>,
}

impl SymReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `δ^n(φ) ∧ φ' ⊬ ⊥ ⇔ δ^n(φ') ∧ φ ⊬ ⊥` on the given pairs for
/// `n ≤ 2N`. Stops at the first violation.
pub fn check_sym<I>(se: &StructuringElement, pairs: I) -> SymReport
where
    I: IntoIterator<Item = (WorldSet, WorldSet)>,
{
    let depth = 2 * se.n();
    let chain = |s: &WorldSet| {
        let mut v = vec![s.clone()];
        for _ in 0..depth {
            let next = se.dilate(v.last().unwrap());
            v.push(next);
        }
        v
    };
    let mut checked = 0;
    for (a, b) in pairs {
        let (ca, cb) = (chain(&a), chain(&b));
        for n in 0..=depth {
            checked += 1;
            let ab = ca[n].intersects(&b);
            let ba = cb[n].intersects(&a);
            if ab != ba {
                let w = if ab { (a, b, n) } else { (b, a, n) };
                return SymReport {
                    checked,
                    witness: Some(w),
                };
            }
        }
    }
    SymReport {
        checked,
        witness: None,
    }
}

/// [`check_sym`] over every pair of nonempty sets, for at most 3 atoms.
pub fn check_sym_exhaustive(se: &StructuringElement) -> Result<SymReport> {
    let n = se.n();
    if n > 3 {
        return Err(Error::ScaleExceeded { atoms: n, limit: 3 });
    }
    let sets: Vec<WorldSet> = WorldSet::all_sets(n).filter(|s| !s.is_empty()).collect();
    let pairs = sets
        .iter()
        .enumerate()
        .flat_map(|(i, a)| sets[i..].iter().map(move |b| (a.clone(), b.clone())));
    Ok(check_sym(se, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{models, Formula};
    use crate::Alphabet;

    fn m(s: &str) -> WorldSet {
        models(&Formula::parse(s).unwrap(), &Alphabet::letters(3).unwrap()).unwrap()
    }

    fn two_sources() -> Profile {
        Profile::new(vec![m("!a&!b&!c"), m("a&b&!c")]).unwrap()
    }

    #[test]
    fn two_sources_max_and_sum() {
        let h = StructuringElement::hamming(3, 1);
        let top = WorldSet::full(3);
        let out = merge(&two_sources(), &top, Aggregation::Max, &h).unwrap();
        assert_eq!(out.result, m("(a&!b&!c)|(!a&b&!c)"));
        assert_eq!(
            merge_via_dilation_tuples(&two_sources(), &top, Aggregation::Max, &h).unwrap(),
            out.result
        );
        let out = merge(&two_sources(), &top, Aggregation::Sum, &h).unwrap();
        assert_eq!(out.result, m("!c"));
        assert_eq!(
            merge_via_dilation_tuples(&two_sources(), &top, Aggregation::Sum, &h).unwrap(),
            m("!c")
        );
        assert_eq!(out.per_world_scores.len(), 8);
    }

    #[test]
    fn consistent_profile_gives_conjunction() {
        let h = StructuringElement::hamming(3, 1);
        let e = Profile::new(vec![m("a|b"), m("a")]).unwrap();
        for agg in [Aggregation::Max, Aggregation::Sum, Aggregation::GMax] {
            assert_eq!(merge(&e, &m("!c"), agg, &h).unwrap().result, m("a&!c"));
        }
    }

    #[test]
    fn errors() {
        let h = StructuringElement::hamming(3, 1);
        assert_eq!(Profile::new(vec![]), Err(Error::EmptyProfile));
        assert_eq!(
            Profile::new(vec![WorldSet::empty(3)]),
            Err(Error::EmptyProfile)
        );
        assert_eq!(
            merge(&two_sources(), &WorldSet::empty(3), Aggregation::Max, &h),
            Err(Error::EmptyConstraint)
        );
        let r = StructuringElement::restricted(3, 0b011, 1);
        let e = Profile::new(vec![m("a&b&c"), m("a&b&!c")]).unwrap();
        assert_eq!(
            merge(&e, &WorldSet::full(3), Aggregation::Sum, &r),
            Err(Error::Unreachable)
        );
        assert_eq!(
            merge_via_dilation_tuples(&e, &WorldSet::full(3), Aggregation::Sum, &r),
            Err(Error::Unreachable)
        );
    }

    #[test]
    fn sym_checks() {
        assert!(check_sym_exhaustive(&StructuringElement::hamming(2, 1))
            .unwrap()
            .holds());
        let mut rows: Vec<WorldSet> = (0..4).map(|x| WorldSet::singleton(2, x)).collect();
        rows[0].insert(3);
        let bad = StructuringElement::explicit_unchecked(2, rows).unwrap();
        assert!(!check_sym_exhaustive(&bad).unwrap().holds());
    }
}
