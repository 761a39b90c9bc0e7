//! Revision by iterated dilation: `φ ∘ ψ = δ^n(φ) ∧ ψ` with the least `n`
//! making the conjunction consistent.

use crate::morphology::{last_dilation, Stratification};
use crate::worlds::{Distance, StructuringElement, World, WorldSet};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionOutcome {
    pub result: WorldSet,
    /// The `n` used, `+∞` when no dilation of `φ` meets `ψ`.
    pub dilation_depth: Distance,
    /// Set when no dilation meets `ψ` and `φ` was returned unchanged.
    pub limited: bool,
}

/// Revises `phi` by `psi`. When the dilations of `phi` reach a fixed point
/// without meeting `psi` (including `psi = ∅`), `phi` is kept and the outcome
/// is marked `limited`.
pub fn revise(phi: &WorldSet, psi: &WorldSet, se: &StructuringElement) -> Result<RevisionOutcome> {
    phi.same_universe(psi)?;
    if phi.is_empty() {
        return Err(Error::EmptyBelief);
    }
    let mut cur = phi.clone();
    let mut k = 0;
    loop {
        let hit = cur.intersection(psi);
        if !hit.is_empty() {
            return Ok(RevisionOutcome {
                result: hit,
                dilation_depth: Distance::Finite(k),
                limited: false,
            });
        }
        let next = se.dilate(&cur);
        if next == cur {
            return Ok(RevisionOutcome {
                result: phi.clone(),
                dilation_depth: Distance::Infinite,
                limited: true,
            });
        }
        cur = next;
        k += 1;
    }
}

/// The order `≤_φ`: rank of `ω` is the least `k` with `ω ∈ δ^k(φ)`.
pub fn faithful_order(phi: &WorldSet, se: &StructuringElement) -> Result<FaithfulOrder> {
    if phi.is_empty() {
        return Err(Error::EmptyBelief);
    }
    let (_, depth) = last_dilation(phi, se)?;
    let mut ranks = alloc::vec![Distance::Infinite; phi.universe_size()];
    let mut cur = phi.clone();
    for k in 0..=depth {
        for w in cur.iter() {
            if ranks[w as usize] == Distance::Infinite {
                ranks[w as usize] = Distance::Finite(k as u32);
            }
        }
        cur = se.dilate(&cur);
    }
    Ok(FaithfulOrder { ranks, n: phi.n() })
}

/// Total pre-order on worlds induced by the dilations of a belief.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulOrder {
    ranks: alloc::vec::Vec<Distance>,
    n: usize,
}

impl FaithfulOrder {
    pub fn rank(&self, w: World) -> Distance {
        self.ranks[w as usize]
    }

    pub fn leq(&self, w1: World, w2: World) -> bool {
        self.rank(w1) <= self.rank(w2)
    }

    /// `min(ws, ≤_φ)` over the finitely ranked members.
    pub fn min_in(&self, ws: &WorldSet) -> WorldSet {
        match ws
            .iter()
            .map(|w| self.rank(w))
            .filter(|r| r.is_finite())
            .min()
        {
            None => WorldSet::empty(self.n),
            Some(best) => {
                WorldSet::from_worlds(self.n, ws.iter().filter(|&w| self.rank(w) == best))
            }
        }
    }
}

impl From<&Stratification> for FaithfulOrder {
    fn from(s: &Stratification) -> Self {
        FaithfulOrder {
            ranks: s.ranks().to_vec(),
            n: s.sigma().n(),
        }
    }
}

/// `min(⟦ψ⟧, ≤_φ)`. Empty when no member of `ψ` is reachable.
pub fn revise_via_order(
    phi: &WorldSet,
    psi: &WorldSet,
    se: &StructuringElement,
) -> Result<WorldSet> {
    phi.same_universe(psi)?;
    Ok(faithful_order(phi, se)?.min_in(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{models, Formula};
    use crate::worlds::hamming;
    use crate::Alphabet;

    fn m(s: &str) -> WorldSet {
        models(&Formula::parse(s).unwrap(), &Alphabet::letters(3).unwrap()).unwrap()
    }

    #[test]
    fn linda() {
        let h = StructuringElement::hamming(3, 1);
        let out = revise(&m("a&b&c"), &m("!c"), &h).unwrap();
        assert_eq!(out.result, m("a&b&!c"));
        assert_eq!(out.dilation_depth, Distance::Finite(1));
        assert!(!out.limited);
        assert_eq!(
            revise_via_order(&m("a&b&c"), &m("!c"), &h).unwrap(),
            m("a&b&!c")
        );
    }

    #[test]
    fn consistent_case_is_conjunction() {
        let h = StructuringElement::hamming(3, 1);
        let out = revise(&m("a|b"), &m("a&!c"), &h).unwrap();
        assert_eq!(out.result, m("a&!c"));
        assert_eq!(out.dilation_depth, Distance::Finite(0));
    }

    #[test]
    fn credibility_limited() {
        let r = StructuringElement::restricted(3, 0b011, 1);
        let out = revise(&m("a&b&c"), &m("!c"), &r).unwrap();
        assert!(out.limited);
        assert_eq!(out.result, m("a&b&c"));
        let h = StructuringElement::hamming(3, 1);
        assert!(revise(&m("a"), &WorldSet::empty(3), &h).unwrap().limited);
        assert_eq!(
            revise(&WorldSet::empty(3), &m("a"), &h),
            Err(Error::EmptyBelief)
        );
    }

    #[test]
    fn order_is_dalal_distance() {
        let h = StructuringElement::hamming(3, 1);
        let o = faithful_order(&m("a&b&c"), &h).unwrap();
        for w in 0..8 {
            assert_eq!(o.rank(w), Distance::Finite(hamming(w, 7)));
        }
        let o = faithful_order(&WorldSet::full(3), &h).unwrap();
        assert!((0..8).all(|w| o.rank(w) == Distance::Finite(0)));
    }
}
