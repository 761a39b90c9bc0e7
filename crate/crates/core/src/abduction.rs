//! Explanatory relations built on erosions of a background theory `Σ`, and
//! the ordering-based relation `⊳_f` that also covers observations
//! inconsistent with `Σ`.
//!
//! Entailment modulo `Σ` is read on model sets: `γ ⊢_Σ β` iff
//! `⟦Σ⟧ ∩ ⟦γ⟧ ⊆ ⟦β⟧`. A candidate `γ` with no model inside `Σ` explains
//! nothing.

use crate::morphology::{last_dilation, last_erosion, stratify, ultimate_erosion, Stratification};
use crate::worlds::{StructuringElement, WorldSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `γ ≡_Σ ε_ℓ(Σ ∧ α)`.
    Lneu,
    /// `γ ⊢_Σ ε_ℓ(Σ ∧ α)`.
    Lned,
    /// `γ ⊢_Σ ε_ℓc(Σ, α) ∧ α`.
    Lc,
    /// `γ ⊢_Σ UE(Σ ∧ α)`, an ultimate-erosion variant of `Lned`.
    Ue,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Lneu => "lneu",
            Relation::Lned => "lned",
            Relation::Lc => "lc",
            Relation::Ue => "ue",
        }
    }
}

impl core::str::FromStr for Relation {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "lneu" => Ok(Relation::Lneu),
            "lned" => Ok(Relation::Lned),
            "lc" => Ok(Relation::Lc),
            "ue" => Ok(Relation::Ue),
            _ => Err(()),
        }
    }
}

/// A background theory with its structuring element and cached ranking.
#[derive(Debug, Clone)]
pub struct TheoryContext {
    sigma: WorldSet,
    se: StructuringElement,
    strat: Stratification,
    reach: WorldSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplanationResult {
    /// Models of the canonical explanation, all inside `Σ`.
    pub core: WorldSet,
    pub relation: Relation,
    /// Erosion depth that produced the core; `None` for [`Relation::Ue`].
    pub depth: Option<usize>,
}

impl TheoryContext {
    pub fn new(sigma: WorldSet, se: StructuringElement) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::EmptyTheory);
        }
        if sigma.n() != se.n() {
            return Err(Error::UniverseMismatch {
                left: sigma.n(),
                right: se.n(),
            });
        }
        let strat = stratify(&sigma, &se)?;
        let (reach, _) = last_dilation(&sigma, &se)?;
        Ok(TheoryContext {
            sigma,
            se,
            strat,
            reach,
        })
    }

    pub fn sigma(&self) -> &WorldSet {
        &self.sigma
    }

    pub fn se(&self) -> &StructuringElement {
        &self.se
    }

    pub fn stratification(&self) -> &Stratification {
        &self.strat
    }

    /// `δ_ℓ(Σ)`.
    pub fn reach(&self) -> &WorldSet {
        &self.reach
    }

    fn observed(&self, alpha: &WorldSet) -> Result<WorldSet> {
        self.sigma.same_universe(alpha)?;
        let sa = self.sigma.intersection(alpha);
        if sa.is_empty() {
            return Err(Error::InconsistentObservation);
        }
        Ok(sa)
    }

    /// `ε_ℓc(Σ, α)` and its depth: the deepest erosion of `Σ` still
    /// consistent with `α`, stopping at a fixed point.
    pub fn last_consistent_erosion(&self, alpha: &WorldSet) -> Result<(WorldSet, usize)> {
        self.observed(alpha)?;
        let mut cur = self.sigma.clone();
        let mut k = 0;
        loop {
            let next = self.se.erode(&cur);
            if next == cur || !next.intersects(alpha) {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// The canonical explanation of `alpha` under `relation`.
    pub fn preferred_explanation(
        &self,
        alpha: &WorldSet,
        relation: Relation,
    ) -> Result<ExplanationResult> {
        let sa = self.observed(alpha)?;
        let (core, depth) = match relation {
            Relation::Lneu | Relation::Lned => {
                let (core, d) = last_erosion(&sa, &self.se)?;
                (core, Some(d))
            }
            Relation::Lc => {
                let (e, d) = self.last_consistent_erosion(alpha)?;
                (e.intersection(alpha), Some(d))
            }
            Relation::Ue => (ultimate_erosion(&sa, &self.se), None),
        };
        Ok(ExplanationResult {
            core,
            relation,
            depth,
        })
    }

    /// Whether `gamma` explains `alpha`.
    pub fn explains(&self, gamma: &WorldSet, alpha: &WorldSet, relation: Relation) -> Result<bool> {
        self.sigma.same_universe(gamma)?;
        if gamma.is_empty() {
            return Err(Error::InconsistentExplanans);
        }
        let core = self.preferred_explanation(alpha, relation)?.core;
        Ok(explains_with_core(&self.sigma, gamma, &core, relation))
    }

    /// `C(α)`: the best-ranked models of `α`, or `Σ` when `α` lies outside
    /// every dilation of `Σ`.
    pub fn central(&self, alpha: &WorldSet) -> Result<WorldSet> {
        self.sigma.same_universe(alpha)?;
        if alpha.is_empty() {
            return Err(Error::EmptyObservation);
        }
        if !alpha.intersects(&self.reach) {
            return Ok(self.sigma.clone());
        }
        Ok(self.strat.min_in(alpha))
    }

    /// `α ⊳_f γ` iff `γ ⊢ C(α)`.
    pub fn explains_f(&self, gamma: &WorldSet, alpha: &WorldSet) -> Result<bool> {
        self.sigma.same_universe(gamma)?;
        if gamma.is_empty() {
            return Err(Error::EmptyExplanans);
        }
        Ok(gamma.is_subset(&self.central(alpha)?))
    }

    /// `Σ ∘_f α = C(α)`.
    pub fn revise_f(&self, alpha: &WorldSet) -> Result<WorldSet> {
        self.central(alpha)
    }
}

/// Decides a relation once the canonical core is known. Used by sweeps that
/// evaluate many candidates against one observation.
pub fn explains_with_core(
    sigma: &WorldSet,
    gamma: &WorldSet,
    core: &WorldSet,
    relation: Relation,
) -> bool {
    let sg = sigma.intersection(gamma);
    if sg.is_empty() {
        return false;
    }
    match relation {
        Relation::Lneu => sg == *core,
        _ => sg.is_subset(core),
    }
}
