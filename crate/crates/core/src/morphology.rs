//! Dilation and erosion, with the operators derived from them.
//!
//! Every function takes the structuring element explicitly. Iterated forms
//! apply the same element repeatedly.

use alloc::vec;
use alloc::vec::Vec;

use crate::worlds::{hamming, Distance, StructuringElement, World, WorldSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dilate,
    Erode,
}

pub fn dilate(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    se.dilate(ws)
}

pub fn erode(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    se.erode(ws)
}

/// `n`-fold dilation or erosion; `n = 0` is the identity.
pub fn iterate(ws: &WorldSet, se: &StructuringElement, n: usize, mode: Mode) -> WorldSet {
    let mut cur = ws.clone();
    for _ in 0..n {
        let next = match mode {
            Mode::Dilate => se.dilate(&cur),
            Mode::Erode => se.erode(&cur),
        };
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// The sequence `ws, f(ws), f(f(ws)), ...` up to and including the first
/// repeated value. Returns the sequence and the index where the repeated
/// value first appeared.
fn orbit(ws: &WorldSet, step: impl Fn(&WorldSet) -> WorldSet) -> (Vec<WorldSet>, usize) {
    let mut seq = vec![ws.clone()];
    loop {
        let next = step(seq.last().unwrap());
        if let Some(i) = seq.iter().position(|s| *s == next) {
            return (seq, i);
        }
        seq.push(next);
    }
}

/// `δ^n_ψ(φ)`: start from `φ ∧ ψ`, then `n` times dilate and intersect with `ψ`.
pub fn conditional_dilate(
    ws: &WorldSet,
    cond: &WorldSet,
    se: &StructuringElement,
    n: usize,
) -> WorldSet {
    let mut cur = ws.intersection(cond);
    for _ in 0..n {
        cur = se.dilate(&cur).intersection(cond);
    }
    cur
}

/// `ε^n_ψ(φ)`: start from `φ ∨ ψ`, then `n` times erode and unite with `ψ`.
pub fn conditional_erode(
    ws: &WorldSet,
    cond: &WorldSet,
    se: &StructuringElement,
    n: usize,
) -> WorldSet {
    let mut cur = ws.union(cond);
    for _ in 0..n {
        cur = se.erode(&cur).union(cond);
    }
    cur
}

/// `R(marker | mask)`: conditional dilation of the marker inside the mask to
/// its fixed point.
pub fn reconstruct(marker: &WorldSet, mask: &WorldSet, se: &StructuringElement) -> WorldSet {
    let mut cur = marker.intersection(mask);
    loop {
        let next = se.dilate(&cur).intersection(mask);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn open(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    se.dilate(&se.erode(ws))
}

pub fn close(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    se.erode(&se.dilate(ws))
}

/// `ε_ℓ(φ)` and its depth: erode until the next step is empty or repeats an
/// earlier value.
pub fn last_erosion(ws: &WorldSet, se: &StructuringElement) -> Result<(WorldSet, usize)> {
    if ws.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (seq, first_repeat) = orbit(ws, |s| se.erode(s));
    let last = seq.len() - 1;
    if seq[last].is_empty() {
        // the empty set is a fixed point, so it was appended last
        Ok((seq[last - 1].clone(), last - 1))
    } else {
        Ok((seq[first_repeat].clone(), first_repeat))
    }
}

/// `δ_ℓ(φ)` and its depth: dilate until a value repeats.
pub fn last_dilation(ws: &WorldSet, se: &StructuringElement) -> Result<(WorldSet, usize)> {
    if ws.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (seq, first_repeat) = orbit(ws, |s| se.dilate(s));
    Ok((seq[first_repeat].clone(), first_repeat))
}

/// Ultimate erosion by its definition: the union over `n` of
/// `ε^n(φ) ∖ R(ε^{n+1}(φ) | ε^n(φ))`.
pub fn ultimate_erosion(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    let mut out = WorldSet::empty(ws.n());
    let mut cur = ws.clone();
    let mut seen: Vec<WorldSet> = Vec::new();
    while !cur.is_empty() && !seen.contains(&cur) {
        let next = se.erode(&cur);
        out = out.union(&cur.difference(&reconstruct(&next, &cur, se)));
        seen.push(cur);
        cur = next;
    }
    out
}

/// Ultimate erosion by recursive decomposition into connected components.
/// A component that erodes to itself contributes nothing, as in the
/// definitional form.
pub fn ultimate_erosion_recursive(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    let comps = connected_components(ws, se);
    match comps.len() {
        0 => WorldSet::empty(ws.n()),
        1 => {
            let e = se.erode(ws);
            if e.is_empty() {
                ws.clone()
            } else if e == *ws {
                WorldSet::empty(ws.n())
            } else {
                ultimate_erosion_recursive(&e, se)
            }
        }
        _ => comps.iter().fold(WorldSet::empty(ws.n()), |acc, c| {
            acc.union(&ultimate_erosion_recursive(c, se))
        }),
    }
}

/// Skeleton by the opening loop: `Sk = φ ∧ ¬O(φ)`, then add
/// `ε(ψ) ∧ ¬O(ε(ψ))` for successive erosions `ψ` until `ψ` is empty or stops
/// changing.
pub fn skeleton(ws: &WorldSet, se: &StructuringElement) -> WorldSet {
    let mut sk = ws.difference(&open(ws, se));
    let mut psi = ws.clone();
    while !psi.is_empty() {
        let e = se.erode(&psi);
        if e == psi {
            break;
        }
        sk = sk.union(&e.difference(&open(&e, se)));
        psi = e;
    }
    sk
}

/// Connected components of `ws` in the graph where `ω` and `ω'` are adjacent
/// when `ω' ∈ B_ω` (or `ω ∈ B_ω'`), ordered by smallest member.
pub fn connected_components(ws: &WorldSet, se: &StructuringElement) -> Vec<WorldSet> {
    let mut rest = ws.clone();
    let mut out = Vec::new();
    while let Some(seed) = rest.first() {
        let comp = component_of(seed, &rest, se);
        rest = rest.difference(&comp);
        out.push(comp);
    }
    out
}

fn component_of(seed: World, within: &WorldSet, se: &StructuringElement) -> WorldSet {
    let mut comp = WorldSet::singleton(within.n(), seed);
    loop {
        // grow along B in both directions so the graph is undirected even for
        // unchecked explicit elements
        let fwd = se.dilate(&comp);
        let back = se.erode(&comp.complement()).complement();
        let next = comp.union(&fwd).union(&back).intersection(within);
        if next == comp {
            return comp;
        }
        comp = next;
    }
}

/// `(δ(φ) ∧ ¬φ, φ ∧ ¬ε(φ))`.
pub fn boundaries(ws: &WorldSet, se: &StructuringElement) -> (WorldSet, WorldSet) {
    (se.dilate(ws).difference(ws), ws.difference(&se.erode(ws)))
}

/// Morphological ranking of all worlds around a theory `Σ`.
///
/// Level `T_i` is `ε^{m−i}(Σ)` for `i ≤ m` and `δ^{i−m}(Σ)` beyond, where `m`
/// is the last-erosion depth. Worlds outside the last dilation rank `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    ranks: Vec<Distance>,
    m: usize,
    n: usize,
    sigma: WorldSet,
}

impl Stratification {
    pub fn rank(&self, w: World) -> Distance {
        self.ranks[w as usize]
    }

    pub fn ranks(&self) -> &[Distance] {
        &self.ranks
    }

    /// Last-erosion depth.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Last-dilation depth.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &WorldSet {
        &self.sigma
    }

    /// `T_k = {ω | rank(ω) ≤ k}`.
    pub fn level(&self, k: u32) -> WorldSet {
        WorldSet::from_worlds(
            self.sigma.n(),
            (0..self.ranks.len() as World)
                .filter(|&w| self.ranks[w as usize] <= Distance::Finite(k)),
        )
    }

    /// `ω ≼ ω'`.
    pub fn leq(&self, w1: World, w2: World) -> bool {
        self.rank(w1) <= self.rank(w2)
    }

    /// Members of `ws` with minimal rank (possibly all at `+∞`).
    pub fn min_in(&self, ws: &WorldSet) -> WorldSet {
        match ws.iter().map(|w| self.rank(w)).min() {
            None => WorldSet::empty(ws.n()),
            Some(best) => {
                WorldSet::from_worlds(ws.n(), ws.iter().filter(|&w| self.rank(w) == best))
            }
        }
    }
}

pub fn stratify(sigma: &WorldSet, se: &StructuringElement) -> Result<Stratification> {
    let (_, m) = last_erosion(sigma, se)?;
    let (_, n) = last_dilation(sigma, se)?;
    let mut levels = Vec::with_capacity(m + n + 1);
    for i in 0..=m {
        levels.push(iterate(sigma, se, m - i, Mode::Erode));
    }
    let mut cur = sigma.clone();
    for _ in 0..n {
        cur = se.dilate(&cur);
        levels.push(cur.clone());
    }
    let ranks = (0..sigma.universe_size() as World)
        .map(|w| {
            levels
                .iter()
                .position(|t| t.contains(w))
                .map_or(Distance::Infinite, |i| Distance::Finite(i as u32))
        })
        .collect();
    Ok(Stratification {
        ranks,
        m,
        n,
        sigma: sigma.clone(),
    })
}

/// Least `n` with `δ^n(a) ∧ b` consistent, `+∞` if none.
pub fn min_distance(a: &WorldSet, b: &WorldSet, se: &StructuringElement) -> Distance {
    if a.is_empty() || b.is_empty() {
        return Distance::Infinite;
    }
    let mut cur = a.clone();
    let mut k = 0;
    loop {
        if cur.intersects(b) {
            return Distance::Finite(k);
        }
        let next = se.dilate(&cur);
        if next == cur {
            return Distance::Infinite;
        }
        cur = next;
        k += 1;
    }
}

/// Least `n` with `a ⊨ δ^n(b)` and `b ⊨ δ^n(a)`, `+∞` if none.
pub fn hausdorff(a: &WorldSet, b: &WorldSet, se: &StructuringElement) -> Distance {
    if a.is_empty() != b.is_empty() {
        return Distance::Infinite;
    }
    let (mut da, mut db) = (a.clone(), b.clone());
    let mut k = 0;
    loop {
        if b.is_subset(&da) && a.is_subset(&db) {
            return Distance::Finite(k);
        }
        let (na, nb) = (se.dilate(&da), se.dilate(&db));
        if na == da && nb == db {
            return Distance::Infinite;
        }
        da = na;
        db = nb;
        k += 1;
    }
}

/// `min` over pairs of Hamming distances, the direct form of [`min_distance`]
/// for the unit ball.
pub fn min_hamming(a: &WorldSet, b: &WorldSet) -> Distance {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| hamming(x, y)))
        .min()
        .map_or(Distance::Infinite, Distance::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{models, Formula};
    use crate::Alphabet;

    fn m(s: &str) -> WorldSet {
        models(&Formula::parse(s).unwrap(), &Alphabet::letters(3).unwrap()).unwrap()
    }

    fn h1() -> StructuringElement {
        StructuringElement::hamming(3, 1)
    }

    fn ab() -> StructuringElement {
        StructuringElement::restricted(3, 0b011, 1)
    }

    #[test]
    fn dilation_of_two_worlds() {
        let phi = m("(a&b&c)|(!a&!b&c)");
        assert_eq!(dilate(&phi, &h1()), m("(!a|b|c)&(a|!b|c)"));
        assert!(dilate(&WorldSet::empty(3), &h1()).is_empty());
        assert_eq!(
            dilate(&m("a&b&c"), &ab()),
            WorldSet::from_strs(3, &["111", "011", "101"]).unwrap()
        );
    }

    #[test]
    fn erosion_of_a_theory() {
        assert_eq!(erode(&m("c|(!a&!b)"), &h1()), m("!a&!b&c"));
        assert!(erode(&WorldSet::full(3), &h1()).is_full());
        assert_eq!(
            erode(&m("(a|!b|!c)&(a|b|c)"), &h1()),
            m("(a&!b&c)|(a&b&!c)")
        );
    }

    #[test]
    fn iteration() {
        let s = m("c|(!a&!b)");
        assert_eq!(iterate(&s, &h1(), 0, Mode::Erode), s);
        assert!(iterate(&s, &h1(), 2, Mode::Erode).is_empty());
        assert!(iterate(&m("(a->c)&(b->c)"), &h1(), 1, Mode::Dilate).is_full());
    }

    #[test]
    fn conditional_operators() {
        let c = m("c");
        let abc = m("a&b&c");
        assert_eq!(
            conditional_dilate(&abc, &c, &h1(), 1),
            WorldSet::from_strs(3, &["111", "011", "101"]).unwrap()
        );
        assert_eq!(conditional_dilate(&abc, &c, &h1(), 0), abc.intersection(&c));
        assert_eq!(conditional_erode(&abc, &c, &h1(), 0), abc.union(&c));
    }

    #[test]
    fn reconstruction_keeps_marked_component() {
        let mask = m("(a&b)|(a&c)|(b&c)|(!a&!b&!c)");
        assert_eq!(
            reconstruct(&m("a&b&c"), &mask, &h1()),
            m("(a&b)|(a&c)|(b&c)")
        );
        assert!(reconstruct(&WorldSet::empty(3), &mask, &h1()).is_empty());
        assert_eq!(reconstruct(&mask, &mask, &h1()), mask);
    }

    #[test]
    fn opening_and_skeleton_example() {
        let phi = m("(a&b)|(a&c)|(b&c)|(!a&!b&!c)");
        assert_eq!(open(&phi, &h1()), m("(a&b)|(a&c)|(b&c)"));
        assert_eq!(skeleton(&phi, &h1()), m("(!a&!b&!c)|(a&b&c)"));
        let ball = h1().neighborhood(5);
        assert_eq!(skeleton(&ball, &h1()), WorldSet::singleton(3, 5));
        assert!(skeleton(&WorldSet::empty(3), &h1()).is_empty());
        assert!(open(&WorldSet::empty(3), &h1()).is_empty());
    }

    #[test]
    fn last_erosions() {
        let phi = m("(a|!b|!c)&(a|b|c)");
        assert_eq!(
            last_erosion(&phi, &h1()).unwrap(),
            (m("(a&!b&c)|(a&b&!c)"), 1)
        );
        assert_eq!(
            last_erosion(&WorldSet::full(3), &h1()).unwrap(),
            (WorldSet::full(3), 0)
        );
        assert_eq!(last_erosion(&m("c"), &ab()).unwrap(), (m("c"), 0));
        assert_eq!(
            last_erosion(&WorldSet::empty(3), &h1()),
            Err(Error::EmptyInput)
        );
        assert_eq!(last_dilation(&m("a&b&c"), &ab()).unwrap(), (m("c"), 2));
        assert_eq!(
            last_dilation(&m("a&b&c"), &h1()).unwrap(),
            (WorldSet::full(3), 3)
        );
    }

    #[test]
    fn components_and_ultimate_erosion() {
        let n4 = Alphabet::letters(4).unwrap();
        let phi = models(
            &Formula::parse("(a&b)|(a&c)|(b&c)|(!a&!b&!c&!d)").unwrap(),
            &n4,
        )
        .unwrap();
        let h = StructuringElement::hamming(4, 1);
        let want = models(&Formula::parse("(a&b&c)|(!a&!b&!c&!d)").unwrap(), &n4).unwrap();
        assert_eq!(ultimate_erosion(&phi, &h), want);
        assert_eq!(ultimate_erosion_recursive(&phi, &h), want);
        let phi3 = m("(a&b)|(a&c)|(b&c)|(!a&!b&!c)");
        let comps = connected_components(&phi3, &h1());
        assert_eq!(comps, vec![m("!a&!b&!c"), m("(a&b)|(a&c)|(b&c)")]);
        assert!(connected_components(&WorldSet::empty(3), &h1()).is_empty());
        assert_eq!(
            ultimate_erosion(&WorldSet::singleton(3, 6), &h1()),
            WorldSet::singleton(3, 6)
        );
    }

    #[test]
    fn boundary_examples() {
        let (ext, _) = boundaries(&m("a&b&c"), &h1());
        assert_eq!(ext, WorldSet::from_strs(3, &["011", "101", "110"]).unwrap());
        assert!(boundaries(&WorldSet::full(3), &h1()).1.is_empty());
        let s = m("c|(!a&!b)");
        let mut want = s.clone();
        want.remove(4);
        assert_eq!(boundaries(&s, &h1()).1, want);
    }

    fn ranks(st: &Stratification, rows: &[(&str, u32)]) {
        for (w, r) in rows {
            let w = crate::worlds::parse_world(w, 3).unwrap();
            assert_eq!(st.rank(w), Distance::Finite(*r), "world {w}");
        }
    }

    #[test]
    fn stratifications_of_sigma1() {
        let sigma1 = m("(a->c)&(b->c)");
        let st = stratify(&sigma1, &h1()).unwrap();
        ranks(
            &st,
            &[
                ("001", 0),
                ("000", 1),
                ("101", 1),
                ("011", 1),
                ("111", 1),
                ("100", 2),
                ("010", 2),
                ("110", 2),
            ],
        );
        let st = stratify(&sigma1, &ab()).unwrap();
        ranks(
            &st,
            &[
                ("001", 0),
                ("101", 0),
                ("011", 0),
                ("111", 0),
                ("000", 1),
                ("100", 2),
                ("010", 2),
                ("110", 3),
            ],
        );
        let st = stratify(&WorldSet::full(3), &h1()).unwrap();
        assert!(st.ranks().iter().all(|r| *r == Distance::Finite(0)));
    }

    #[test]
    fn distances() {
        let n4 = Alphabet::letters(4).unwrap();
        let t1 = models(&Formula::parse("a&!b&c").unwrap(), &n4).unwrap();
        let t2 = models(&Formula::parse("b&c&d").unwrap(), &n4).unwrap();
        let h = StructuringElement::hamming(4, 1);
        assert_eq!(min_distance(&t1, &t2, &h), Distance::Finite(1));
        assert_eq!(min_distance(&t1, &t1, &h), Distance::Finite(0));
        let (x, y) = (WorldSet::singleton(3, 0), WorldSet::singleton(3, 7));
        assert_eq!(hausdorff(&x, &y, &h1()), Distance::Finite(3));
        assert_eq!(
            min_distance(&m("a&b&c"), &m("!c"), &ab()),
            Distance::Infinite
        );
    }
}
