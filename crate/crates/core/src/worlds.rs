//! Interpretations, model sets and structuring elements.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::{smallvec, SmallVec};

use crate::{Error, Result, MAX_ATOMS};

/// An interpretation over `N` atoms; bit `i` is the value of atom `i`.
pub type World = u32;

/// Hamming distance between two worlds.
pub fn hamming(w1: World, w2: World) -> u32 {
    (w1 ^ w2).count_ones()
}

/// Writes `w` in atom order: the first character is atom 0.
pub fn world_string(w: World, n: usize) -> String {
    (0..n)
        .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`world_string`].
pub fn parse_world(s: &str, n: usize) -> Result<World> {
    let s = s.trim();
    if s.len() != n || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidStructuringElement(format!(
            "`{s}` is not a {n}-bit world"
        )));
    }
    Ok(s.bytes()
        .enumerate()
        .fold(0, |w, (i, b)| w | (((b - b'0') as u32) << i)))
}

/// A natural number or `+∞`, ordered with `+∞` greatest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// Sum with `+∞` absorbing.
    pub fn saturating_add(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A set of worlds over `N` atoms, stored as a `2^N`-bit vector.
///
/// Only `N` is recorded; atom names live in the [`Alphabet`](crate::Alphabet)
/// that produced the set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    n: u8,
    words: SmallVec<[u64; 1]>,
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&world_string(w, self.n()))?;
        }
        f.write_str("}")
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order for deterministic sorting only; unrelated to inclusion.
impl Ord for WorldSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn last_word_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl WorldSet {
    /// # Panics
    /// If `n` exceeds [`MAX_ATOMS`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ATOMS, "{n} atoms exceed the limit of {MAX_ATOMS}");
        WorldSet {
            n: n as u8,
            words: smallvec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut ws = Self::empty(n);
        for w in ws.words.iter_mut() {
            *w = u64::MAX;
        }
        ws.trim();
        ws
    }

    pub fn singleton(n: usize, w: World) -> Self {
        let mut ws = Self::empty(n);
        ws.insert(w);
        ws
    }

    pub fn from_worlds<I: IntoIterator<Item = World>>(n: usize, worlds: I) -> Self {
        let mut ws = Self::empty(n);
        for w in worlds {
            ws.insert(w);
        }
        ws
    }

    /// From world strings written in atom order, e.g. `"110"`.
    pub fn from_strs<S: AsRef<str>>(n: usize, worlds: &[S]) -> Result<Self> {
        let mut ws = Self::empty(n);
        for s in worlds {
            ws.insert(parse_world(s.as_ref(), n)?);
        }
        Ok(ws)
    }

    /// Worlds where atom `i` is true.
    pub fn atom(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut ws = Self::empty(n);
        if i < 6 {
            let m = !LOW_MASKS[i];
            for w in ws.words.iter_mut() {
                *w = m;
            }
        } else {
            let stride = 1 << (i - 6);
            for (k, w) in ws.words.iter_mut().enumerate() {
                if k & stride != 0 {
                    *w = u64::MAX;
                }
            }
        }
        ws.trim();
        ws
    }

    /// For `n ≤ 6`: the set whose membership vector is `bits`.
    pub fn from_u64(n: usize, bits: u64) -> Self {
        assert!(n <= 6);
        let mut ws = Self::empty(n);
        ws.words[0] = bits;
        ws.trim();
        ws
    }

    /// For `n ≤ 6`: the membership vector.
    pub fn to_u64(&self) -> u64 {
        assert!(self.n <= 6);
        self.words[0]
    }

    /// Every subset of `Ω` for `n ≤ 4`, in membership-vector order.
    pub fn all_sets(n: usize) -> impl Iterator<Item = WorldSet> {
        assert!(n <= 4, "exhaustive enumeration is limited to 4 atoms");
        (0..1u64 << (1 << n)).map(move |b| WorldSet::from_u64(n, b))
    }

    fn trim(&mut self) {
        let m = last_word_mask(self.n());
        if let Some(w) = self.words.last_mut() {
            *w &= m;
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `2^N`.
    pub fn universe_size(&self) -> usize {
        1 << self.n
    }

    pub fn contains(&self, w: World) -> bool {
        (w as usize) < self.universe_size() && self.words[(w >> 6) as usize] >> (w & 63) & 1 == 1
    }

    pub fn insert(&mut self, w: World) {
        assert!(
            (w as usize) < self.universe_size(),
            "world {w} outside universe"
        );
        self.words[(w >> 6) as usize] |= 1 << (w & 63);
    }

    pub fn remove(&mut self, w: World) {
        if (w as usize) < self.universe_size() {
            self.words[(w >> 6) as usize] &= !(1 << (w & 63));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n())
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "world sets over different numbers of atoms"
        );
    }

    pub fn same_universe(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a = f(*a, *b);
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(((k as u32) << 6) | b)
            })
        })
    }

    pub fn first(&self) -> Option<World> {
        self.iter().next()
    }

    /// Image under `w ↦ w ^ (1 << bit)`, i.e. every member with one atom flipped.
    pub fn flip(&self, bit: usize) -> Self {
        assert!(bit < self.n());
        let mut out = self.clone();
        if bit < 6 {
            let m = LOW_MASKS[bit];
            let s = 1 << bit;
            for w in out.words.iter_mut() {
                *w = ((*w & m) << s) | ((*w >> s) & m);
            }
        } else {
            let stride = 1 << (bit - 6);
            for k in 0..out.words.len() {
                if k & stride == 0 {
                    out.words.swap(k, k | stride);
                }
            }
        }
        out
    }

    /// Image under `w ↦ w ^ mask`.
    pub fn xor_shift(&self, mask: u32) -> Self {
        let mut out = self.clone();
        for bit in 0..self.n() {
            if mask >> bit & 1 == 1 {
                out = out.flip(bit);
            }
        }
        out
    }

    /// Members rendered as world strings, in index order.
    pub fn world_strings(&self) -> Vec<String> {
        self.iter().map(|w| world_string(w, self.n())).collect()
    }
}

/// `d(ω, φ) = min_{ω' ⊨ φ} d(ω, ω')`, `+∞` for an empty set.
pub fn dist_to_formula(w: World, ws: &WorldSet) -> Distance {
    ws.iter()
        .map(|v| hamming(w, v))
        .min()
        .map_or(Distance::Infinite, Distance::Finite)
}

/// The shape of a structuring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeKind {
    /// Hamming ball of the given radius.
    HammingBall(u32),
    /// Ball of the given radius that keeps every atom outside `abducibles`
    /// fixed.
    Restricted { abducibles: u32, radius: u32 },
    /// The world itself plus the worlds obtained by flipping exactly two
    /// abducible atoms.
    RestrictedExact2 { abducibles: u32 },
    /// One stored neighborhood per world.
    Explicit(Vec<WorldSet>),
}

/// A neighborhood map `ω ↦ B_ω` over `N` atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructuringElement {
    n: usize,
    kind: SeKind,
}

/// Outcome of [`StructuringElement::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    /// Pairs `(ω, ω')` with `ω' ∈ B_ω` but `ω ∉ B_ω'`.
    pub asymmetric: Vec<(World, World)>,
    /// Worlds not in their own neighborhood.
    pub irreflexive: Vec<World>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.asymmetric.is_empty() && self.irreflexive.is_empty()
    }
}

impl StructuringElement {
    pub fn hamming(n: usize, radius: u32) -> Self {
        assert!(n <= MAX_ATOMS);
        StructuringElement {
            n,
            kind: SeKind::HammingBall(radius),
        }
    }

    pub fn restricted(n: usize, abducibles: u32, radius: u32) -> Self {
        assert!(n <= MAX_ATOMS);
        StructuringElement {
            n,
            kind: SeKind::Restricted {
                abducibles: abducibles & mask(n),
                radius,
            },
        }
    }

    pub fn restricted_exact2(n: usize, abducibles: u32) -> Self {
        assert!(n <= MAX_ATOMS);
        StructuringElement {
            n,
            kind: SeKind::RestrictedExact2 {
                abducibles: abducibles & mask(n),
            },
        }
    }

    /// Explicit neighborhoods, checked for symmetry and reflexivity.
    pub fn explicit(n: usize, rows: Vec<WorldSet>) -> Result<Self> {
        let se = Self::explicit_unchecked(n, rows)?;
        let v = se.validate();
        if let Some(&(w, v2)) = v.asymmetric.first() {
            return Err(Error::InvalidStructuringElement(format!(
                "not symmetric: {} is a neighbor of {} but not conversely",
                world_string(v2, n),
                world_string(w, n)
            )));
        }
        if let Some(&w) = v.irreflexive.first() {
            return Err(Error::InvalidStructuringElement(format!(
                "not reflexive: {} is not its own neighbor",
                world_string(w, n)
            )));
        }
        Ok(se)
    }

    /// Explicit neighborhoods without the symmetry and reflexivity checks.
    /// Meant for experiments with ill-formed relations.
    pub fn explicit_unchecked(n: usize, rows: Vec<WorldSet>) -> Result<Self> {
        if n > MAX_ATOMS {
            return Err(Error::TooManyAtoms(n));
        }
        if rows.len() != 1 << n || rows.iter().any(|r| r.n() != n) {
            return Err(Error::InvalidStructuringElement(format!(
                "expected {} neighborhoods over {n} atoms",
                1usize << n
            )));
        }
        Ok(StructuringElement {
            n,
            kind: SeKind::Explicit(rows),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &SeKind {
        &self.kind
    }

    /// Whether this is the unit Hamming ball.
    pub fn is_unit_hamming(&self) -> bool {
        self.kind == SeKind::HammingBall(1)
    }

    /// `B_ω`.
    pub fn neighborhood(&self, w: World) -> WorldSet {
        self.dilate(&WorldSet::singleton(self.n, w))
    }

    /// One dilation step: the union of `B_x` over the members `x` of `ws`.
    ///
    /// # Panics
    /// If `ws` is over a different number of atoms.
    pub fn dilate(&self, ws: &WorldSet) -> WorldSet {
        assert_eq!(
            ws.n(),
            self.n,
            "structuring element and set over different atoms"
        );
        match &self.kind {
            SeKind::HammingBall(r) => unit_steps(ws, mask(self.n), *r),
            SeKind::Restricted { abducibles, radius } => unit_steps(ws, *abducibles, *radius),
            SeKind::RestrictedExact2 { abducibles } => {
                let bits: Vec<usize> = (0..self.n).filter(|i| abducibles >> i & 1 == 1).collect();
                let mut out = ws.clone();
                for (k, &i) in bits.iter().enumerate() {
                    let fi = ws.flip(i);
                    for &j in &bits[k + 1..] {
                        out = out.union(&fi.flip(j));
                    }
                }
                out
            }
            SeKind::Explicit(rows) => {
                let mut out = WorldSet::empty(self.n);
                for x in ws.iter() {
                    out = out.union(&rows[x as usize]);
                }
                out
            }
        }
    }

    /// One erosion step: `{ω | B_ω ⊆ ws}`.
    pub fn erode(&self, ws: &WorldSet) -> WorldSet {
        assert_eq!(
            ws.n(),
            self.n,
            "structuring element and set over different atoms"
        );
        match &self.kind {
            SeKind::Explicit(rows) => WorldSet::from_worlds(
                self.n,
                (0..1u32 << self.n).filter(|&w| rows[w as usize].is_subset(ws)),
            ),
            // symmetric kinds: erosion is the dual of dilation
            _ => self.dilate(&ws.complement()).complement(),
        }
    }

    /// Exhaustive symmetry and reflexivity check over `Ω`.
    pub fn validate(&self) -> Validation {
        let rows: Vec<WorldSet> = (0..1u32 << self.n).map(|w| self.neighborhood(w)).collect();
        let mut v = Validation::default();
        for (w, row) in rows.iter().enumerate() {
            let w = w as World;
            if !row.contains(w) {
                v.irreflexive.push(w);
            }
            for u in row.iter() {
                if !rows[u as usize].contains(w) {
                    v.asymmetric.push((w, u));
                }
            }
        }
        v
    }
}

fn mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

fn unit_steps(ws: &WorldSet, atoms: u32, radius: u32) -> WorldSet {
    let mut out = ws.clone();
    for _ in 0..radius {
        let prev = out.clone();
        for i in 0..ws.n() {
            if atoms >> i & 1 == 1 {
                out = out.union(&prev.flip(i));
            }
        }
        if out == prev {
            break;
        }
    }
    out
}

/// Parses `hamming:<r>`, `restricted:<atoms>:<r>` or `restricted2:<atoms>`
/// against an alphabet. Explicit relations are read by the caller.
pub fn parse_se_spec(spec: &str, alphabet: &crate::Alphabet) -> Result<StructuringElement> {
    let n = alphabet.len();
    let bad = || Error::InvalidStructuringElement(format!("unrecognised specification `{spec}`"));
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let radius = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let atoms = |s: &str| {
        let names: Vec<&str> = s.split(',').filter(|a| !a.trim().is_empty()).collect();
        alphabet.mask_of(&names)
    };
    match parts.as_slice() {
        ["hamming", r] => Ok(StructuringElement::hamming(n, radius(r)?)),
        ["restricted", ab, r] => Ok(StructuringElement::restricted(n, atoms(ab)?, radius(r)?)),
        ["restricted2", ab] => Ok(StructuringElement::restricted_exact2(n, atoms(ab)?)),
        _ => Err(bad()),
    }
}

/// Parses the explicit relation format: one `world: neighbor,neighbor,...`
/// line per world, worlds written in atom order. Blank lines and `#`
/// comments are skipped. Worlds without a line get an empty row.
pub fn parse_explicit(text: &str, n: usize) -> Result<Vec<WorldSet>> {
    let mut rows = vec![WorldSet::empty(n); 1 << n];
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (w, rest) = line.split_once(':').ok_or_else(|| {
            Error::InvalidStructuringElement(format!("missing `:` in line `{line}`"))
        })?;
        let w = parse_world(w, n)?;
        for u in rest.split(',').filter(|s| !s.trim().is_empty()) {
            rows[w as usize].insert(parse_world(u, n)?);
        }
    }
    Ok(rows)
}
