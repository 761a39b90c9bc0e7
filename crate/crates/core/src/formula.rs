//! Formulas over a named alphabet and their normal forms, with the link to
//! model sets.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::worlds::{World, WorldSet};
use crate::{Error, Result, MAX_ATOMS};

/// Ordered list of atom names. Atom `i` is bit `i` of a [`World`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    atoms: Vec<String>,
}

fn valid_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut atoms: Vec<String> = Vec::new();
        for name in names {
            let name = name.as_ref().trim();
            if !valid_atom_name(name) {
                return Err(Error::InvalidAtomName(name.to_owned()));
            }
            if atoms.iter().any(|a| a == name) {
                return Err(Error::DuplicateAtom(name.to_owned()));
            }
            atoms.push(name.to_owned());
        }
        if atoms.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms(atoms.len()));
        }
        Ok(Alphabet { atoms })
    }

    /// `a, b, c, ...` up to `n` atoms (`n` ≤ 20).
    pub fn letters(n: usize) -> Result<Self> {
        if n > MAX_ATOMS {
            return Err(Error::TooManyAtoms(n));
        }
        Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    /// Parses a comma separated list such as `a,b,c`.
    pub fn parse_list(spec: &str) -> Result<Self> {
        Alphabet::new(spec.split(',').filter(|s| !s.trim().is_empty()))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn name(&self, i: usize) -> &str {
        &self.atoms[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Bit mask of the named atoms.
    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<u32> {
        let mut mask = 0;
        for n in names {
            let n = n.as_ref().trim();
            let i = self
                .index_of(n)
                .ok_or_else(|| Error::UnknownAtom(n.to_owned()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }
}

/// Propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    /// Parses without an alphabet. Atom names are only checked syntactically.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text)?.parse_all()
    }

    /// Atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => {
                f.collect_atoms(out);
                g.collect_atoms(out);
            }
        }
    }

    /// Truth value in one world.
    pub fn eval(&self, alphabet: &Alphabet, w: World) -> Result<bool> {
        Ok(match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => {
                let i = alphabet
                    .index_of(a)
                    .ok_or_else(|| Error::UnknownAtom(a.clone()))?;
                w >> i & 1 == 1
            }
            Formula::Not(f) => !f.eval(alphabet, w)?,
            Formula::And(f, g) => f.eval(alphabet, w)? & g.eval(alphabet, w)?,
            Formula::Or(f, g) => f.eval(alphabet, w)? | g.eval(alphabet, w)?,
            Formula::Implies(f, g) => !f.eval(alphabet, w)? | g.eval(alphabet, w)?,
            Formula::Iff(f, g) => f.eval(alphabet, w)? == g.eval(alphabet, w)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Children of a binary node are wrapped when they bind looser than the
        // parent. Implications and biconditionals are always wrapped when nested.
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, min: u8) -> fmt::Result {
            if c.precedence() < min || c.precedence() <= 2 {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Formula::Top => write!(f, "T"),
            Formula::Bottom => write!(f, "F"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => {
                write!(f, "!")?;
                child(f, g, 5)
            }
            Formula::And(g, h)
            | Formula::Or(g, h)
            | Formula::Implies(g, h)
            | Formula::Iff(g, h) => {
                let (op, p) = match self {
                    Formula::And(..) => ("&", 4),
                    Formula::Or(..) => ("|", 3),
                    Formula::Implies(..) => ("->", 2),
                    _ => ("<->", 1),
                };
                // same-operator chains of & and | print flat
                child(f, g, p)?;
                write!(f, " {op} ")?;
                child(f, h, p)
            }
        }
    }
}

/// Parses `text`. Without an alphabet one is inferred from the atoms in order
/// of first occurrence.
pub fn parse(text: &str, alphabet: Option<&Alphabet>) -> Result<(Formula, Alphabet)> {
    let f = Formula::parse(text)?;
    let alphabet = match alphabet {
        Some(a) => {
            for atom in f.atoms() {
                if a.index_of(&atom).is_none() {
                    return Err(Error::UnknownAtom(atom));
                }
            }
            a.clone()
        }
        None => {
            let atoms = f.atoms();
            if atoms.is_empty() {
                Alphabet::letters(1)?
            } else {
                Alphabet::new(atoms)?
            }
        }
    };
    Ok((f, alphabet))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Top,
    Bottom,
    Ident(String),
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const EXPECT_OPERAND: &[&str] = &["atom", "T", "F", "!", "("];

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = match c {
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Imp
                }
                '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                    i += 2;
                    Tok::Iff
                }
                'T' if !chars
                    .get(i + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') =>
                {
                    Tok::Top
                }
                'F' if !chars
                    .get(i + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') =>
                {
                    Tok::Bottom
                }
                c if c.is_ascii_lowercase() => {
                    let start = i;
                    while i + 1 < chars.len()
                        && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                    {
                        i += 1;
                    }
                    Tok::Ident(chars[start..=i].iter().collect())
                }
                _ => {
                    let expected = if toks.last().is_some_and(|(t, _)| {
                        matches!(t, Tok::Ident(_) | Tok::Top | Tok::Bottom | Tok::RParen)
                    }) {
                        vec!["&", "|", "->", "<->", ")"]
                    } else {
                        EXPECT_OPERAND.to_vec()
                    };
                    return Err(Error::Syntax {
                        column: col,
                        expected,
                    });
                }
            };
            toks.push((tok, col));
            i += 1;
        }
        toks.push((Tok::End, chars.len() + 1));
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn parse_all(mut self) -> Result<Formula> {
        let f = self.iff()?;
        if *self.peek() != Tok::End {
            return Err(Error::Syntax {
                column: self.column(),
                expected: vec!["&", "|", "->", "<->", "end of input"],
            });
        }
        Ok(f)
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            f = Formula::iff(f, self.imp()?);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            return Ok(Formula::implies(f, self.imp()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        let column = self.column();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Top => Ok(Formula::Top),
            Tok::Bottom => Ok(Formula::Bottom),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::LParen => {
                let f = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(Error::Syntax {
                        column: self.column(),
                        expected: vec!["&", "|", "->", "<->", ")"],
                    });
                }
                self.bump();
                Ok(f)
            }
            _ => Err(Error::Syntax {
                column,
                expected: EXPECT_OPERAND.to_vec(),
            }),
        }
    }
}

/// Model set of `f` over `alphabet`, computed with whole-set operations.
pub fn models(f: &Formula, alphabet: &Alphabet) -> Result<WorldSet> {
    let n = alphabet.len();
    Ok(match f {
        Formula::Top => WorldSet::full(n),
        Formula::Bottom => WorldSet::empty(n),
        Formula::Atom(a) => {
            let i = alphabet
                .index_of(a)
                .ok_or_else(|| Error::UnknownAtom(a.clone()))?;
            WorldSet::atom(n, i)
        }
        Formula::Not(g) => models(g, alphabet)?.complement(),
        Formula::And(g, h) => models(g, alphabet)?.intersection(&models(h, alphabet)?),
        Formula::Or(g, h) => models(g, alphabet)?.union(&models(h, alphabet)?),
        Formula::Implies(g, h) => models(g, alphabet)?
            .complement()
            .union(&models(h, alphabet)?),
        Formula::Iff(g, h) => {
            let (x, y) = (models(g, alphabet)?, models(h, alphabet)?);
            x.symmetric_difference(&y).complement()
        }
    })
}

/// Full minterm DNF of a model set: `⊥` when empty, `⊤` when full.
pub fn from_models(ws: &WorldSet, alphabet: &Alphabet) -> Formula {
    if ws.is_empty() {
        return Formula::Bottom;
    }
    if ws.is_full() {
        return Formula::Top;
    }
    let full = (1u32 << ws.n()) - 1;
    let terms = ws
        .iter()
        .map(|w| Cube::new(full, w).to_formula(alphabet, true));
    Formula::disjunction(terms)
}

pub fn equivalent(f: &Formula, g: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(models(f, alphabet)? == models(g, alphabet)?)
}

/// `f ⊨ g`.
pub fn entails(f: &Formula, g: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(models(f, alphabet)?.is_subset(&models(g, alphabet)?))
}

/// A set of literals: atom `i` occurs iff bit `i` of `mask` is set, positively
/// iff bit `i` of `bits` is set. Read as a conjunction (term) in a DNF and as
/// a disjunction (clause) in a CNF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub mask: u32,
    pub bits: u32,
}

impl Cube {
    pub fn new(mask: u32, bits: u32) -> Self {
        Cube {
            mask,
            bits: bits & mask,
        }
    }

    /// The empty literal set.
    pub fn empty() -> Self {
        Cube { mask: 0, bits: 0 }
    }

    pub fn literal(atom: usize, positive: bool) -> Self {
        Cube {
            mask: 1 << atom,
            bits: (positive as u32) << atom,
        }
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Literals as `(atom, polarity)` pairs in atom order.
    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        (0..32)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| (i, self.bits >> i & 1 == 1))
    }

    /// Union of the literal sets, or `None` when an atom would occur with
    /// both polarities.
    pub fn merge(&self, other: &Cube) -> Option<Cube> {
        let common = self.mask & other.mask;
        if (self.bits ^ other.bits) & common != 0 {
            return None;
        }
        Some(Cube {
            mask: self.mask | other.mask,
            bits: self.bits | other.bits,
        })
    }

    pub fn without(&self, atom: usize) -> Cube {
        let m = !(1u32 << atom);
        Cube {
            mask: self.mask & m,
            bits: self.bits & m,
        }
    }

    /// Flips every polarity.
    pub fn negated(&self) -> Cube {
        Cube {
            mask: self.mask,
            bits: !self.bits & self.mask,
        }
    }

    /// Whether every literal of `self` is in `other`.
    pub fn subsumes(&self, other: &Cube) -> bool {
        self.mask & !other.mask == 0 && (self.bits ^ other.bits) & self.mask == 0
    }

    /// Worlds satisfying all literals.
    pub fn term_models(&self, n: usize) -> WorldSet {
        let mut ws = WorldSet::full(n);
        for (i, pos) in self.literals() {
            let a = WorldSet::atom(n, i);
            ws = ws.intersection(&if pos { a } else { a.complement() });
        }
        ws
    }

    /// Worlds satisfying at least one literal.
    pub fn clause_models(&self, n: usize) -> WorldSet {
        self.negated().term_models(n).complement()
    }

    pub fn contains(&self, w: World) -> bool {
        (w ^ self.bits) & self.mask == 0
    }

    /// Renders as a conjunction (`term = true`) or disjunction.
    pub fn to_formula(&self, alphabet: &Alphabet, term: bool) -> Formula {
        let lits = self.literals().map(|(i, pos)| {
            let a = Formula::atom(alphabet.name(i));
            if pos {
                a
            } else {
                Formula::not(a)
            }
        });
        if term {
            Formula::conjunction(lits)
        } else {
            Formula::disjunction(lits)
        }
    }
}

/// Disjunction of terms over `n` atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfForm {
    pub n: usize,
    pub terms: Vec<Cube>,
}

/// Conjunction of clauses over `n` atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfForm {
    pub n: usize,
    pub clauses: Vec<Cube>,
}

impl DnfForm {
    pub fn new(n: usize, terms: Vec<Cube>) -> Self {
        let mut d = DnfForm { n, terms };
        d.normalize();
        d
    }

    /// Sorts and removes duplicate terms. Contradictory terms cannot occur in a
    /// [`Cube`].
    pub fn normalize(&mut self) {
        self.terms.sort_unstable();
        self.terms.dedup();
    }

    /// Drops terms that are strict supersets of another term.
    pub fn prune_subsumed(&mut self) {
        self.normalize();
        let terms = core::mem::take(&mut self.terms);
        self.terms = terms
            .iter()
            .filter(|t| !terms.iter().any(|u| u != *t && u.subsumes(t)))
            .copied()
            .collect();
    }

    pub fn models(&self) -> WorldSet {
        let mut ws = WorldSet::empty(self.n);
        for t in &self.terms {
            ws = ws.union(&t.term_models(self.n));
        }
        ws
    }

    pub fn to_formula(&self, alphabet: &Alphabet) -> Formula {
        Formula::disjunction(self.terms.iter().map(|t| t.to_formula(alphabet, true)))
    }

    /// Text form: terms joined by `|`, multi-literal terms parenthesized when
    /// there is more than one term.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_cubes(&self.terms, alphabet, " & ", " | ", "F", "T")
    }
}

impl CnfForm {
    pub fn new(n: usize, clauses: Vec<Cube>) -> Self {
        let mut c = CnfForm { n, clauses };
        c.clauses.sort_unstable();
        c.clauses.dedup();
        c
    }

    pub fn models(&self) -> WorldSet {
        let mut ws = WorldSet::full(self.n);
        for c in &self.clauses {
            ws = ws.intersection(&c.clause_models(self.n));
        }
        ws
    }

    pub fn to_formula(&self, alphabet: &Alphabet) -> Formula {
        Formula::conjunction(self.clauses.iter().map(|c| c.to_formula(alphabet, false)))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_cubes(&self.clauses, alphabet, " | ", " & ", "T", "F")
    }
}

fn render_cubes(
    cubes: &[Cube],
    alphabet: &Alphabet,
    inner: &str,
    outer: &str,
    none: &str,
    empty_cube: &str,
) -> String {
    if cubes.is_empty() {
        return none.to_owned();
    }
    let wrap = cubes.len() > 1;
    let parts: Vec<String> = cubes
        .iter()
        .map(|c| {
            if c.is_empty() {
                return empty_cube.to_owned();
            }
            let lits: Vec<String> = c
                .literals()
                .map(|(i, pos)| {
                    let mut s = String::new();
                    if !pos {
                        s.push('!');
                    }
                    s.push_str(alphabet.name(i));
                    s
                })
                .collect();
            let body = lits.join(inner);
            if wrap && lits.len() > 1 {
                alloc::format!("({body})")
            } else {
                body
            }
        })
        .collect();
    parts.join(outer)
}

/// Negation normal form over literals, used for the distribution step.
enum Nnf {
    Const(bool),
    Lit(usize, bool),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, alphabet: &Alphabet, positive: bool) -> Result<Nnf> {
    Ok(match f {
        Formula::Top => Nnf::Const(positive),
        Formula::Bottom => Nnf::Const(!positive),
        Formula::Atom(a) => {
            let i = alphabet
                .index_of(a)
                .ok_or_else(|| Error::UnknownAtom(a.clone()))?;
            Nnf::Lit(i, positive)
        }
        Formula::Not(g) => nnf(g, alphabet, !positive)?,
        Formula::And(g, h) | Formula::Or(g, h) => {
            let parts = vec![nnf(g, alphabet, positive)?, nnf(h, alphabet, positive)?];
            if matches!(f, Formula::And(..)) == positive {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        Formula::Implies(g, h) => {
            let parts = vec![nnf(g, alphabet, !positive)?, nnf(h, alphabet, positive)?];
            if positive {
                Nnf::Or(parts)
            } else {
                Nnf::And(parts)
            }
        }
        Formula::Iff(g, h) => {
            // g <-> h  ==  (g & h) | (!g & !h); its negation swaps one side
            let both = Nnf::And(vec![nnf(g, alphabet, true)?, nnf(h, alphabet, positive)?]);
            let neither = Nnf::And(vec![nnf(g, alphabet, false)?, nnf(h, alphabet, !positive)?]);
            Nnf::Or(vec![both, neither])
        }
    })
}

fn dnf_terms(f: &Nnf) -> Vec<Cube> {
    match f {
        Nnf::Const(true) => vec![Cube::empty()],
        Nnf::Const(false) => Vec::new(),
        Nnf::Lit(i, pos) => vec![Cube::literal(*i, *pos)],
        Nnf::Or(parts) => parts.iter().flat_map(dnf_terms).collect(),
        Nnf::And(parts) => {
            let mut acc = vec![Cube::empty()];
            for p in parts {
                let rhs = dnf_terms(p);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for t in &acc {
                    for u in &rhs {
                        if let Some(m) = t.merge(u) {
                            next.push(m);
                        }
                    }
                }
                next.sort_unstable();
                next.dedup();
                acc = next;
            }
            acc
        }
    }
}

/// DNF by negation normal form and distribution.
pub fn to_dnf(f: &Formula, alphabet: &Alphabet) -> Result<DnfForm> {
    let terms = dnf_terms(&nnf(f, alphabet, true)?);
    Ok(DnfForm::new(alphabet.len(), terms))
}

/// CNF as the dual of the DNF of `¬f`.
pub fn to_cnf(f: &Formula, alphabet: &Alphabet) -> Result<CnfForm> {
    let terms = dnf_terms(&nnf(f, alphabet, false)?);
    Ok(CnfForm::new(
        alphabet.len(),
        terms.iter().map(Cube::negated).collect(),
    ))
}

/// Minimal-ish DNF covering `on` and avoiding everything outside
/// `on ∪ dont_care`, by prime implicants and a greedy cover.
///
/// Essential primes are taken first; the remaining minterms are covered by
/// repeatedly picking the prime covering the most of them, ties broken by
/// fewer literals and then by the smaller cube in `Cube` order. The result is
/// deterministic.
pub fn minimize(on: &WorldSet, dont_care: Option<&WorldSet>) -> DnfForm {
    let n = on.n();
    if on.is_empty() {
        return DnfForm::new(n, Vec::new());
    }
    let care_universe = match dont_care {
        Some(dc) => on.union(dc),
        None => on.clone(),
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let primes = prime_implicants(&care_universe, full);

    let mut uncovered: Vec<World> = on.iter().collect();
    let mut chosen: Vec<Cube> = Vec::new();

    // essential primes
    for &w in &uncovered {
        let covering: Vec<&Cube> = primes.iter().filter(|p| p.contains(w)).collect();
        if covering.len() == 1 && !chosen.contains(covering[0]) {
            chosen.push(*covering[0]);
        }
    }
    uncovered.retain(|&w| !chosen.iter().any(|c| c.contains(w)));

    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .filter(|p| !chosen.contains(p))
            .max_by(|p, q| {
                let cp = uncovered.iter().filter(|&&w| p.contains(w)).count();
                let cq = uncovered.iter().filter(|&&w| q.contains(w)).count();
                cp.cmp(&cq).then(q.len().cmp(&p.len())).then(q.cmp(p))
            })
            .copied()
            .expect("primes cover every on-set world");
        chosen.push(best);
        uncovered.retain(|&w| !best.contains(w));
    }
    chosen.sort_by(|p, q| q.bits.cmp(&p.bits).then(p.mask.cmp(&q.mask)));
    chosen.sort_by_key(|c| render_key(c, n));
    DnfForm { n, terms: chosen }
}

// Orders terms the way a reader scans a truth table: by the first atom where
// they differ, positive before negative before absent.
fn render_key(c: &Cube, n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| {
            if c.mask >> i & 1 == 0 {
                2
            } else if c.bits >> i & 1 == 1 {
                0
            } else {
                1
            }
        })
        .collect()
}

/// All prime implicants of the set, by iterated merging of adjacent cubes.
fn prime_implicants(ws: &WorldSet, full: u32) -> Vec<Cube> {
    let mut current: Vec<Cube> = ws.iter().map(|w| Cube::new(full, w)).collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut used = vec![false; current.len()];
        let mut next = Vec::new();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let (p, q) = (current[i], current[j]);
                if p.mask != q.mask {
                    continue;
                }
                let diff = p.bits ^ q.bits;
                if diff.count_ones() == 1 {
                    used[i] = true;
                    used[j] = true;
                    next.push(Cube::new(p.mask & !diff, p.bits));
                }
            }
        }
        for (i, c) in current.iter().enumerate() {
            if !used[i] {
                primes.push(*c);
            }
        }
        next.sort_unstable();
        next.dedup();
        current = next;
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}
