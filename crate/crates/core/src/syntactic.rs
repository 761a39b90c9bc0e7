//! Syntactic computation of unit Hamming dilations and erosions on normal
//! forms, and the term graph used to split a DNF into connected components.

use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{models, to_dnf, Alphabet, CnfForm, Cube, DnfForm, Formula};
use crate::worlds::{StructuringElement, WorldSet};
use crate::{Error, Result};

/// `δ¹` of a single consistent term `l_1 ∧ … ∧ l_n`: every way of dropping
/// one literal. The empty term (`⊤`) dilates to itself.
fn dilate_term(t: &Cube) -> Vec<Cube> {
    if t.is_empty() {
        return vec![*t];
    }
    t.literals().map(|(i, _)| t.without(i)).collect()
}

/// `k`-fold unit dilation of a DNF, term by term.
pub fn dilate_dnf(f: &DnfForm, k: usize) -> DnfForm {
    let mut cur = f.clone();
    for _ in 0..k {
        let terms = cur.terms.iter().flat_map(dilate_term).collect();
        cur = DnfForm::new(cur.n, terms);
        cur.prune_subsumed();
    }
    cur
}

/// `k`-fold unit erosion of a CNF, clause by clause. A unit clause erodes to
/// the empty clause, which stays empty.
pub fn erode_cnf(f: &CnfForm, k: usize) -> CnfForm {
    let mut cur = f.clone();
    for _ in 0..k {
        let clauses = cur.clauses.iter().flat_map(dilate_term).collect();
        cur = CnfForm::new(cur.n, clauses);
        if cur.clauses.iter().any(Cube::is_empty) {
            cur.clauses = vec![Cube::empty()];
        }
    }
    cur
}

/// Number of atoms occurring with opposite signs in the two terms.
pub fn term_distance(t1: &Cube, t2: &Cube) -> u32 {
    ((t1.bits ^ t2.bits) & t1.mask & t2.mask).count_ones()
}

/// Terms of a DNF as vertices, joined when their distance is at most 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGraph {
    pub vertices: usize,
    /// Pairs `(i, j)` with `i ≤ j`, reflexive pairs included.
    pub edges: Vec<(usize, usize)>,
}

impl ComponentGraph {
    pub fn new(f: &DnfForm) -> Self {
        let mut edges = Vec::new();
        for i in 0..f.terms.len() {
            for j in i..f.terms.len() {
                if term_distance(&f.terms[i], &f.terms[j]) <= 1 {
                    edges.push((i, j));
                }
            }
        }
        ComponentGraph {
            vertices: f.terms.len(),
            edges,
        }
    }

    /// Vertex groups, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label: Vec<usize> = (0..self.vertices).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            label[x] = r;
            r
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut label, i), find(&mut label, j));
            if a != b {
                label[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of_group: Vec<usize> = Vec::new();
        for v in 0..self.vertices {
            let r = find(&mut label, v);
            match root_of_group.iter().position(|&x| x == r) {
                Some(g) => groups[g].push(v),
                None => {
                    root_of_group.push(r);
                    groups.push(vec![v]);
                }
            }
        }
        groups
    }
}

/// Splits a DNF into the sub-disjunctions forming connected components.
pub fn components_dnf(f: &DnfForm) -> Vec<DnfForm> {
    ComponentGraph::new(f)
        .components()
        .into_iter()
        .map(|g| DnfForm {
            n: f.n,
            terms: g.into_iter().map(|i| f.terms[i]).collect(),
        })
        .collect()
}

/// Unit erosion computed component by component.
pub fn erode_via_components(f: &DnfForm) -> WorldSet {
    let se = StructuringElement::hamming(f.n, 1);
    components_dnf(f)
        .iter()
        .fold(WorldSet::empty(f.n), |acc, c| {
            acc.union(&se.erode(&c.models()))
        })
}

/// Unit dilation of `φ_1 ∧ … ∧ φ_n` for variable-disjoint parts:
/// `⋁_j (δ(φ_j) ∧ ⋀_{k≠j} φ_k)`, each `δ(φ_j)` taken syntactically on a DNF.
pub fn dilate_vardisjoint(parts: &[Formula], alphabet: &Alphabet) -> Result<Formula> {
    let vars: Vec<Vec<_>> = parts.iter().map(Formula::atoms).collect();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if let Some(a) = vars[i].iter().find(|a| vars[j].contains(a)) {
                return Err(Error::SharedVariables {
                    first: i,
                    second: j,
                    atom: a.clone(),
                });
            }
        }
    }
    if parts.is_empty() {
        return Ok(Formula::Top);
    }
    let mut disjuncts = Vec::with_capacity(parts.len());
    for j in 0..parts.len() {
        let dj = dilate_dnf(&to_dnf(&parts[j], alphabet)?, 1).to_formula(alphabet);
        let rest = parts
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, p)| p.clone());
        disjuncts.push(Formula::and(dj, Formula::conjunction(rest)));
    }
    Ok(Formula::disjunction(disjuncts))
}

/// Largest alphabet accepted by [`prime_implicates`].
pub const PRIME_IMPLICATE_LIMIT: usize = 6;

/// All prime implicates, by enumerating every non-tautological clause.
pub fn prime_implicates(f: &Formula, alphabet: &Alphabet) -> Result<Vec<Cube>> {
    let n = alphabet.len();
    if n > PRIME_IMPLICATE_LIMIT {
        return Err(Error::ScaleExceeded {
            atoms: n,
            limit: PRIME_IMPLICATE_LIMIT,
        });
    }
    let ws = models(f, alphabet)?;
    let mut implied: Vec<Cube> = Vec::new();
    for mask in 0u32..1 << n {
        let mut bits = mask;
        loop {
            let c = Cube::new(mask, bits);
            if ws.is_subset(&c.clause_models(n)) {
                implied.push(c);
            }
            if bits == 0 {
                break;
            }
            bits = (bits - 1) & mask;
        }
    }
    let mut primes: Vec<Cube> = implied
        .iter()
        .filter(|c| !implied.iter().any(|d| d != *c && d.subsumes(c)))
        .copied()
        .collect();
    primes.sort_by_key(|c| (c.len(), *c));
    Ok(primes)
}
