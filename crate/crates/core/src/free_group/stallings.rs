//! Stallings folding for finitely generated subgroups of F₂.
//!
//! Every edge of the folded graph carries, besides its letter, a word in the
//! abstract basis `x_0, …, x_{k-1}` of the generating list. Folding keeps the
//! invariant that the label of a closed path at the base vertex spells the
//! basis word whose image is the path's letter word, so a successful read of
//! `w` both decides membership and returns a preimage of `w`.

use std::collections::BTreeSet;

use super::word::{Gen, Word};
use crate::error::{Error, Result};

/// A reduced word in a free group on `k` abstract generators.
/// Letter `i + 1` is `x_i`, letter `-(i + 1)` is its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasisWord(Vec<i32>);

impl BasisWord {
    pub fn identity() -> BasisWord {
        BasisWord(Vec::new())
    }

    pub fn generator(i: usize) -> BasisWord {
        BasisWord(vec![i as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn mul(&self, other: &BasisWord) -> BasisWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BasisWord(out)
    }

    pub fn inv(&self) -> BasisWord {
        BasisWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Interprets a two-generator basis word as a word of F₂ (`x_0 = a`, `x_1 = b`).
    pub fn to_word(&self) -> Word {
        Word::reduce(self.0.iter().map(|&l| match l {
            1 => Gen::A,
            -1 => Gen::AInv,
            2 => Gen::B,
            -2 => Gen::BInv,
            _ => panic!("basis word has more than two generators"),
        }))
    }
}

#[derive(Clone, Debug)]
struct Edge {
    src: usize,
    dst: usize,
    /// Positive letter `a` or `b`.
    letter: Gen,
    label: BasisWord,
}

/// An edge seen from one of its endpoints, oriented outward.
#[derive(Clone, Debug)]
struct HalfEdge {
    edge: usize,
    letter: Gen,
    to: usize,
    label: BasisWord,
}

/// The folded core graph of `⟨gens⟩ ≤ F₂`.
#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    gens: Vec<Word>,
    edges: Vec<Edge>,
    vertices: BTreeSet<usize>,
    free_basis: bool,
}

const BASE: usize = 0;

impl SubgroupGraph {
    pub fn new(gens: &[Word]) -> SubgroupGraph {
        let mut edges = Vec::new();
        let mut vertices = BTreeSet::from([BASE]);
        let mut next = 1;
        let mut free_basis = true;
        for (i, g) in gens.iter().enumerate() {
            if g.is_identity() {
                free_basis = false;
                continue;
            }
            let n = g.len();
            let mut prev = BASE;
            for (j, &l) in g.letters().iter().enumerate() {
                let to = if j + 1 == n {
                    BASE
                } else {
                    vertices.insert(next);
                    next += 1;
                    next - 1
                };
                let label = if j == 0 { BasisWord::generator(i) } else { BasisWord::identity() };
                if l.is_positive() {
                    edges.push(Edge { src: prev, dst: to, letter: l, label });
                } else {
                    edges.push(Edge { src: to, dst: prev, letter: l.positive(), label: label.inv() });
                }
                prev = to;
            }
        }
        let mut graph = SubgroupGraph { gens: gens.to_vec(), edges, vertices, free_basis };
        graph.fold();
        graph
    }

    fn half_edges(&self, v: usize) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == v {
                out.push(HalfEdge { edge: i, letter: e.letter, to: e.dst, label: e.label.clone() });
            }
            if e.dst == v {
                out.push(HalfEdge {
                    edge: i,
                    letter: e.letter.inverse(),
                    to: e.src,
                    label: e.label.inv(),
                });
            }
        }
        out
    }

    fn find_fold(&self) -> Option<(HalfEdge, HalfEdge)> {
        for &v in &self.vertices {
            let hs = self.half_edges(v);
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    if hs[i].letter == hs[j].letter && hs[i].edge != hs[j].edge {
                        return Some((hs[i].clone(), hs[j].clone()));
                    }
                }
            }
        }
        None
    }

    fn fold(&mut self) {
        while let Some((h1, h2)) = self.find_fold() {
            if h1.to == h2.to {
                if h1.label != h2.label {
                    self.free_basis = false;
                }
                self.edges.remove(h2.edge);
                continue;
            }
            // Never re-gauge the base vertex.
            let (keep, drop) = if h2.to == BASE { (h2, h1) } else { (h1, h2) };
            let c = drop.label.inv().mul(&keep.label);
            let c_inv = c.inv();
            self.edges.remove(drop.edge);
            for e in &mut self.edges {
                if e.src == drop.to {
                    e.label = c_inv.mul(&e.label);
                }
                if e.dst == drop.to {
                    e.label = e.label.mul(&c);
                }
            }
            for e in &mut self.edges {
                if e.src == drop.to {
                    e.src = keep.to;
                }
                if e.dst == drop.to {
                    e.dst = keep.to;
                }
            }
            self.vertices.remove(&drop.to);
        }
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    /// Whether the generating list is a free basis of the subgroup it generates.
    pub fn is_free_basis(&self) -> bool {
        self.free_basis
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn step(&self, v: usize, l: Gen) -> Option<HalfEdge> {
        self.edges.iter().enumerate().find_map(|(i, e)| {
            if e.src == v && e.letter == l {
                Some(HalfEdge { edge: i, letter: l, to: e.dst, label: e.label.clone() })
            } else if e.dst == v && e.letter == l.inverse() {
                Some(HalfEdge { edge: i, letter: l, to: e.src, label: e.label.inv() })
            } else {
                None
            }
        })
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut v = BASE;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(h) => v = h.to,
                None => return false,
            }
        }
        v == BASE
    }

    /// The endpoint of `w` read from the base vertex in the Schreier graph of the
    /// subgroup: the core vertex where the read leaves the core, and the unread
    /// suffix. Two words have the same position iff they lie in the same right coset.
    pub fn coset_position(&self, w: &Word) -> (usize, Word) {
        let mut v = BASE;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.step(v, l) {
                Some(h) => v = h.to,
                None => return (v, Word::reduce(w.letters()[i..].iter().copied())),
            }
        }
        (v, Word::identity())
    }

    /// Returns the basis word `u` with `u(gens) = w`, or `None` if `w` is not in the subgroup.
    pub fn solve(&self, w: &Word) -> Result<Option<BasisWord>> {
        if !self.free_basis {
            return Err(Error::NotInjective(self.gens.clone()));
        }
        let mut v = BASE;
        let mut label = BasisWord::identity();
        for &l in w.letters() {
            match self.step(v, l) {
                Some(h) => {
                    v = h.to;
                    label = label.mul(&h.label);
                }
                None => return Ok(None),
            }
        }
        Ok((v == BASE).then_some(label))
    }

    /// A finitely generated subgroup has finite index exactly when every vertex of
    /// its core graph has all four letters available.
    pub fn has_infinite_index(&self) -> bool {
        self.vertices
            .iter()
            .any(|&v| Gen::ALL.iter().any(|&l| self.step(v, l).is_none()))
    }
}

/// Decides `w ∈ ⟨gens⟩`.
pub fn subgroup_member(w: &Word, gens: &[Word]) -> bool {
    SubgroupGraph::new(gens).contains(w)
}
