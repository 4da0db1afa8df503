use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::stallings::SubgroupGraph;
use super::word::{ball, Gen, Word};
use crate::error::{Error, Result};

/// Black-box access to a countable group `G`.
///
/// `enumerate` must be injective with `enumerate(0)` the identity; `rank` is its inverse.
pub trait GroupOracle: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn enumerate(&self, n: u64) -> Self::Elem;
    fn rank(&self, x: &Self::Elem) -> u64;

    /// Whether elements are reduced words of F₂ multiplied by free reduction, so
    /// that coset questions can be answered with folded subgroup graphs.
    fn is_free_on_words(&self) -> bool {
        false
    }

    /// Radius used by the default bounded-search preimage solver.
    fn search_radius(&self) -> usize {
        6
    }

    /// A solver for `θ(u) = g` where `θ: F₂ → G` sends `a, b` to `images`.
    ///
    /// The default searches `u` over a ball of F₂ and refuses (rather than guessing)
    /// when nothing is found.
    fn preimage_solver(
        &self,
        images: &Homomorphism<Self::Elem>,
    ) -> Result<Box<dyn PreimageSolver<Self::Elem>>>
    where
        Self: Sized,
    {
        Ok(Box::new(BoundedSearch::new(self, images.clone(), self.search_radius())))
    }
}

pub trait PreimageSolver<E>: Send + Sync {
    /// `Ok(Some(u))` with `θ(u) = g`, `Ok(None)` if certified absent from the image.
    fn solve(&self, g: &E) -> Result<Option<Word>>;
}

/// A homomorphism out of F₂, given by the images of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism<E> {
    pub a: E,
    pub b: E,
}

impl<E: Clone> Homomorphism<E> {
    pub fn new(a: E, b: E) -> Self {
        Homomorphism { a, b }
    }

    pub fn apply<G: GroupOracle<Elem = E>>(&self, group: &G, w: &Word) -> E {
        let (a_inv, b_inv) = (group.inv(&self.a), group.inv(&self.b));
        w.letters().iter().fold(group.identity(), |acc, l| {
            let img = match l {
                Gen::A => &self.a,
                Gen::AInv => &a_inv,
                Gen::B => &self.b,
                Gen::BInv => &b_inv,
            };
            group.mul(&acc, img)
        })
    }
}

impl Homomorphism<Word> {
    pub fn identity() -> Self {
        Homomorphism::new(Word::a(), Word::b())
    }

    /// `a ↦ a², b ↦ b²`.
    pub fn squares() -> Self {
        Homomorphism::new(Word::a().pow(2), Word::b().pow(2))
    }

    pub fn image(&self, w: &Word) -> Word {
        self.apply(&FreeGroup, w)
    }

    pub fn subgroup_graph(&self) -> SubgroupGraph {
        SubgroupGraph::new(&[self.a.clone(), self.b.clone()])
    }
}

/// F₂ itself, enumerated in length-lex order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FreeGroup;

impl GroupOracle for FreeGroup {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, x: &Word, y: &Word) -> Word {
        x.mul(y)
    }

    fn inv(&self, x: &Word) -> Word {
        x.inv()
    }

    fn enumerate(&self, n: u64) -> Word {
        Word::unrank(n)
    }

    fn rank(&self, x: &Word) -> u64 {
        x.rank()
    }

    fn is_free_on_words(&self) -> bool {
        true
    }

    fn preimage_solver(&self, images: &Homomorphism<Word>) -> Result<Box<dyn PreimageSolver<Word>>> {
        Ok(Box::new(FoldedSolver::new(images)?))
    }
}

/// Exact preimages for an injective endomorphism of F₂, via the labelled folded graph.
#[derive(Clone, Debug)]
pub struct FoldedSolver {
    graph: SubgroupGraph,
}

impl FoldedSolver {
    pub fn new(hom: &Homomorphism<Word>) -> Result<Self> {
        let graph = hom.subgroup_graph();
        if !graph.is_free_basis() {
            return Err(Error::NotInjective(vec![hom.a.clone(), hom.b.clone()]));
        }
        Ok(FoldedSolver { graph })
    }

    pub fn graph(&self) -> &SubgroupGraph {
        &self.graph
    }
}

impl PreimageSolver<Word> for FoldedSolver {
    fn solve(&self, g: &Word) -> Result<Option<Word>> {
        Ok(self.graph.solve(g)?.map(|b| b.to_word()))
    }
}

/// Searches preimages over `ball(radius)` of F₂; a miss is reported as undecidable.
pub struct BoundedSearch<E> {
    table: Vec<(E, Word)>,
    radius: usize,
}

impl<E: Clone> BoundedSearch<E> {
    pub fn new<G: GroupOracle<Elem = E>>(group: &G, hom: Homomorphism<E>, radius: usize) -> Self {
        let table = ball(radius)
            .into_iter()
            .map(|u| (hom.apply(group, &u), u))
            .collect();
        BoundedSearch { table, radius }
    }
}

impl<E: PartialEq + Send + Sync> PreimageSolver<E> for BoundedSearch<E> {
    fn solve(&self, g: &E) -> Result<Option<Word>> {
        match self.table.iter().find(|(img, _)| img == g) {
            Some((_, u)) => Ok(Some(u.clone())),
            None => Err(Error::Undecidable { radius: self.radius }),
        }
    }
}
