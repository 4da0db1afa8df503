use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::free_group::{ball, Gen, Word};
use crate::pattern::{pair_components, pair_symbol, Alphabet, Pattern};

/// Output of the edge-difference map, kept as two bit patterns because the
/// components are determined on different sets: `p` on `{f : f, fa ∈ S}`,
/// `q` on `{f : f, fb ∈ S}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairImage {
    pub p: Pattern,
    pub q: Pattern,
}

impl PairImage {
    /// The pair-alphabet pattern on the cells where both components are known.
    pub fn pairs(&self) -> Pattern {
        Pattern::from_trusted(
            Alphabet::Pairs,
            self.p
                .cells()
                .filter_map(|(w, s)| self.q.get(w).map(|t| (w.clone(), pair_symbol(s, t)))),
        )
    }

    pub fn from_pairs(y: &Pattern) -> Result<PairImage> {
        if y.alphabet() != Alphabet::Pairs {
            return Err(Error::AlphabetMismatch(format!("expected pairs, got {:?}", y.alphabet())));
        }
        Ok(PairImage {
            p: y.map_symbols(Alphabet::Bits, |s| pair_components(s).0),
            q: y.map_symbols(Alphabet::Bits, |s| pair_components(s).1),
        })
    }

    pub fn shift(&self, f: &Word) -> PairImage {
        PairImage { p: self.p.shift(f), q: self.q.shift(f) }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

fn determined_by(support: &BTreeSet<Word>, g: Gen) -> BTreeSet<Word> {
    support
        .iter()
        .filter(|f| support.contains(&f.mul_gen(g)))
        .cloned()
        .collect()
}

/// `{f ∈ S : fa ∈ S}`.
pub fn p_support(s: &BTreeSet<Word>) -> BTreeSet<Word> {
    determined_by(s, Gen::A)
}

/// `{f ∈ S : fb ∈ S}`.
pub fn q_support(s: &BTreeSet<Word>) -> BTreeSet<Word> {
    determined_by(s, Gen::B)
}

fn edge_component(x: &Pattern, g: Gen) -> Pattern {
    Pattern::from_trusted(
        Alphabet::Bits,
        x.cells()
            .filter_map(|(f, s)| x.get(&f.mul_gen(g)).map(|t| (f.clone(), s ^ t))),
    )
}

/// Edge differences without the emptiness check; used by the tower, whose
/// later stages may legitimately determine nothing.
pub(crate) fn components(x: &Pattern) -> PairImage {
    PairImage { p: edge_component(x, Gen::A), q: edge_component(x, Gen::B) }
}

/// `x ↦ (x(f) + x(fa), x(f) + x(fb))`, each component wherever it is determined.
pub fn ow_map(x: &Pattern) -> Result<PairImage> {
    if x.alphabet() != Alphabet::Bits {
        return Err(Error::AlphabetMismatch(format!("expected bits, got {:?}", x.alphabet())));
    }
    let out = components(x);
    if out.p.is_empty() && out.q.is_empty() {
        return Err(Error::Support("no output cell is determined by the input window".into()));
    }
    Ok(out)
}

/// Tree propagation from `x(1) = anchor`; a missing edge label counts as 0.
pub(crate) fn propagate(p: &Pattern, q: &Pattern, r: usize, anchor: u32) -> Pattern {
    let mut x = BTreeMap::from([(Word::identity(), anchor)]);
    for f in ball(r).into_iter().skip(1) {
        let parent = f.parent().expect("non-identity word");
        let base = x[&parent];
        let edge = match f.last().expect("non-identity word") {
            Gen::A => p.get(&parent),
            Gen::AInv => p.get(&f),
            Gen::B => q.get(&parent),
            Gen::BInv => q.get(&f),
        };
        x.insert(f, base ^ edge.unwrap_or(0));
    }
    Pattern::from_trusted(Alphabet::Bits, x)
}

/// Edge label consulted when propagating to `f` from its parent.
fn needed_edge(f: &Word) -> (Gen, Word) {
    let parent = f.parent().expect("non-identity word");
    match f.last().expect("non-identity word") {
        g @ (Gen::A | Gen::B) => (g, parent),
        Gen::AInv => (Gen::A, f.clone()),
        Gen::BInv => (Gen::B, f.clone()),
    }
}

/// The preimage of `y` on `ball(r)` with `x(1) = anchor`.
pub fn ow_section(y: &PairImage, r: usize, anchor: u32) -> Result<Pattern> {
    if anchor > 1 {
        return Err(Error::AlphabetMismatch(format!("anchor {anchor} is not a bit")));
    }
    for f in ball(r).iter().skip(1) {
        let (g, at) = needed_edge(f);
        let component = if g == Gen::A { &y.p } else { &y.q };
        if !component.contains(&at) {
            return Err(Error::Support(format!(
                "edge label at {at:?} needed to reach {f:?} is not determined"
            )));
        }
    }
    Ok(propagate(&y.p, &y.q, r, anchor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn constant_inputs_collapse() {
        for c in 0..2 {
            let x = Pattern::constant(Alphabet::Bits, &ball(2), c);
            let y = ow_map(&x).unwrap();
            assert!(y.is_zero());
            assert!(!y.pairs().is_empty());
        }
    }

    #[test]
    fn direct_formula_at_identity() {
        let x = Pattern::from_cells(
            Alphabet::Bits,
            [(Word::identity(), 0), (w("a"), 1), (w("b"), 0)],
        )
        .unwrap();
        let y = ow_map(&x).unwrap();
        assert_eq!(y.pairs().get(&Word::identity()), Some(pair_symbol(1, 0)));
    }

    #[test]
    fn radius_zero_determines_nothing() {
        assert!(ow_map(&Pattern::zeros(Alphabet::Bits, 0)).is_err());
    }

    #[test]
    fn component_supports_on_ball2() {
        let s: BTreeSet<Word> = ball(2).into_iter().collect();
        let p = p_support(&s);
        assert_eq!(p.len(), 8);
        assert!(p.contains(&w("bA")) && !p.contains(&w("ab")));
        assert_eq!(q_support(&s).len(), 8);
    }

    #[test]
    fn section_examples() {
        let zero = ow_map(&Pattern::zeros(Alphabet::Bits, 3)).unwrap();
        assert!(ow_section(&zero, 3, 0).unwrap().is_zero());
        let ones = ow_section(&zero, 3, 1).unwrap();
        assert!(ones.cells().all(|(_, s)| s == 1));
    }

    #[test]
    fn section_inverts_on_ball2() {
        for mask in 0..1u128 << 17 {
            let x = Pattern::from_mask(2, mask);
            let anchor = x.value(&Word::identity()).unwrap();
            assert_eq!(ow_section(&ow_map(&x).unwrap(), 2, anchor).unwrap(), x);
        }
    }

    #[test]
    fn section_refuses_missing_labels() {
        let y = ow_map(&Pattern::zeros(Alphabet::Bits, 1)).unwrap();
        assert!(ow_section(&y, 2, 0).is_err());
    }
}
