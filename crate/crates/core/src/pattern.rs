//! Finite partial configurations `Word → symbol` and the shift action on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::free_group::{ball, sphere, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// `{0, 1}`.
    Bits,
    /// `2 × 2`, encoded as `s = 2·first + second`.
    Pairs,
    /// `{0, …, n − 1}`.
    Symbols(u32),
}

impl Alphabet {
    pub fn size(self) -> u32 {
        match self {
            Alphabet::Bits => 2,
            Alphabet::Pairs => 4,
            Alphabet::Symbols(n) => n,
        }
    }

    fn xor_compatible(self) -> bool {
        self.size().is_power_of_two()
    }
}

pub fn pair_symbol(first: u32, second: u32) -> u32 {
    2 * first + second
}

pub fn pair_components(s: u32) -> (u32, u32) {
    (s >> 1, s & 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    alphabet: Alphabet,
    cells: BTreeMap<Word, u32>,
}

impl Pattern {
    pub fn empty(alphabet: Alphabet) -> Pattern {
        Pattern { alphabet, cells: BTreeMap::new() }
    }

    pub fn from_cells<I: IntoIterator<Item = (Word, u32)>>(alphabet: Alphabet, cells: I) -> Result<Pattern> {
        let mut p = Pattern::empty(alphabet);
        for (w, s) in cells {
            p.insert(w, s)?;
        }
        Ok(p)
    }

    /// Builds a pattern from values that are known to lie in the alphabet.
    pub(crate) fn from_trusted<I: IntoIterator<Item = (Word, u32)>>(alphabet: Alphabet, cells: I) -> Pattern {
        Pattern { alphabet, cells: cells.into_iter().collect() }
    }

    pub fn constant<'a, I: IntoIterator<Item = &'a Word>>(alphabet: Alphabet, support: I, symbol: u32) -> Pattern {
        assert!(symbol < alphabet.size());
        Pattern::from_trusted(alphabet, support.into_iter().map(|w| (w.clone(), symbol)))
    }

    pub fn zeros(alphabet: Alphabet, r: usize) -> Pattern {
        Pattern::constant(alphabet, &ball(r), 0)
    }

    /// Bit pattern on `ball(r)` whose cell `i` (canonical order) is bit `i` of `mask`.
    pub fn from_mask(r: usize, mask: u128) -> Pattern {
        Pattern::from_trusted(
            Alphabet::Bits,
            ball(r).into_iter().enumerate().map(|(i, w)| (w, ((mask >> i) & 1) as u32)),
        )
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn insert(&mut self, w: Word, symbol: u32) -> Result<()> {
        if symbol >= self.alphabet.size() {
            return Err(Error::AlphabetMismatch(format!(
                "symbol {symbol} outside alphabet of size {}",
                self.alphabet.size()
            )));
        }
        self.cells.insert(w, symbol);
        Ok(())
    }

    pub fn get(&self, w: &Word) -> Option<u32> {
        self.cells.get(w).copied()
    }

    pub fn value(&self, w: &Word) -> Result<u32> {
        self.get(w)
            .ok_or_else(|| Error::Support(format!("cell {w:?} is not in the support")))
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.cells.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.cells.keys()
    }

    pub fn support_set(&self) -> BTreeSet<Word> {
        self.cells.keys().cloned().collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Word, u32)> + '_ {
        self.cells.iter().map(|(w, &s)| (w, s))
    }

    pub fn is_zero(&self) -> bool {
        self.cells.values().all(|&s| s == 0)
    }

    /// `(f · x)(h) = x(f⁻¹h)`: the support moves to `f · support`.
    pub fn shift(&self, f: &Word) -> Pattern {
        Pattern::from_trusted(self.alphabet, self.cells.iter().map(|(w, &s)| (f.mul(w), s)))
    }

    /// Coordinate-wise sum mod 2 on the intersection of the two supports.
    pub fn xor(&self, other: &Pattern) -> Result<Pattern> {
        if self.alphabet != other.alphabet || !self.alphabet.xor_compatible() {
            return Err(Error::AlphabetMismatch(format!(
                "cannot xor {:?} with {:?}",
                self.alphabet, other.alphabet
            )));
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        Ok(Pattern::from_trusted(
            self.alphabet,
            small
                .cells
                .iter()
                .filter_map(|(w, &s)| large.get(w).map(|t| (w.clone(), s ^ t))),
        ))
    }

    /// Restriction to `s`, which must be contained in the support.
    pub fn restrict<'a, I: IntoIterator<Item = &'a Word>>(&self, s: I) -> Result<Pattern> {
        let mut out = Pattern::empty(self.alphabet);
        for w in s {
            out.cells.insert(w.clone(), self.value(w)?);
        }
        Ok(out)
    }

    /// Restriction to `support ∩ s`.
    pub fn intersect<'a, I: IntoIterator<Item = &'a Word>>(&self, s: I) -> Pattern {
        Pattern::from_trusted(
            self.alphabet,
            s.into_iter().filter_map(|w| self.get(w).map(|v| (w.clone(), v))),
        )
    }

    pub fn restrict_ball(&self, r: usize) -> Result<Pattern> {
        self.restrict(&ball(r))
    }

    /// Largest `r` with `ball(r) ⊆ support`, or `None` when the identity is missing.
    pub fn ball_radius(&self) -> Option<usize> {
        if !self.contains(&Word::identity()) {
            return None;
        }
        let mut r = 0;
        while sphere(r + 1).iter().all(|w| self.contains(w)) {
            r += 1;
        }
        Some(r)
    }

    /// Equality of values on the common support.
    pub fn agrees_with(&self, other: &Pattern) -> bool {
        self.cells
            .iter()
            .all(|(w, &s)| other.get(w).is_none_or(|t| t == s))
    }

    pub fn map_symbols(&self, alphabet: Alphabet, f: impl Fn(u32) -> u32) -> Pattern {
        Pattern::from_trusted(alphabet, self.cells.iter().map(|(w, &s)| (w.clone(), f(s))))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pattern serializes")
    }

    pub fn from_json(s: &str) -> Result<Pattern> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct PatternFile {
    alphabet: Alphabet,
    cells: Vec<(Word, u32)>,
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PatternFile {
            alphabet: self.alphabet,
            cells: self.cells.iter().map(|(w, &s)| (w.clone(), s)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Pattern, D::Error> {
        let file = PatternFile::deserialize(deserializer)?;
        Pattern::from_cells(file.alphabet, file.cells).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn unit(at: &str) -> Pattern {
        Pattern::from_cells(Alphabet::Bits, [(w(at), 1)]).unwrap()
    }

    #[test]
    fn shift_examples() {
        let x = Pattern::from_mask(2, 0b1_0110_1101_1001_0101);
        assert_eq!(x.shift(&Word::identity()), x);
        let s = unit("").shift(&w("a"));
        assert_eq!(s.support_set(), BTreeSet::from([w("a")]));
        assert_eq!(s.get(&w("a")), Some(1));
        assert_eq!(x.shift(&w("a")).shift(&w("A")), x);
    }

    #[test]
    fn xor_examples() {
        let x = Pattern::from_mask(2, 0x1_2345);
        assert!(x.xor(&x).unwrap().is_zero());
        assert_eq!(x.xor(&Pattern::zeros(Alphabet::Bits, 2)).unwrap(), x);
        let pairs = Pattern::zeros(Alphabet::Pairs, 1);
        assert!(matches!(x.xor(&pairs), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn xor_on_unequal_supports_uses_intersection() {
        let x = Pattern::from_mask(2, 0x1_ffff);
        let y = Pattern::from_mask(1, 0b10101);
        let z = x.xor(&y).unwrap();
        assert_eq!(z.support_set(), y.support_set());
    }

    #[test]
    fn restrict_examples() {
        let x = Pattern::from_mask(2, 0x0_beef);
        assert!(x.restrict(std::iter::empty()).unwrap().is_empty());
        let one = x.restrict(&ball(0)).unwrap();
        assert_eq!(one.len(), 1);
        let r1 = x.restrict(&ball(1)).unwrap();
        assert_eq!(r1.restrict(&ball(0)).unwrap(), one);
        assert_eq!(x.restrict(x.support_set().iter()).unwrap(), x);
        assert!(one.restrict(&ball(1)).is_err());
    }

    #[test]
    fn ball_radius_detects_largest_ball() {
        assert_eq!(Pattern::zeros(Alphabet::Bits, 3).ball_radius(), Some(3));
        assert_eq!(unit("a").ball_radius(), None);
        assert_eq!(Pattern::zeros(Alphabet::Bits, 2).shift(&w("a")).ball_radius(), Some(1));
    }

    #[test]
    fn json_is_canonical() {
        let p = Pattern::from_cells(Alphabet::Pairs, [(w("b"), 3), (w(""), 1), (w("a"), 2)]).unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"alphabet":"pairs","cells":[["1",1],["a",2],["b",3]]}"#
        );
        assert_eq!(Pattern::from_json(&p.to_json()).unwrap(), p);
        assert!(Pattern::from_json(r#"{"alphabet":"bits","cells":[["a",2]]}"#).is_err());
        let s = Pattern::from_cells(Alphabet::Symbols(9), [(w("aB"), 8)]).unwrap();
        assert_eq!(s.to_json(), r#"{"alphabet":{"symbols":9},"cells":[["aB",8]]}"#);
    }

    #[test]
    fn pair_encoding() {
        assert_eq!(pair_symbol(1, 0), 2);
        assert_eq!(pair_components(3), (1, 1));
    }

    fn shift_word() -> impl Strategy<Value = Word> {
        (0u64..ball(2).len() as u64).prop_map(Word::unrank)
    }

    proptest! {
        #[test]
        fn shift_is_a_left_action(g in shift_word(), h in shift_word(), mask in 0u128..(1 << 17)) {
            let x = Pattern::from_mask(2, mask);
            prop_assert_eq!(x.shift(&h).shift(&g), x.shift(&g.mul(&h)));
        }

        #[test]
        fn xor_is_elementary_abelian(a in 0u128..(1 << 17), b in 0u128..(1 << 17), c in 0u128..(1 << 17)) {
            let (x, y, z) = (Pattern::from_mask(2, a), Pattern::from_mask(2, b), Pattern::from_mask(2, c));
            prop_assert_eq!(x.xor(&y).unwrap(), y.xor(&x).unwrap());
            prop_assert_eq!(x.xor(&y).unwrap().xor(&z).unwrap(), x.xor(&y.xor(&z).unwrap()).unwrap());
            prop_assert!(x.xor(&x).unwrap().is_zero());
        }

        #[test]
        fn shift_distributes_over_xor(g in shift_word(), a in 0u128..(1 << 17), b in 0u128..(1 << 17)) {
            let (x, y) = (Pattern::from_mask(2, a), Pattern::from_mask(2, b));
            prop_assert_eq!(x.xor(&y).unwrap().shift(&g), x.shift(&g).xor(&y.shift(&g)).unwrap());
        }
    }
}
