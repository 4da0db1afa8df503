use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// One of the four letters of the rank-two free group.
///
/// The declaration order is the canonical letter order `a < a⁻¹ < b < b⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    AInv,
    B,
    BInv,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::AInv, Gen::B, Gen::BInv];

    pub fn inverse(self) -> Gen {
        match self {
            Gen::A => Gen::AInv,
            Gen::AInv => Gen::A,
            Gen::B => Gen::BInv,
            Gen::BInv => Gen::B,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Gen::A | Gen::B)
    }

    /// The positive letter underlying `self` (`a` for `a` and `a⁻¹`).
    pub fn positive(self) -> Gen {
        match self {
            Gen::A | Gen::AInv => Gen::A,
            Gen::B | Gen::BInv => Gen::B,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::AInv => 'A',
            Gen::B => 'b',
            Gen::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Gen> {
        match c {
            'a' => Some(Gen::A),
            'A' => Some(Gen::AInv),
            'b' => Some(Gen::B),
            'B' => Some(Gen::BInv),
            _ => None,
        }
    }
}

/// A reduced word in F₂. The empty word is the identity.
#[derive(PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Gen; 16]>);

// `SmallVec::clone` pushes element by element; `from_slice` is a plain copy.
impl Clone for Word {
    fn clone(&self) -> Word {
        Word(SmallVec::from_slice(&self.0))
    }
}

impl Word {
    pub fn identity() -> Word {
        Word(SmallVec::new())
    }

    pub fn gen(g: Gen) -> Word {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn a() -> Word {
        Word::gen(Gen::A)
    }

    pub fn b() -> Word {
        Word::gen(Gen::B)
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Gen>>(letters: I) -> Word {
        let mut out: SmallVec<[Gen; 16]> = SmallVec::new();
        for g in letters {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Gen> {
        self.0.first().copied()
    }

    /// The word with its last letter removed; `None` for the identity.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(SmallVec::from_slice(&self.0[..self.0.len() - 1])))
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let (x, y) = (&self.0, &other.0);
        while k < x.len() && k < y.len() && x[x.len() - 1 - k] == y[k].inverse() {
            k += 1;
        }
        let mut out: SmallVec<[Gen; 16]> = SmallVec::with_capacity(x.len() + y.len() - 2 * k);
        out.extend_from_slice(&x[..x.len() - k]);
        out.extend_from_slice(&y[k..]);
        Word(out)
    }

    pub fn mul_gen(&self, g: Gen) -> Word {
        let mut out = SmallVec::from_slice(&self.0);
        if out.last() == Some(&g.inverse()) {
            out.pop();
        } else {
            out.push(g);
        }
        Word(out)
    }

    pub fn gen_mul(g: Gen, w: &Word) -> Word {
        if w.first() == Some(g.inverse()) {
            Word(SmallVec::from_slice(&w.0[1..]))
        } else {
            let mut out: SmallVec<[Gen; 16]> = SmallVec::with_capacity(w.len() + 1);
            out.push(g);
            out.extend_from_slice(&w.0);
            Word(out)
        }
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Position of `self` in the canonical length-lex enumeration.
    pub fn rank(&self) -> u64 {
        let n = self.0.len();
        if n == 0 {
            return 0;
        }
        let mut r = self.0[0].index() as u64;
        for w in self.0.windows(2) {
            r = r * 3 + successor_digit(w[0], w[1]) as u64;
        }
        words_shorter_than(n) + r
    }

    /// Inverse of [`Word::rank`].
    pub fn unrank(mut n: u64) -> Word {
        if n == 0 {
            return Word::identity();
        }
        let mut len = 1;
        while words_shorter_than(len + 1) <= n {
            len += 1;
        }
        n -= words_shorter_than(len);
        let mut digits = vec![0u64; len];
        for i in (1..len).rev() {
            digits[i] = n % 3;
            n /= 3;
        }
        digits[0] = n;
        let mut letters: SmallVec<[Gen; 16]> = SmallVec::with_capacity(len);
        letters.push(Gen::ALL[digits[0] as usize]);
        for &d in &digits[1..] {
            let prev = *letters.last().unwrap();
            letters.push(nth_successor(prev, d as usize));
        }
        Word(letters)
    }
}

/// Number of reduced words of length `< len`.
fn words_shorter_than(len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        2 * 3u64.pow(len as u32 - 1) - 1
    }
}

fn successor_digit(prev: Gen, next: Gen) -> usize {
    Gen::ALL
        .iter()
        .filter(|&&g| g != prev.inverse())
        .position(|&g| g == next)
        .expect("word is reduced")
}

fn nth_successor(prev: Gen, d: usize) -> Gen {
    *Gen::ALL
        .iter()
        .filter(|&&g| g != prev.inverse())
        .nth(d)
        .expect("digit below 3")
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a string over `{a, A, b, B}` and reduces it; `""` and `"1"` are the identity.
    fn from_str(s: &str) -> Result<Word> {
        if s == "1" {
            return Ok(Word::identity());
        }
        let letters = s
            .chars()
            .map(|c| Gen::from_char(c).ok_or_else(|| Error::ParseWord(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(letters))
    }
}

/// Serialized like `Debug`: the identity is `"1"`.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&format_args!("{self:?}"))
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All reduced words of length `<= r` in canonical length-lex order.
pub fn ball(r: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer_start = 0;
    for _ in 0..r {
        let layer_end = out.len();
        for i in layer_start..layer_end {
            let w = out[i].clone();
            for g in Gen::ALL {
                if w.last() != Some(g.inverse()) {
                    out.push(w.mul_gen(g));
                }
            }
        }
        layer_start = layer_end;
    }
    out
}

/// Words of length exactly `r`, in canonical order.
pub fn sphere(r: usize) -> Vec<Word> {
    ball(r).into_iter().filter(|w| w.len() == r).collect()
}

/// `2·3^r − 1`.
pub fn ball_size(r: usize) -> usize {
    2 * 3usize.pow(r as u32) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce([Gen::A, Gen::AInv]), Word::identity());
        assert_eq!(Word::reduce([Gen::A, Gen::B, Gen::BInv, Gen::A]), w("aa"));
        let r = w("abAB");
        assert_eq!(Word::reduce(r.letters().iter().copied()), r);
    }

    #[test]
    fn mul_inv_examples() {
        assert_eq!(w("ab").mul(&w("Ba")), w("aa"));
        assert_eq!(w("ab").inv(), w("BA"));
        assert_eq!(Word::identity().mul(&w("abA")), w("abA"));
        let x = w("abbAB");
        assert!(x.mul(&x.inv()).is_identity());
    }

    #[test]
    fn ball_sizes_and_order() {
        assert_eq!(ball(0), vec![Word::identity()]);
        assert_eq!(ball(1).len(), 5);
        assert_eq!(ball(2).len(), 17);
        for r in 0..=8 {
            assert_eq!(ball(r).len(), ball_size(r));
        }
        let b = ball(3);
        assert!(b.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(
            ball(1).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["", "a", "A", "b", "B"]
        );
    }

    #[test]
    fn rank_matches_ball_position() {
        for (i, x) in ball(5).iter().enumerate() {
            assert_eq!(x.rank(), i as u64);
            assert_eq!(&Word::unrank(i as u64), x);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("abc".parse::<Word>().is_err());
        assert_eq!("1".parse::<Word>().unwrap(), Word::identity());
        assert_eq!(w("aAbB"), Word::identity());
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&w("aB")).unwrap();
        assert_eq!(json, "\"aB\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w("aB"));
    }
}
