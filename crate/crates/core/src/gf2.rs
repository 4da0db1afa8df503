//! Dense bit vectors and Gaussian elimination over GF(2).

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> BitVec {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Reduced row echelon form; returns the pivot column of each nonzero row kept.
pub fn echelon(rows: &mut Vec<BitVec>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut done = 0;
    let ncols = rows.first().map_or(0, BitVec::len);
    for col in 0..ncols {
        let Some(p) = (done..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(done, p);
        let pivot = rows[done].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != done && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        done += 1;
    }
    rows.truncate(done);
    pivots
}

pub fn rank(rows: &[BitVec]) -> usize {
    let mut rows = rows.to_vec();
    echelon(&mut rows).len()
}

/// A basis of `{x : r · x = 0 for every row r}` in `GF(2)^ncols`.
pub fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut rows = rows.to_vec();
    let pivots = echelon(&mut rows);
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::unit(ncols, free);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// `Σ coeffs_i · basis_i` where bit `i` of `coeffs` selects `basis[i]`.
pub fn combine(basis: &[BitVec], ncols: usize, coeffs: u64) -> BitVec {
    let mut v = BitVec::zeros(ncols);
    for (i, b) in basis.iter().enumerate() {
        if (coeffs >> i) & 1 == 1 {
            v.xor_assign(b);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitVec {
        BitVec::from_bits(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&[bits("110"), bits("011"), bits("101")]), 2);
        assert_eq!(rank(&[bits("100"), bits("010"), bits("001")]), 3);
        assert_eq!(rank(&[bits("000")]), 0);
    }

    #[test]
    fn nullspace_small() {
        let rows = [bits("110"), bits("011")];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![bits("111")]);
    }

    #[test]
    fn long_vectors_cross_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        v.set(64, true);
        assert_eq!(v.first_one(), Some(64));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![64, 129]);
        assert!(v.dot(&BitVec::unit(130, 129)));
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 12), 0..10)) {
            let rows: Vec<BitVec> = rows.into_iter().map(BitVec::from_bits).collect();
            let ns = nullspace(&rows, 12);
            prop_assert_eq!(rank(&rows) + ns.len(), 12);
            for v in &ns {
                for r in &rows {
                    prop_assert!(!r.dot(v));
                }
            }
            prop_assert_eq!(rank(&ns), ns.len());
        }
    }
}
