use std::collections::BTreeMap;

use super::Cocycle;
use crate::coinduction::{Coinduction, KeyBeta, ZPoint};
use crate::error::Result;
use crate::free_group::{GroupOracle, Word};
use crate::ow_tower::{beta0, AffineWindowMap, TowerOutput};
use crate::pattern::Pattern;

/// `δ : G × Z → Sym(ℕ)`, with values restricted to `n < components`.
pub struct DeltaCocycle<'a, O: GroupOracle<Elem = Word>> {
    pub system: &'a Coinduction<O>,
    pub components: usize,
}

impl<O: GroupOracle<Elem = Word>> Cocycle for DeltaCocycle<'_, O> {
    type G = Word;
    type X = ZPoint;
    type A = BTreeMap<usize, usize>;

    fn mul(&self, g2: &Word, g1: &Word) -> Word {
        self.system.group().mul(g2, g1)
    }

    fn act(&self, g: &Word, z: &ZPoint) -> ZPoint {
        self.system.act_z(g, z)
    }

    fn value(&self, g: &Word, z: &ZPoint) -> Result<Self::A> {
        (0..self.components).map(|n| Ok((n, self.system.delta(g, n, z)?))).collect()
    }

    /// Composition of partial permutations: defined where `a₁(n)` lies in the domain of `a₂`.
    fn compose(&self, a2: &Self::A, a1: &Self::A) -> Result<Self::A> {
        Ok(a1.iter().filter_map(|(&n, k)| a2.get(k).map(|&m| (n, m))).collect())
    }

    fn agree(&self, a: &Self::A, b: &Self::A) -> bool {
        !b.is_empty() && b.iter().all(|(n, m)| a.get(n) == Some(m))
    }
}

/// `γ : G × (ℕ ⋊_δ Z) → F₂`.
pub struct GammaCocycle<'a, O: GroupOracle<Elem = Word>> {
    pub system: &'a Coinduction<O>,
}

impl<O: GroupOracle<Elem = Word>> Cocycle for GammaCocycle<'_, O> {
    type G = Word;
    type X = (usize, ZPoint);
    type A = Word;

    fn mul(&self, g2: &Word, g1: &Word) -> Word {
        self.system.group().mul(g2, g1)
    }

    fn act(&self, g: &Word, (n, z): &(usize, ZPoint)) -> (usize, ZPoint) {
        let k = self.system.delta(g, *n, z).expect("δ defined on the tested range");
        (k, self.system.act_z(g, z))
    }

    fn value(&self, g: &Word, (n, z): &(usize, ZPoint)) -> Result<Word> {
        self.system.gamma(g, *n, z)
    }

    fn compose(&self, a2: &Word, a1: &Word) -> Result<Word> {
        Ok(a2.mul(a1))
    }

    fn agree(&self, a: &Word, b: &Word) -> bool {
        a == b
    }
}

/// `β₀ : F₂ × (2^ℕ)^{F₂} → Aff(K₀)` on tower windows.
pub struct Beta0Cocycle;

impl Cocycle for Beta0Cocycle {
    type G = Word;
    type X = TowerOutput;
    type A = AffineWindowMap;

    fn mul(&self, g2: &Word, g1: &Word) -> Word {
        g2.mul(g1)
    }

    fn act(&self, f: &Word, y: &TowerOutput) -> TowerOutput {
        y.shift(f)
    }

    fn value(&self, f: &Word, y: &TowerOutput) -> Result<AffineWindowMap> {
        beta0(f, y)
    }

    fn compose(&self, a2: &AffineWindowMap, a1: &AffineWindowMap) -> Result<AffineWindowMap> {
        a2.compose(a1)
    }

    fn agree(&self, a: &AffineWindowMap, b: &AffineWindowMap) -> bool {
        a.agrees_with(b)
    }
}

/// `β : G × ((2^ℕ)^G × Z) → Aff(K₀^ℕ)` on the components whose windows allow it.
pub struct KeyBetaCocycle<'a, O: GroupOracle<Elem = Word>> {
    pub system: &'a Coinduction<O>,
}

impl<O: GroupOracle<Elem = Word>> Cocycle for KeyBetaCocycle<'_, O> {
    type G = Word;
    type X = (Vec<Pattern>, ZPoint);
    type A = KeyBeta;

    fn mul(&self, g2: &Word, g1: &Word) -> Word {
        self.system.group().mul(g2, g1)
    }

    fn act(&self, g: &Word, (levels, z): &Self::X) -> Self::X {
        (levels.iter().map(|l| self.system.g_shift(g, l)).collect(), self.system.act_z(g, z))
    }

    fn value(&self, g: &Word, (levels, z): &Self::X) -> Result<KeyBeta> {
        self.system.key_beta_available(g, levels, z)
    }

    fn compose(&self, a2: &KeyBeta, a1: &KeyBeta) -> Result<KeyBeta> {
        a2.compose(a1)
    }

    /// Agreement on common components; an empty composite counts as a failure.
    fn agree(&self, a: &KeyBeta, b: &KeyBeta) -> bool {
        !b.is_empty() && a.agrees_with(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coinduction::CoinductionConfig;
    use crate::free_group::ball;
    use crate::ow_tower::tower_map;
    use crate::pattern::Alphabet;
    use crate::skew::{all_triples, cocycle_check};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coinduction_cocycles_pass() {
        for cfg in [CoinductionConfig::singleton(), CoinductionConfig::orbit()] {
            let c = Coinduction::new(&cfg).unwrap();
            let z = c.base_point();
            let gs = ball(1);
            let delta = cocycle_check(&DeltaCocycle { system: &c, components: 6 }, all_triples(&gs, std::slice::from_ref(&z)));
            assert!(delta.passed() && delta.checked == 25, "{delta:?}");
            let xs: Vec<_> = (0..4).map(|n| (n, z.clone())).collect();
            let gamma = cocycle_check(&GammaCocycle { system: &c }, all_triples(&gs, &xs));
            assert!(gamma.passed() && gamma.checked == 100, "{gamma:?}");
        }
    }

    #[test]
    fn beta0_adapter_detects_a_wrong_composition_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = Pattern::from_cells(Alphabet::Bits, ball(6).into_iter().map(|w| (w, rng.gen_range(0..2)))).unwrap();
        let y = tower_map(&x, 2);
        let gs = ball(1);
        assert!(cocycle_check(&Beta0Cocycle, all_triples(&gs, std::slice::from_ref(&y))).passed());

        struct Swapped;
        impl Cocycle for Swapped {
            type G = Word;
            type X = TowerOutput;
            type A = AffineWindowMap;
            fn mul(&self, g2: &Word, g1: &Word) -> Word {
                g2.mul(g1)
            }
            fn act(&self, f: &Word, y: &TowerOutput) -> TowerOutput {
                y.shift(f)
            }
            fn value(&self, f: &Word, y: &TowerOutput) -> Result<AffineWindowMap> {
                beta0(f, y)
            }
            fn compose(&self, a2: &AffineWindowMap, a1: &AffineWindowMap) -> Result<AffineWindowMap> {
                a1.compose(a2)
            }
            fn agree(&self, a: &AffineWindowMap, b: &AffineWindowMap) -> bool {
                a.agrees_with(b)
            }
        }
        assert!(!cocycle_check(&Swapped, all_triples(&gs, &[y])).passed());
    }
}
