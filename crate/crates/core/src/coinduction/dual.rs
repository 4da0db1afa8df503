use std::collections::{BTreeMap, BTreeSet};

use super::config::ZPoint;
use super::system::Coinduction;
use crate::error::Result;
use crate::free_group::{ball, GroupOracle, Word};
use crate::pattern::Pattern;

/// A finitely supported element of `(A^F₂)^ℕ`: component `n` is an F₂-pattern.
pub type Family = BTreeMap<usize, Pattern>;

impl<G: GroupOracle<Elem = Word>> Coinduction<G> {
    /// `(g · x)(h) = x(g⁻¹ h)` for a pattern over `G`.
    pub fn g_shift(&self, g: &Word, x: &Pattern) -> Pattern {
        let mut out = Pattern::empty(x.alphabet());
        for (h, s) in x.cells() {
            out.insert(self.group().mul(g, h), s).expect("same alphabet");
        }
        out
    }

    /// `ψ*_z(x)(n)(f) = x(ψ_z(f, n))`, computed cell by cell through `ψ_z⁻¹`, so
    /// every cell of `x` lands in exactly one component.
    pub fn psi_star(&self, x: &Pattern, z: &ZPoint) -> Result<Family> {
        let mut out = Family::new();
        for (g, s) in x.cells() {
            let (f, n) = self.psi_inverse(g, z)?;
            out.entry(n)
                .or_insert_with(|| Pattern::empty(x.alphabet()))
                .insert(f, s)
                .expect("same alphabet");
        }
        Ok(out)
    }

    pub fn psi_star_inverse(&self, y: &Family, z: &ZPoint) -> Result<Pattern> {
        let mut out: Option<Pattern> = None;
        for (&n, component) in y {
            let target = out.get_or_insert_with(|| Pattern::empty(component.alphabet()));
            for (f, s) in component.cells() {
                target.insert(self.psi(f, n, z)?, s)?;
            }
        }
        Ok(out.unwrap_or_else(|| Pattern::empty(crate::pattern::Alphabet::Bits)))
    }

    /// The induced action on families:
    /// `x'(n) = γ(g⁻¹, n, g·z)⁻¹ · x(δ(g⁻¹, g·z)(n))`.
    ///
    /// Component `m` of the input moves to `n = δ(g, z)(m)`, the inverse
    /// permutation of `δ(g⁻¹, g·z)`.
    pub fn induced_action(&self, g: &Word, x: &Family, z: &ZPoint) -> Result<(Family, ZPoint)> {
        let gz = self.act_z(g, z);
        let g_inv = self.group().inv(g);
        let mut out = Family::new();
        for (&m, component) in x {
            let n = self.delta(g, m, z)?;
            let (src, u) = self.delta_gamma(&g_inv, n, &gz)?;
            debug_assert_eq!(src, m);
            out.insert(n, component.shift(&u.inv()));
        }
        Ok((out, gz))
    }

    /// `⋃_{n < components} ψ_z(ball(radius), n)`: the `G`-window whose
    /// coinduced components are exactly F₂-balls.
    pub fn image_window(&self, z: &ZPoint, components: usize, radius: usize) -> Result<BTreeSet<Word>> {
        let mut out = BTreeSet::new();
        for n in 0..components {
            for f in ball(radius) {
                out.insert(self.psi(&f, n, z)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coinduction::CoinductionConfig;
    use crate::ow_tower::ow_map;
    use crate::pattern::Alphabet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_on(cells: &BTreeSet<Word>, rng: &mut ChaCha8Rng) -> Pattern {
        Pattern::from_cells(Alphabet::Bits, cells.iter().map(|w| (w.clone(), rng.gen_range(0..2)))).unwrap()
    }

    #[test]
    fn psi_star_relabels() {
        let c = Coinduction::new(&CoinductionConfig::singleton()).unwrap();
        let z = ZPoint::Singleton;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_on(&ball(3).into_iter().collect(), &mut rng);
        let y = c.psi_star(&x, &z).unwrap();
        assert_eq!(y[&0].get(&Word::identity()), x.get(&Word::identity()));
        assert_eq!(y.values().map(Pattern::len).sum::<usize>(), x.len());
        for (&n, comp) in &y {
            for (f, s) in comp.cells() {
                assert_eq!(x.get(&c.psi(f, n, &z).unwrap()), Some(s));
            }
        }
        assert_eq!(c.psi_star_inverse(&y, &z).unwrap(), x);
    }

    #[test]
    fn psi_star_intertwines_actions() {
        for cfg in [CoinductionConfig::singleton(), CoinductionConfig::orbit()] {
            let c = Coinduction::new(&cfg).unwrap();
            let z = c.base_point();
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let x = random_on(&ball(3).into_iter().collect(), &mut rng);
            for g in ball(1) {
                let lhs = c.psi_star(&c.g_shift(&g, &x), &c.act_z(&g, &z)).unwrap();
                let (rhs, gz) = c.induced_action(&g, &c.psi_star(&x, &z).unwrap(), &z).unwrap();
                assert_eq!(gz, c.act_z(&g, &z));
                assert_eq!(lhs, rhs, "g = {g:?}");
            }
        }
    }

    #[test]
    fn induced_action_laws() {
        let c = Coinduction::new(&CoinductionConfig::orbit()).unwrap();
        let z = c.base_point();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let family: Family = (0..3)
            .map(|n| (n, random_on(&ball(2).into_iter().collect(), &mut rng)))
            .collect();
        let (same, z1) = c.induced_action(&Word::identity(), &family, &z).unwrap();
        assert_eq!((same, z1), (family.clone(), z.clone()));
        for g in ball(1) {
            for h in ball(1) {
                let (gx, gz) = c.induced_action(&g, &family, &z).unwrap();
                let lhs = c.induced_action(&h, &gx, &gz).unwrap();
                let rhs = c.induced_action(&h.mul(&g), &family, &z).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn levelwise_equivariant_maps_commute_with_the_action() {
        let c = Coinduction::new(&CoinductionConfig::singleton()).unwrap();
        let z = ZPoint::Singleton;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let family: Family = (0..4)
            .map(|n| (n, random_on(&ball(3).into_iter().collect(), &mut rng)))
            .collect();
        let map = |f: &Family| -> Family { f.iter().map(|(&n, x)| (n, ow_map(x).unwrap().pairs())).collect() };
        for g in ball(2) {
            let (acted, _) = c.induced_action(&g, &family, &z).unwrap();
            let lhs = map(&acted);
            let (rhs, _) = c.induced_action(&g, &map(&family), &z).unwrap();
            assert_eq!(lhs.keys().collect::<Vec<_>>(), rhs.keys().collect::<Vec<_>>());
            for (n, l) in &lhs {
                assert!(l.agrees_with(&rhs[n]));
            }
        }
    }

    #[test]
    fn image_window_components_are_balls() {
        let c = Coinduction::new(&CoinductionConfig::orbit()).unwrap();
        let z = c.base_point();
        let cells = c.image_window(&z, 3, 2).unwrap();
        assert_eq!(cells.len(), 3 * ball(2).len());
        let x = Pattern::constant(Alphabet::Bits, &cells, 0);
        let y = c.psi_star(&x, &z).unwrap();
        for n in 0..3 {
            assert_eq!(y[&n].ball_radius(), Some(2));
            assert_eq!(y[&n].len(), ball(2).len());
        }
    }
}
