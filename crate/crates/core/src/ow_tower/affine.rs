use super::kernel::KernelWindow;
use super::tower::{tower_map, tower_section, TowerOutput};
use crate::error::{Error, Result};
use crate::free_group::{ball, Word};
use crate::pattern::{Alphabet, Pattern};

/// `k ↦ f · k ⊕ t` on kernel windows, with `t` known on a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWindowMap {
    shift: Word,
    translation: Pattern,
}

impl AffineWindowMap {
    pub fn new(shift: Word, translation: Pattern) -> AffineWindowMap {
        AffineWindowMap { shift, translation }
    }

    /// The identity on windows of radius `r`.
    pub fn identity(r: usize) -> AffineWindowMap {
        AffineWindowMap::new(Word::identity(), Pattern::zeros(Alphabet::Bits, r))
    }

    pub fn shift(&self) -> &Word {
        &self.shift
    }

    pub fn translation(&self) -> &Pattern {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_identity() && self.translation.is_zero()
    }

    /// Defined on `f · supp(k) ∩ supp(t)`.
    pub fn apply(&self, k: &Pattern) -> Result<Pattern> {
        k.shift(&self.shift).xor(&self.translation)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineWindowMap) -> Result<AffineWindowMap> {
        Ok(AffineWindowMap {
            shift: self.shift.mul(&inner.shift),
            translation: inner.translation.shift(&self.shift).xor(&self.translation)?,
        })
    }

    /// Same shift and translations agreeing on the common support.
    pub fn agrees_with(&self, other: &AffineWindowMap) -> bool {
        self.shift == other.shift && self.translation.agrees_with(&other.translation)
    }
}

/// `β₀(f, y)(k) = f·k + f·σ(y) − σ(f·y)`, with the translation restricted to
/// the ball where both sections are window-independent.
pub fn beta0(f: &Word, y: &TowerOutput) -> Result<AffineWindowMap> {
    let required = f.len() + y.depth();
    if y.radius() < required {
        return Err(Error::WindowTooSmall { required, available: y.radius() });
    }
    let target = ball(y.radius() - required);
    let moved = tower_section(y).shift(f).restrict(&target)?;
    let direct = tower_section(&y.shift(f)).restrict(&target)?;
    Ok(AffineWindowMap::new(f.clone(), moved.xor(&direct)?))
}

/// `φ₀(k, y) = k + σ(y)` on the support of `k`, which must lie in `ball(r)`.
pub fn phi0(k: &Pattern, y: &TowerOutput) -> Result<Pattern> {
    let s = tower_section(y);
    if let Some(w) = k.support().find(|w| !s.contains(w)) {
        return Err(Error::Support(format!(
            "kernel cell {w:?} lies outside ball({})",
            y.radius()
        )));
    }
    k.xor(&s)
}

/// `φ₀⁻¹(x) = (x + σ(ψ(x)), ψ(x))`.
pub fn phi0_inverse(x: &Pattern, levels: usize) -> Result<(KernelWindow, TowerOutput)> {
    let y = tower_map(x, levels);
    let k = x.xor(&tower_section(&y))?;
    Ok((KernelWindow::new_unchecked(k), y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ow_tower::kernel::kernel_enumerate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tower(r: usize, l: usize, rng: &mut ChaCha8Rng) -> TowerOutput {
        let x = Pattern::from_trusted(Alphabet::Bits, ball(r).into_iter().map(|w| (w, rng.gen_range(0..2))));
        tower_map(&x, l)
    }

    #[test]
    fn identity_shift_gives_identity_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = random_tower(4, 2, &mut rng);
        assert!(beta0(&Word::identity(), &y).unwrap().is_identity());
    }

    #[test]
    fn zero_levels_give_pure_shift() {
        let y = TowerOutput::zeros(5, 2);
        for f in ball(2) {
            assert!(beta0(&f, &y).unwrap().translation().is_zero());
        }
    }

    #[test]
    fn small_window_is_reported() {
        let y = TowerOutput::zeros(3, 2);
        assert_eq!(
            beta0(&"ab".parse().unwrap(), &y),
            Err(Error::WindowTooSmall { required: 4, available: 3 })
        );
    }

    #[test]
    fn cocycle_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = random_tower(6, 2, &mut rng);
        for f1 in ball(2) {
            for f2 in ball(2) {
                let lhs = beta0(&f2.mul(&f1), &y).unwrap();
                let rhs = beta0(&f2, &y.shift(&f1)).unwrap().compose(&beta0(&f1, &y).unwrap()).unwrap();
                assert!(lhs.agrees_with(&rhs), "f1={f1:?} f2={f2:?}");
            }
        }
    }

    #[test]
    fn translation_is_a_kernel_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let y = random_tower(6, 2, &mut rng);
        for f in ball(2) {
            let t = beta0(&f, &y).unwrap();
            assert!(tower_map(t.translation(), 2).is_zero());
        }
    }

    #[test]
    fn phi0_examples_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let y = random_tower(3, 2, &mut rng);
        let zero = Pattern::zeros(Alphabet::Bits, 3);
        assert_eq!(phi0(&zero, &y).unwrap(), tower_section(&y));
        for k in kernel_enumerate(2, 2).unwrap() {
            let k3 = k.pattern().clone();
            assert_eq!(phi0(&k3, &TowerOutput::zeros(2, 2)).unwrap(), k3);
        }
        let x = Pattern::from_trusted(Alphabet::Bits, ball(4).into_iter().map(|w| (w, rng.gen_range(0..2))));
        let (k, y) = phi0_inverse(&x, 2).unwrap();
        assert!(tower_map(k.pattern(), 2).is_zero());
        assert_eq!(phi0(k.pattern(), &y).unwrap(), x);
        assert!(phi0(&Pattern::zeros(Alphabet::Bits, 5), &y).is_err());
    }

    #[test]
    fn phi0_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = Pattern::from_trusted(Alphabet::Bits, ball(4).into_iter().map(|w| (w, rng.gen_range(0..2))));
        let (k, y) = phi0_inverse(&x, 2).unwrap();
        let f = Word::a();
        let moved = beta0(&f, &y).unwrap().apply(k.pattern()).unwrap();
        let lhs = phi0(&moved, &y.shift(&f)).unwrap();
        let rhs = phi0(k.pattern(), &y).unwrap().shift(&f);
        assert!(!lhs.is_empty());
        assert!(lhs.agrees_with(&rhs));
    }
}
