use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::ow_tower::{kernel_basis, KernelBasis, KernelWindow, MAX_KERNEL_DIM};

/// Seeded uniform sampler on the finite kernel group of windows `(r, L)`:
/// uniform coefficients over a basis give the uniform (Haar) measure.
pub struct KernelSampler {
    basis: KernelBasis,
    rng: ChaCha8Rng,
}

impl KernelSampler {
    pub fn new(r: usize, levels: usize, seed: u64) -> Result<KernelSampler> {
        let basis = kernel_basis(r, levels)?;
        if basis.dim() > MAX_KERNEL_DIM {
            return Err(Error::KernelTooLarge { dim: basis.dim(), max_dim: MAX_KERNEL_DIM });
        }
        Ok(KernelSampler { basis, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn basis(&self) -> &KernelBasis {
        &self.basis
    }

    /// Coefficients of the next draw with respect to [`basis`](Self::basis).
    pub fn next_coeffs(&mut self) -> u64 {
        self.rng.gen_range(0..1u64 << self.basis.dim())
    }

    pub fn sample(&mut self) -> KernelWindow {
        let c = self.next_coeffs();
        self.basis.element(c)
    }
}

pub fn uniform_kernel_sample(r: usize, levels: usize, seed: u64) -> Result<KernelWindow> {
    Ok(KernelSampler::new(r, levels, seed)?.sample())
}

/// `−Σ w log w` in nats, with `0 · log 0 = 0`.
pub fn shannon_entropy(weights: &[f64]) -> Result<f64> {
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
        return Err(Error::Weights(format!("negative or NaN weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Weights(format!("weights sum to {total}")));
    }
    Ok(weights.iter().filter(|w| **w > 0.0).map(|w| -w * w.ln()).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn chi_square(statistic: f64, dof: usize) -> ChiSquare {
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    ChiSquare { statistic, dof, p_value: dist.sf(statistic) }
}

/// Goodness of fit of `counts` against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> ChiSquare {
    let n: u64 = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    chi_square(statistic, counts.len() - 1)
}

/// Pearson test of independence on a contingency table.
pub fn chi_square_independence(table: &[Vec<u64>]) -> ChiSquare {
    let rows: Vec<f64> = table.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let cols: Vec<f64> = (0..table[0].len()).map(|j| table.iter().map(|r| r[j]).sum::<u64>() as f64).collect();
    let n: f64 = rows.iter().sum();
    let mut statistic = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &obs) in row.iter().enumerate() {
            let expected = rows[i] * cols[j] / n;
            if expected > 0.0 {
                statistic += (obs as f64 - expected).powi(2) / expected;
            }
        }
    }
    chi_square(statistic, (rows.len() - 1) * (cols.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::Word;
    use crate::ow_tower::{kernel_enumerate, AffineWindowMap};
    use std::collections::BTreeMap;

    #[test]
    fn entropy_values() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.25; 4]).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!((shannon_entropy(&[0.5, 0.25, 0.25]).unwrap() - 1.5 * 2f64.ln()).abs() < 1e-12);
        assert!(shannon_entropy(&[1.5, -0.5]).is_err());
        assert!(shannon_entropy(&[0.5, 0.4]).is_err());
    }

    #[test]
    fn chi_square_reference_values() {
        // Statistic 7.815 on 3 dof is the 5% critical value.
        let c = chi_square(7.814727903251178, 3);
        assert!((c.p_value - 0.05).abs() < 1e-9);
        assert_eq!(chi_square_uniform(&[25, 25, 25, 25]).statistic, 0.0);
        let t = chi_square_independence(&[vec![10, 20], vec![20, 40]]);
        assert!(t.statistic.abs() < 1e-12 && t.dof == 1);
    }

    #[test]
    fn sampling_is_reproducible() {
        let mut a = KernelSampler::new(2, 1, 42).unwrap();
        let mut b = KernelSampler::new(2, 1, 42).unwrap();
        for _ in 0..50 {
            assert_eq!(a.sample(), b.sample());
        }
        assert_eq!(uniform_kernel_sample(1, 1, 7).unwrap(), uniform_kernel_sample(1, 1, 7).unwrap());
    }

    #[test]
    fn radius_one_frequencies_are_uniform() {
        let all = kernel_enumerate(1, 1).unwrap();
        assert_eq!(all.len(), 8);
        let mut sampler = KernelSampler::new(1, 1, 3).unwrap();
        let draws = 100_000u64;
        let mut counts = BTreeMap::new();
        for _ in 0..draws {
            *counts.entry(sampler.sample().into_pattern()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 8);
        let p = 1.0 / 8.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in counts.values() {
            assert!((*c as f64 - draws as f64 * p).abs() < 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn translations_preserve_uniform_measure() {
        let all: Vec<_> = kernel_enumerate(1, 1).unwrap().into_iter().map(KernelWindow::into_pattern).collect();
        // Exact: every translation is a bijection of the finite kernel group.
        for t in &all {
            let map = AffineWindowMap::new(Word::identity(), t.clone());
            let mut image: Vec<_> = all.iter().map(|k| map.apply(k).unwrap()).collect();
            image.sort();
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(image, sorted);
        }
        // Empirical: pushforward of samples under a fixed map.
        let map = AffineWindowMap::new(Word::identity(), all[5].clone());
        let mut sampler = KernelSampler::new(1, 1, 11).unwrap();
        let mut counts: BTreeMap<_, u64> = all.iter().map(|k| (k.clone(), 0)).collect();
        for _ in 0..20_000 {
            *counts.get_mut(&map.apply(sampler.sample().pattern()).unwrap()).unwrap() += 1;
        }
        assert!(chi_square_uniform(&counts.values().copied().collect::<Vec<_>>()).p_value > 0.001);
    }
}
