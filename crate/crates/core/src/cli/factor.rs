use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_group::Word;
use crate::ow_tower::ow_map;
use crate::pattern::{pair_symbol, Pattern};
use crate::skew::{chi_square_independence, chi_square_uniform, shannon_entropy, ChiSquare};

pub const MIN_FACTOR_SAMPLES: usize = 10_000;

const CHUNK: usize = 4096;

/// Output symbols of `ow_map` at `1_F` and at `a` for i.i.d. inputs on `ball(2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorStats {
    pub samples: usize,
    pub p_one: f64,
    pub marginal: [u64; 4],
    pub joint: [[u64; 4]; 4],
    pub marginal_test: ChiSquare,
    pub independence_test: ChiSquare,
    pub entropy: f64,
}

fn run_chunk(seed: u64, index: usize, count: usize, p_one: f64) -> Result<[[u64; 4]; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let (one, a) = (Word::identity(), Word::a());
    let mut joint = [[0u64; 4]; 4];
    for _ in 0..count {
        let mask = (0..17).fold(0u128, |m, i| m | (u128::from(rng.gen_bool(p_one)) << i));
        let y = ow_map(&Pattern::from_mask(2, mask))?;
        let at = |w: &Word| -> Result<usize> { Ok(pair_symbol(y.p.value(w)?, y.q.value(w)?) as usize) };
        joint[at(&one)?][at(&a)?] += 1;
    }
    Ok(joint)
}

/// The joint table of output symbols at `(1_F, a)`. Chunk `i` draws from
/// stream `i` of the seeded generator, so the result does not depend on
/// how chunks are scheduled.
pub fn factor_samples(samples: usize, seed: u64, p_one: f64) -> Result<[[u64; 4]; 4]> {
    if !(0.0..=1.0).contains(&p_one) {
        return Err(Error::Config(format!("p(1) = {p_one} is not a probability")));
    }
    let chunks: Vec<(usize, usize)> =
        (0..samples.div_ceil(CHUNK)).map(|i| (i, CHUNK.min(samples - i * CHUNK))).collect();
    #[cfg(feature = "parallel")]
    let tables: Vec<Result<[[u64; 4]; 4]>> = {
        use rayon::prelude::*;
        chunks.par_iter().map(|&(i, n)| run_chunk(seed, i, n, p_one)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let tables: Vec<Result<[[u64; 4]; 4]>> = chunks.iter().map(|&(i, n)| run_chunk(seed, i, n, p_one)).collect();
    let mut joint = [[0u64; 4]; 4];
    for t in tables {
        let t = t?;
        for (row, trow) in joint.iter_mut().zip(t) {
            for (c, tc) in row.iter_mut().zip(trow) {
                *c += tc;
            }
        }
    }
    Ok(joint)
}

/// Marginal uniformity at `1_F` (3 dof), independence of `1_F` and `a` (9 dof),
/// and the empirical entropy of the marginal in nats.
pub fn factor_demo(samples: usize, seed: u64, p_one: f64) -> Result<FactorStats> {
    if samples < MIN_FACTOR_SAMPLES {
        return Err(Error::Config(format!("factor demo needs at least {MIN_FACTOR_SAMPLES} samples, got {samples}")));
    }
    let joint = factor_samples(samples, seed, p_one)?;
    let marginal = joint.map(|row| row.iter().sum::<u64>());
    let weights: Vec<f64> = marginal.iter().map(|&c| c as f64 / samples as f64).collect();
    let table: Vec<Vec<u64>> = joint.iter().map(|r| r.to_vec()).collect();
    Ok(FactorStats {
        samples,
        p_one,
        marginal,
        joint,
        marginal_test: chi_square_uniform(&marginal),
        independence_test: chi_square_independence(&table),
        entropy: shannon_entropy(&weights)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_counted() {
        let a = factor_samples(5000, 9, 0.5).unwrap();
        assert_eq!(a, factor_samples(5000, 9, 0.5).unwrap());
        assert_eq!(a.iter().flatten().sum::<u64>(), 5000);
        assert_ne!(a, factor_samples(5000, 10, 0.5).unwrap());
    }

    #[test]
    fn constant_input_collapses_to_zero() {
        let t = factor_samples(100, 1, 1.0).unwrap();
        assert_eq!(t[0][0], 100);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        assert!(factor_demo(10, 1, 0.5).is_err());
    }
}
