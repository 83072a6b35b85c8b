//! Seeded random laws for the verification harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::laws::{make_discrete, DiscreteLaw};

pub type HarnessRng = ChaCha8Rng;

pub fn rng(seed: u64) -> HarnessRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for instance `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> HarnessRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

fn dirichlet<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Law on `min..=max` atoms uniform in [−3, 3] with flat Dirichlet masses.
pub fn random_law<R: Rng>(rng: &mut R, min_atoms: usize, max_atoms: usize) -> Result<DiscreteLaw> {
    loop {
        let k = rng.gen_range(min_atoms..=max_atoms);
        let masses = dirichlet(rng, k);
        let pairs: Vec<(f64, f64)> = masses.iter().map(|&m| (rng.gen_range(-3.0..3.0), m)).collect();
        let law = make_discrete(&pairs)?;
        if law.len() >= 2 && law.variance() > 1e-6 {
            return Ok(law);
        }
    }
}

/// A random law standardized to mean 0 and variance 1.
pub fn random_standardized<R: Rng>(rng: &mut R, min_atoms: usize, max_atoms: usize) -> Result<DiscreteLaw> {
    random_law(rng, min_atoms, max_atoms)?.standardize()
}

/// A symmetric standardized law, so all odd moments vanish.
pub fn random_symmetric<R: Rng>(rng: &mut R, min_pairs: usize, max_pairs: usize) -> Result<DiscreteLaw> {
    let k = rng.gen_range(min_pairs..=max_pairs);
    let masses = dirichlet(rng, k);
    let mut pairs = Vec::with_capacity(2 * k);
    for m in masses {
        let x = rng.gen_range(0.05..3.0);
        pairs.push((x, m / 2.0));
        pairs.push((-x, m / 2.0));
    }
    make_discrete(&pairs)?.standardize()
}
