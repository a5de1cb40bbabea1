use rand::{CryptoRng, Rng, RngCore};

use crate::error::{Error, Result};
use crate::math::prg::sample_residue;
use crate::math::Modulus;

/// Standard deviation used for every shipped parameter set.
pub const DEFAULT_SIGMA: f64 = 3.2;

/// Truncated discrete Gaussian: samples `|e| <= bound` with weight
/// proportional to `exp(-e^2 / (2 sigma^2))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    sigma: f64,
    bound: u64,
}

impl NoiseParams {
    pub fn new(sigma: f64, bound: u64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param(format!("sigma must be positive, got {sigma}")));
        }
        if bound < 1 {
            return Err(Error::param("noise bound must be at least 1"));
        }
        Ok(NoiseParams { sigma, bound })
    }

    /// Rejection bound of `floor(6 sigma)` (at least 1).
    pub fn with_sigma(sigma: f64) -> Result<Self> {
        NoiseParams::new(sigma, ((6.0 * sigma).floor() as u64).max(1))
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams::with_sigma(DEFAULT_SIGMA).expect("default sigma is valid")
    }
}

pub fn sample_error<R: Rng + ?Sized>(noise: &NoiseParams, rng: &mut R) -> i64 {
    let bound = noise.bound as i64;
    let two_var = 2.0 * noise.sigma * noise.sigma;
    loop {
        let x = rng.gen_range(-bound..=bound);
        let weight = (-((x * x) as f64) / two_var).exp();
        if rng.gen::<f64>() < weight {
            return x;
        }
    }
}

pub fn sample_uniform_vector<R: RngCore + CryptoRng + ?Sized>(
    n: usize,
    q: &Modulus,
    rng: &mut R,
) -> Vec<u64> {
    (0..n).map(|_| sample_residue(rng, q)).collect()
}
