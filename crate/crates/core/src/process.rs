//! The server-side computation: a public weighted sum of encrypted inputs.

use crate::error::{Error, Result};
use crate::lwe::{self, LweCiphertext, LweParams};
use crate::rlwe::{self, RlweCiphertext, RlweParams};
use crate::scheme::LatticeParams;

fn check_weights(weights: &[(u32, u64)], inputs: usize, p: u64) -> Result<()> {
    if inputs == 0 {
        return Err(Error::param("no input ciphertexts"));
    }
    if weights.is_empty() {
        return Err(Error::param("empty weight list"));
    }
    for &(i, w) in weights {
        if i as usize >= inputs {
            return Err(Error::Index {
                index: i as usize,
                bound: inputs,
            });
        }
        if w >= p {
            return Err(Error::range(w, p));
        }
    }
    Ok(())
}

fn check_budget(bits: i32) -> Result<()> {
    if bits < 1 {
        return Err(Error::NoiseBudget(format!(
            "weighted sum leaves {bits} bits of noise headroom"
        )));
    }
    Ok(())
}

/// `Σ w_j ⊠ ct[i_j]`, refused when the noise estimate runs out.
pub fn lwe_weighted_sum(
    cts: &[LweCiphertext],
    weights: &[(u32, u64)],
    params: &LweParams,
) -> Result<LweCiphertext> {
    check_weights(weights, cts.len(), params.plaintext_modulus())?;
    let mut terms = weights
        .iter()
        .map(|&(i, w)| lwe::plain_mul(&cts[i as usize], w, params));
    let mut acc = terms.next().unwrap()?;
    for t in terms {
        acc = lwe::add(&acc, &t?, params)?;
    }
    check_budget(acc.noise_budget_bits())?;
    Ok(acc)
}

pub fn rlwe_weighted_sum(
    cts: &[RlweCiphertext],
    weights: &[(u32, u64)],
    params: &RlweParams,
) -> Result<RlweCiphertext> {
    check_weights(weights, cts.len(), params.plaintext_modulus())?;
    let mut terms = weights
        .iter()
        .map(|&(i, w)| rlwe::plain_mul(&cts[i as usize], w, params));
    let mut acc = terms.next().unwrap()?;
    for t in terms {
        acc = rlwe::add(&acc, &t?, params)?;
    }
    check_budget(acc.noise_budget_bits())?;
    Ok(acc)
}
