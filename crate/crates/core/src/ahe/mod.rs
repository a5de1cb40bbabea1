//! Additively homomorphic encryption: the interface the compressor needs and
//! a Paillier implementation of it.

mod paillier;
pub mod prime;

use std::fmt::Debug;

use num_bigint::BigUint;
use rand::{CryptoRng, RngCore};

use crate::error::Result;

pub use paillier::{PaillierCiphertext, PaillierKeypair, PaillierPublicKey, DEFAULT_KEY_BITS};

/// Enc, `⊕`, `⊗` and the plaintext modulus `m`. Everything the server side of
/// compression touches.
pub trait AdditiveHe {
    type Ciphertext: Clone + Debug + PartialEq;

    fn plaintext_modulus(&self) -> &BigUint;

    /// Short identifier of the key, carried by every ciphertext.
    fn fingerprint(&self) -> u64;

    /// Serialized ciphertext length in bytes.
    fn ciphertext_len(&self) -> usize;

    /// Fresh randomized encryption of `x < m`.
    fn encrypt<R: RngCore + CryptoRng + ?Sized>(&self, x: &BigUint, rng: &mut R) -> Result<Self::Ciphertext>;

    /// Deterministic encryption of `x < m` with unit randomness.
    fn trivial(&self, x: &BigUint) -> Result<Self::Ciphertext>;

    fn add(&self, c1: &Self::Ciphertext, c2: &Self::Ciphertext) -> Result<Self::Ciphertext>;

    /// `c ⊕ Enc(k)` for a public `k`, reduced mod `m`.
    fn add_plain(&self, c: &Self::Ciphertext, k: &BigUint) -> Result<Self::Ciphertext>;

    /// `k ⊗ c`, with `k` reduced mod `m`.
    fn plain_mul(&self, c: &Self::Ciphertext, k: &BigUint) -> Result<Self::Ciphertext>;

    /// `constant ⊕ (k_1 ⊗ c_1) ⊕ ... ⊕ (k_t ⊗ c_t)`.
    fn linear_combination(
        &self,
        constant: &BigUint,
        terms: &[(BigUint, &Self::Ciphertext)],
    ) -> Result<Self::Ciphertext> {
        let mut acc = self.trivial(&(constant % self.plaintext_modulus()))?;
        for (k, c) in terms {
            acc = self.add(&acc, &self.plain_mul(c, k)?)?;
        }
        Ok(acc)
    }

    fn encode_ciphertext(&self, c: &Self::Ciphertext) -> Vec<u8>;

    fn decode_ciphertext(&self, bytes: &[u8]) -> Result<Self::Ciphertext>;
}

/// Schemes whose key holder can decrypt.
pub trait AdditiveDecrypt: AdditiveHe {
    fn decrypt(&self, c: &Self::Ciphertext) -> Result<BigUint>;
}
