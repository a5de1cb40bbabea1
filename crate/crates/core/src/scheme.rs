use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::math::Modulus;

/// Which lattice scheme a key or compressed ciphertext belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum SchemeTag {
    Lwe = 1,
    Rlwe = 2,
}

impl SchemeTag {
    pub fn from_byte(b: u8) -> Result<Self> {
        match b {
            1 => Ok(SchemeTag::Lwe),
            2 => Ok(SchemeTag::Rlwe),
            other => Err(Error::format(format!("unknown scheme tag {other}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchemeTag::Lwe => "lwe",
            SchemeTag::Rlwe => "rlwe",
        }
    }
}

/// What the compressor needs to know about a lattice parameter set.
pub trait LatticeParams {
    fn scheme(&self) -> SchemeTag;
    /// `n` for LWE, `N` for RLWE: the number of secret-key coefficients.
    fn dimension(&self) -> usize;
    fn modulus(&self) -> &Modulus;
    fn plaintext_modulus(&self) -> u64;
    fn delta(&self) -> u64;

    /// First 8 bytes of a SHA-256 over everything that affects decryption.
    fn fingerprint(&self) -> u64 {
        let mut h = Sha256::new();
        h.update(b"hecomp/params/v1");
        h.update([self.scheme() as u8]);
        h.update((self.dimension() as u64).to_le_bytes());
        h.update(self.modulus().value().to_le_bytes());
        h.update(self.plaintext_modulus().to_le_bytes());
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }
}

pub(crate) fn delta_for(q: &Modulus, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::param(format!("plaintext modulus must be >= 2, got {p}")));
    }
    if p as u128 > q.value() {
        return Err(Error::param(format!(
            "plaintext modulus {p} exceeds ciphertext modulus {}",
            q.value()
        )));
    }
    Ok((q.value() / p as u128) as u64)
}

/// Informational noise headroom of a fresh ciphertext: `floor(log2(delta/2))`
/// minus the bit length of the noise bound.
pub(crate) fn fresh_noise_budget(delta: u64, noise_bound: u64) -> i32 {
    let half = delta / 2;
    let headroom = if half == 0 { -1 } else { 63 - half.leading_zeros() as i32 };
    headroom - (64 - noise_bound.leading_zeros()) as i32
}
