//! A plain LWE cryptosystem with scaled messages: `b = <a, sk> + delta * mu + e`.
//!
//! Fresh ciphertexts can be shipped as `(seed, b)`; the mask is regenerated
//! with [`prg_expand`]. Linear operations produce ciphertexts whose mask is no
//! longer a PRG output, which is what the compression module is for.

use rand::{CryptoRng, RngCore};

use crate::codec::{put_uint, Reader};
use crate::error::{Error, Result};
use crate::math::{
    ceil_log2, prg_expand, round_to_plaintext, sample_error, sample_uniform_vector, Modulus,
    NoiseParams, Seed,
};
use crate::scheme::{delta_for, fresh_noise_budget, LatticeParams, SchemeTag};

#[derive(Clone, Debug, PartialEq)]
pub struct LweParams {
    dimension: usize,
    modulus: Modulus,
    plaintext_modulus: u64,
    delta: u64,
    noise: NoiseParams,
}

impl LweParams {
    /// Parameters with `q = 2^log2_q`.
    pub fn new(dimension: usize, log2_q: u32, p: u64, noise: NoiseParams) -> Result<Self> {
        LweParams::with_modulus(dimension, Modulus::power_of_two(log2_q)?, p, noise)
    }

    pub fn with_modulus(dimension: usize, q: Modulus, p: u64, noise: NoiseParams) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::param("LWE dimension must be at least 1"));
        }
        let delta = delta_for(&q, p)?;
        Ok(LweParams {
            dimension,
            modulus: q,
            plaintext_modulus: p,
            delta,
            noise,
        })
    }

    pub fn noise(&self) -> &NoiseParams {
        &self.noise
    }

    pub fn log2_q(&self) -> u32 {
        self.modulus.bits()
    }

    /// `(n + 1) * ceil(log2 q / 8)` bytes.
    pub fn ciphertext_bytes(&self) -> usize {
        (self.dimension + 1) * self.modulus.residue_bytes()
    }

    /// `16 + ceil(log2 q / 8)` bytes.
    pub fn seeded_ciphertext_bytes(&self) -> usize {
        Seed::BYTES + self.modulus.residue_bytes()
    }

    pub fn fresh_noise_budget(&self) -> i32 {
        fresh_noise_budget(self.delta, self.noise.bound())
    }

    fn check_message(&self, mu: u64) -> Result<()> {
        if mu >= self.plaintext_modulus {
            return Err(Error::range(mu, self.plaintext_modulus));
        }
        Ok(())
    }
}

impl LatticeParams for LweParams {
    fn scheme(&self) -> SchemeTag {
        SchemeTag::Lwe
    }
    fn dimension(&self) -> usize {
        self.dimension
    }
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }
    fn plaintext_modulus(&self) -> u64 {
        self.plaintext_modulus
    }
    fn delta(&self) -> u64 {
        self.delta
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweSecretKey {
    coeffs: Vec<u64>,
}

impl LweSecretKey {
    pub fn from_coeffs(coeffs: Vec<u64>, params: &LweParams) -> Result<Self> {
        check_vector(&coeffs, params, "secret key")?;
        Ok(LweSecretKey { coeffs })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweCiphertext {
    a: Vec<u64>,
    b: u64,
    /// Bookkeeping only; never serialized.
    noise_budget_bits: i32,
}

impl LweCiphertext {
    /// Builds a ciphertext from raw components, assuming fresh-level noise.
    pub fn from_parts(a: Vec<u64>, b: u64, params: &LweParams) -> Result<Self> {
        check_vector(&a, params, "mask")?;
        if !params.modulus.contains(b) {
            return Err(Error::param(format!("b = {b} is not reduced")));
        }
        Ok(LweCiphertext {
            a,
            b,
            noise_budget_bits: params.fresh_noise_budget(),
        })
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn noise_budget_bits(&self) -> i32 {
        self.noise_budget_bits
    }

    /// Mask then body, each residue as `ceil(log2 q / 8)` little-endian bytes.
    pub fn to_bytes(&self, params: &LweParams) -> Vec<u8> {
        let w = params.modulus.residue_bytes();
        let mut out = Vec::with_capacity(params.ciphertext_bytes());
        for &x in self.a.iter().chain(std::iter::once(&self.b)) {
            put_uint(&mut out, x, w);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &LweParams) -> Result<Self> {
        if bytes.len() != params.ciphertext_bytes() {
            return Err(Error::format(format!(
                "LWE ciphertext must be {} bytes, got {}",
                params.ciphertext_bytes(),
                bytes.len()
            )));
        }
        let w = params.modulus.residue_bytes();
        let mut r = Reader::new(bytes);
        let mut a = Vec::with_capacity(params.dimension);
        for _ in 0..params.dimension {
            a.push(r.uint(w)?);
        }
        let b = r.uint(w)?;
        LweCiphertext::from_parts(a, b, params).map_err(|e| Error::format(e.to_string()))
    }
}

/// A fresh ciphertext whose mask is `prg_expand(seed, n, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededLweCiphertext {
    seed: Seed,
    b: u64,
}

impl SeededLweCiphertext {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn to_bytes(&self, params: &LweParams) -> Vec<u8> {
        let mut out = Vec::with_capacity(params.seeded_ciphertext_bytes());
        out.extend_from_slice(self.seed.as_bytes());
        put_uint(&mut out, self.b, params.modulus.residue_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &LweParams) -> Result<Self> {
        if bytes.len() != params.seeded_ciphertext_bytes() {
            return Err(Error::format(format!(
                "seeded LWE ciphertext must be {} bytes, got {}",
                params.seeded_ciphertext_bytes(),
                bytes.len()
            )));
        }
        let mut r = Reader::new(bytes);
        let seed = Seed(r.take(Seed::BYTES)?.try_into().unwrap());
        let b = r.uint(params.modulus.residue_bytes())?;
        if !params.modulus.contains(b) {
            return Err(Error::format("b is not reduced"));
        }
        Ok(SeededLweCiphertext { seed, b })
    }
}

fn check_vector(v: &[u64], params: &LweParams, what: &str) -> Result<()> {
    if v.len() != params.dimension {
        return Err(Error::param(format!(
            "{what} has length {}, expected {}",
            v.len(),
            params.dimension
        )));
    }
    if v.iter().any(|&x| !params.modulus.contains(x)) {
        return Err(Error::param(format!("{what} has an unreduced entry")));
    }
    Ok(())
}

fn inner_product(a: &[u64], s: &[u64], q: &Modulus) -> u64 {
    a.iter().zip(s).fold(0, |acc, (&x, &y)| q.add(acc, q.mul(x, y)))
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(params: &LweParams, rng: &mut R) -> LweSecretKey {
    LweSecretKey {
        coeffs: sample_uniform_vector(params.dimension, &params.modulus, rng),
    }
}

/// Encryption with caller-supplied mask and error; the randomized entry
/// points sample these and delegate here.
pub fn encrypt_with(
    sk: &LweSecretKey,
    mu: u64,
    a: Vec<u64>,
    e: i64,
    params: &LweParams,
) -> Result<LweCiphertext> {
    params.check_message(mu)?;
    check_vector(&a, params, "mask")?;
    let q = &params.modulus;
    let scaled = q.mul(q.reduce(params.delta as u128), mu);
    let b = q.add(
        q.add(inner_product(&a, &sk.coeffs, q), scaled),
        q.reduce_i128(e as i128),
    );
    Ok(LweCiphertext {
        a,
        b,
        noise_budget_bits: params.fresh_noise_budget(),
    })
}

pub fn encrypt<R: RngCore + CryptoRng + ?Sized>(
    sk: &LweSecretKey,
    mu: u64,
    params: &LweParams,
    rng: &mut R,
) -> Result<LweCiphertext> {
    params.check_message(mu)?;
    let a = sample_uniform_vector(params.dimension, &params.modulus, rng);
    let e = sample_error(&params.noise, rng);
    encrypt_with(sk, mu, a, e, params)
}

/// `mu* = b - <a, sk> mod q`, the linear phase of decryption.
pub fn phase(sk: &LweSecretKey, ct: &LweCiphertext, params: &LweParams) -> u64 {
    let q = &params.modulus;
    q.sub(ct.b, inner_product(&ct.a, &sk.coeffs, q))
}

pub fn decrypt(sk: &LweSecretKey, ct: &LweCiphertext, params: &LweParams) -> u64 {
    round_to_plaintext(
        phase(sk, ct, params),
        params.delta,
        params.plaintext_modulus,
    )
}

pub fn encrypt_seeded<R: RngCore + CryptoRng + ?Sized>(
    sk: &LweSecretKey,
    mu: u64,
    params: &LweParams,
    seed: Seed,
    rng: &mut R,
) -> Result<SeededLweCiphertext> {
    params.check_message(mu)?;
    let a = prg_expand(&seed, params.dimension, &params.modulus);
    let e = sample_error(&params.noise, rng);
    let ct = encrypt_with(sk, mu, a, e, params)?;
    Ok(SeededLweCiphertext { seed, b: ct.b })
}

pub fn expand_seeded(sct: &SeededLweCiphertext, params: &LweParams) -> LweCiphertext {
    LweCiphertext {
        a: prg_expand(&sct.seed, params.dimension, &params.modulus),
        b: sct.b,
        noise_budget_bits: params.fresh_noise_budget(),
    }
}

pub fn add(ct1: &LweCiphertext, ct2: &LweCiphertext, params: &LweParams) -> Result<LweCiphertext> {
    if ct1.a.len() != params.dimension || ct2.a.len() != params.dimension {
        return Err(Error::param("ciphertext dimension does not match parameters"));
    }
    let q = &params.modulus;
    Ok(LweCiphertext {
        a: ct1.a.iter().zip(&ct2.a).map(|(&x, &y)| q.add(x, y)).collect(),
        b: q.add(ct1.b, ct2.b),
        noise_budget_bits: ct1.noise_budget_bits.min(ct2.noise_budget_bits) - 1,
    })
}

/// Multiplies by a plaintext scalar `k < p`.
pub fn plain_mul(ct: &LweCiphertext, k: u64, params: &LweParams) -> Result<LweCiphertext> {
    params.check_message(k)?;
    if ct.a.len() != params.dimension {
        return Err(Error::param("ciphertext dimension does not match parameters"));
    }
    let q = &params.modulus;
    Ok(LweCiphertext {
        a: ct.a.iter().map(|&x| q.mul(x, k)).collect(),
        b: q.mul(ct.b, k),
        noise_budget_bits: ct.noise_budget_bits - ceil_log2(k) as i32,
    })
}
