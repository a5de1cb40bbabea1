use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};

use super::prime::random_prime;
use super::{AdditiveDecrypt, AdditiveHe};
use crate::codec::{put_biguint, put_bytes, put_u32, Reader};
use crate::error::{Error, Result};

pub const DEFAULT_KEY_BITS: u64 = 3072;

const KEYGEN_ATTEMPTS: usize = 16;

/// Public half of a Paillier key with generator `g = N + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaillierPublicKey {
    modulus: BigUint,
    modulus_sq: BigUint,
    bits: u64,
    fingerprint: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaillierCiphertext {
    value: BigUint,
    key_fingerprint: u64,
}

impl PaillierCiphertext {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn key_fingerprint(&self) -> u64 {
        self.key_fingerprint
    }
}

impl PaillierPublicKey {
    pub fn from_modulus(modulus: BigUint) -> Result<Self> {
        if modulus.bits() < 8 || modulus.is_even() {
            return Err(Error::param("Paillier modulus must be odd and at least 8 bits"));
        }
        let mut h = Sha256::new();
        h.update(b"hecomp/paillier/v1");
        h.update(modulus.to_bytes_le());
        let fingerprint = u64::from_le_bytes(h.finalize()[..8].try_into().unwrap());
        Ok(PaillierPublicKey {
            modulus_sq: &modulus * &modulus,
            bits: modulus.bits(),
            modulus,
            fingerprint,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn modulus_sq(&self) -> &BigUint {
        &self.modulus_sq
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn modulus_bytes(&self) -> usize {
        self.bits.div_ceil(8) as usize
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        put_biguint(&mut out, &self.modulus, self.modulus_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        PaillierPublicKey::from_modulus(BigUint::from_bytes_le(bytes))
            .map_err(|e| Error::format(e.to_string()))
    }

    fn check_plaintext(&self, x: &BigUint) -> Result<()> {
        if x >= &self.modulus {
            return Err(Error::range(x, &self.modulus));
        }
        Ok(())
    }

    fn check_owner(&self, c: &PaillierCiphertext) -> Result<()> {
        if c.key_fingerprint != self.fingerprint {
            return Err(Error::KeyMismatch(format!(
                "ciphertext belongs to key {:016x}, not {:016x}",
                c.key_fingerprint, self.fingerprint
            )));
        }
        Ok(())
    }

    /// `(1 + N)^x = 1 + N x mod N^2`.
    fn encode(&self, x: &BigUint) -> BigUint {
        (BigUint::one() + &self.modulus * x) % &self.modulus_sq
    }

    fn wrap(&self, value: BigUint) -> PaillierCiphertext {
        PaillierCiphertext {
            value,
            key_fingerprint: self.fingerprint,
        }
    }

    /// Encryption with an explicit nonce `r`, coprime to `N`.
    pub fn encrypt_with_nonce(&self, x: &BigUint, r: &BigUint) -> Result<PaillierCiphertext> {
        self.check_plaintext(x)?;
        if r.is_zero() || r >= &self.modulus || !r.gcd(&self.modulus).is_one() {
            return Err(Error::param("nonce must be a unit modulo N"));
        }
        let rn = r.modpow(&self.modulus, &self.modulus_sq);
        Ok(self.wrap(self.encode(x) * rn % &self.modulus_sq))
    }

    fn random_unit<R: RngCore + ?Sized>(&self, rng: &mut R) -> BigUint {
        loop {
            let r = rng.gen_biguint_range(&BigUint::one(), &self.modulus);
            if r.gcd(&self.modulus).is_one() {
                return r;
            }
        }
    }

    /// `prod c_i^{k_i} mod N^2` by bucketed multi-exponentiation.
    fn multi_exp(&self, terms: &[(BigUint, &BigUint)]) -> BigUint {
        let n2 = &self.modulus_sq;
        let max_bits = terms.iter().map(|(k, _)| k.bits()).max().unwrap_or(0);
        if terms.is_empty() || max_bits == 0 {
            return BigUint::one();
        }
        let log_n = usize::BITS - 1 - terms.len().leading_zeros();
        let window = (log_n as u64).saturating_sub(3).clamp(1, 16);
        let windows = max_bits.div_ceil(window);
        let mut acc: Option<BigUint> = None;
        for w in (0..windows).rev() {
            if let Some(a) = acc.as_mut() {
                for _ in 0..window {
                    *a = &*a * &*a % n2;
                }
            }
            let mut buckets: Vec<Option<BigUint>> = vec![None; (1 << window) - 1];
            for (k, base) in terms {
                let digit = (0..window).fold(0usize, |d, b| {
                    d | (usize::from(k.bit(w * window + b)) << b)
                });
                if digit != 0 {
                    let slot = &mut buckets[digit - 1];
                    *slot = Some(match slot.take() {
                        None => (*base).clone(),
                        Some(v) => v * *base % n2,
                    });
                }
            }
            let mut running: Option<BigUint> = None;
            let mut total: Option<BigUint> = None;
            for bucket in buckets.into_iter().rev() {
                if let Some(b) = bucket {
                    running = Some(match running {
                        None => b,
                        Some(r) => r * b % n2,
                    });
                }
                if let Some(r) = &running {
                    total = Some(match total {
                        None => r.clone(),
                        Some(t) => t * r % n2,
                    });
                }
            }
            if let Some(t) = total {
                acc = Some(match acc {
                    None => t,
                    Some(a) => a * t % n2,
                });
            }
        }
        acc.unwrap_or_else(BigUint::one)
    }
}

impl AdditiveHe for PaillierPublicKey {
    type Ciphertext = PaillierCiphertext;

    fn plaintext_modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `2 ceil(bits / 8)`: 768 bytes for a 3072-bit key.
    fn ciphertext_len(&self) -> usize {
        2 * self.modulus_bytes()
    }

    fn encrypt<R: RngCore + CryptoRng + ?Sized>(&self, x: &BigUint, rng: &mut R) -> Result<PaillierCiphertext> {
        let r = self.random_unit(rng);
        self.encrypt_with_nonce(x, &r)
    }

    fn trivial(&self, x: &BigUint) -> Result<PaillierCiphertext> {
        self.check_plaintext(x)?;
        Ok(self.wrap(self.encode(x)))
    }

    fn add(&self, c1: &PaillierCiphertext, c2: &PaillierCiphertext) -> Result<PaillierCiphertext> {
        self.check_owner(c1)?;
        self.check_owner(c2)?;
        Ok(self.wrap(&c1.value * &c2.value % &self.modulus_sq))
    }

    fn add_plain(&self, c: &PaillierCiphertext, k: &BigUint) -> Result<PaillierCiphertext> {
        self.check_owner(c)?;
        let k = k % &self.modulus;
        Ok(self.wrap(&c.value * self.encode(&k) % &self.modulus_sq))
    }

    fn plain_mul(&self, c: &PaillierCiphertext, k: &BigUint) -> Result<PaillierCiphertext> {
        self.check_owner(c)?;
        let k = k % &self.modulus;
        Ok(self.wrap(c.value.modpow(&k, &self.modulus_sq)))
    }

    fn linear_combination(
        &self,
        constant: &BigUint,
        terms: &[(BigUint, &PaillierCiphertext)],
    ) -> Result<PaillierCiphertext> {
        let mut reduced = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            self.check_owner(c)?;
            reduced.push((k % &self.modulus, &c.value));
        }
        let product = self.multi_exp(&reduced);
        let constant = constant % &self.modulus;
        Ok(self.wrap(product * self.encode(&constant) % &self.modulus_sq))
    }

    fn encode_ciphertext(&self, c: &PaillierCiphertext) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.ciphertext_len());
        put_biguint(&mut out, &c.value, self.ciphertext_len());
        out
    }

    fn decode_ciphertext(&self, bytes: &[u8]) -> Result<PaillierCiphertext> {
        if bytes.len() != self.ciphertext_len() {
            return Err(Error::format(format!(
                "Paillier ciphertext must be {} bytes, got {}",
                self.ciphertext_len(),
                bytes.len()
            )));
        }
        let value = BigUint::from_bytes_le(bytes);
        if value >= self.modulus_sq {
            return Err(Error::format("ciphertext is not below N^2"));
        }
        if !value.gcd(&self.modulus).is_one() {
            return Err(Error::format("ciphertext is not a unit modulo N"));
        }
        Ok(self.wrap(value))
    }
}

/// Paillier key pair. Holding the factorization lets encryption compute the
/// `N`-th power residue modulo `p^2` and `q^2` separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaillierKeypair {
    public: PaillierPublicKey,
    p: BigUint,
    q: BigUint,
    lambda: BigUint,
    mu_inv: BigUint,
    p_sq: BigUint,
    q_sq: BigUint,
    /// `(p^2)^{-1} mod q^2`.
    p_sq_inv: BigUint,
}

impl PaillierKeypair {
    /// Fresh key whose modulus has exactly `bits` bits.
    pub fn generate<R: RngCore + CryptoRng + ?Sized>(bits: u64, rng: &mut R) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Generation(format!("key size {bits} is below 64 bits")));
        }
        for _ in 0..KEYGEN_ATTEMPTS {
            let p = random_prime(bits.div_ceil(2), rng)?;
            let q = random_prime(bits / 2, rng)?;
            if p == q {
                continue;
            }
            match PaillierKeypair::from_primes(p, q) {
                Ok(kp) if kp.public.bits == bits => return Ok(kp),
                _ => continue,
            }
        }
        Err(Error::Generation(format!(
            "no suitable {bits}-bit modulus after {KEYGEN_ATTEMPTS} attempts"
        )))
    }

    /// Key from two distinct primes, which the caller vouches for.
    pub fn from_primes(p: BigUint, q: BigUint) -> Result<Self> {
        if p == q || p < BigUint::from(3u32) || q < BigUint::from(3u32) {
            return Err(Error::Generation("primes must be distinct and odd".into()));
        }
        let modulus = &p * &q;
        let p1 = &p - 1u32;
        let q1 = &q - 1u32;
        if !modulus.gcd(&(&p1 * &q1)).is_one() {
            return Err(Error::Generation("gcd(N, phi(N)) != 1".into()));
        }
        let lambda = p1.lcm(&q1);
        let mu_inv = lambda
            .modinv(&modulus)
            .ok_or_else(|| Error::Generation("lambda is not invertible mod N".into()))?;
        let public = PaillierPublicKey::from_modulus(modulus)?;
        let p_sq = &p * &p;
        let q_sq = &q * &q;
        let p_sq_inv = p_sq
            .modinv(&q_sq)
            .ok_or_else(|| Error::Generation("p^2 not invertible mod q^2".into()))?;
        Ok(PaillierKeypair {
            public,
            p,
            q,
            lambda,
            mu_inv,
            p_sq,
            q_sq,
            p_sq_inv,
        })
    }

    pub fn public(&self) -> &PaillierPublicKey {
        &self.public
    }

    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    pub fn mu_inv(&self) -> &BigUint {
        &self.mu_inv
    }

    pub fn primes(&self) -> (&BigUint, &BigUint) {
        (&self.p, &self.q)
    }

    /// A uniformly random `N`-th residue mod `N^2`, via `r_p^p mod p^2` and
    /// `r_q^q mod q^2`. Uniform because `x -> x^q` permutes `Z*_{p^2}` when
    /// `gcd(q, p - 1) = 1`.
    fn random_nth_residue<R: RngCore + ?Sized>(&self, rng: &mut R) -> BigUint {
        let one = BigUint::one();
        let rp = rng.gen_biguint_range(&one, &self.p);
        let rq = rng.gen_biguint_range(&one, &self.q);
        let hp = rp.modpow(&self.p, &self.p_sq);
        let hq = rq.modpow(&self.q, &self.q_sq);
        // Garner: h = hp + p^2 * ((hq - hp) * (p^2)^{-1} mod q^2)
        let diff = (&hq + &self.q_sq - (&hp % &self.q_sq)) % &self.q_sq;
        let t = diff * &self.p_sq_inv % &self.q_sq;
        hp + &self.p_sq * t
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        put_u32(&mut out, self.public.bits as u32);
        put_bytes(&mut out, &self.p.to_bytes_le());
        put_bytes(&mut out, &self.q.to_bytes_le());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let bits = r.u32()? as u64;
        let p = BigUint::from_bytes_le(r.bytes()?);
        let q = BigUint::from_bytes_le(r.bytes()?);
        r.finish()?;
        let kp = PaillierKeypair::from_primes(p, q).map_err(|e| Error::format(e.to_string()))?;
        if kp.public.bits != bits {
            return Err(Error::format("stored key size does not match its primes"));
        }
        Ok(kp)
    }
}

impl AdditiveHe for PaillierKeypair {
    type Ciphertext = PaillierCiphertext;

    fn plaintext_modulus(&self) -> &BigUint {
        self.public.plaintext_modulus()
    }

    fn fingerprint(&self) -> u64 {
        self.public.fingerprint
    }

    fn ciphertext_len(&self) -> usize {
        self.public.ciphertext_len()
    }

    fn encrypt<R: RngCore + CryptoRng + ?Sized>(&self, x: &BigUint, rng: &mut R) -> Result<PaillierCiphertext> {
        self.public.check_plaintext(x)?;
        let h = self.random_nth_residue(rng);
        let n2 = &self.public.modulus_sq;
        Ok(self.public.wrap(self.public.encode(x) * h % n2))
    }

    fn trivial(&self, x: &BigUint) -> Result<PaillierCiphertext> {
        self.public.trivial(x)
    }

    fn add(&self, c1: &PaillierCiphertext, c2: &PaillierCiphertext) -> Result<PaillierCiphertext> {
        self.public.add(c1, c2)
    }

    fn add_plain(&self, c: &PaillierCiphertext, k: &BigUint) -> Result<PaillierCiphertext> {
        self.public.add_plain(c, k)
    }

    fn plain_mul(&self, c: &PaillierCiphertext, k: &BigUint) -> Result<PaillierCiphertext> {
        self.public.plain_mul(c, k)
    }

    fn linear_combination(
        &self,
        constant: &BigUint,
        terms: &[(BigUint, &PaillierCiphertext)],
    ) -> Result<PaillierCiphertext> {
        self.public.linear_combination(constant, terms)
    }

    fn encode_ciphertext(&self, c: &PaillierCiphertext) -> Vec<u8> {
        self.public.encode_ciphertext(c)
    }

    fn decode_ciphertext(&self, bytes: &[u8]) -> Result<PaillierCiphertext> {
        self.public.decode_ciphertext(bytes)
    }
}

impl AdditiveDecrypt for PaillierKeypair {
    /// `L(c^lambda mod N^2) * mu mod N` with `L(u) = (u - 1) / N`.
    fn decrypt(&self, c: &PaillierCiphertext) -> Result<BigUint> {
        self.public.check_owner(c)?;
        let pk = &self.public;
        if c.value >= pk.modulus_sq {
            return Err(Error::format("ciphertext is not below N^2"));
        }
        let u = c.value.modpow(&self.lambda, &pk.modulus_sq);
        if u.is_zero() {
            return Err(Error::format("ciphertext is not a unit modulo N"));
        }
        let l = (u - 1u32) / &pk.modulus;
        Ok(l * &self.mu_inv % &pk.modulus)
    }
}
