//! RLWE over `R_q = Z_q[X]/(X^N + 1)`: `B = A * S + delta * mu + E`.

use rand::{CryptoRng, RngCore};

use crate::codec::{put_uint, Reader};
use crate::error::{Error, Result};
use crate::math::{
    ceil_log2, poly_add, poly_negacyclic_mul, poly_sub, prg_expand, round_to_plaintext,
    sample_error, sample_uniform_vector, Modulus, NoiseParams, Polynomial, Seed,
};
use crate::scheme::{delta_for, fresh_noise_budget, LatticeParams, SchemeTag};

#[derive(Clone, Debug, PartialEq)]
pub struct RlweParams {
    degree: usize,
    modulus: Modulus,
    plaintext_modulus: u64,
    delta: u64,
    noise: NoiseParams,
}

impl RlweParams {
    pub fn new(degree: usize, log2_q: u32, p: u64, noise: NoiseParams) -> Result<Self> {
        RlweParams::with_modulus(degree, Modulus::power_of_two(log2_q)?, p, noise)
    }

    pub fn with_modulus(degree: usize, q: Modulus, p: u64, noise: NoiseParams) -> Result<Self> {
        if !degree.is_power_of_two() {
            return Err(Error::param(format!("ring degree {degree} is not a power of two")));
        }
        let delta = delta_for(&q, p)?;
        Ok(RlweParams {
            degree,
            modulus: q,
            plaintext_modulus: p,
            delta,
            noise,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn noise(&self) -> &NoiseParams {
        &self.noise
    }

    pub fn log2_q(&self) -> u32 {
        self.modulus.bits()
    }

    /// `2 N ceil(log2 q / 8)` bytes.
    pub fn ciphertext_bytes(&self) -> usize {
        2 * self.degree * self.modulus.residue_bytes()
    }

    /// `16 + N ceil(log2 q / 8)` bytes.
    pub fn seeded_ciphertext_bytes(&self) -> usize {
        Seed::BYTES + self.degree * self.modulus.residue_bytes()
    }

    pub fn fresh_noise_budget(&self) -> i32 {
        fresh_noise_budget(self.delta, self.noise.bound())
    }

    fn check_poly(&self, p: &Polynomial, what: &str) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::param(format!(
                "{what} has {} coefficients, expected {}",
                p.degree(),
                self.degree
            )));
        }
        if p.coeffs().iter().any(|&c| !self.modulus.contains(c)) {
            return Err(Error::param(format!("{what} has an unreduced coefficient")));
        }
        Ok(())
    }

    fn check_message(&self, mu: &Polynomial) -> Result<()> {
        if mu.degree() != self.degree {
            return Err(Error::param(format!(
                "message has {} coefficients, expected {}",
                mu.degree(),
                self.degree
            )));
        }
        if let Some(&bad) = mu.coeffs().iter().find(|&&c| c >= self.plaintext_modulus) {
            return Err(Error::range(bad, self.plaintext_modulus));
        }
        Ok(())
    }

    /// Lifts plaintext coefficients into a ring element, checking `mu[i] < p`.
    pub fn message(&self, coeffs: &[u64]) -> Result<Polynomial> {
        if coeffs.len() > self.degree {
            return Err(Error::param(format!(
                "{} message coefficients exceed ring degree {}",
                coeffs.len(),
                self.degree
            )));
        }
        let mut padded = coeffs.to_vec();
        padded.resize(self.degree, 0);
        let mu = Polynomial::from_reduced(padded);
        self.check_message(&mu)?;
        Ok(mu)
    }
}

impl LatticeParams for RlweParams {
    fn scheme(&self) -> SchemeTag {
        SchemeTag::Rlwe
    }
    fn dimension(&self) -> usize {
        self.degree
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
pub struct RlweSecretKey {
    s: Polynomial,
}

impl RlweSecretKey {
    pub fn from_poly(s: Polynomial, params: &RlweParams) -> Result<Self> {
        params.check_poly(&s, "secret key")?;
        Ok(RlweSecretKey { s })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.s
    }

    pub fn coeffs(&self) -> &[u64] {
        self.s.coeffs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlweCiphertext {
    a: Polynomial,
    b: Polynomial,
    noise_budget_bits: i32,
}

impl RlweCiphertext {
    pub fn from_parts(a: Polynomial, b: Polynomial, params: &RlweParams) -> Result<Self> {
        params.check_poly(&a, "A")?;
        params.check_poly(&b, "B")?;
        Ok(RlweCiphertext {
            a,
            b,
            noise_budget_bits: params.fresh_noise_budget(),
        })
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn noise_budget_bits(&self) -> i32 {
        self.noise_budget_bits
    }

    pub fn to_bytes(&self, params: &RlweParams) -> Vec<u8> {
        let w = params.modulus.residue_bytes();
        let mut out = Vec::with_capacity(params.ciphertext_bytes());
        for &c in self.a.coeffs().iter().chain(self.b.coeffs()) {
            put_uint(&mut out, c, w);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &RlweParams) -> Result<Self> {
        if bytes.len() != params.ciphertext_bytes() {
            return Err(Error::format(format!(
                "RLWE ciphertext must be {} bytes, got {}",
                params.ciphertext_bytes(),
                bytes.len()
            )));
        }
        let mut r = Reader::new(bytes);
        let a = read_poly(&mut r, params)?;
        let b = read_poly(&mut r, params)?;
        RlweCiphertext::from_parts(a, b, params).map_err(|e| Error::format(e.to_string()))
    }
}

fn read_poly(r: &mut Reader<'_>, params: &RlweParams) -> Result<Polynomial> {
    let w = params.modulus.residue_bytes();
    let coeffs = (0..params.degree)
        .map(|_| r.uint(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_reduced(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededRlweCiphertext {
    seed: Seed,
    b: Polynomial,
}

impl SeededRlweCiphertext {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn to_bytes(&self, params: &RlweParams) -> Vec<u8> {
        let w = params.modulus.residue_bytes();
        let mut out = Vec::with_capacity(params.seeded_ciphertext_bytes());
        out.extend_from_slice(self.seed.as_bytes());
        for &c in self.b.coeffs() {
            put_uint(&mut out, c, w);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &RlweParams) -> Result<Self> {
        if bytes.len() != params.seeded_ciphertext_bytes() {
            return Err(Error::format(format!(
                "seeded RLWE ciphertext must be {} bytes, got {}",
                params.seeded_ciphertext_bytes(),
                bytes.len()
            )));
        }
        let mut r = Reader::new(bytes);
        let seed = Seed(r.take(Seed::BYTES)?.try_into().unwrap());
        let b = read_poly(&mut r, params)?;
        params
            .check_poly(&b, "B")
            .map_err(|e| Error::format(e.to_string()))?;
        Ok(SeededRlweCiphertext { seed, b })
    }
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(params: &RlweParams, rng: &mut R) -> RlweSecretKey {
    RlweSecretKey {
        s: Polynomial::from_reduced(sample_uniform_vector(params.degree, &params.modulus, rng)),
    }
}

/// Encryption with caller-supplied `A` and signed error coefficients.
pub fn encrypt_with(
    sk: &RlweSecretKey,
    mu: &Polynomial,
    a: Polynomial,
    e: &[i64],
    params: &RlweParams,
) -> Result<RlweCiphertext> {
    params.check_message(mu)?;
    params.check_poly(&a, "A")?;
    if e.len() != params.degree {
        return Err(Error::param("error polynomial has the wrong length"));
    }
    let q = &params.modulus;
    let delta = q.reduce(params.delta as u128);
    let as_prod = poly_negacyclic_mul(&a, &sk.s, q)?;
    let coeffs = as_prod
        .coeffs()
        .iter()
        .zip(mu.coeffs())
        .zip(e)
        .map(|((&x, &m), &err)| q.add(q.add(x, q.mul(delta, m)), q.reduce_i128(err as i128)))
        .collect();
    Ok(RlweCiphertext {
        a,
        b: Polynomial::from_reduced(coeffs),
        noise_budget_bits: params.fresh_noise_budget(),
    })
}

fn sample_error_poly<R: RngCore + CryptoRng + ?Sized>(params: &RlweParams, rng: &mut R) -> Vec<i64> {
    (0..params.degree)
        .map(|_| sample_error(&params.noise, rng))
        .collect()
}

pub fn encrypt<R: RngCore + CryptoRng + ?Sized>(
    sk: &RlweSecretKey,
    mu: &Polynomial,
    params: &RlweParams,
    rng: &mut R,
) -> Result<RlweCiphertext> {
    params.check_message(mu)?;
    let a = Polynomial::from_reduced(sample_uniform_vector(params.degree, &params.modulus, rng));
    let e = sample_error_poly(params, rng);
    encrypt_with(sk, mu, a, &e, params)
}

/// `mu*(X) = B - A * S mod R_q`.
pub fn phase(sk: &RlweSecretKey, ct: &RlweCiphertext, params: &RlweParams) -> Result<Polynomial> {
    let q = &params.modulus;
    poly_sub(&ct.b, &poly_negacyclic_mul(&ct.a, &sk.s, q)?, q)
}

pub fn decrypt(sk: &RlweSecretKey, ct: &RlweCiphertext, params: &RlweParams) -> Result<Vec<u64>> {
    Ok(phase(sk, ct, params)?
        .coeffs()
        .iter()
        .map(|&c| round_to_plaintext(c, params.delta, params.plaintext_modulus))
        .collect())
}

pub fn encrypt_seeded<R: RngCore + CryptoRng + ?Sized>(
    sk: &RlweSecretKey,
    mu: &Polynomial,
    params: &RlweParams,
    seed: Seed,
    rng: &mut R,
) -> Result<SeededRlweCiphertext> {
    params.check_message(mu)?;
    let a = Polynomial::from_reduced(prg_expand(&seed, params.degree, &params.modulus));
    let e = sample_error_poly(params, rng);
    let ct = encrypt_with(sk, mu, a, &e, params)?;
    Ok(SeededRlweCiphertext { seed, b: ct.b })
}

pub fn expand_seeded(sct: &SeededRlweCiphertext, params: &RlweParams) -> RlweCiphertext {
    RlweCiphertext {
        a: Polynomial::from_reduced(prg_expand(&sct.seed, params.degree, &params.modulus)),
        b: sct.b.clone(),
        noise_budget_bits: params.fresh_noise_budget(),
    }
}

/// Coefficient `k` of the decryption, computed directly from one row of the
/// negacyclic product:
///
/// `mu*[k] = B[k] - sum_{i<=k} A[k-i] S[i] + sum_{i>k} A[N+k-i] S[i]  (mod q)`.
pub fn extract_coeff_plain(
    sk: &RlweSecretKey,
    ct: &RlweCiphertext,
    k: usize,
    params: &RlweParams,
) -> Result<u64> {
    let n = params.degree;
    if k >= n {
        return Err(Error::Index { index: k, bound: n });
    }
    let q = &params.modulus;
    let (a, s) = (ct.a.coeffs(), sk.s.coeffs());
    let mut acc = ct.b.coeffs()[k];
    for i in 0..=k {
        acc = q.sub(acc, q.mul(a[k - i], s[i]));
    }
    for i in k + 1..n {
        acc = q.add(acc, q.mul(a[n + k - i], s[i]));
    }
    Ok(round_to_plaintext(acc, params.delta, params.plaintext_modulus))
}

pub fn add(ct1: &RlweCiphertext, ct2: &RlweCiphertext, params: &RlweParams) -> Result<RlweCiphertext> {
    let q = &params.modulus;
    if ct1.a.degree() != params.degree || ct2.a.degree() != params.degree {
        return Err(Error::param("ciphertext degree does not match parameters"));
    }
    Ok(RlweCiphertext {
        a: poly_add(&ct1.a, &ct2.a, q)?,
        b: poly_add(&ct1.b, &ct2.b, q)?,
        noise_budget_bits: ct1.noise_budget_bits.min(ct2.noise_budget_bits) - 1,
    })
}

pub fn plain_mul(ct: &RlweCiphertext, k: u64, params: &RlweParams) -> Result<RlweCiphertext> {
    if k >= params.plaintext_modulus {
        return Err(Error::range(k, params.plaintext_modulus));
    }
    if ct.a.degree() != params.degree {
        return Err(Error::param("ciphertext degree does not match parameters"));
    }
    let q = &params.modulus;
    Ok(RlweCiphertext {
        a: ct.a.scalar_mul(k, q),
        b: ct.b.scalar_mul(k, q),
        noise_budget_bits: ct.noise_budget_bits - ceil_log2(k) as i32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn toy() -> RlweParams {
        RlweParams::new(2, 6, 4, NoiseParams::with_sigma(1.0).unwrap()).unwrap()
    }

    fn random_message(params: &RlweParams, rng: &mut impl Rng) -> Polynomial {
        let coeffs: Vec<u64> = (0..params.degree())
            .map(|_| rng.gen_range(0..params.plaintext_modulus()))
            .collect();
        params.message(&coeffs).unwrap()
    }

    fn forced() -> (RlweParams, RlweSecretKey, RlweCiphertext) {
        let params = toy();
        let q = *params.modulus();
        let sk = RlweSecretKey::from_poly(Polynomial::new(vec![3, 5], &q).unwrap(), &params).unwrap();
        let a = Polynomial::new(vec![2, 4], &q).unwrap();
        let mu = params.message(&[1, 0]).unwrap();
        let ct = encrypt_with(&sk, &mu, a, &[1, 0], &params).unwrap();
        (params, sk, ct)
    }

    #[test]
    fn params_validation() {
        assert!(RlweParams::new(3, 6, 4, NoiseParams::default()).is_err());
        assert!(RlweParams::new(4, 6, 1, NoiseParams::default()).is_err());
        let p = RlweParams::new(1024, 27, 16, NoiseParams::default()).unwrap();
        assert_eq!(p.ciphertext_bytes(), 2 * 1024 * 4);
        assert_eq!(p.seeded_ciphertext_bytes(), 16 + 1024 * 4);
    }

    #[test]
    fn forced_instance_by_hand() {
        // A*S = [2*3 - 4*5, 2*5 + 4*3] = [-14, 22] = [50, 22]; B = [50 + 16 + 1, 22] mod 64
        let (params, sk, ct) = forced();
        assert_eq!(ct.b().coeffs(), &[3, 22]);
        assert_eq!(decrypt(&sk, &ct, &params).unwrap(), vec![1, 0]);
        for k in 0..2 {
            assert_eq!(
                extract_coeff_plain(&sk, &ct, k, &params).unwrap(),
                decrypt(&sk, &ct, &params).unwrap()[k]
            );
        }
    }

    #[test]
    fn zero_cases() {
        let params = toy();
        let q = *params.modulus();
        let sk = RlweSecretKey::from_poly(Polynomial::new(vec![3, 5], &q).unwrap(), &params).unwrap();
        let ct = encrypt_with(&sk, &Polynomial::zero(2), Polynomial::zero(2), &[0, 0], &params).unwrap();
        assert_eq!(ct.b(), &Polynomial::zero(2));
        let zero_key = RlweSecretKey::from_poly(Polynomial::zero(2), &params).unwrap();
        let zero_ct = RlweCiphertext::from_parts(Polynomial::zero(2), Polynomial::zero(2), &params).unwrap();
        assert_eq!(decrypt(&zero_key, &zero_ct, &params).unwrap(), vec![0, 0]);
    }

    #[test]
    fn k_zero_specialization() {
        let (params, sk, ct) = forced();
        let q = params.modulus();
        let (a, s, b) = (ct.a().coeffs(), sk.coeffs(), ct.b().coeffs());
        // B[0] - A[0]S[0] + A[N-1]S[1] for N = 2
        let numerator = q.add(q.sub(b[0], q.mul(a[0], s[0])), q.mul(a[1], s[1]));
        assert_eq!(
            extract_coeff_plain(&sk, &ct, 0, &params).unwrap(),
            round_to_plaintext(numerator, params.delta(), 4)
        );
        assert!(matches!(
            extract_coeff_plain(&sk, &ct, 2, &params),
            Err(Error::Index { index: 2, bound: 2 })
        ));
    }

    #[test]
    fn message_range_is_checked() {
        let params = toy();
        assert!(matches!(params.message(&[4]), Err(Error::MessageRange { .. })));
        assert!(params.message(&[1, 2, 3]).is_err());
        let (_, _, ct) = forced();
        assert!(plain_mul(&ct, 4, &params).is_err());
    }

    #[test]
    fn keygen_table2() {
        let params = RlweParams::new(1024, 27, 16, NoiseParams::default()).unwrap();
        let k1 = keygen(&params, &mut ChaCha20Rng::seed_from_u64(1));
        assert_eq!(k1.coeffs().len(), 1024);
        assert!(k1.coeffs().iter().all(|&c| c < 1 << 27));
        assert_ne!(k1, keygen(&params, &mut ChaCha20Rng::seed_from_u64(2)));
    }

    #[test]
    fn roundtrip_exact_without_noise() {
        let params = RlweParams::new(64, 27, 16, NoiseParams::default()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let sk = keygen(&params, &mut rng);
        let mu = random_message(&params, &mut rng);
        let a = Polynomial::from_reduced(sample_uniform_vector(64, params.modulus(), &mut rng));
        let ct = encrypt_with(&sk, &mu, a, &[0; 64], &params).unwrap();
        assert_eq!(decrypt(&sk, &ct, &params).unwrap(), mu.coeffs());
    }

    #[test]
    fn roundtrip_table2_sets() {
        for (n, log2_q, trials) in [(1024, 27, 100), (2048, 54, 20), (4096, 36, 5), (8192, 43, 2)] {
            let params = RlweParams::new(n, log2_q, 16, NoiseParams::default()).unwrap();
            let mut rng = ChaCha20Rng::seed_from_u64(n as u64);
            let sk = keygen(&params, &mut rng);
            for _ in 0..trials {
                let mu = random_message(&params, &mut rng);
                let ct = encrypt(&sk, &mu, &params, &mut rng).unwrap();
                assert_eq!(decrypt(&sk, &ct, &params).unwrap(), mu.coeffs());
            }
        }
    }

    #[test]
    fn seeded_roundtrip_and_size() {
        let params = RlweParams::new(1024, 27, 16, NoiseParams::default()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let sk = keygen(&params, &mut rng);
        let mu = random_message(&params, &mut rng);
        let sct = encrypt_seeded(&sk, &mu, &params, Seed([3; 16]), &mut rng).unwrap();
        let bytes = sct.to_bytes(&params);
        assert_eq!(bytes.len(), 16 + 1024 * 4);
        assert_eq!(SeededRlweCiphertext::from_bytes(&bytes, &params).unwrap(), sct);
        let ct = expand_seeded(&sct, &params);
        assert_eq!(ct, expand_seeded(&sct, &params));
        assert_eq!(decrypt(&sk, &ct, &params).unwrap(), mu.coeffs());
        let full = ct.to_bytes(&params);
        assert_eq!(full.len(), 2 * 1024 * 4);
        assert_eq!(RlweCiphertext::from_bytes(&full, &params).unwrap(), ct);
    }

    #[test]
    fn monomial_placement() {
        let params = RlweParams::new(1024, 27, 16, NoiseParams::default()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let sk = keygen(&params, &mut rng);
        for j in [0, 512, 1023] {
            let mut coeffs = vec![0; 1024];
            coeffs[j] = 1;
            let ct = encrypt(&sk, &params.message(&coeffs).unwrap(), &params, &mut rng).unwrap();
            assert_eq!(extract_coeff_plain(&sk, &ct, j, &params).unwrap(), 1);
        }
    }

    #[test]
    fn extraction_matches_decryption() {
        let params = RlweParams::new(1024, 27, 16, NoiseParams::default()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let sk = keygen(&params, &mut rng);
        // Unstructured ciphertexts too: the identity holds for any (A, B).
        let a = Polynomial::from_reduced(sample_uniform_vector(1024, params.modulus(), &mut rng));
        let b = Polynomial::from_reduced(sample_uniform_vector(1024, params.modulus(), &mut rng));
        let junk = RlweCiphertext::from_parts(a, b, &params).unwrap();
        let fresh = encrypt(&sk, &random_message(&params, &mut rng), &params, &mut rng).unwrap();
        for ct in [junk, fresh] {
            let full = decrypt(&sk, &ct, &params).unwrap();
            for _ in 0..64 {
                let k = rng.gen_range(0..1024);
                assert_eq!(extract_coeff_plain(&sk, &ct, k, &params).unwrap(), full[k]);
            }
        }
    }

    #[test]
    fn linear_operations() {
        let params = RlweParams::new(256, 36, 16, NoiseParams::default()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let sk = keygen(&params, &mut rng);
        let m1 = random_message(&params, &mut rng);
        let m2 = random_message(&params, &mut rng);
        let c1 = encrypt(&sk, &m1, &params, &mut rng).unwrap();
        let c2 = encrypt(&sk, &m2, &params, &mut rng).unwrap();
        let zero = encrypt(&sk, &Polynomial::zero(256), &params, &mut rng).unwrap();
        assert_eq!(decrypt(&sk, &add(&c1, &zero, &params).unwrap(), &params).unwrap(), m1.coeffs());
        assert_eq!(decrypt(&sk, &plain_mul(&c1, 1, &params).unwrap(), &params).unwrap(), m1.coeffs());
        let combo = add(&plain_mul(&c1, 3, &params).unwrap(), &c2, &params).unwrap();
        let expect: Vec<u64> = m1
            .coeffs()
            .iter()
            .zip(m2.coeffs())
            .map(|(&x, &y)| (3 * x + y) % 16)
            .collect();
        assert_eq!(decrypt(&sk, &combo, &params).unwrap(), expect);
        for k in [0, 17, 255] {
            assert_eq!(extract_coeff_plain(&sk, &combo, k, &params).unwrap(), expect[k]);
        }
    }
}
