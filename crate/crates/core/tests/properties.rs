use std::sync::OnceLock;

use hecomp::ahe::{AdditiveDecrypt, AdditiveHe, PaillierCiphertext, PaillierKeypair};
use hecomp::bench::size_report;
use hecomp::compression::{
    batch_capacity, encrypt_lwe_key, encrypt_rlwe_key, lwe_clear_value, lwe_compress,
    lwe_compress_batch, modified_decrypt_batch, modified_lwe_decrypt, modified_rlwe_decrypt,
    rlwe_clear_value, rlwe_compress, slot_width, EncryptedSecretKey,
};
use hecomp::lwe::{self, LweCiphertext, LweParams, LweSecretKey};
use hecomp::math::{
    poly_add, poly_negacyclic_mul, prg_expand, sample_error, Modulus, NoiseParams, Polynomial, Seed,
};
use hecomp::params::Registry;
use hecomp::rlwe::{self, RlweCiphertext, RlweParams, RlweSecretKey};
use hecomp::scheme::LatticeParams;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn moduli() -> impl Strategy<Value = Modulus> {
    prop_oneof![
        Just(97u128),
        Just(65_537),
        Just((1 << 61) - 1),
        Just(1 << 16),
        Just(1 << 64),
    ]
    .prop_map(|q| Modulus::new(q).unwrap())
}

fn random_poly(n: usize, q: &Modulus, rng: &mut ChaCha20Rng) -> Polynomial {
    let coeffs = (0..n).map(|_| rng.gen_range(0..=(q.value() - 1) as u64)).collect();
    Polynomial::new(coeffs, q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negacyclic_mul_is_commutative_and_distributive(log_n in 2u32..=6, q in moduli(), seed: u64) {
        let n = 1 << log_n;
        let mut rng = rng(seed);
        let (a, b, c) = (random_poly(n, &q, &mut rng), random_poly(n, &q, &mut rng), random_poly(n, &q, &mut rng));
        let ab = poly_negacyclic_mul(&a, &b, &q).unwrap();
        prop_assert_eq!(&ab, &poly_negacyclic_mul(&b, &a, &q).unwrap());
        let lhs = poly_negacyclic_mul(&a, &poly_add(&b, &c, &q).unwrap(), &q).unwrap();
        let rhs = poly_add(&ab, &poly_negacyclic_mul(&a, &c, &q).unwrap(), &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplying_by_x_n_times_negates(log_n in 2u32..=6, q in moduli(), seed: u64) {
        let n = 1 << log_n;
        let a = random_poly(n, &q, &mut rng(seed));
        let x = Polynomial::monomial(n, 1, &q);
        let mut acc = a.clone();
        for _ in 0..n {
            acc = poly_negacyclic_mul(&acc, &x, &q).unwrap();
        }
        let negated: Vec<u64> = a.coeffs().iter().map(|&c| q.neg(c)).collect();
        prop_assert_eq!(acc.coeffs(), &negated[..]);
    }

    #[test]
    fn prg_is_deterministic(seed: [u8; 16], count in 0usize..300, q in moduli()) {
        let first = prg_expand(&Seed(seed), count, &q);
        prop_assert_eq!(first.len(), count);
        prop_assert!(first.iter().all(|&v| q.contains(v)));
        prop_assert_eq!(first, prg_expand(&Seed(seed), count, &q));
    }

    #[test]
    fn error_samples_stay_within_bound(sigma in 0.5f64..8.0, seed: u64) {
        let noise = NoiseParams::with_sigma(sigma).unwrap();
        let mut rng = rng(seed);
        for _ in 0..200 {
            prop_assert!(sample_error(&noise, &mut rng).unsigned_abs() <= noise.bound());
        }
    }
}

fn lwe_params(label: &str) -> LweParams {
    Registry::shipped().get(label).unwrap().lwe().unwrap()
}

fn rlwe_params(label: &str) -> RlweParams {
    Registry::shipped().get(label).unwrap().rlwe().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lwe_roundtrip_seeded_and_linear(
        label in prop_oneof![Just("lwe-toy"), Just("lwe-small"), Just("n630"), Just("n750")],
        seed: u64,
    ) {
        let params = lwe_params(label);
        let p = params.plaintext_modulus();
        let mut rng = rng(seed);
        let sk = lwe::keygen(&params, &mut rng);
        let (m1, m2, k) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
        let c1 = lwe::encrypt(&sk, m1, &params, &mut rng).unwrap();
        let c2 = lwe::encrypt(&sk, m2, &params, &mut rng).unwrap();
        prop_assert_eq!(lwe::decrypt(&sk, &c1, &params), m1);
        let sum = lwe::add(&c1, &c2, &params).unwrap();
        prop_assert_eq!(lwe::decrypt(&sk, &sum, &params), (m1 + m2) % p);
        if label != "lwe-toy" {
            let scaled = lwe::plain_mul(&c1, k, &params).unwrap();
            prop_assert_eq!(lwe::decrypt(&sk, &scaled, &params), k * m1 % p);
        }

        let w = (params.log2_q() as usize).div_ceil(8);
        prop_assert_eq!(c1.to_bytes(&params).len(), (params.dimension() + 1) * w);
        let sct = lwe::encrypt_seeded(&sk, m1, &params, Seed::random(&mut rng), &mut rng).unwrap();
        prop_assert_eq!(sct.to_bytes(&params).len(), 16 + w);
        prop_assert_eq!(lwe::decrypt(&sk, &lwe::expand_seeded(&sct, &params), &params), m1);
        let back = LweCiphertext::from_bytes(&c1.to_bytes(&params), &params).unwrap();
        prop_assert_eq!(back, c1);
    }

    #[test]
    fn rlwe_extraction_matches_decryption(
        label in prop_oneof![Just("rlwe-toy"), Just("N1024")],
        scale in 0u64..4,
        seed: u64,
    ) {
        let params = rlwe_params(label);
        let p = params.plaintext_modulus();
        let n = params.degree();
        let mut rng = rng(seed);
        let sk = rlwe::keygen(&params, &mut rng);
        let mu: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let nu: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let c1 = rlwe::encrypt(&sk, &params.message(&mu).unwrap(), &params, &mut rng).unwrap();
        let c2 = rlwe::encrypt(&sk, &params.message(&nu).unwrap(), &params, &mut rng).unwrap();
        let ct = rlwe::add(&rlwe::plain_mul(&c1, scale, &params).unwrap(), &c2, &params).unwrap();
        let direct = rlwe::decrypt(&sk, &ct, &params).unwrap();
        let want: Vec<u64> = mu.iter().zip(&nu).map(|(m, v)| (scale * m + v) % p).collect();
        prop_assert_eq!(&direct, &want);
        for _ in 0..32 {
            let k = rng.gen_range(0..n);
            prop_assert_eq!(rlwe::extract_coeff_plain(&sk, &ct, k, &params).unwrap(), direct[k]);
        }
        let w = (params.log2_q() as usize).div_ceil(8);
        prop_assert_eq!(ct.to_bytes(&params).len(), 2 * n * w);
        let sct = rlwe::encrypt_seeded(&sk, &params.message(&mu).unwrap(), &params, Seed::random(&mut rng), &mut rng).unwrap();
        prop_assert_eq!(sct.to_bytes(&params).len(), 16 + n * w);
        prop_assert_eq!(rlwe::decrypt(&sk, &rlwe::expand_seeded(&sct, &params), &params).unwrap(), mu);
    }

    #[test]
    fn monomials_land_on_their_coefficient(log_n in 2u32..=6, which in 0usize..3, seed: u64) {
        let n = 1usize << log_n;
        let params = RlweParams::with_modulus(n, Modulus::power_of_two(32).unwrap(), 16, NoiseParams::with_sigma(3.2).unwrap()).unwrap();
        let j = [0, n / 2, n - 1][which];
        let mut rng = rng(seed);
        let sk = rlwe::keygen(&params, &mut rng);
        let mut mu = vec![0; n];
        mu[j] = 1;
        let ct = rlwe::encrypt(&sk, &params.message(&mu).unwrap(), &params, &mut rng).unwrap();
        for k in 0..n {
            prop_assert_eq!(rlwe::extract_coeff_plain(&sk, &ct, k, &params).unwrap(), u64::from(k == j));
        }
    }
}

fn toy_keypair() -> &'static PaillierKeypair {
    static KP: OnceLock<PaillierKeypair> = OnceLock::new();
    KP.get_or_init(|| PaillierKeypair::generate(512, &mut rng(1)).unwrap())
}

fn biguint(bytes: &[u8]) -> BigUint {
    BigUint::from_bytes_le(bytes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn paillier_is_additively_homomorphic(
        x in prop::collection::vec(any::<u8>(), 0..80),
        y in prop::collection::vec(any::<u8>(), 0..80),
        k in prop::collection::vec(any::<u8>(), 0..80),
        seed: u64,
    ) {
        let kp = toy_keypair();
        let m = kp.plaintext_modulus();
        let (x, y, k) = (biguint(&x) % m, biguint(&y) % m, biguint(&k));
        let mut rng = rng(seed);
        let cx = kp.encrypt(&x, &mut rng).unwrap();
        let cy = kp.encrypt(&y, &mut rng).unwrap();
        prop_assert_eq!(kp.decrypt(&kp.add(&cx, &cy).unwrap()).unwrap(), (&x + &y) % m);
        prop_assert_eq!(kp.decrypt(&kp.plain_mul(&cx, &k).unwrap()).unwrap(), (&k * &x) % m);
        prop_assert_eq!(kp.decrypt(&kp.add_plain(&cx, &k).unwrap()).unwrap(), (&x + &k) % m);
        prop_assert_ne!(&cx, &kp.encrypt(&x, &mut rng).unwrap());
        let bytes = kp.encode_ciphertext(&cx);
        prop_assert_eq!(bytes.len(), 2 * 512 / 8);
        prop_assert_eq!(kp.decode_ciphertext(&bytes).unwrap(), cx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn paillier_ciphertext_size_tracks_key_bits(bits in 64u64..300, seed: u64) {
        let kp = PaillierKeypair::generate(bits, &mut rng(seed)).unwrap();
        prop_assert_eq!(kp.public().bits(), bits);
        prop_assert_eq!(kp.ciphertext_len(), 2 * bits.div_ceil(8) as usize);
    }
}

struct LweFixture {
    params: LweParams,
    sk: LweSecretKey,
    esk: EncryptedSecretKey<PaillierCiphertext>,
}

fn lwe_fixture() -> &'static LweFixture {
    static F: OnceLock<LweFixture> = OnceLock::new();
    F.get_or_init(|| {
        let params = LweParams::with_modulus(48, Modulus::new(4_294_967_291).unwrap(), 16, NoiseParams::with_sigma(3.2).unwrap()).unwrap();
        let mut rng = rng(2);
        let sk = lwe::keygen(&params, &mut rng);
        let esk = encrypt_lwe_key(toy_keypair(), &sk, &params, &mut rng).unwrap();
        LweFixture { params, sk, esk }
    })
}

struct RlweFixture {
    params: RlweParams,
    sk: RlweSecretKey,
    esk: EncryptedSecretKey<PaillierCiphertext>,
}

fn rlwe_fixture() -> &'static RlweFixture {
    static F: OnceLock<RlweFixture> = OnceLock::new();
    F.get_or_init(|| {
        let params = RlweParams::with_modulus(32, Modulus::new(65_537).unwrap(), 4, NoiseParams::with_sigma(3.2).unwrap()).unwrap();
        let mut rng = rng(3);
        let sk = rlwe::keygen(&params, &mut rng);
        let esk = encrypt_rlwe_key(toy_keypair(), &sk, &params, &mut rng).unwrap();
        RlweFixture { params, sk, esk }
    })
}

fn arbitrary_lwe(params: &LweParams, rng: &mut ChaCha20Rng) -> LweCiphertext {
    let q = params.modulus().value() as u64;
    let a = (0..params.dimension()).map(|_| rng.gen_range(0..q)).collect();
    LweCiphertext::from_parts(a, rng.gen_range(0..q), params).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Holds for any `(a, b)`, not only valid encryptions.
    #[test]
    fn lwe_compression_matches_decryption(seed: u64) {
        let f = lwe_fixture();
        let kp = toy_keypair();
        let mut rng = rng(seed);
        let ct = arbitrary_lwe(&f.params, &mut rng);
        let clear = lwe_clear_value(&f.sk, &ct, &f.params).unwrap();
        prop_assert!(&clear < kp.plaintext_modulus());
        prop_assert!(clear.bits() <= u64::from(slot_width(f.params.modulus(), f.params.dimension())));
        let x = lwe_compress(kp, &f.esk, &ct, &f.params).unwrap();
        prop_assert_eq!(kp.decrypt(x.payload()).unwrap(), clear);
        prop_assert_eq!(modified_lwe_decrypt(kp, &x, &f.params).unwrap(), lwe::decrypt(&f.sk, &ct, &f.params));
    }

    #[test]
    fn rlwe_compression_matches_decryption(seed: u64) {
        let f = rlwe_fixture();
        let kp = toy_keypair();
        let mut rng = rng(seed);
        let q = f.params.modulus();
        let n = f.params.degree();
        let ct = RlweCiphertext::from_parts(random_poly(n, q, &mut rng), random_poly(n, q, &mut rng), &f.params).unwrap();
        let direct = rlwe::decrypt(&f.sk, &ct, &f.params).unwrap();
        for k in [0, rng.gen_range(0..n), n - 1] {
            let clear = rlwe_clear_value(&f.sk, &ct, k, &f.params).unwrap();
            prop_assert!(clear.bits() <= u64::from(slot_width(q, n)));
            let x = rlwe_compress(kp, &f.esk, &ct, k, &f.params).unwrap();
            prop_assert_eq!(modified_rlwe_decrypt(kp, &x, &f.params).unwrap(), direct[k]);
        }
    }

    #[test]
    fn batch_slots_are_isolated(seed: u64) {
        let f = lwe_fixture();
        let kp = toy_keypair();
        let mut rng = rng(seed);
        let capacity = batch_capacity(&f.params, kp.plaintext_modulus()).unwrap();
        let count = rng.gen_range(1..=capacity);
        let cts: Vec<LweCiphertext> = (0..count).map(|_| arbitrary_lwe(&f.params, &mut rng)).collect();
        let base = modified_decrypt_batch(kp, &lwe_compress_batch(kp, &f.esk, &cts, &f.params).unwrap(), &f.params).unwrap();
        let direct: Vec<u64> = cts.iter().map(|ct| lwe::decrypt(&f.sk, ct, &f.params)).collect();
        prop_assert_eq!(&base, &direct);

        let j = rng.gen_range(0..count);
        let mut changed = cts.clone();
        changed[j] = arbitrary_lwe(&f.params, &mut rng);
        let after = modified_decrypt_batch(kp, &lwe_compress_batch(kp, &f.esk, &changed, &f.params).unwrap(), &f.params).unwrap();
        for i in 0..count {
            if i == j {
                prop_assert_eq!(after[i], lwe::decrypt(&f.sk, &changed[j], &f.params));
            } else {
                prop_assert_eq!(after[i], base[i]);
            }
        }
    }
}

#[test]
fn size_reports_are_pure_and_ordered() {
    let reg = Registry::shipped();
    let reports: Vec<_> = reg
        .select("table2")
        .unwrap()
        .into_iter()
        .map(|e| size_report(e, 3072).unwrap())
        .collect();
    for (e, r) in reg.select("table2").unwrap().into_iter().zip(&reports) {
        assert_eq!(&size_report(e, 3072).unwrap(), r);
    }
    for pair in reports.windows(2) {
        assert!(pair[0].uncompressed_ct_bytes < pair[1].uncompressed_ct_bytes);
        assert!(pair[0].reduction_percent < pair[1].reduction_percent);
    }
}
