//! Extract and compress a single coefficient of an RLWE ciphertext.

use hecomp::ahe::{AdditiveHe, PaillierKeypair};
use hecomp::compression::{encrypt_rlwe_key, modified_rlwe_decrypt, rlwe_compress};
use hecomp::params::Registry;
use hecomp::rlwe;
use rand::rngs::OsRng;
use rand::Rng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;
    let label = std::env::args().nth(1).unwrap_or_else(|| "N1024".into());
    let bits = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let params = Registry::shipped().get(&label)?.rlwe()?;
    let sk = rlwe::keygen(&params, &mut rng);
    let kp = PaillierKeypair::generate(bits, &mut rng)?;
    let esk = encrypt_rlwe_key(&kp, &sk, &params, &mut rng)?;

    let coeffs: Vec<u64> = (0..params.degree()).map(|_| rng.gen_range(0..16)).collect();
    let ct = rlwe::encrypt(&sk, &params.message(&coeffs)?, &params, &mut rng)?;
    for k in [0, params.degree() / 2, params.degree() - 1] {
        let x = rlwe_compress(kp.public(), &esk, &ct, k, &params)?;
        println!(
            "coefficient {k}: message {}, plain extraction {}, compressed {}",
            coeffs[k],
            rlwe::extract_coeff_plain(&sk, &ct, k, &params)?,
            modified_rlwe_decrypt(&kp, &x, &params)?
        );
    }
    println!(
        "one coefficient: {} bytes instead of {}",
        kp.ciphertext_len(),
        ct.to_bytes(&params).len()
    );
    Ok(())
}
