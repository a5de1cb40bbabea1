//! Fresh ciphertexts can ship a 16-byte seed in place of their random mask.

use hecomp::math::Seed;
use hecomp::params::Registry;
use hecomp::{lwe, rlwe};
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;

    let lwe_params = Registry::shipped().get("n630")?.lwe()?;
    let sk = lwe::keygen(&lwe_params, &mut rng);
    let seeded = lwe::encrypt_seeded(&sk, 11, &lwe_params, Seed::random(&mut rng), &mut rng)?;
    let expanded = lwe::expand_seeded(&seeded, &lwe_params);
    println!(
        "LWE n=630: full {} B, seeded {} B, decrypts to {}",
        expanded.to_bytes(&lwe_params).len(),
        seeded.to_bytes(&lwe_params).len(),
        lwe::decrypt(&sk, &expanded, &lwe_params)
    );

    // Once the server computes on it, the mask is no longer a PRG output and
    // the seed cannot stand in for it.
    let processed = lwe::plain_mul(&expanded, 2, &lwe_params)?;
    println!(
        "after processing: {} B, decrypts to {}",
        processed.to_bytes(&lwe_params).len(),
        lwe::decrypt(&sk, &processed, &lwe_params)
    );

    let rlwe_params = Registry::shipped().get("N1024")?.rlwe()?;
    let sk = rlwe::keygen(&rlwe_params, &mut rng);
    let mu = rlwe_params.message(&[1, 2, 3])?;
    let seeded = rlwe::encrypt_seeded(&sk, &mu, &rlwe_params, Seed::random(&mut rng), &mut rng)?;
    let expanded = rlwe::expand_seeded(&seeded, &rlwe_params);
    println!(
        "RLWE N=1024: full {} B, seeded {} B, leading coefficients {:?}",
        expanded.to_bytes(&rlwe_params).len(),
        seeded.to_bytes(&rlwe_params).len(),
        &rlwe::decrypt(&sk, &expanded, &rlwe_params)?[..4]
    );
    Ok(())
}
