//! Compress one processed LWE ciphertext into a single Paillier ciphertext.
//!
//! Run with `--release`; the 3072-bit key makes key encryption take a while.

use std::time::Instant;

use hecomp::ahe::{AdditiveHe, PaillierKeypair};
use hecomp::compression::{encrypt_lwe_key, lwe_compress, modified_lwe_decrypt};
use hecomp::lwe;
use hecomp::params::Registry;
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;
    let label = std::env::args().nth(1).unwrap_or_else(|| "n630".into());
    let params = Registry::shipped().get(&label)?.lwe()?;

    // Client side.
    let sk = lwe::keygen(&params, &mut rng);
    let kp = PaillierKeypair::generate(3072, &mut rng)?;
    let start = Instant::now();
    let esk = encrypt_lwe_key(&kp, &sk, &params, &mut rng)?;
    println!("encrypted key: {} bytes in {:.2?}", esk.to_bytes(&kp).len(), start.elapsed());
    let c1 = lwe::encrypt(&sk, 7, &params, &mut rng)?;
    let c2 = lwe::encrypt(&sk, 4, &params, &mut rng)?;

    // Server side: compute, then compress with public material only.
    let processed = lwe::add(&lwe::plain_mul(&c1, 2, &params)?, &c2, &params)?;
    let start = Instant::now();
    let compressed = lwe_compress(kp.public(), &esk, &processed, &params)?;
    println!("compressed in {:.2?}", start.elapsed());
    println!(
        "response: {} bytes instead of {}",
        kp.ciphertext_len(),
        processed.to_bytes(&params).len()
    );

    // Client side again.
    println!(
        "modified decryption: {}, direct decryption: {}",
        modified_lwe_decrypt(&kp, &compressed, &params)?,
        lwe::decrypt(&sk, &processed, &params)
    );
    Ok(())
}
