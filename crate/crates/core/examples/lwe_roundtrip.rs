//! Encrypt, combine and decrypt LWE ciphertexts under the n=630 set.

use hecomp::lwe;
use hecomp::params::Registry;
use hecomp::scheme::LatticeParams;
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let params = Registry::shipped().get("n630")?.lwe()?;
    let mut rng = OsRng;
    let sk = lwe::keygen(&params, &mut rng);

    let c1 = lwe::encrypt(&sk, 9, &params, &mut rng)?;
    let c2 = lwe::encrypt(&sk, 5, &params, &mut rng)?;
    let sum = lwe::add(&lwe::plain_mul(&c1, 3, &params)?, &c2, &params)?;

    println!("p = {}, delta = 2^{}", params.plaintext_modulus(), params.delta().trailing_zeros());
    println!("decrypt(c1) = {}", lwe::decrypt(&sk, &c1, &params));
    println!("decrypt(3*c1 + c2) = {} (expected {})", lwe::decrypt(&sk, &sum, &params), (3 * 9 + 5) % 16);
    println!("noise headroom: fresh {} bits, after processing {} bits", c1.noise_budget_bits(), sum.noise_budget_bits());
    println!("ciphertext size: {} bytes", c1.to_bytes(&params).len());
    Ok(())
}
