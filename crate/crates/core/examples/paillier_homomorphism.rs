//! Additive homomorphism of Paillier: `⊕` adds plaintexts, `⊗` scales them.

use hecomp::ahe::{AdditiveDecrypt, AdditiveHe, PaillierKeypair};
use num_bigint::BigUint;
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;
    let bits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let kp = PaillierKeypair::generate(bits, &mut rng)?;
    println!("{bits}-bit key, ciphertexts are {} bytes", kp.ciphertext_len());

    let x = kp.encrypt(&BigUint::from(1234u32), &mut rng)?;
    let y = kp.encrypt(&BigUint::from(766u32), &mut rng)?;
    println!("1234 ⊕ 766 -> {}", kp.decrypt(&kp.add(&x, &y)?)?);
    println!("5 ⊗ 1234 -> {}", kp.decrypt(&kp.plain_mul(&x, &BigUint::from(5u32))?)?);

    let m = kp.plaintext_modulus();
    let minus_one = kp.encrypt(&(m - 1u32), &mut rng)?;
    let one = kp.encrypt(&BigUint::from(1u32), &mut rng)?;
    println!("(m-1) ⊕ 1 -> {}", kp.decrypt(&kp.add(&minus_one, &one)?)?);

    let combo = kp.linear_combination(
        &BigUint::from(10u32),
        &[(BigUint::from(2u32), &x), (BigUint::from(3u32), &y)],
    )?;
    println!("10 + 2*1234 + 3*766 -> {}", kp.decrypt(&combo)?);
    Ok(())
}
