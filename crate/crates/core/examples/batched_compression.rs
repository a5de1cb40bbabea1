//! Pack as many LWE ciphertexts as fit into one Paillier plaintext.

use hecomp::ahe::{AdditiveHe, PaillierKeypair};
use hecomp::compression::{
    batch_capacity, encrypt_lwe_key, lwe_compress_batch, modified_decrypt_batch, slot_width,
};
use hecomp::lwe;
use hecomp::params::Registry;
use hecomp::scheme::LatticeParams;
use rand::rngs::OsRng;
use rand::Rng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;
    let label = std::env::args().nth(1).unwrap_or_else(|| "lwe-small".into());
    let bits = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let params = Registry::shipped().get(&label)?.lwe()?;
    let kp = PaillierKeypair::generate(bits, &mut rng)?;
    let capacity = batch_capacity(&params, kp.plaintext_modulus())?;
    println!(
        "{label} with a {bits}-bit key: {}-bit slots, {capacity} per ciphertext",
        slot_width(params.modulus(), params.dimension())
    );

    let sk = lwe::keygen(&params, &mut rng);
    let esk = encrypt_lwe_key(&kp, &sk, &params, &mut rng)?;
    let messages: Vec<u64> = (0..capacity)
        .map(|_| rng.gen_range(0..params.plaintext_modulus()))
        .collect();
    let cts = messages
        .iter()
        .map(|&m| lwe::encrypt(&sk, m, &params, &mut rng))
        .collect::<hecomp::Result<Vec<_>>>()?;
    let packed = lwe_compress_batch(kp.public(), &esk, &cts, &params)?;
    let decoded = modified_decrypt_batch(&kp, &packed, &params)?;
    println!("messages {messages:?}");
    println!("decoded  {decoded:?}");
    println!(
        "{} bytes for {capacity} ciphertexts of {} bytes each",
        kp.ciphertext_len(),
        params.ciphertext_bytes()
    );
    Ok(())
}
