//! A client and server on loopback: seeded ciphertexts go up, one compressed
//! ciphertext comes back.

use hecomp::ahe::PaillierKeypair;
use hecomp::compression::encrypt_lwe_key;
use hecomp::lwe;
use hecomp::math::Seed;
use hecomp::params::{ParamSet, Registry};
use hecomp::protocol::{send_request, Request, Server, SessionConfig};
use hecomp::scheme::{LatticeParams, SchemeTag};
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let mut rng = OsRng;
    let server = Server::bind("127.0.0.1:0")?.spawn()?;
    println!("server on {}", server.addr());

    let label = "n630";
    let params = Registry::shipped().get(label)?.lwe()?;
    let sk = lwe::keygen(&params, &mut rng);
    let kp = PaillierKeypair::generate(1024, &mut rng)?;
    let esk = encrypt_lwe_key(&kp, &sk, &params, &mut rng)?;

    let inputs = [4u64, 9, 1, 13];
    let weights = vec![(0, 3), (1, 1), (2, 7), (3, 2)];
    let expected = weights
        .iter()
        .map(|&(i, w)| w * inputs[i as usize])
        .sum::<u64>()
        % params.plaintext_modulus();
    let request = Request {
        config: SessionConfig {
            scheme: SchemeTag::Lwe,
            label: label.into(),
            ahe_public_key: kp.public().clone(),
            weights,
            extract: Vec::new(),
        },
        encrypted_key: Some(esk.to_bytes(&kp)),
        inputs: inputs
            .iter()
            .map(|&m| Ok(lwe::encrypt_seeded(&sk, m, &params, Seed::random(&mut rng), &mut rng)?.to_bytes(&params)))
            .collect::<hecomp::Result<_>>()?,
    };
    let set = ParamSet::Lwe(params);
    let response = send_request(server.addr(), &set, &request)?;
    println!("result {:?}, expected {expected}", response.decrypt(&kp, &set)?);
    println!("sent {} bytes, received {} bytes", response.request_bytes, response.wire_bytes);

    // Second session reuses the registered key.
    let again = Request { encrypted_key: None, ..request };
    let response = send_request(server.addr(), &set, &again)?;
    println!("without key upload: sent {} bytes, result {:?}", response.request_bytes, response.decrypt(&kp, &set)?);
    server.shutdown();
    Ok(())
}
