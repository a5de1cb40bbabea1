use std::io::Write;
use std::net::{SocketAddr, TcpStream};
use std::thread;

use hecomp::ahe::PaillierKeypair;
use hecomp::bench::size_report;
use hecomp::compression::{encrypt_lwe_key, encrypt_rlwe_key};
use hecomp::lwe::{self, LweParams, LweSecretKey};
use hecomp::math::Seed;
use hecomp::params::{ParamSet, Registry};
use hecomp::protocol::wire::{read_frame, FrameType, FRAME_HEADER_BYTES, RESPONSE_HEADER_BYTES};
use hecomp::protocol::{send_request, Request, Server, SessionConfig};
use hecomp::rlwe;
use hecomp::scheme::{LatticeParams, SchemeTag};
use hecomp::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

struct LweClient {
    label: &'static str,
    params: LweParams,
    sk: LweSecretKey,
    kp: PaillierKeypair,
    esk: Vec<u8>,
}

impl LweClient {
    fn new(label: &'static str, bits: u64, rng: &mut ChaCha20Rng) -> Self {
        let params = Registry::shipped().get(label).unwrap().lwe().unwrap();
        let sk = lwe::keygen(&params, rng);
        let kp = PaillierKeypair::generate(bits, rng).unwrap();
        let esk = encrypt_lwe_key(&kp, &sk, &params, rng).unwrap().to_bytes(&kp);
        LweClient { label, params, sk, kp, esk }
    }

    fn request(&self, mus: &[u64], weights: Vec<(u32, u64)>, upload: bool, rng: &mut ChaCha20Rng) -> Request {
        Request {
            config: SessionConfig {
                scheme: SchemeTag::Lwe,
                label: self.label.into(),
                ahe_public_key: self.kp.public().clone(),
                weights,
                extract: Vec::new(),
            },
            encrypted_key: upload.then(|| self.esk.clone()),
            inputs: mus
                .iter()
                .map(|&m| {
                    lwe::encrypt_seeded(&self.sk, m, &self.params, Seed::random(rng), rng)
                        .unwrap()
                        .to_bytes(&self.params)
                })
                .collect(),
        }
    }

    fn set(&self) -> ParamSet {
        ParamSet::Lwe(self.params.clone())
    }
}

fn rng() -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(7)
}

#[test]
fn weighted_sum_of_four_inputs() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let client = LweClient::new("n630", 1024, &mut rng);
    let req = client.request(&[4, 9, 1, 13], vec![(0, 3), (1, 1), (2, 7), (3, 2)], true, &mut rng);
    let resp = send_request(server.addr(), &client.set(), &req).unwrap();
    assert_eq!(resp.decrypt(&client.kp, &client.set()).unwrap(), [(12 + 9 + 7 + 26) % 16]);

    let compressed = size_report(Registry::shipped().get("n630").unwrap(), 1024)
        .unwrap()
        .compressed_ct_bytes;
    assert_eq!(resp.wire_bytes, compressed + FRAME_HEADER_BYTES + RESPONSE_HEADER_BYTES);
    assert_eq!(resp.wire_bytes, compressed + 9);
    assert_eq!(server.keys().len(), 1);
    server.shutdown();
}

#[test]
fn response_size_does_not_depend_on_dimension() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let sizes: Vec<usize> = ["lwe-small", "n630", "n750"]
        .iter()
        .map(|label| {
            let client = LweClient::new(label, 512, &mut rng);
            let req = client.request(&[1, 2], vec![(0, 1), (1, 1)], true, &mut rng);
            let resp = send_request(server.addr(), &client.set(), &req).unwrap();
            assert_eq!(resp.decrypt(&client.kp, &client.set()).unwrap(), [3]);
            resp.wire_bytes
        })
        .collect();
    assert_eq!(sizes, [128 + 9; 3]);
    server.shutdown();
}

#[test]
fn registered_key_is_reused() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let client = LweClient::new("lwe-small", 512, &mut rng);

    let early = client.request(&[5], vec![(0, 1)], false, &mut rng);
    let err = send_request(server.addr(), &client.set(), &early).unwrap_err();
    assert!(matches!(err, Error::KeyMismatch(_)), "{err}");

    let first = client.request(&[5], vec![(0, 1)], true, &mut rng);
    send_request(server.addr(), &client.set(), &first).unwrap();
    let later = client.request(&[5, 6], vec![(0, 2), (1, 1)], false, &mut rng);
    let resp = send_request(server.addr(), &client.set(), &later).unwrap();
    assert_eq!(resp.decrypt(&client.kp, &client.set()).unwrap(), [0]);
    assert!(resp.request_bytes < first.encrypted_key.as_ref().unwrap().len());
    server.shutdown();
}

#[test]
fn empty_request_gets_error_frame() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let client = LweClient::new("lwe-small", 512, &mut rng);
    let req = client.request(&[], vec![(0, 1)], true, &mut rng);
    let err = send_request(server.addr(), &client.set(), &req).unwrap_err();
    assert!(matches!(err, Error::Protocol(_)), "{err}");
    server.shutdown();
}

#[test]
fn bad_weights_are_rejected() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let client = LweClient::new("lwe-small", 512, &mut rng);
    let out_of_range = client.request(&[1, 2], vec![(2, 1)], true, &mut rng);
    assert!(send_request(server.addr(), &client.set(), &out_of_range).is_err());
    let too_large = client.request(&[1, 2], vec![(0, 16)], false, &mut rng);
    assert!(send_request(server.addr(), &client.set(), &too_large).is_err());
    server.shutdown();
}

fn raw_exchange(addr: SocketAddr, bytes: &[u8]) -> (FrameType, Vec<u8>) {
    let mut stream = TcpStream::connect(addr).unwrap();
    stream.write_all(bytes).unwrap();
    read_frame(&mut stream).unwrap()
}

#[test]
fn malformed_frames_get_error_frames() {
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let (ty, _) = raw_exchange(server.addr(), &[0x09, 0, 0, 0, 0]);
    assert_eq!(ty, FrameType::Error);
    let huge = (64u32 << 20) + 1;
    let mut frame = vec![0x01];
    frame.extend_from_slice(&huge.to_le_bytes());
    let (ty, _) = raw_exchange(server.addr(), &frame);
    assert_eq!(ty, FrameType::Error);
    let (ty, _) = raw_exchange(server.addr(), &[0x03, 4, 0, 0, 0, 0, 0, 0, 0]);
    assert_eq!(ty, FrameType::Error);
    server.shutdown();
}

#[test]
fn rlwe_session_extracts_requested_coefficients() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let params = Registry::shipped().get("rlwe-toy").unwrap().rlwe().unwrap();
    let sk = rlwe::keygen(&params, &mut rng);
    let kp = PaillierKeypair::generate(256, &mut rng).unwrap();
    let esk = encrypt_rlwe_key(&kp, &sk, &params, &mut rng).unwrap();
    let a = [1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0];
    let b = [3, 3, 3, 3, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2];
    let inputs = [&a, &b]
        .iter()
        .map(|m| {
            let msg = params.message(&m[..]).unwrap();
            rlwe::encrypt_seeded(&sk, &msg, &params, Seed::random(&mut rng), &mut rng)
                .unwrap()
                .to_bytes(&params)
        })
        .collect();
    let extract = vec![0, 5, 10, 15];
    let req = Request {
        config: SessionConfig {
            scheme: SchemeTag::Rlwe,
            label: "rlwe-toy".into(),
            ahe_public_key: kp.public().clone(),
            weights: vec![(0, 1), (1, 2)],
            extract: extract.clone(),
        },
        encrypted_key: Some(esk.to_bytes(&kp)),
        inputs,
    };
    let set = ParamSet::Rlwe(params.clone());
    let resp = send_request(server.addr(), &set, &req).unwrap();
    let p = params.plaintext_modulus();
    let want: Vec<u64> = extract.iter().map(|&k| (a[k as usize] + 2 * b[k as usize]) % p).collect();
    assert_eq!(resp.slot_count as usize, extract.len());
    assert_eq!(resp.decrypt(&kp, &set).unwrap(), want);
    server.shutdown();
}

#[test]
fn concurrent_sessions() {
    let mut rng = rng();
    let server = Server::bind("127.0.0.1:0").unwrap().spawn().unwrap();
    let client = LweClient::new("lwe-small", 512, &mut rng);
    send_request(server.addr(), &client.set(), &client.request(&[0], vec![(0, 1)], true, &mut rng)).unwrap();
    let addr = server.addr();
    let client = &client;
    thread::scope(|s| {
        let handles: Vec<_> = (0..8u64)
            .map(|i| {
                let req = client.request(&[i, 3], vec![(0, 1), (1, i)], false, &mut rng);
                s.spawn(move || {
                    let resp = send_request(addr, &client.set(), &req).unwrap();
                    (resp.decrypt(&client.kp, &client.set()).unwrap()[0], (i + 3 * i) % 16)
                })
            })
            .collect();
        for h in handles {
            let (got, want) = h.join().unwrap();
            assert_eq!(got, want);
        }
    });
    server.shutdown();
}
