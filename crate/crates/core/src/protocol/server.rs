use std::collections::HashMap;
use std::io::{BufReader, BufWriter};
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, RwLock};
use std::thread::{self, JoinHandle};

use super::wire::{
    decode_key_upload, decode_request, encode_error, encode_response, read_frame, write_frame,
    FrameType, SessionConfig,
};
use crate::ahe::{AdditiveHe, PaillierCiphertext, PaillierPublicKey};
use crate::compression::{lwe_compress, rlwe_compress, rlwe_compress_batch, EncryptedSecretKey};
use crate::error::{Error, Result};
use crate::lwe::{expand_seeded as expand_lwe, SeededLweCiphertext};
use crate::params::{ParamSet, Registry};
use crate::process::{lwe_weighted_sum, rlwe_weighted_sum};
use crate::rlwe::{expand_seeded as expand_rlwe, SeededRlweCiphertext};

type KeyId = (u64, u64);

/// Encrypted lattice keys by `(params fingerprint, additive key fingerprint)`.
/// Only ever holds public material.
#[derive(Clone, Default)]
pub struct KeyTable {
    inner: Arc<RwLock<HashMap<KeyId, Arc<EncryptedSecretKey<PaillierCiphertext>>>>>,
}

impl KeyTable {
    fn get(&self, id: KeyId) -> Option<Arc<EncryptedSecretKey<PaillierCiphertext>>> {
        self.inner.read().unwrap().get(&id).cloned()
    }

    fn insert(&self, id: KeyId, key: EncryptedSecretKey<PaillierCiphertext>) {
        self.inner.write().unwrap().insert(id, Arc::new(key));
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct Server {
    listener: TcpListener,
    keys: KeyTable,
}

/// A server running on a background thread.
pub struct ServerHandle {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<()>>,
    keys: KeyTable,
}

impl ServerHandle {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn keys(&self) -> &KeyTable {
        &self.keys
    }

    pub fn shutdown(mut self) {
        self.stop_thread();
    }

    fn stop_thread(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        // Wake the accept loop.
        let _ = TcpStream::connect(self.addr);
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        self.stop_thread();
    }
}

impl Server {
    pub fn bind<A: ToSocketAddrs>(addr: A) -> Result<Self> {
        Ok(Server {
            listener: TcpListener::bind(addr)?,
            keys: KeyTable::default(),
        })
    }

    pub fn local_addr(&self) -> Result<SocketAddr> {
        Ok(self.listener.local_addr()?)
    }

    /// Accepts connections until the process exits, one thread each.
    pub fn run(self) -> Result<()> {
        self.accept_loop(&AtomicBool::new(false));
        Ok(())
    }

    pub fn spawn(self) -> Result<ServerHandle> {
        let addr = self.local_addr()?;
        let stop = Arc::new(AtomicBool::new(false));
        let keys = self.keys.clone();
        let flag = stop.clone();
        let thread = thread::spawn(move || self.accept_loop(&flag));
        Ok(ServerHandle {
            addr,
            stop,
            thread: Some(thread),
            keys,
        })
    }

    fn accept_loop(&self, stop: &AtomicBool) {
        for stream in self.listener.incoming() {
            if stop.load(Ordering::SeqCst) {
                break;
            }
            let Ok(stream) = stream else { continue };
            let keys = self.keys.clone();
            thread::spawn(move || {
                let _ = handle_connection(stream, &keys);
            });
        }
    }
}

fn handle_connection(stream: TcpStream, keys: &KeyTable) -> Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut writer = BufWriter::new(stream);
    match session(&mut reader, keys) {
        Ok(response) => write_frame(&mut writer, FrameType::Response, &response)?,
        Err(Error::Io(e)) => return Err(Error::Io(e)),
        Err(e) => write_frame(&mut writer, FrameType::Error, &encode_error(&e))?,
    };
    Ok(())
}

fn expect_frame<R: std::io::Read>(r: &mut R, want: &[FrameType]) -> Result<(FrameType, Vec<u8>)> {
    let (ty, payload) = read_frame(r)?;
    if !want.contains(&ty) {
        return Err(Error::Protocol(format!("unexpected frame {ty:?}")));
    }
    Ok((ty, payload))
}

/// hello, optional key upload, request; returns the response payload.
fn session<R: std::io::Read>(r: &mut R, keys: &KeyTable) -> Result<Vec<u8>> {
    let (_, hello) = expect_frame(r, &[FrameType::Hello])?;
    let config = SessionConfig::from_bytes(&hello)?;
    let entry = Registry::shipped().get(&config.label)?;
    if entry.scheme != config.scheme {
        return Err(Error::param(format!(
            "set {} is not a {} set",
            config.label,
            config.scheme.name()
        )));
    }
    let params = entry.build()?;
    let pk = &config.ahe_public_key;
    let id = (params.as_lattice().fingerprint(), pk.fingerprint());

    let (ty, mut payload) = expect_frame(r, &[FrameType::KeyUpload, FrameType::Request])?;
    if ty == FrameType::KeyUpload {
        let (params_fp, ahe_fp, key) = decode_key_upload(&payload)?;
        if (params_fp, ahe_fp) != id {
            return Err(Error::KeyMismatch(
                "uploaded key does not match the session parameters".into(),
            ));
        }
        let esk = EncryptedSecretKey::from_bytes(key, pk, params.as_lattice())?;
        keys.insert(id, esk);
        payload = expect_frame(r, &[FrameType::Request])?.1;
    }
    let esk = keys
        .get(id)
        .ok_or_else(|| Error::KeyMismatch("no encrypted key registered for this session".into()))?;
    let inputs = decode_request(&payload)?;
    if inputs.is_empty() {
        return Err(Error::Protocol("request carries no ciphertexts".into()));
    }
    let compressed = match &params {
        ParamSet::Lwe(p) => {
            let cts = inputs
                .iter()
                .map(|b| SeededLweCiphertext::from_bytes(b, p).map(|s| expand_lwe(&s, p)))
                .collect::<Result<Vec<_>>>()?;
            lwe_compress(pk, &esk, &lwe_weighted_sum(&cts, &config.weights, p)?, p)?
        }
        ParamSet::Rlwe(p) => {
            let cts = inputs
                .iter()
                .map(|b| SeededRlweCiphertext::from_bytes(b, p).map(|s| expand_rlwe(&s, p)))
                .collect::<Result<Vec<_>>>()?;
            let ct = rlwe_weighted_sum(&cts, &config.weights, p)?;
            let ks: Vec<usize> = config.extract.iter().map(|&k| k as usize).collect();
            match ks.as_slice() {
                [] => return Err(Error::param("no RLWE coefficients requested")),
                [k] => rlwe_compress(pk, &esk, &ct, *k, p)?,
                _ => rlwe_compress_batch(pk, &esk, &ct, &ks, p)?,
            }
        }
    };
    let layout = compressed.layout();
    Ok(encode_response(
        layout.slot_count,
        layout.slot_width,
        &PaillierPublicKey::encode_ciphertext(pk, compressed.payload()),
    ))
}
