use std::io::{BufReader, BufWriter};
use std::net::{TcpStream, ToSocketAddrs};

use super::wire::{
    decode_error, decode_response, encode_key_upload, encode_request, read_frame, write_frame,
    FrameType, SessionConfig, FRAME_HEADER_BYTES,
};
use crate::ahe::{AdditiveHe, PaillierCiphertext, PaillierKeypair};
use crate::compression::{modified_decrypt_batch, CompressedCiphertext, SlotLayout};
use crate::error::{Error, Result};
use crate::params::ParamSet;

/// One session's worth of client messages.
#[derive(Clone, Debug)]
pub struct Request {
    pub config: SessionConfig,
    /// Serialized encrypted key; `None` if the server already holds it.
    pub encrypted_key: Option<Vec<u8>>,
    /// Serialized seeded ciphertexts.
    pub inputs: Vec<Vec<u8>>,
}

#[derive(Clone, Debug)]
pub struct Response {
    pub slot_count: u16,
    pub slot_width: u16,
    pub ciphertext: PaillierCiphertext,
    /// Bytes of the response frame, header included.
    pub wire_bytes: usize,
    /// Bytes the client sent.
    pub request_bytes: usize,
}

impl Response {
    pub fn compressed(&self, params: &ParamSet) -> CompressedCiphertext<PaillierCiphertext> {
        let lattice = params.as_lattice();
        CompressedCiphertext::from_parts(
            self.ciphertext.clone(),
            SlotLayout {
                scheme: lattice.scheme(),
                slot_count: self.slot_count,
                slot_width: self.slot_width,
                params_fingerprint: lattice.fingerprint(),
            },
        )
    }

    /// Plaintext of every slot.
    pub fn decrypt(&self, kp: &PaillierKeypair, params: &ParamSet) -> Result<Vec<u64>> {
        modified_decrypt_batch(kp, &self.compressed(params), params.as_lattice())
    }
}

pub fn send_request<A: ToSocketAddrs>(addr: A, params: &ParamSet, req: &Request) -> Result<Response> {
    let stream = TcpStream::connect(addr)?;
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut writer = BufWriter::new(stream);
    let pk = &req.config.ahe_public_key;
    let mut sent = write_frame(&mut writer, FrameType::Hello, &req.config.to_bytes())?;
    if let Some(key) = &req.encrypted_key {
        let upload = encode_key_upload(params.as_lattice().fingerprint(), pk.fingerprint(), key);
        sent += write_frame(&mut writer, FrameType::KeyUpload, &upload)?;
    }
    sent += write_frame(&mut writer, FrameType::Request, &encode_request(&req.inputs))?;
    let (ty, payload) = read_frame(&mut reader)?;
    match ty {
        FrameType::Response => {
            let (slot_count, slot_width, ct) = decode_response(&payload)?;
            Ok(Response {
                slot_count,
                slot_width,
                ciphertext: pk.decode_ciphertext(ct)?,
                wire_bytes: FRAME_HEADER_BYTES + payload.len(),
                request_bytes: sent,
            })
        }
        FrameType::Error => Err(decode_error(&payload)),
        other => Err(Error::Protocol(format!("unexpected frame {other:?} from server"))),
    }
}
