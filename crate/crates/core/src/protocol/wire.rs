//! Length-prefixed frames: `type: u8 | length: u32 LE | payload`.

use std::io::{Read, Write};

use crate::ahe::PaillierPublicKey;
use crate::codec::{put_bytes, put_str, put_u16, put_u32, put_u64, Reader};
use crate::error::{Error, Result};
use crate::scheme::SchemeTag;

pub const FRAME_HEADER_BYTES: usize = 5;
pub const MAX_FRAME_LEN: usize = 64 << 20;
/// Slot count and slot width in front of the compressed payload.
pub const RESPONSE_HEADER_BYTES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum FrameType {
    Hello = 0x01,
    KeyUpload = 0x02,
    Request = 0x03,
    Response = 0x04,
    Error = 0x05,
}

impl FrameType {
    pub fn from_byte(b: u8) -> Result<Self> {
        Ok(match b {
            0x01 => FrameType::Hello,
            0x02 => FrameType::KeyUpload,
            0x03 => FrameType::Request,
            0x04 => FrameType::Response,
            0x05 => FrameType::Error,
            other => return Err(Error::Protocol(format!("unknown frame type 0x{other:02x}"))),
        })
    }
}

pub fn write_frame<W: Write>(w: &mut W, ty: FrameType, payload: &[u8]) -> Result<usize> {
    if payload.len() > MAX_FRAME_LEN {
        return Err(Error::Protocol(format!(
            "frame of {} bytes exceeds the {MAX_FRAME_LEN}-byte limit",
            payload.len()
        )));
    }
    let mut header = [0u8; FRAME_HEADER_BYTES];
    header[0] = ty as u8;
    header[1..].copy_from_slice(&(payload.len() as u32).to_le_bytes());
    w.write_all(&header)?;
    w.write_all(payload)?;
    w.flush()?;
    Ok(FRAME_HEADER_BYTES + payload.len())
}

pub fn read_frame<R: Read>(r: &mut R) -> Result<(FrameType, Vec<u8>)> {
    let mut header = [0u8; FRAME_HEADER_BYTES];
    r.read_exact(&mut header)?;
    let ty = FrameType::from_byte(header[0])?;
    let len = u32::from_le_bytes(header[1..].try_into().unwrap()) as usize;
    if len > MAX_FRAME_LEN {
        return Err(Error::Protocol(format!(
            "frame of {len} bytes exceeds the {MAX_FRAME_LEN}-byte limit"
        )));
    }
    let mut payload = vec![0u8; len];
    r.read_exact(&mut payload)?;
    Ok((ty, payload))
}

/// What the client asks the server to compute: a weighted sum of its inputs,
/// then compression (of coefficients `extract` for RLWE).
#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub scheme: SchemeTag,
    pub label: String,
    pub ahe_public_key: PaillierPublicKey,
    /// `(input index, weight)` pairs; weights must be below `p`.
    pub weights: Vec<(u32, u64)>,
    pub extract: Vec<u32>,
}

impl SessionConfig {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.scheme as u8];
        put_str(&mut out, &self.label);
        put_bytes(&mut out, &self.ahe_public_key.to_bytes());
        put_u32(&mut out, self.weights.len() as u32);
        for &(i, w) in &self.weights {
            put_u32(&mut out, i);
            put_u64(&mut out, w);
        }
        put_u32(&mut out, self.extract.len() as u32);
        for &k in &self.extract {
            put_u32(&mut out, k);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let scheme = SchemeTag::from_byte(r.u8()?)?;
        let label = r.string()?;
        let ahe_public_key = PaillierPublicKey::from_bytes(r.bytes()?)?;
        let count = r.u32()? as usize;
        let mut weights = Vec::with_capacity(count.min(r.remaining() / 12));
        for _ in 0..count {
            weights.push((r.u32()?, r.u64()?));
        }
        let count = r.u32()? as usize;
        let mut extract = Vec::with_capacity(count.min(r.remaining() / 4));
        for _ in 0..count {
            extract.push(r.u32()?);
        }
        r.finish()?;
        Ok(SessionConfig {
            scheme,
            label,
            ahe_public_key,
            weights,
            extract,
        })
    }
}

/// `params fingerprint | additive key fingerprint | encrypted key bytes`.
pub fn encode_key_upload(params_fp: u64, ahe_fp: u64, key: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + key.len());
    put_u64(&mut out, params_fp);
    put_u64(&mut out, ahe_fp);
    out.extend_from_slice(key);
    out
}

pub fn decode_key_upload(bytes: &[u8]) -> Result<(u64, u64, &[u8])> {
    let mut r = Reader::new(bytes);
    let params_fp = r.u64()?;
    let ahe_fp = r.u64()?;
    let rest = r.take(r.remaining())?;
    Ok((params_fp, ahe_fp, rest))
}

pub fn encode_request(inputs: &[Vec<u8>]) -> Vec<u8> {
    let mut out = Vec::new();
    put_u32(&mut out, inputs.len() as u32);
    for input in inputs {
        put_bytes(&mut out, input);
    }
    out
}

pub fn decode_request(bytes: &[u8]) -> Result<Vec<&[u8]>> {
    let mut r = Reader::new(bytes);
    let count = r.u32()? as usize;
    let mut inputs = Vec::with_capacity(count.min(r.remaining() / 4));
    for _ in 0..count {
        inputs.push(r.bytes()?);
    }
    r.finish()?;
    Ok(inputs)
}

pub fn encode_response(slot_count: u16, slot_width: u16, ciphertext: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(RESPONSE_HEADER_BYTES + ciphertext.len());
    put_u16(&mut out, slot_count);
    put_u16(&mut out, slot_width);
    out.extend_from_slice(ciphertext);
    out
}

pub fn decode_response(bytes: &[u8]) -> Result<(u16, u16, &[u8])> {
    let mut r = Reader::new(bytes);
    let count = r.u16()?;
    let width = r.u16()?;
    Ok((count, width, r.take(r.remaining())?))
}

/// Error codes carried by frame `0x05`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ErrorCode {
    Protocol = 1,
    Parameter = 2,
    KeyMismatch = 3,
    Incompatible = 4,
    NoiseBudget = 5,
    Batch = 6,
    Internal = 7,
}

impl ErrorCode {
    pub fn of(e: &Error) -> Self {
        match e {
            Error::Protocol(_) | Error::Format(_) => ErrorCode::Protocol,
            Error::Parameter(_) | Error::MessageRange { .. } | Error::Index { .. } => ErrorCode::Parameter,
            Error::KeyMismatch(_) => ErrorCode::KeyMismatch,
            Error::Incompatible(_) => ErrorCode::Incompatible,
            Error::NoiseBudget(_) => ErrorCode::NoiseBudget,
            Error::Batch(_) => ErrorCode::Batch,
            Error::Generation(_) | Error::Io(_) => ErrorCode::Internal,
        }
    }

    fn from_byte(b: u8) -> Self {
        match b {
            1 => ErrorCode::Protocol,
            2 => ErrorCode::Parameter,
            3 => ErrorCode::KeyMismatch,
            4 => ErrorCode::Incompatible,
            5 => ErrorCode::NoiseBudget,
            6 => ErrorCode::Batch,
            _ => ErrorCode::Internal,
        }
    }
}

pub fn encode_error(e: &Error) -> Vec<u8> {
    let mut out = vec![ErrorCode::of(e) as u8];
    put_str(&mut out, &e.to_string());
    out
}

/// Turns a received error frame back into a local error of the same kind.
pub fn decode_error(bytes: &[u8]) -> Error {
    let mut r = Reader::new(bytes);
    let (code, msg) = match (r.u8(), r.string()) {
        (Ok(c), Ok(m)) => (ErrorCode::from_byte(c), format!("server: {m}")),
        _ => return Error::Protocol("malformed error frame".into()),
    };
    match code {
        ErrorCode::Parameter => Error::Parameter(msg),
        ErrorCode::KeyMismatch => Error::KeyMismatch(msg),
        ErrorCode::Incompatible => Error::Incompatible(msg),
        ErrorCode::NoiseBudget => Error::NoiseBudget(msg),
        ErrorCode::Batch => Error::Batch(msg),
        ErrorCode::Protocol | ErrorCode::Internal => Error::Protocol(msg),
    }
}
