//! Little-endian byte encoding helpers and the `HEC1` file envelope.

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"HEC1";
pub const FORMAT_VERSION: u8 = 1;

/// Kinds of files written by the command-line tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum FileKind {
    ClientSecret = 0x10,
    EvaluationKey = 0x11,
    LweCiphertexts = 0x12,
    SeededLweCiphertexts = 0x13,
    RlweCiphertexts = 0x14,
    SeededRlweCiphertexts = 0x15,
    Compressed = 0x16,
}

impl FileKind {
    pub fn from_byte(b: u8) -> Result<Self> {
        use FileKind::*;
        Ok(match b {
            0x10 => ClientSecret,
            0x11 => EvaluationKey,
            0x12 => LweCiphertexts,
            0x13 => SeededLweCiphertexts,
            0x14 => RlweCiphertexts,
            0x15 => SeededRlweCiphertexts,
            0x16 => Compressed,
            other => return Err(Error::format(format!("unknown file kind 0x{other:02x}"))),
        })
    }
}

pub fn write_envelope(kind: FileKind, body: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(body.len() + 6);
    out.extend_from_slice(MAGIC);
    out.push(FORMAT_VERSION);
    out.push(kind as u8);
    out.extend_from_slice(body);
    out
}

/// Splits a file into its kind and body, checking magic and version.
pub fn read_envelope(bytes: &[u8]) -> Result<(FileKind, &[u8])> {
    if bytes.len() < 6 || &bytes[..4] != MAGIC {
        return Err(Error::format("missing HEC1 magic"));
    }
    if bytes[4] != FORMAT_VERSION {
        return Err(Error::format(format!("unsupported format version {}", bytes[4])));
    }
    Ok((FileKind::from_byte(bytes[5])?, &bytes[6..]))
}

pub fn put_uint(out: &mut Vec<u8>, value: u64, width: usize) {
    out.extend_from_slice(&value.to_le_bytes()[..width]);
}

pub fn put_u16(out: &mut Vec<u8>, v: u16) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn put_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    put_u32(out, bytes.len() as u32);
    out.extend_from_slice(bytes);
}

pub fn put_str(out: &mut Vec<u8>, s: &str) {
    put_bytes(out, s.as_bytes());
}

/// `value` as exactly `width` little-endian bytes. Panics if it does not fit.
pub fn put_biguint(out: &mut Vec<u8>, value: &BigUint, width: usize) {
    let mut bytes = value.to_bytes_le();
    assert!(bytes.len() <= width, "integer wider than its field");
    bytes.resize(width, 0);
    out.extend_from_slice(&bytes);
}

/// Cursor over a byte slice; every read fails cleanly on truncation.
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| {
                Error::format(format!(
                    "truncated input: wanted {n} bytes at offset {}, have {}",
                    self.pos,
                    self.buf.len() - self.pos
                ))
            })?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub fn uint(&mut self, width: usize) -> Result<u64> {
        let mut le = [0u8; 8];
        le[..width].copy_from_slice(self.take(width)?);
        Ok(u64::from_le_bytes(le))
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> Result<u16> {
        Ok(self.uint(2)? as u16)
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(self.uint(4)? as u32)
    }

    pub fn u64(&mut self) -> Result<u64> {
        self.uint(8)
    }

    pub fn bytes(&mut self) -> Result<&'a [u8]> {
        let len = self.u32()? as usize;
        self.take(len)
    }

    pub fn string(&mut self) -> Result<String> {
        String::from_utf8(self.bytes()?.to_vec()).map_err(|_| Error::format("invalid UTF-8"))
    }

    pub fn biguint(&mut self, width: usize) -> Result<BigUint> {
        Ok(BigUint::from_bytes_le(self.take(width)?))
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::format(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}
