//! Compression of lattice ciphertexts into a single additive ciphertext.
//!
//! The client encrypts its lattice secret key coefficient by coefficient under
//! an additive scheme with plaintext modulus `m`. The server then evaluates the
//! linear part of lattice decryption homomorphically:
//!
//! ```text
//! LWE:            x = b ⊕ Σ_i (q - a[i]) ⊗ sk[i]
//! RLWE, coeff k:  x = B[k] ⊕ Σ_{i<=k} (q - A[k-i]) ⊗ S[i] ⊕ Σ_{i>k} A[N+k-i] ⊗ S[i]
//! ```
//!
//! Over the integers the plaintext of `x` is at most `q + d q^2`, so as long
//! as `m > q + d q^2` nothing wraps mod `m` and the client recovers
//! `⌊(ADec(x) mod q) / Δ⌉`, the same value direct decryption gives.
//!
//! Several such values fit into one additive plaintext at bit offsets
//! `j * w` with `w = bitlen(q + d q^2)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{CryptoRng, RngCore};

use crate::ahe::{AdditiveDecrypt, AdditiveHe};
use crate::codec::{put_u16, put_u64, Reader};
use crate::error::{Error, Result};
use crate::lwe::{LweCiphertext, LweParams, LweSecretKey};
use crate::math::{round_to_plaintext, Modulus};
use crate::rlwe::{RlweCiphertext, RlweParams, RlweSecretKey};
use crate::scheme::{LatticeParams, SchemeTag};

/// `q + d q^2`, the largest additive plaintext a single compression produces.
pub fn worst_case_value(q: &Modulus, dimension: usize) -> BigUint {
    let q = q.to_biguint();
    &q + BigUint::from(dimension) * &q * &q
}

/// `m > q + d q^2`, with `d` the parameter set's dimension.
pub fn check_compatibility<P: LatticeParams + ?Sized>(params: &P, m: &BigUint) -> bool {
    m > &worst_case_value(params.modulus(), params.dimension())
}

/// Bits per batch slot: `bitlen(q + d q^2)`.
pub fn slot_width(q: &Modulus, dimension: usize) -> u32 {
    worst_case_value(q, dimension).bits() as u32
}

/// `⌊floor(log2 m) / w⌋` slots. Zero capacity is an incompatibility.
pub fn batch_capacity<P: LatticeParams + ?Sized>(params: &P, m: &BigUint) -> Result<usize> {
    let w = slot_width(params.modulus(), params.dimension()) as u64;
    let usable = m.bits().saturating_sub(1);
    let capacity = (usable / w) as usize;
    if capacity == 0 {
        return Err(Error::Incompatible(format!(
            "a {}-bit additive modulus holds no {w}-bit slot",
            m.bits()
        )));
    }
    Ok(capacity.min(u16::MAX as usize))
}

fn require_compatible<P: LatticeParams + ?Sized>(params: &P, m: &BigUint) -> Result<()> {
    if !check_compatibility(params, m) {
        return Err(Error::Incompatible(format!(
            "additive modulus ({} bits) must exceed q + d*q^2 ({} bits) for {} dimension {}",
            m.bits(),
            worst_case_value(params.modulus(), params.dimension()).bits(),
            params.scheme().name(),
            params.dimension()
        )));
    }
    Ok(())
}

/// The lattice secret key encrypted coefficient-wise under the additive scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct EncryptedSecretKey<C> {
    scheme: SchemeTag,
    params_fingerprint: u64,
    ahe_fingerprint: u64,
    entries: Vec<C>,
}

impl<C: Clone> EncryptedSecretKey<C> {
    pub fn scheme(&self) -> SchemeTag {
        self.scheme
    }

    pub fn params_fingerprint(&self) -> u64 {
        self.params_fingerprint
    }

    pub fn ahe_fingerprint(&self) -> u64 {
        self.ahe_fingerprint
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Concatenated entries, `d * ciphertext_len` bytes. Scheme and
    /// fingerprints are recovered from the parameters on decode.
    pub fn to_bytes<A: AdditiveHe<Ciphertext = C>>(&self, ahe: &A) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries.len() * ahe.ciphertext_len());
        for c in &self.entries {
            out.extend_from_slice(&ahe.encode_ciphertext(c));
        }
        out
    }

    pub fn from_bytes<A, P>(bytes: &[u8], ahe: &A, params: &P) -> Result<Self>
    where
        A: AdditiveHe<Ciphertext = C>,
        P: LatticeParams + ?Sized,
    {
        let width = ahe.ciphertext_len();
        if bytes.len() != params.dimension() * width {
            return Err(Error::format(format!(
                "encrypted key must be {} bytes, got {}",
                params.dimension() * width,
                bytes.len()
            )));
        }
        let entries = bytes
            .chunks(width)
            .map(|chunk| ahe.decode_ciphertext(chunk))
            .collect::<Result<Vec<_>>>()?;
        Ok(EncryptedSecretKey {
            scheme: params.scheme(),
            params_fingerprint: params.fingerprint(),
            ahe_fingerprint: ahe.fingerprint(),
            entries,
        })
    }

    fn check<A, P>(&self, ahe: &A, params: &P) -> Result<()>
    where
        A: AdditiveHe<Ciphertext = C>,
        P: LatticeParams + ?Sized,
    {
        if self.scheme != params.scheme() || self.params_fingerprint != params.fingerprint() {
            return Err(Error::param(
                "encrypted key was made for a different lattice parameter set",
            ));
        }
        if self.ahe_fingerprint != ahe.fingerprint() {
            return Err(Error::KeyMismatch(
                "encrypted key was made under a different additive key".into(),
            ));
        }
        if self.entries.len() != params.dimension() {
            return Err(Error::param("encrypted key length does not match dimension"));
        }
        Ok(())
    }
}

fn encrypt_key<A, P, R>(
    ahe: &A,
    params: &P,
    coeffs: &[u64],
    rng: &mut R,
) -> Result<EncryptedSecretKey<A::Ciphertext>>
where
    A: AdditiveHe,
    P: LatticeParams + ?Sized,
    R: RngCore + CryptoRng + ?Sized,
{
    require_compatible(params, ahe.plaintext_modulus())?;
    let entries = coeffs
        .iter()
        .map(|&s| ahe.encrypt(&BigUint::from(s), rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(EncryptedSecretKey {
        scheme: params.scheme(),
        params_fingerprint: params.fingerprint(),
        ahe_fingerprint: ahe.fingerprint(),
        entries,
    })
}

pub fn encrypt_lwe_key<A, R>(
    ahe: &A,
    sk: &LweSecretKey,
    params: &LweParams,
    rng: &mut R,
) -> Result<EncryptedSecretKey<A::Ciphertext>>
where
    A: AdditiveHe,
    R: RngCore + CryptoRng + ?Sized,
{
    if sk.coeffs().len() != params.dimension() {
        return Err(Error::param("secret key length does not match dimension"));
    }
    encrypt_key(ahe, params, sk.coeffs(), rng)
}

pub fn encrypt_rlwe_key<A, R>(
    ahe: &A,
    sk: &RlweSecretKey,
    params: &RlweParams,
    rng: &mut R,
) -> Result<EncryptedSecretKey<A::Ciphertext>>
where
    A: AdditiveHe,
    R: RngCore + CryptoRng + ?Sized,
{
    if sk.coeffs().len() != params.dimension() {
        return Err(Error::param("secret key length does not match dimension"));
    }
    encrypt_key(ahe, params, sk.coeffs(), rng)
}

/// How the additive plaintext of a compressed ciphertext is laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotLayout {
    pub scheme: SchemeTag,
    pub slot_count: u16,
    pub slot_width: u16,
    pub params_fingerprint: u64,
}

impl SlotLayout {
    fn for_params<P: LatticeParams + ?Sized>(params: &P, slot_count: usize) -> Self {
        SlotLayout {
            scheme: params.scheme(),
            slot_count: slot_count as u16,
            slot_width: slot_width(params.modulus(), params.dimension()) as u16,
            params_fingerprint: params.fingerprint(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompressedCiphertext<C> {
    payload: C,
    layout: SlotLayout,
}

/// Bytes in front of the payload: tag, slot count, slot width, fingerprint.
pub const COMPRESSED_HEADER_BYTES: usize = 1 + 2 + 2 + 8;

impl<C> CompressedCiphertext<C> {
    pub fn from_parts(payload: C, layout: SlotLayout) -> Self {
        CompressedCiphertext { payload, layout }
    }

    pub fn payload(&self) -> &C {
        &self.payload
    }

    pub fn layout(&self) -> &SlotLayout {
        &self.layout
    }

    pub fn to_bytes<A: AdditiveHe<Ciphertext = C>>(&self, ahe: &A) -> Vec<u8> {
        let mut out = Vec::with_capacity(COMPRESSED_HEADER_BYTES + ahe.ciphertext_len());
        out.push(self.layout.scheme as u8);
        put_u16(&mut out, self.layout.slot_count);
        put_u16(&mut out, self.layout.slot_width);
        put_u64(&mut out, self.layout.params_fingerprint);
        out.extend_from_slice(&ahe.encode_ciphertext(&self.payload));
        out
    }

    pub fn from_bytes<A: AdditiveHe<Ciphertext = C>>(bytes: &[u8], ahe: &A) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let layout = SlotLayout {
            scheme: SchemeTag::from_byte(r.u8()?)?,
            slot_count: r.u16()?,
            slot_width: r.u16()?,
            params_fingerprint: r.u64()?,
        };
        let payload = ahe.decode_ciphertext(r.take(ahe.ciphertext_len())?)?;
        r.finish()?;
        Ok(CompressedCiphertext { payload, layout })
    }
}

/// Additive-plaintext constant and per-key-entry scalars of one compression.
struct LinearForm {
    constant: BigUint,
    scalars: Vec<BigUint>,
}

impl LinearForm {
    fn evaluate(&self, sk: &[u64]) -> BigUint {
        self.scalars
            .iter()
            .zip(sk)
            .fold(self.constant.clone(), |acc, (k, &s)| acc + k * s)
    }
}

fn lwe_form(ct: &LweCiphertext, params: &LweParams) -> Result<LinearForm> {
    if ct.a().len() != params.dimension() {
        return Err(Error::param("ciphertext dimension does not match parameters"));
    }
    let q = params.modulus();
    Ok(LinearForm {
        constant: BigUint::from(ct.b()),
        scalars: ct.a().iter().map(|&a| BigUint::from(q.complement(a))).collect(),
    })
}

fn rlwe_form(ct: &RlweCiphertext, k: usize, params: &RlweParams) -> Result<LinearForm> {
    let n = params.degree();
    if ct.a().degree() != n {
        return Err(Error::param("ciphertext degree does not match parameters"));
    }
    if k >= n {
        return Err(Error::Index { index: k, bound: n });
    }
    let q = params.modulus();
    let a = ct.a().coeffs();
    let scalars = (0..n)
        .map(|i| {
            if i <= k {
                BigUint::from(q.complement(a[k - i]))
            } else {
                BigUint::from(a[n + k - i])
            }
        })
        .collect();
    Ok(LinearForm {
        constant: BigUint::from(ct.b().coeffs()[k]),
        scalars,
    })
}

fn evaluate<A: AdditiveHe>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    form: &LinearForm,
) -> Result<A::Ciphertext> {
    let terms: Vec<(BigUint, &A::Ciphertext)> = form
        .scalars
        .iter()
        .cloned()
        .zip(esk.entries.iter())
        .filter(|(k, _)| !k.is_zero())
        .collect();
    ahe.linear_combination(&form.constant, &terms)
}

/// `⊕_j 2^{jw} ⊗ x_j`, evaluated Horner-style from the top slot down.
fn pack<A, P>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    forms: &[LinearForm],
    params: &P,
) -> Result<CompressedCiphertext<A::Ciphertext>>
where
    A: AdditiveHe,
    P: LatticeParams + ?Sized,
{
    let shift = BigUint::one() << slot_width(params.modulus(), params.dimension());
    let mut slots = forms.iter().rev();
    let mut acc = evaluate(ahe, esk, slots.next().expect("at least one slot"))?;
    for form in slots {
        acc = ahe.add(&ahe.plain_mul(&acc, &shift)?, &evaluate(ahe, esk, form)?)?;
    }
    Ok(CompressedCiphertext {
        payload: acc,
        layout: SlotLayout::for_params(params, forms.len()),
    })
}

fn prepare<A, P>(ahe: &A, esk: &EncryptedSecretKey<A::Ciphertext>, params: &P) -> Result<()>
where
    A: AdditiveHe,
    P: LatticeParams + ?Sized,
{
    esk.check(ahe, params)?;
    require_compatible(params, ahe.plaintext_modulus())
}

fn check_batch_len<P: LatticeParams + ?Sized>(params: &P, m: &BigUint, len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::Batch("nothing to compress".into()));
    }
    let capacity = batch_capacity(params, m)?;
    if len > capacity {
        return Err(Error::Batch(format!(
            "{len} values exceed the batch capacity of {capacity}"
        )));
    }
    Ok(())
}

/// `x = b ⊕ Σ (q - a[i]) ⊗ sk[i]`.
pub fn lwe_compress<A: AdditiveHe>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    ct: &LweCiphertext,
    params: &LweParams,
) -> Result<CompressedCiphertext<A::Ciphertext>> {
    prepare(ahe, esk, params)?;
    pack(ahe, esk, &[lwe_form(ct, params)?], params)
}

/// Compresses coefficient `k` of the RLWE decryption.
pub fn rlwe_compress<A: AdditiveHe>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    ct: &RlweCiphertext,
    k: usize,
    params: &RlweParams,
) -> Result<CompressedCiphertext<A::Ciphertext>> {
    prepare(ahe, esk, params)?;
    pack(ahe, esk, &[rlwe_form(ct, k, params)?], params)
}

/// Packs up to [`batch_capacity`] LWE ciphertexts into one payload; slot `j`
/// holds ciphertext `j`.
pub fn lwe_compress_batch<A: AdditiveHe>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    cts: &[LweCiphertext],
    params: &LweParams,
) -> Result<CompressedCiphertext<A::Ciphertext>> {
    prepare(ahe, esk, params)?;
    check_batch_len(params, ahe.plaintext_modulus(), cts.len())?;
    let forms = cts
        .iter()
        .map(|ct| lwe_form(ct, params))
        .collect::<Result<Vec<_>>>()?;
    pack(ahe, esk, &forms, params)
}

/// Packs coefficients `ks` of one RLWE ciphertext; slot `j` holds `ks[j]`.
pub fn rlwe_compress_batch<A: AdditiveHe>(
    ahe: &A,
    esk: &EncryptedSecretKey<A::Ciphertext>,
    ct: &RlweCiphertext,
    ks: &[usize],
    params: &RlweParams,
) -> Result<CompressedCiphertext<A::Ciphertext>> {
    prepare(ahe, esk, params)?;
    check_batch_len(params, ahe.plaintext_modulus(), ks.len())?;
    let forms = ks
        .iter()
        .map(|&k| rlwe_form(ct, k, params))
        .collect::<Result<Vec<_>>>()?;
    pack(ahe, esk, &forms, params)
}

fn check_layout<P: LatticeParams + ?Sized>(layout: &SlotLayout, params: &P, m: &BigUint) -> Result<()> {
    if layout.scheme != params.scheme() || layout.params_fingerprint != params.fingerprint() {
        return Err(Error::param(
            "compressed ciphertext was made for a different lattice parameter set",
        ));
    }
    let width = slot_width(params.modulus(), params.dimension());
    if layout.slot_width as u32 != width {
        return Err(Error::Batch(format!(
            "slot width {} does not match the expected {width}",
            layout.slot_width
        )));
    }
    if layout.slot_count == 0 {
        return Err(Error::Batch("layout has no slots".into()));
    }
    if layout.slot_count > 1 && layout.slot_count as usize > batch_capacity(params, m)? {
        return Err(Error::Batch(format!(
            "{} slots exceed the capacity of the additive modulus",
            layout.slot_count
        )));
    }
    Ok(())
}

fn residue(y: &BigUint, q: &Modulus) -> u64 {
    (y % q.to_biguint()).to_u64().unwrap()
}

/// `⌊(ADec(x) mod q) / Δ⌉ mod p` for a single-slot compressed ciphertext.
pub fn modified_decrypt<D, P>(kp: &D, x: &CompressedCiphertext<D::Ciphertext>, params: &P) -> Result<u64>
where
    D: AdditiveDecrypt,
    P: LatticeParams + ?Sized,
{
    check_layout(&x.layout, params, kp.plaintext_modulus())?;
    if x.layout.slot_count != 1 {
        return Err(Error::Batch(format!(
            "{}-slot payload needs the batch decryption",
            x.layout.slot_count
        )));
    }
    let y = kp.decrypt(&x.payload)?;
    let phase = residue(&y, params.modulus());
    Ok(round_to_plaintext(phase, params.delta(), params.plaintext_modulus()))
}

pub fn modified_lwe_decrypt<D: AdditiveDecrypt>(
    kp: &D,
    x: &CompressedCiphertext<D::Ciphertext>,
    params: &LweParams,
) -> Result<u64> {
    modified_decrypt(kp, x, params)
}

pub fn modified_rlwe_decrypt<D: AdditiveDecrypt>(
    kp: &D,
    x: &CompressedCiphertext<D::Ciphertext>,
    params: &RlweParams,
) -> Result<u64> {
    modified_decrypt(kp, x, params)
}

/// Decodes every slot: `⌊(((y >> jw) mod 2^w) mod q) / Δ⌉ mod p`.
pub fn modified_decrypt_batch<D, P>(
    kp: &D,
    x: &CompressedCiphertext<D::Ciphertext>,
    params: &P,
) -> Result<Vec<u64>>
where
    D: AdditiveDecrypt,
    P: LatticeParams + ?Sized,
{
    check_layout(&x.layout, params, kp.plaintext_modulus())?;
    let y = kp.decrypt(&x.payload)?;
    let w = x.layout.slot_width as u64;
    let mask = (BigUint::one() << w) - 1u32;
    Ok((0..x.layout.slot_count as u64)
        .map(|j| {
            let slot = (&y >> (j * w)) & &mask;
            let phase = residue(&slot, params.modulus());
            round_to_plaintext(phase, params.delta(), params.plaintext_modulus())
        })
        .collect())
}

/// The integer `b + Σ (q - a[i]) sk[i]` that an LWE compression encrypts,
/// computed in the clear.
pub fn lwe_clear_value(sk: &LweSecretKey, ct: &LweCiphertext, params: &LweParams) -> Result<BigUint> {
    Ok(lwe_form(ct, params)?.evaluate(sk.coeffs()))
}

/// The integer an RLWE compression of coefficient `k` encrypts, in the clear.
pub fn rlwe_clear_value(
    sk: &RlweSecretKey,
    ct: &RlweCiphertext,
    k: usize,
    params: &RlweParams,
) -> Result<BigUint> {
    Ok(rlwe_form(ct, k, params)?.evaluate(sk.coeffs()))
}
