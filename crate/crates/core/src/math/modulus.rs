//! Ciphertext moduli and canonical residues.
//!
//! Residues of `Z_q` are stored as `u64` in `[0, q)`, so `q` itself may be as
//! large as `2^64`. Power-of-two moduli reduce with a mask; every other
//! modulus goes through a 128-bit remainder.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest supported ciphertext modulus.
pub const MAX_MODULUS: u128 = 1 << 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    value: u128,
    /// `q - 1` when `q` is a power of two.
    mask: Option<u64>,
}

impl Modulus {
    /// A general modulus `2 <= q <= 2^64`.
    pub fn new(q: u128) -> Result<Self> {
        if q < 2 {
            return Err(Error::param(format!("modulus must be at least 2, got {q}")));
        }
        if q > MAX_MODULUS {
            return Err(Error::param(format!("modulus {q} exceeds 2^64")));
        }
        let mask = q.is_power_of_two().then(|| (q - 1) as u64);
        Ok(Modulus { value: q, mask })
    }

    /// `q = 2^log2_q` for `1 <= log2_q <= 64`.
    pub fn power_of_two(log2_q: u32) -> Result<Self> {
        if !(1..=64).contains(&log2_q) {
            return Err(Error::param(format!("log2_q must be in 1..=64, got {log2_q}")));
        }
        Modulus::new(1u128 << log2_q)
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn is_power_of_two(&self) -> bool {
        self.mask.is_some()
    }

    /// `ceil(log2 q)`: the bit width of the largest residue.
    pub fn bits(&self) -> u32 {
        128 - (self.value - 1).leading_zeros()
    }

    /// Width of one serialized residue, `ceil(bits / 8)` bytes.
    pub fn residue_bytes(&self) -> usize {
        (self.bits() as usize).div_ceil(8)
    }

    pub fn to_biguint(&self) -> BigUint {
        BigUint::from(self.value)
    }

    #[inline]
    pub fn reduce(&self, x: u128) -> u64 {
        match self.mask {
            Some(mask) => (x as u64) & mask,
            None => (x % self.value) as u64,
        }
    }

    #[inline]
    pub fn reduce_i128(&self, x: i128) -> u64 {
        match self.mask {
            // Two's complement truncation is exact modulo any power of two.
            Some(mask) => (x as u64) & mask,
            None => x.rem_euclid(self.value as i128) as u64,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 + b as u128)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 + self.value - b as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.mask {
            Some(mask) => a.wrapping_mul(b) & mask,
            None => ((a as u128 * b as u128) % self.value) as u64,
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    /// `q - a` as an integer in `(0, q]`; note `a = 0` maps to `q`, not `0`.
    #[inline]
    pub fn complement(&self, a: u64) -> u128 {
        self.value - a as u128
    }

    pub fn contains(&self, a: u64) -> bool {
        (a as u128) < self.value
    }
}

/// Canonical representative of `x mod q` in `[0, q)`.
pub fn mod_q(x: &BigInt, q: &BigUint) -> Result<BigUint> {
    if *q < BigUint::from(2u8) {
        return Err(Error::param(format!("modulus must be at least 2, got {q}")));
    }
    let q_signed = BigInt::from_biguint(Sign::Plus, q.clone());
    let mut r = x % &q_signed;
    if r.sign() == Sign::Minus {
        r += &q_signed;
    }
    Ok(r.to_biguint().unwrap_or_else(BigUint::zero))
}

/// Rounds `phase / delta` half-up and reduces the result modulo `p`.
///
/// Ties (`phase = delta * (k + 1/2)`) round up.
#[inline]
pub fn round_to_plaintext(phase: u64, delta: u64, p: u64) -> u64 {
    let num = 2 * phase as u128 + delta as u128;
    let den = 2 * delta as u128;
    ((num / den) % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn mod_q_examples() {
        let q = BigUint::from(64u32);
        assert_eq!(mod_q(&big(0), &q).unwrap(), BigUint::from(0u32));
        assert_eq!(mod_q(&big(-1), &q).unwrap(), BigUint::from(63u32));
        assert_eq!(mod_q(&big(529), &q).unwrap(), BigUint::from(17u32));
        assert_eq!(mod_q(&big(-129), &q).unwrap(), BigUint::from(63u32));
    }

    #[test]
    fn mod_q_rejects_small_modulus() {
        assert!(matches!(
            mod_q(&big(5), &BigUint::from(1u8)),
            Err(Error::Parameter(_))
        ));
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(MAX_MODULUS + 1).is_err());
        assert!(Modulus::power_of_two(0).is_err());
        assert!(Modulus::power_of_two(65).is_err());
    }

    #[test]
    fn bits_and_widths() {
        let q = Modulus::power_of_two(64).unwrap();
        assert_eq!(q.bits(), 64);
        assert_eq!(q.residue_bytes(), 8);
        let q = Modulus::power_of_two(27).unwrap();
        assert_eq!(q.bits(), 27);
        assert_eq!(q.residue_bytes(), 4);
        let q = Modulus::new(97).unwrap();
        assert_eq!(q.bits(), 7);
        assert_eq!(q.residue_bytes(), 1);
        assert!(!q.is_power_of_two());
    }

    #[test]
    fn arithmetic_matches_bigint_for_full_width_modulus() {
        let q = Modulus::power_of_two(64).unwrap();
        let a = u64::MAX - 3;
        let b = 12345678901234567u64;
        let qb = q.to_biguint();
        let expect = |x: BigInt| mod_q(&x, &qb).unwrap();
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        assert_eq!(BigUint::from(q.add(a, b)), expect(&ab + &bb));
        assert_eq!(BigUint::from(q.sub(b, a)), expect(&bb - &ab));
        assert_eq!(BigUint::from(q.mul(a, b)), expect(&ab * &bb));
        assert_eq!(q.neg(0), 0);
        assert_eq!(q.reduce_i128(-1), u64::MAX);
    }

    #[test]
    fn arithmetic_matches_bigint_for_prime_modulus() {
        let q = Modulus::new(97).unwrap();
        for a in 0..97u64 {
            for b in (0..97u64).step_by(7) {
                assert_eq!(q.add(a, b), (a + b) % 97);
                assert_eq!(q.sub(a, b), (a + 97 - b) % 97);
                assert_eq!(q.mul(a, b), (a * b) % 97);
            }
        }
        assert_eq!(q.reduce_i128(-1), 96);
    }

    #[test]
    fn complement_of_zero_is_q() {
        let q = Modulus::power_of_two(6).unwrap();
        assert_eq!(q.complement(0), 64);
        assert_eq!(q.complement(2), 62);
    }

    #[test]
    fn rounding_is_half_up_then_mod_p() {
        // q = 64, p = 4, delta = 16
        assert_eq!(round_to_plaintext(17, 16, 4), 1);
        assert_eq!(round_to_plaintext(63, 16, 4), 0);
        assert_eq!(round_to_plaintext(8, 16, 4), 1);
        assert_eq!(round_to_plaintext(7, 16, 4), 0);
        assert_eq!(round_to_plaintext(u64::MAX, 1 << 60, 16), 0);
    }
}
