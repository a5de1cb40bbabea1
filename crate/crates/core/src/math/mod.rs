//! Modular, ring and sampling primitives shared by both lattice schemes.

mod modulus;
mod poly;
mod prg;
mod sample;

pub use modulus::{mod_q, round_to_plaintext, Modulus, MAX_MODULUS};
pub use poly::{poly_add, poly_negacyclic_mul, poly_sub, Polynomial};
pub use prg::{prg_expand, Seed};
pub use sample::{sample_error, sample_uniform_vector, NoiseParams, DEFAULT_SIGMA};

/// `ceil(log2 k)` for `k >= 1`, and 0 for `k = 0`.
pub(crate) fn ceil_log2(k: u64) -> u32 {
    if k <= 1 {
        0
    } else {
        64 - (k - 1).leading_zeros()
    }
}
