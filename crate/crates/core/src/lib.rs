//! Compression of LWE and RLWE ciphertexts into a single Paillier ciphertext.
//!
//! A client holding a lattice secret key publishes that key encrypted
//! coefficient-wise under Paillier. A server that has computed on lattice
//! ciphertexts can then evaluate the linear part of lattice decryption inside
//! Paillier and return one additive ciphertext (768 bytes at 3072 bits)
//! instead of a full lattice ciphertext. The client decrypts it with its
//! Paillier key and finishes with the usual rounding.
//!
//! ```no_run
//! use hecomp::ahe::PaillierKeypair;
//! use hecomp::compression::{encrypt_lwe_key, lwe_compress, modified_lwe_decrypt};
//! use hecomp::lwe;
//! use hecomp::params::Registry;
//! use rand::rngs::OsRng;
//!
//! # fn main() -> hecomp::Result<()> {
//! let params = Registry::shipped().get("n630")?.lwe()?;
//! let sk = lwe::keygen(&params, &mut OsRng);
//! let kp = PaillierKeypair::generate(3072, &mut OsRng)?;
//! let esk = encrypt_lwe_key(&kp, &sk, &params, &mut OsRng)?;
//!
//! let ct = lwe::encrypt(&sk, 11, &params, &mut OsRng)?;
//! let x = lwe_compress(kp.public(), &esk, &ct, &params)?;
//! assert_eq!(modified_lwe_decrypt(&kp, &x, &params)?, 11);
//! # Ok(())
//! # }
//! ```
//!
//! Modules, bottom up: [`math`] (residues, polynomials, sampling, seed
//! expansion), [`lwe`] and [`rlwe`] (the lattice schemes), [`ahe`]
//! (Paillier), [`compression`], [`process`] (server-side weighted sums),
//! [`bench`] (size tables), [`protocol`] (client and server), [`cli`].

pub mod ahe;
pub mod bench;
pub mod cli;
pub mod codec;
pub mod compression;
pub mod error;
pub mod lwe;
pub mod math;
pub mod params;
pub mod process;
pub mod protocol;
pub mod rlwe;
pub mod scheme;

pub use error::{Error, Result};
