//! Client/server exchange over TCP.
//!
//! A session is `hello → [key upload] → request` from the client, answered by
//! one `response` or `error` frame. The server sees only public material:
//! the additive public key, the encrypted lattice key and seeded ciphertexts.

mod client;
mod server;
pub mod wire;

pub use client::{send_request, Request, Response};
pub use server::{KeyTable, Server, ServerHandle};
pub use wire::SessionConfig;
