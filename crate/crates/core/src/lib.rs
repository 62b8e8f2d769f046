//! Truncated Fock-space simulation of squeezer and beamsplitter networks,
//! together with the su(1,1) structure those networks carry.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod fock;
pub mod network;
pub mod su11;
pub mod suite;

pub use error::{Error, Result};
