//! Representation stability for the permutation modules `k[GL_n(F_q)/GL_{n−m}(F_q)]`.
//!
//! Irreducible characters of `GL_n(F_q)` are indexed by label functions
//! (see [`label`]); the decomposition of the permutation module is read off from
//! zigzag path counts ([`branching`]) and checked against brute-force orbit
//! counts over explicit finite fields ([`oracle`]).

pub mod branching;
pub mod degrees;
pub mod error;
pub mod json;
pub mod label;
pub mod oracle;
pub mod partition;
pub mod qpoly;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use label::{LabelFunction, LabelShape};
pub use partition::Partition;
