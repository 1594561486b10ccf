//! S-boxes built from pairs of orthogonal cellular automata (OCA).
//!
//! The crate covers the whole pipeline: Boolean function measures
//! ([`boolfun`]), no-boundary CA and their Latin squares ([`ca`]), S-box
//! construction and analysis ([`sbox`]), linear components spaces ([`lcs`]),
//! polynomial/cyclic code recognition ([`codes`]) and the exhaustive pair
//! search with its reports ([`search`], [`report`]).
//!
//! Bit convention used throughout: an integer encodes a bit vector with its
//! first coordinate as the most significant bit.

pub mod boolfun;
pub mod ca;
pub mod codes;
mod error;
pub mod lcs;
pub mod poly;
pub mod report;
pub mod sbox;
pub mod search;

pub use boolfun::{AnfForm, BinaryPolynomial, LocalRule, WalshSpectrum};
pub use ca::{CellularAutomaton, LatinSquare};
pub use codes::CodeClassification;
pub use error::{Error, Result};
pub use lcs::LinearCode;
pub use sbox::SBox;
pub use search::{PairRecord, SearchReport};
