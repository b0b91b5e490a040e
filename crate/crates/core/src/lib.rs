pub mod arith;
pub mod cli;
pub mod curves;
pub mod error;
pub mod grass;
pub mod hecke;
pub mod lattice;
pub mod ralgebra;
pub mod rootdatum;
pub mod selftest;
pub mod symbols;

pub use error::{Error, Result};
