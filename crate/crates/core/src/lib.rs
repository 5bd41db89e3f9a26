//! Digital nets and sequences with optimal-order L2 and Lq discrepancy.
//!
//! Finite-field arithmetic ([`field`]), net generation and structural
//! checks ([`net`], [`metrics`]), explicit constructions
//! ([`constructions`]), discrepancy computation ([`discrepancy`]) and the
//! command-line front end ([`cli`]).

pub mod acceptance;
pub mod cli;
pub mod constructions;
pub mod discrepancy;
mod error;
pub mod field;
pub mod metrics;
pub mod net;
pub mod pointfile;

pub use error::{Error, Result};
