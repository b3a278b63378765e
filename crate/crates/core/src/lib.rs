//! Rational pomset languages: Boolean operations and equivalence for
//! bi-Kleene terms, and sp-ideal closure of bw-rational terms, which decides
//! equality modulo the exchange law of concurrent Kleene algebra.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boolean;
pub mod budget;
pub mod error;
pub mod ideal;
pub mod oracle;
pub mod pomset;
pub mod regular;
pub mod semilinear;
pub mod syntax;
pub mod term;

pub use budget::Budget;
pub use error::{Error, Result};
pub use pomset::{ExtNat, GeneralPomset, Letter, SpPomset};
pub use syntax::Alphabet;
pub use term::{NormTerm, Term};
