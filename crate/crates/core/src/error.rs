use alloc::string::String;
use core::fmt;

use crate::pomset::NWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Term or pomset text did not match the grammar.
    Syntax { pos: usize, msg: String },
    /// The poset contains an induced N; the four vertices are reported.
    NotSeriesParallel(NWitness),
    InvalidPomset(&'static str),
    /// A configured budget or enumeration cap was hit.
    CapExceeded { what: &'static str, limit: usize },
    /// An operator outside the fragment an engine accepts.
    UnsupportedOperator { engine: &'static str, op: &'static str },
    AlphabetMismatch,
    DimensionMismatch { left: usize, right: usize },
    UnregisteredTarget,
    ModeMismatch(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            Error::NotSeriesParallel(NWitness(v)) => write!(
                f,
                "pomset is not series-parallel: vertices {}, {}, {}, {} form an N",
                v[0], v[1], v[2], v[3]
            ),
            Error::InvalidPomset(msg) => write!(f, "invalid pomset: {msg}"),
            Error::CapExceeded { what, limit } => write!(f, "budget exceeded: {what} (limit {limit})"),
            Error::UnsupportedOperator { engine, op } => {
                write!(f, "operator {op} is not supported by the {engine} engine")
            }
            Error::AlphabetMismatch => f.write_str("automata are over different alphabets"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "semilinear sets have dimensions {left} and {right}")
            }
            Error::UnregisteredTarget => f.write_str("target language is not registered in the congruence"),
            Error::ModeMismatch(msg) => write!(f, "decomposition mode mismatch: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
