//! Exit-code contract: 0 success, 1 usage, 2 data or I/O, 3 algorithm failure.

use std::fmt;
use std::io::{self, Write};

use sparsedtw_core::Error;

pub const OK: u8 = 0;
pub const USAGE: u8 = 1;
pub const DATA: u8 = 2;
pub const ALGORITHM: u8 = 3;

/// A bad flag combination detected after parsing.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Input that parsed but has the wrong shape.
#[derive(Debug)]
pub struct Data(pub String);

impl fmt::Display for Data {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Data {}

pub fn data(msg: impl Into<String>) -> anyhow::Error {
    Data(msg.into()).into()
}

pub fn code_for_core(err: &Error) -> u8 {
    match err {
        Error::InvalidResolution(_) | Error::InvalidCorrelation(_) | Error::InvalidParameter(_) => {
            USAGE
        }
        Error::BandDisconnected { .. }
        | Error::SparseDisconnected { .. }
        | Error::BrokenPath { .. }
        | Error::RecursionLimit(_)
        | Error::DenseBudgetExceeded { .. } => ALGORITHM,
        Error::EmptySeries
        | Error::NonFinite { .. }
        | Error::UndefinedCorrelation
        | Error::LengthMismatch(..)
        | Error::Parse { .. }
        | Error::Io { .. }
        | Error::Csv(_) => DATA,
    }
}

/// Picks the code of the first recognised cause. Anything else is treated as
/// an I/O problem.
pub fn code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return USAGE;
        }
        if cause.is::<Data>() {
            return DATA;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return code_for_core(e);
        }
    }
    DATA
}

/// Prints a line to standard output. A closed pipe is not an error.
pub fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
