use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Integrity failures when reading a table or checkpoint file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrityKind {
    BadMagic,
    Truncated,
    Checksum,
    LengthMismatch,
    BadFlags,
}

impl std::fmt::Display for IntegrityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IntegrityKind::BadMagic => "bad magic",
            IntegrityKind::Truncated => "truncated file",
            IntegrityKind::Checksum => "checksum mismatch",
            IntegrityKind::LengthMismatch => "declared length does not match payload",
            IntegrityKind::BadFlags => "unknown flag bits",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no expression for {n} with at most {cap} ones")]
    CapExceeded { n: u64, cap: u32 },

    #[error("postfix parse error at symbol {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("integrity error in {path}: {kind}")]
    Integrity { path: PathBuf, kind: IntegrityKind },

    #[error("unsupported table format version {0}")]
    UnsupportedVersion(u32),

    #[error("{n} is outside the table range [1, {limit}]")]
    Range { n: u64, limit: u64 },

    #[error("capability error: {0}")]
    Capability(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// An I/O failure during a build. `durable` is the last position known
    /// to be safely on disk, if any checkpoint was written.
    #[error("i/o error ({durable:?} entries durable): {source}")]
    Io {
        #[source]
        source: io::Error,
        durable: Option<u64>,
    },
}

impl From<io::Error> for Error {
    fn from(source: io::Error) -> Self {
        Error::Io { source, durable: None }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
