//! `ICX1` table files.
//!
//! ```text
//! magic    "ICX1"
//! version  u32 LE = 1
//! limit    u64 LE
//! flags    u32 LE   bit 0: rank section, bit 1: partial,
//!                   bits 8-9: builder (0 sieve, 1 dp, 2 oracle)
//! position u64 LE   only when partial; entries present
//! payload  complexity bytes for n = 1..count, then rank bytes if flagged
//! checksum u64 LE   wrapping sum of payload bytes
//! ```
//!
//! `count` is `position` for a partial file and `limit` otherwise. Writes go
//! to a sibling temporary file that is renamed into place.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, IntegrityKind, Result};
use crate::table::{Algorithm, ComplexityTable};

pub const MAGIC: &[u8; 4] = b"ICX1";
pub const VERSION: u32 = 1;

const FLAG_RANKS: u32 = 1;
const FLAG_PARTIAL: u32 = 1 << 1;
const ALGO_SHIFT: u32 = 8;
const ALGO_MASK: u32 = 0b11 << ALGO_SHIFT;

/// A table read from disk. For a checkpoint, `table` holds the completed
/// prefix and `target` the limit the build was aiming for.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub table: ComplexityTable,
    pub target: u64,
    pub partial: bool,
}

fn algo_bits(a: Algorithm) -> u32 {
    let v = match a {
        Algorithm::Sieve => 0,
        Algorithm::Dp => 1,
        Algorithm::Oracle => 2,
    };
    v << ALGO_SHIFT
}

pub fn save(t: &ComplexityTable, path: &Path) -> Result<()> {
    let mut flags = algo_bits(t.algorithm());
    if t.has_ranks() {
        flags |= FLAG_RANKS;
    }
    write_atomic(path, t.limit(), flags, None, t.complexity_bytes(), t.rank_bytes())
}

/// Write a DP checkpoint holding `prefix` (with the index-0 placeholder) of a
/// build targeting `limit`.
pub fn save_partial(path: &Path, prefix: &[u8], limit: u64) -> Result<()> {
    let position = prefix.len() as u64 - 1;
    let flags = algo_bits(Algorithm::Dp) | FLAG_PARTIAL;
    write_atomic(path, limit, flags, Some(position), prefix, None)
}

fn write_atomic(
    path: &Path,
    limit: u64,
    flags: u32,
    position: Option<u64>,
    complexity: &[u8],
    rank: Option<&[u8]>,
) -> Result<()> {
    let tmp = temp_path(path);
    let result = (|| -> std::io::Result<()> {
        let file = fs::File::create(&tmp)?;
        let mut w = BufWriter::new(file);
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&limit.to_le_bytes())?;
        w.write_all(&flags.to_le_bytes())?;
        if let Some(p) = position {
            w.write_all(&p.to_le_bytes())?;
        }
        let mut sum = 0u64;
        for part in std::iter::once(&complexity[1..]).chain(rank.map(|r| &r[1..])) {
            sum = part.iter().fold(sum, |s, &b| s.wrapping_add(b as u64));
            w.write_all(part)?;
        }
        w.write_all(&sum.to_le_bytes())?;
        let file = w.into_inner().map_err(|e| e.into_error())?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(format!(".tmp{}", std::process::id()));
    path.with_file_name(name)
}

/// Load a complete table. Checkpoints are rejected; see [`load_any`].
pub fn load(path: &Path) -> Result<ComplexityTable> {
    let l = load_any(path)?;
    if l.partial {
        return Err(Error::Config(format!(
            "{} is a checkpoint covering {} of {}; resume the build first",
            path.display(),
            l.table.limit(),
            l.target
        )));
    }
    Ok(l.table)
}

/// Load a complete table or a checkpoint.
pub fn load_any(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path)?;
    parse(&bytes).map_err(|e| match e {
        Error::Integrity { kind, .. } => Error::Integrity { path: path.to_path_buf(), kind },
        other => other,
    })
}

fn integrity(kind: IntegrityKind) -> Error {
    Error::Integrity { path: PathBuf::new(), kind }
}

fn parse(bytes: &[u8]) -> Result<Loaded> {
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let u64_at = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
    if bytes.len() < 4 {
        return Err(integrity(IntegrityKind::Truncated));
    }
    if &bytes[..4] != MAGIC {
        return Err(integrity(IntegrityKind::BadMagic));
    }
    if bytes.len() < 20 {
        return Err(integrity(IntegrityKind::Truncated));
    }
    let version = u32_at(4);
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let limit = u64_at(8);
    let flags = u32_at(16);
    if flags & !(FLAG_RANKS | FLAG_PARTIAL | ALGO_MASK) != 0 {
        return Err(integrity(IntegrityKind::BadFlags));
    }
    let algorithm = match (flags & ALGO_MASK) >> ALGO_SHIFT {
        0 => Algorithm::Sieve,
        1 => Algorithm::Dp,
        2 => Algorithm::Oracle,
        _ => return Err(integrity(IntegrityKind::BadFlags)),
    };
    let ranks = flags & FLAG_RANKS != 0;
    let partial = flags & FLAG_PARTIAL != 0;
    let mut off = 20;
    let count = if partial {
        if bytes.len() < off + 8 {
            return Err(integrity(IntegrityKind::Truncated));
        }
        let p = u64_at(off);
        off += 8;
        if p > limit || ranks {
            return Err(integrity(IntegrityKind::LengthMismatch));
        }
        p
    } else {
        limit
    };
    if count < 1 {
        return Err(integrity(IntegrityKind::LengthMismatch));
    }
    let sections: u64 = if ranks { 2 } else { 1 };
    let payload = count
        .checked_mul(sections)
        .and_then(|p| usize::try_from(p).ok())
        .ok_or(integrity(IntegrityKind::LengthMismatch))?;
    let expected = off + payload + 8;
    if bytes.len() < expected {
        return Err(integrity(IntegrityKind::Truncated));
    }
    if bytes.len() > expected {
        return Err(integrity(IntegrityKind::LengthMismatch));
    }
    let body = &bytes[off..off + payload];
    let sum = body.iter().fold(0u64, |s, &b| s.wrapping_add(b as u64));
    if sum != u64_at(off + payload) {
        return Err(integrity(IntegrityKind::Checksum));
    }
    let count = count as usize;
    let mut complexity = Vec::with_capacity(count + 1);
    complexity.push(0);
    complexity.extend_from_slice(&body[..count]);
    let rank = ranks.then(|| {
        let mut r = Vec::with_capacity(count + 1);
        r.push(0);
        r.extend_from_slice(&body[count..]);
        r
    });
    let table = ComplexityTable::from_parts(complexity, rank, algorithm)?;
    Ok(Loaded { table, target: limit, partial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_sieve;

    fn flip(path: &Path, at: usize, f: impl Fn(u8) -> u8) {
        let mut b = fs::read(path).unwrap();
        b[at] = f(b[at]);
        fs::write(path, b).unwrap();
    }

    #[test]
    fn roundtrip_with_ranks() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.icx");
        let t = build_sieve(1000, true).unwrap();
        save(&t, &p).unwrap();
        assert_eq!(load(&p).unwrap(), t);
        assert_eq!(fs::metadata(&p).unwrap().len(), 20 + 2000 + 8);
    }

    #[test]
    fn integrity_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.icx");
        let t = build_sieve(100, false).unwrap();
        let kind = |p: &Path| match load(p) {
            Err(Error::Integrity { kind, .. }) => Some(kind),
            _ => None,
        };

        save(&t, &p).unwrap();
        flip(&p, 50, |b| b ^ 1);
        assert_eq!(kind(&p), Some(IntegrityKind::Checksum));

        save(&t, &p).unwrap();
        flip(&p, 0, |_| b'X');
        assert_eq!(kind(&p), Some(IntegrityKind::BadMagic));

        save(&t, &p).unwrap();
        flip(&p, 4, |_| 2);
        assert!(matches!(load(&p), Err(Error::UnsupportedVersion(2))));

        save(&t, &p).unwrap();
        flip(&p, 18, |_| 0x80);
        assert_eq!(kind(&p), Some(IntegrityKind::BadFlags));

        save(&t, &p).unwrap();
        let b = fs::read(&p).unwrap();
        fs::write(&p, &b[..b.len() - 3]).unwrap();
        assert_eq!(kind(&p), Some(IntegrityKind::Truncated));

        fs::write(&p, [&b[..], &[0]].concat()).unwrap();
        assert_eq!(kind(&p), Some(IntegrityKind::LengthMismatch));
    }

    #[test]
    fn partial_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.icx");
        let t = build_sieve(50, false).unwrap();
        save_partial(&p, &t.complexity_bytes()[..31], 50).unwrap();
        let l = load_any(&p).unwrap();
        assert!(l.partial);
        assert_eq!(l.target, 50);
        assert_eq!(l.table.limit(), 30);
        assert_eq!(l.table.algorithm(), Algorithm::Dp);
        assert!(matches!(load(&p), Err(Error::Config(_))));
    }
}
