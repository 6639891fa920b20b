//! On-disk cache for transition matrices.
//!
//! Each file is a one-line text header followed by a binary body:
//!
//! ```text
//! zs-cache 1 kind=zonal n=4 alpha=- rows=5 cols=5 sha256=<hex of body>
//! ```
//!
//! The body lists every entry row-major as numerator then denominator,
//! each a little-endian `u32` byte count followed by two's-complement
//! little-endian bytes. Labels are implied by `n`. Anything that fails to
//! parse or verify is treated as a miss and rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use zs_core::partitions::enumerate_partitions;
use zs_core::symfunc::{self, MatrixKind};
use zs_core::{QMatrix, Rational, RationalMatrix, Result};

const VERSION: u32 = 1;

pub struct DiskCache {
    dir: PathBuf,
}

fn alpha_tag(alpha: Option<&Rational>) -> String {
    alpha.map_or_else(|| "-".to_string(), ToString::to_string)
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn path(&self, kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> PathBuf {
        let alpha = alpha.map_or_else(String::new, |a| format!("-a{}", a.to_string().replace('/', "_")));
        self.dir.join(format!("{}-n{n}{alpha}.zsc", kind.name()))
    }

    /// Seeds the in-memory memo from disk, or computes and stores the
    /// matrix. Returns whether the disk copy was used.
    pub fn prime(&self, kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> Result<bool> {
        let alpha = if kind == MatrixKind::AlphaKostka { alpha } else { None };
        let path = self.path(kind, n, alpha);
        if let Some(matrix) = read(&path, kind, n, alpha) {
            symfunc::seed_cache(kind, n, alpha, matrix)?;
            return Ok(true);
        }
        let matrix = symfunc::matrix(kind, n, alpha)?;
        // a failed write only costs a recomputation next time
        let _ = write(&path, kind, n, alpha, &matrix);
        Ok(false)
    }
}

fn header(kind: MatrixKind, n: u32, alpha: Option<&Rational>, rows: usize, cols: usize, digest: &str) -> String {
    format!(
        "zs-cache {VERSION} kind={} n={n} alpha={} rows={rows} cols={cols} sha256={digest}\n",
        kind.name(),
        alpha_tag(alpha)
    )
}

fn encode(matrix: &QMatrix) -> Vec<u8> {
    let mut body = Vec::new();
    for x in matrix.entries() {
        for part in [x.numer(), x.denom()] {
            let bytes = part.to_signed_bytes_le();
            body.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            body.extend_from_slice(&bytes);
        }
    }
    body
}

fn decode(body: &[u8], rows: usize, cols: usize) -> Option<QMatrix> {
    let mut pos = 0;
    let mut next = || -> Option<BigInt> {
        let len = u32::from_le_bytes(body.get(pos..pos + 4)?.try_into().ok()?) as usize;
        pos += 4;
        let value = BigInt::from_signed_bytes_le(body.get(pos..pos + len)?);
        pos += len;
        Some(value)
    };
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let numer = next()?;
        let denom = next()?;
        if denom <= BigInt::from(0) {
            return None;
        }
        entries.push(Rational::new(numer, denom));
    }
    if pos != body.len() {
        return None;
    }
    let mut it = entries.into_iter();
    Some(QMatrix::from_fn(rows, cols, |_, _| it.next().expect("counted")))
}

fn read(path: &Path, kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> Option<RationalMatrix> {
    let bytes = fs::read(path).ok()?;
    let split = bytes.iter().position(|&b| b == b'\n')?;
    let (head, body) = (std::str::from_utf8(&bytes[..split]).ok()?, &bytes[split + 1..]);
    let labels = enumerate_partitions(n);
    let size = labels.len();
    let digest = hex::encode(Sha256::digest(body));
    if format!("{head}\n") != header(kind, n, alpha, size, size, &digest) {
        return None;
    }
    let entries = decode(body, size, size)?;
    Some(RationalMatrix::square(labels, entries))
}

fn write(
    path: &Path,
    kind: MatrixKind,
    n: u32,
    alpha: Option<&Rational>,
    matrix: &RationalMatrix,
) -> std::io::Result<()> {
    let body = encode(&matrix.entries);
    let (rows, cols) = matrix.dim();
    let head = header(kind, n, alpha, rows, cols, &hex::encode(Sha256::digest(&body)));
    let tmp = path.with_extension("tmp");
    let mut file = fs::File::create(&tmp)?;
    file.write_all(head.as_bytes())?;
    file.write_all(&body)?;
    file.sync_all()?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zs_core::rational::q;

    #[test]
    fn body_round_trips_signed_entries() {
        let m = QMatrix::from_rows(vec![vec![q(-1, 6), q(0, 1)], vec![q(1234567890123, 7), q(-128, 1)]]);
        assert_eq!(decode(&encode(&m), 2, 2).unwrap(), m);
        assert!(decode(&encode(&m)[1..], 2, 2).is_none());
    }

    #[test]
    fn corrupt_files_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        assert!(!cache.prime(MatrixKind::Zonal, 4, None).unwrap());
        let path = cache.path(MatrixKind::Zonal, 4, None);
        let stored = read(&path, MatrixKind::Zonal, 4, None).unwrap();
        assert_eq!(&stored, &*symfunc::zonal_character_table(4).unwrap());
        assert!(cache.prime(MatrixKind::Zonal, 4, None).unwrap());

        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 1;
        fs::write(&path, &bytes).unwrap();
        assert!(read(&path, MatrixKind::Zonal, 4, None).is_none());
        assert!(!cache.prime(MatrixKind::Zonal, 4, None).unwrap());
        assert!(read(&path, MatrixKind::Zonal, 4, None).is_some());
    }

    #[test]
    fn alpha_is_part_of_the_key() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        let a = q(5, 2);
        cache.prime(MatrixKind::AlphaKostka, 3, Some(&a)).unwrap();
        let path = cache.path(MatrixKind::AlphaKostka, 3, Some(&a));
        assert!(path.to_string_lossy().ends_with("alpha-kostka-n3-a5_2.zsc"));
        assert!(read(&path, MatrixKind::AlphaKostka, 3, Some(&q(2, 1))).is_none());
        assert!(read(&path, MatrixKind::AlphaKostka, 3, Some(&a)).is_some());
    }
}
