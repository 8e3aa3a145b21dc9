//! Parallel similarity computation and the on-disk similarity cache.
//!
//! Cache layout (little-endian):
//!
//! ```text
//! magic    8 bytes  "LMSIMTRI"
//! version  u32      1
//! kind     u8       0 rating, 1 interest, 2 celebrity
//! size     u64      node count
//! hash     32 bytes SHA-256 of the behavioral matrix
//! values   f64 × size(size-1)/2, upper triangle row-major
//! ```

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use likemind_core::{BehavioralMatrix, SimMatrix, VectorKind};
use log::{debug, warn};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

const MAGIC: &[u8; 8] = b"LMSIMTRI";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 1 + 8 + 32;

/// Row ranges with roughly equal numbers of pairs.
fn row_blocks(n: usize, blocks: usize) -> Vec<std::ops::Range<usize>> {
    let total = n * n.saturating_sub(1) / 2;
    let target = total.div_ceil(blocks.max(1)).max(1);
    let mut out = Vec::new();
    let (mut start, mut acc) = (0, 0);
    for u in 0..n {
        acc += n - u - 1;
        if acc >= target {
            out.push(start..u + 1);
            start = u + 1;
            acc = 0;
        }
    }
    if start < n {
        out.push(start..n);
    }
    out
}

/// Same values as [`BehavioralMatrix::similarity_matrix`], computed on up to
/// `threads` threads.
pub fn parallel_similarity(m: &BehavioralMatrix, threads: usize) -> SimMatrix {
    let n = m.len();
    if threads <= 1 || n < 64 {
        return m.similarity_matrix();
    }
    let blocks = row_blocks(n, threads * 4);
    let parts: Vec<Vec<f64>> = std::thread::scope(|scope| {
        let chunk = blocks.len().div_ceil(threads);
        let handles: Vec<_> = blocks
            .chunks(chunk)
            .map(|group| scope.spawn(move || group.iter().map(|r| m.similarity_rows(r.clone())).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("similarity worker panicked")).collect()
    });
    let values = parts.concat();
    SimMatrix::from_upper_triangle(n, values).expect("row blocks cover the triangle")
}

fn kind_byte(kind: VectorKind) -> u8 {
    match kind {
        VectorKind::Rating => 0,
        VectorKind::Interest => 1,
        VectorKind::Celebrity => 2,
    }
}

/// SHA-256 over the kind, dimension and every vector's entries.
pub fn content_hash(m: &BehavioralMatrix) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update([kind_byte(m.kind())]);
    h.update((m.dimension() as u64).to_le_bytes());
    h.update((m.len() as u64).to_le_bytes());
    for v in m.vectors() {
        h.update((v.entries().len() as u64).to_le_bytes());
        for &(i, x) in v.entries() {
            h.update(i.to_le_bytes());
            h.update(x.to_le_bytes());
        }
    }
    h.finalize().into()
}

pub fn encode(s: &SimMatrix, kind: VectorKind, hash: &[u8; 32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * s.upper_triangle().len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(kind_byte(kind));
    out.extend_from_slice(&(s.size() as u64).to_le_bytes());
    out.extend_from_slice(hash);
    for &x in s.upper_triangle() {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

/// Decodes a cache file, returning `None` if it was written for other vectors.
pub fn decode(bytes: &[u8], kind: VectorKind, hash: &[u8; 32]) -> Result<Option<SimMatrix>> {
    let bad = |why: &str| CliError::Data(format!("corrupt similarity cache: {why}"));
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(bad("bad header"));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != VERSION {
        return Ok(None);
    }
    let size = u64::from_le_bytes(bytes[13..21].try_into().unwrap()) as usize;
    if bytes[12] != kind_byte(kind) || &bytes[21..53] != hash {
        return Ok(None);
    }
    let body = &bytes[HEADER_LEN..];
    let expected = size * size.saturating_sub(1) / 2;
    if body.len() != 8 * expected {
        return Err(bad("truncated body"));
    }
    let values = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok(Some(SimMatrix::from_upper_triangle(size, values)?))
}

fn cache_path(dir: &Path, hash: &[u8; 32]) -> PathBuf {
    let hex: String = hash.iter().take(12).map(|b| format!("{b:02x}")).collect();
    dir.join(format!("sim-{hex}.bin"))
}

/// Similarities for `m`, read from `cache_dir` when a matching file exists and
/// written there otherwise.
pub fn similarity_with_cache(m: &BehavioralMatrix, cache_dir: Option<&Path>, threads: usize) -> Result<SimMatrix> {
    let Some(dir) = cache_dir else {
        return Ok(parallel_similarity(m, threads));
    };
    let hash = content_hash(m);
    let path = cache_path(dir, &hash);
    if let Ok(mut file) = fs::File::open(&path) {
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes).map_err(|e| CliError::io(&path, e))?;
        match decode(&bytes, m.kind(), &hash) {
            Ok(Some(s)) if s.size() == m.len() => {
                debug!("similarity cache hit: {}", path.display());
                return Ok(s);
            }
            Ok(_) => debug!("similarity cache mismatch: {}", path.display()),
            Err(e) => warn!("{}: {e}; recomputing", path.display()),
        }
    }
    let s = parallel_similarity(m, threads);
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    file.write_all(&encode(&s, m.kind(), &hash)).map_err(|e| CliError::io(&path, e))?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use likemind_core::SparseVector;

    fn matrix(n: usize) -> BehavioralMatrix {
        let vectors = (0..n)
            .map(|u| SparseVector::from_entries((0..20u32).filter(|i| (u as u32 * 7 + i * 3) % 5 < 2).map(|i| (i, 1.0)).collect()))
            .collect();
        BehavioralMatrix::new(VectorKind::Interest, 20, vectors).unwrap()
    }

    #[test]
    fn blocks_cover_all_rows() {
        for n in [0, 1, 2, 5, 100] {
            let blocks = row_blocks(n, 7);
            let rows: Vec<usize> = blocks.into_iter().flatten().collect();
            assert_eq!(rows, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parallel_is_bit_identical() {
        let m = matrix(150);
        let serial = m.similarity_matrix();
        for threads in [1, 2, 3, 8] {
            let par = parallel_similarity(&m, threads);
            let same = serial.upper_triangle().iter().zip(par.upper_triangle()).all(|(a, b)| a.to_bits() == b.to_bits());
            assert!(same && par.size() == serial.size());
        }
    }

    #[test]
    fn cache_round_trip() {
        let m = matrix(10);
        let s = m.similarity_matrix();
        let hash = content_hash(&m);
        let bytes = encode(&s, m.kind(), &hash);
        assert_eq!(decode(&bytes, m.kind(), &hash).unwrap(), Some(s.clone()));
        assert_eq!(decode(&bytes, VectorKind::Rating, &hash).unwrap(), None);
        assert!(decode(&bytes[..bytes.len() - 3], m.kind(), &hash).is_err());

        let dir = tempfile::tempdir().unwrap();
        let first = similarity_with_cache(&m, Some(dir.path()), 2).unwrap();
        let second = similarity_with_cache(&m, Some(dir.path()), 2).unwrap();
        assert_eq!(first, s);
        assert_eq!(second, s);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn hash_depends_on_content() {
        let a = matrix(5);
        let b = matrix(6);
        assert_ne!(content_hash(&a), content_hash(&b));
        assert_eq!(content_hash(&a), content_hash(&matrix(5)));
    }
}
