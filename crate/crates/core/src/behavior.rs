//! Behavioral vectors and pairwise cosine similarity.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// What a behavioral vector encodes, which also fixes its admissible entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorKind {
    /// Ratings 1..=5, 0 for unrated items.
    Rating,
    /// 1 if the item was rated at all.
    Interest,
    /// 1 if the user follows the celebrity.
    Celebrity,
}

impl VectorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VectorKind::Rating => "rating",
            VectorKind::Interest => "interest",
            VectorKind::Celebrity => "celebrity",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rating" => Some(VectorKind::Rating),
            "interest" => Some(VectorKind::Interest),
            "celebrity" => Some(VectorKind::Celebrity),
            _ => None,
        }
    }

    /// Whether `value` is a legal entry for vectors of this kind.
    pub fn admits(self, value: f64) -> bool {
        match self {
            VectorKind::Rating => libm::trunc(value) == value && (0.0..=5.0).contains(&value),
            VectorKind::Interest | VectorKind::Celebrity => value == 0.0 || value == 1.0,
        }
    }
}

/// Sparse non-negative vector: strictly increasing indices, non-zero values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Zero entries are dropped; repeated indices keep the last value.
    pub fn from_entries(mut entries: Vec<(u32, f64)>) -> Self {
        entries.reverse();
        entries.sort_by_key(|&(i, _)| i);
        entries.dedup_by_key(|&mut (i, _)| i);
        entries.retain(|&(_, v)| v != 0.0);
        SparseVector { entries }
    }

    pub fn from_dense(values: &[f64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| (i as u32, v))
            .collect();
        SparseVector { entries }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_squared(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v * v).sum()
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    acc += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

fn cosine_from_parts(dot: f64, norm_sq_x: f64, norm_sq_y: f64) -> f64 {
    if norm_sq_x == 0.0 || norm_sq_y == 0.0 {
        return 0.0;
    }
    // sqrt of the product keeps identical integer vectors at exactly 1.
    (dot / libm::sqrt(norm_sq_x * norm_sq_y)).min(1.0)
}

/// Cosine similarity of two dense vectors; 0 if either vector is all-zero.
pub fn cosine_similarity(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    let dot = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx = x.iter().map(|a| a * a).sum();
    let ny = y.iter().map(|b| b * b).sum();
    Ok(cosine_from_parts(dot, nx, ny))
}

/// One behavioral vector per node, all of the same dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BehavioralMatrix {
    kind: VectorKind,
    dimension: usize,
    vectors: Vec<SparseVector>,
}

impl BehavioralMatrix {
    pub fn new(kind: VectorKind, dimension: usize, vectors: Vec<SparseVector>) -> Result<Self> {
        for (node, vector) in vectors.iter().enumerate() {
            for &(index, value) in vector.entries() {
                if index as usize >= dimension {
                    return Err(Error::DimensionMismatch { left: index as usize + 1, right: dimension });
                }
                if !kind.admits(value) {
                    return Err(Error::InvalidEntry { node, index: index as usize, value });
                }
            }
        }
        Ok(BehavioralMatrix { kind, dimension, vectors })
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, node: usize) -> &SparseVector {
        &self.vectors[node]
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    /// All pairwise cosine similarities.
    pub fn similarity_matrix(&self) -> SimMatrix {
        let n = self.len();
        SimMatrix { size: n, values: self.similarity_rows(0..n) }
    }

    /// Upper-triangle entries of rows `rows`, in storage order. Concatenating
    /// consecutive row blocks reproduces [`Self::similarity_matrix`] exactly.
    pub fn similarity_rows(&self, rows: core::ops::Range<usize>) -> Vec<f64> {
        let n = self.len();
        let norms: Vec<f64> = self.vectors.iter().map(SparseVector::norm_squared).collect();
        let mut values = Vec::new();
        for u in rows {
            for v in u + 1..n {
                let dot = self.vectors[u].dot(&self.vectors[v]);
                values.push(cosine_from_parts(dot, norms[u], norms[v]));
            }
        }
        values
    }
}

/// Symmetric similarity table stored as the strict upper triangle, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimMatrix {
    size: usize,
    values: Vec<f64>,
}

impl SimMatrix {
    /// `values` holds `(u, v)` for `u < v` in row-major order.
    pub fn from_upper_triangle(size: usize, values: Vec<f64>) -> Result<Self> {
        let expected = size * size.saturating_sub(1) / 2;
        if values.len() != expected {
            return Err(Error::SizeMismatch { left: values.len(), right: expected });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidSimilarity { index, value });
        }
        Ok(SimMatrix { size, values })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for u in 0..size {
            for v in u + 1..size {
                values.push(f(u, v));
            }
        }
        Self::from_upper_triangle(size, values)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn offset(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < v && v < self.size);
        u * (2 * self.size - u - 1) / 2 + (v - u - 1)
    }

    /// `sim(u, v)`; the diagonal reads as 1.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        match u.cmp(&v) {
            core::cmp::Ordering::Less => self.values[self.offset(u, v)],
            core::cmp::Ordering::Greater => self.values[self.offset(v, u)],
            core::cmp::Ordering::Equal => 1.0,
        }
    }

    pub fn upper_triangle(&self) -> &[f64] {
        &self.values
    }

    /// Mean over all unordered pairs, 0 for fewer than two nodes.
    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            0.0
        } else {
            self.values.iter().sum::<f64>() / self.values.len() as f64
        }
    }
}

/// Cosine similarity of two similarity tables flattened over their `u < v` entries.
pub fn matrix_cosine(a: &SimMatrix, b: &SimMatrix) -> Result<f64> {
    if a.size != b.size {
        return Err(Error::SizeMismatch { left: a.size, right: b.size });
    }
    cosine_similarity(&a.values, &b.values)
}
