//! Runs algorithms by short code and tabulates modularity and like-mindedness
//! against the community count.
//!
//! Codes: `LMM`, `L`, `ML`, `GN`, `S`, `A`, `C` (like-mindedness
//! maximization, Louvain, modified Louvain, Girvan-Newman, single/average/
//! complete linkage). Behavioral codes take an optional suffix: `S` selects the
//! interest vectors, `R` the rating vectors, and no suffix the primary vectors.
//! Like-mindedness is always scored against the primary similarity matrix so
//! that all rows are comparable.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::behavior::SimMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hier::{agglomerate, lmm_agglomerate, Dendrogram, Linkage};
use crate::modularity::{modularity, ModularityVariant};
use crate::partition::Partition;
use crate::quality::like_mindedness;
use crate::structural::{girvan_newman, louvain, modified_louvain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    LikeMindedness,
    Louvain,
    ModifiedLouvain,
    GirvanNewman,
    Linkage(Linkage),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorChoice {
    Primary,
    Interest,
    Rating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgorithmCode {
    family: Family,
    vectors: VectorChoice,
    code: &'static str,
}

const CODES: &[(&str, Family, VectorChoice)] = {
    use Family::*;
    use VectorChoice::*;
    &[
        ("LMM", LikeMindedness, Primary),
        ("LMMS", LikeMindedness, Interest),
        ("LMMR", LikeMindedness, Rating),
        ("L", Louvain, Primary),
        ("ML", ModifiedLouvain, Primary),
        ("MLS", ModifiedLouvain, Interest),
        ("MLR", ModifiedLouvain, Rating),
        ("GN", GirvanNewman, Primary),
        ("S", Linkage(crate::hier::Linkage::Single), Primary),
        ("SS", Linkage(crate::hier::Linkage::Single), Interest),
        ("SR", Linkage(crate::hier::Linkage::Single), Rating),
        ("A", Linkage(crate::hier::Linkage::Average), Primary),
        ("AS", Linkage(crate::hier::Linkage::Average), Interest),
        ("AR", Linkage(crate::hier::Linkage::Average), Rating),
        ("C", Linkage(crate::hier::Linkage::Complete), Primary),
        ("CS", Linkage(crate::hier::Linkage::Complete), Interest),
        ("CR", Linkage(crate::hier::Linkage::Complete), Rating),
    ]
};

impl AlgorithmCode {
    pub fn parse(s: &str) -> Result<Self> {
        CODES
            .iter()
            .find(|(code, _, _)| *code == s)
            .map(|&(code, family, vectors)| AlgorithmCode { family, vectors, code })
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }

    /// Parses a comma-separated list, dropping repeats.
    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        let mut out: Vec<Self> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let code = Self::parse(part)?;
            if !out.contains(&code) {
                out.push(code);
            }
        }
        Ok(out)
    }

    pub fn all() -> impl Iterator<Item = Self> {
        CODES.iter().map(|&(code, family, vectors)| AlgorithmCode { family, vectors, code })
    }

    pub fn as_str(&self) -> &'static str {
        self.code
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vectors(&self) -> VectorChoice {
        self.vectors
    }

    /// Whether the run yields a full hierarchy (one row per level).
    pub fn is_hierarchical(&self) -> bool {
        !matches!(self.family, Family::Louvain | Family::ModifiedLouvain)
    }

    pub fn uses_vectors(&self) -> bool {
        !matches!(self.family, Family::Louvain | Family::GirvanNewman)
    }
}

impl fmt::Display for AlgorithmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code)
    }
}

/// Similarity matrices available to a sweep. `primary` also scores
/// like-mindedness for every row.
#[derive(Debug, Clone, Copy)]
pub struct SimSources<'a> {
    pub primary: &'a SimMatrix,
    pub interest: Option<&'a SimMatrix>,
    pub rating: Option<&'a SimMatrix>,
}

impl<'a> SimSources<'a> {
    pub fn primary(s: &'a SimMatrix) -> Self {
        SimSources { primary: s, interest: None, rating: None }
    }

    pub fn select(&self, code: AlgorithmCode) -> Result<&'a SimMatrix> {
        match code.vectors {
            VectorChoice::Primary => Some(self.primary),
            VectorChoice::Interest => self.interest,
            VectorChoice::Rating => self.rating,
        }
        .ok_or_else(|| Error::MissingVectors(code.as_str().to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub algorithm: String,
    pub k: usize,
    pub modularity_newman: f64,
    pub modularity_literal: f64,
    pub like_mindedness: f64,
}

/// Rows grouped by algorithm in request order, `k` descending within each.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricSeries {
    pub rows: Vec<MetricRow>,
}

impl MetricSeries {
    /// Algorithm codes in first-appearance order.
    pub fn algorithms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for row in &self.rows {
            if !seen.contains(&row.algorithm.as_str()) {
                seen.push(&row.algorithm);
            }
        }
        seen
    }

    pub fn rows_for<'a>(&'a self, algorithm: &'a str) -> impl Iterator<Item = &'a MetricRow> + 'a {
        self.rows.iter().filter(move |r| r.algorithm == algorithm)
    }
}

/// Everything one algorithm produced during a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmRun {
    pub code: AlgorithmCode,
    pub rows: Vec<MetricRow>,
    /// Present for hierarchical algorithms.
    pub dendrogram: Option<Dendrogram>,
    /// Terminal partition for Louvain-type runs; the best-modularity cut
    /// (Newman) for hierarchical ones.
    pub partition: Partition,
}

/// Options shared by every algorithm in a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepConfig {
    /// Objective for Louvain and modified Louvain. Both variants are always reported.
    pub variant: ModularityVariant,
}

pub fn run_algorithm(code: AlgorithmCode, g: &Graph, sims: &SimSources<'_>, config: SweepConfig) -> Result<AlgorithmRun> {
    let n = g.node_count();
    if sims.primary.size() != n {
        return Err(Error::SizeMismatch { left: sims.primary.size(), right: n });
    }
    if g.edge_count() == 0 {
        return Err(match code.family {
            Family::GirvanNewman => Error::MissingStructure(code.as_str().to_string()),
            _ => Error::EdgelessGraph,
        });
    }
    let dendrogram = match code.family {
        Family::Louvain => {
            let p = louvain(g, config.variant)?.partition;
            let row = score_row(code, g, sims.primary, &p)?;
            return Ok(AlgorithmRun { code, rows: vec![row], dendrogram: None, partition: p });
        }
        Family::ModifiedLouvain => {
            let s = sims.select(code)?;
            let p = modified_louvain(g, s, config.variant)?.partition;
            let row = score_row(code, g, sims.primary, &p)?;
            return Ok(AlgorithmRun { code, rows: vec![row], dendrogram: None, partition: p });
        }
        Family::GirvanNewman => girvan_newman(g).dendrogram,
        Family::LikeMindedness => lmm_agglomerate(checked(sims.select(code)?, n)?),
        Family::Linkage(linkage) => agglomerate(checked(sims.select(code)?, n)?, linkage),
    };
    let rows = hierarchy_rows(code.as_str(), g, sims.primary, &dendrogram)?;
    let best = rows
        .iter()
        .fold(None::<&MetricRow>, |best, r| match best {
            Some(b) if b.modularity_newman >= r.modularity_newman => Some(b),
            _ => Some(r),
        })
        .map(|r| r.k)
        .unwrap_or(n);
    let partition = dendrogram.cut(best)?;
    Ok(AlgorithmRun { code, rows, dendrogram: Some(dendrogram), partition })
}

fn checked(s: &SimMatrix, n: usize) -> Result<&SimMatrix> {
    if s.size() != n {
        return Err(Error::SizeMismatch { left: s.size(), right: n });
    }
    Ok(s)
}

fn score_row(code: AlgorithmCode, g: &Graph, s: &SimMatrix, p: &Partition) -> Result<MetricRow> {
    Ok(MetricRow {
        algorithm: code.as_str().to_string(),
        k: p.community_count(),
        modularity_newman: modularity(g, p, ModularityVariant::Newman)?,
        modularity_literal: modularity(g, p, ModularityVariant::Literal)?,
        like_mindedness: like_mindedness(s, p)?,
    })
}

/// One row per reachable level of `d`, from `k = |V|` down to its coarsest cut.
///
/// Edge counts are maintained exactly while replaying merges, so modularity
/// values equal a from-scratch evaluation of each cut.
pub fn hierarchy_rows(algorithm: &str, g: &Graph, s: &SimMatrix, d: &Dendrogram) -> Result<Vec<MetricRow>> {
    let n = g.node_count();
    if d.leaf_count() != n || s.size() != n {
        return Err(Error::SizeMismatch { left: d.leaf_count(), right: n });
    }
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let m = g.edge_count() as i128;
    let newman = |i: i128, deg: i128| 4 * m * i - deg * deg;
    let literal = |i: i128, deg: i128| m * i - (deg - i) * (deg - i);

    // Clusters live in slots; `slot_of` maps a dendrogram id to its slot.
    let mut owner: Vec<usize> = (0..n).collect();
    let mut slot_of: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut internal = vec![0i128; n];
    let mut degree: Vec<i128> = (0..n).map(|v| g.degree(v) as i128).collect();
    let mut q_newman: i128 = degree.iter().map(|&d| newman(0, d)).sum();
    let mut q_literal: i128 = degree.iter().map(|&d| literal(0, d)).sum();
    let (mut intra_sum, mut intra_pairs) = (0.0f64, 0u64);

    let row = |k: usize, qn: i128, ql: i128, sum: f64, pairs: u64| MetricRow {
        algorithm: algorithm.to_string(),
        k,
        modularity_newman: qn as f64 / (4 * m * m) as f64,
        modularity_literal: ql as f64 / (m * m) as f64,
        like_mindedness: if pairs == 0 { 0.0 } else { sum / pairs as f64 },
    };
    let mut rows = Vec::with_capacity(d.merges().len() + 1);
    rows.push(row(n, q_newman, q_literal, intra_sum, intra_pairs));

    for (step, merge) in d.merges().iter().enumerate() {
        let (sa, sb) = (slot_of[merge.a], slot_of[merge.b]);
        let (big, small) = if members[sa].len() >= members[sb].len() { (sa, sb) } else { (sb, sa) };
        let mut cross_edges = 0i128;
        for &x in &members[small] {
            cross_edges += g.neighbors(x).iter().filter(|&&w| owner[w] == big).count() as i128;
            for &y in &members[big] {
                intra_sum += s.get(x, y);
            }
        }
        intra_pairs += (members[small].len() * members[big].len()) as u64;

        q_newman -= newman(internal[big], degree[big]) + newman(internal[small], degree[small]);
        q_literal -= literal(internal[big], degree[big]) + literal(internal[small], degree[small]);
        internal[big] += internal[small] + cross_edges;
        degree[big] += degree[small];
        q_newman += newman(internal[big], degree[big]);
        q_literal += literal(internal[big], degree[big]);

        let moved = core::mem::take(&mut members[small]);
        for &x in &moved {
            owner[x] = big;
        }
        members[big].extend(moved);
        slot_of[merge.merged] = big;
        rows.push(row(n - step - 1, q_newman, q_literal, intra_sum, intra_pairs));
    }
    Ok(rows)
}

/// Runs every code in order and concatenates the rows.
pub fn sweep(g: &Graph, sims: &SimSources<'_>, codes: &[AlgorithmCode], config: SweepConfig) -> Result<MetricSeries> {
    let mut rows = Vec::new();
    for &code in codes {
        rows.extend(run_algorithm(code, g, sims, config)?.rows);
    }
    Ok(MetricSeries { rows })
}

/// Highest modularity per algorithm, both variants, each with the `k` where it
/// first occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxModularity {
    pub algorithm: String,
    pub k_newman: usize,
    pub newman: f64,
    pub k_literal: usize,
    pub literal: f64,
}

pub fn max_modularity_report(series: &MetricSeries) -> Vec<MaxModularity> {
    series
        .algorithms()
        .into_iter()
        .map(|alg| {
            let mut best: Option<MaxModularity> = None;
            for r in series.rows_for(alg) {
                let b = best.get_or_insert_with(|| MaxModularity {
                    algorithm: alg.to_string(),
                    k_newman: r.k,
                    newman: r.modularity_newman,
                    k_literal: r.k,
                    literal: r.modularity_literal,
                });
                if r.modularity_newman > b.newman {
                    (b.k_newman, b.newman) = (r.k, r.modularity_newman);
                }
                if r.modularity_literal > b.literal {
                    (b.k_literal, b.literal) = (r.k, r.modularity_literal);
                }
            }
            best.expect("every listed algorithm has a row")
        })
        .collect()
}
