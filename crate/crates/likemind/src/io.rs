//! Text formats: edge lists, ratings and follows TSV, sparse vector files and
//! `key=value` filter configs.
//!
//! Every reader skips blank lines and lines starting with `#`, and reports
//! malformed lines with their 1-based line number.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use likemind_core::pipeline::{FilterConfig, FollowTable, RatingsTable};
use likemind_core::{BehavioralMatrix, Graph, SparseVector, VectorKind};
use log::warn;

use crate::error::{CliError, Result};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

/// Yields `(line number, trimmed content)` for every data line.
fn data_lines<'a, R: BufRead + 'a>(reader: R, path: &'a Path) -> impl Iterator<Item = Result<(usize, String)>> + 'a {
    reader.lines().enumerate().filter_map(move |(i, line)| match line {
        Err(e) => Some(Err(CliError::io(path, e))),
        Ok(line) => {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, trimmed.to_string())))
            }
        }
    })
}

/// Edge list: two whitespace-separated labels per line. A line with a single
/// label declares an isolated node. Nodes are numbered by first appearance.
pub fn read_edge_list<R: BufRead>(reader: R, path: &Path) -> Result<Graph> {
    let mut order: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for item in data_lines(reader, path) {
        let (line, text) = item?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() > 2 {
            return Err(CliError::parse(path, line, format!("expected one or two labels, found {}", fields.len())));
        }
        for f in &fields {
            if seen.insert(f.to_string()) {
                order.push(f.to_string());
            }
        }
        if let [a, b] = fields[..] {
            edges.push((a.to_string(), b.to_string()));
        }
    }
    if order.is_empty() {
        return Err(CliError::Data(format!("{}: no nodes", path.display())));
    }
    Ok(Graph::from_labeled_edges(Some(&order), edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))?)
}

pub fn load_edge_list(path: &Path) -> Result<Graph> {
    read_edge_list(open(path)?, path)
}

/// Declares every node on its own line in index order, then one line per
/// edge, so reading the file back reproduces the same numbering.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# nodes={} edges={}", g.node_count(), g.edge_count())?;
    for v in 0..g.node_count() {
        writeln!(w, "{}", g.label(v))?;
    }
    for &(u, v) in g.edges() {
        writeln!(w, "{}\t{}", g.label(u), g.label(v))?;
    }
    w.flush()
}

pub fn save_edge_list(g: &Graph, path: &Path) -> Result<()> {
    write_edge_list(g, create(path)?).map_err(|e| CliError::io(path, e))
}

fn tab_fields(text: &str) -> Vec<&str> {
    text.split('\t').map(str::trim).collect()
}

/// `user<TAB>item<TAB>rating`, rating 1 to 5; later lines overwrite earlier ones.
pub fn read_ratings<R: BufRead>(reader: R, path: &Path) -> Result<RatingsTable> {
    let mut table = RatingsTable::new();
    for item in data_lines(reader, path) {
        let (line, text) = item?;
        let fields = tab_fields(&text);
        let [user, item, rating] = fields[..] else {
            return Err(CliError::parse(path, line, format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        let rating: u8 = rating
            .parse()
            .ok()
            .filter(|r| (1..=5).contains(r))
            .ok_or_else(|| CliError::parse(path, line, format!("rating `{rating}` is not an integer in 1..=5")))?;
        table.insert(user, item, rating)?;
    }
    Ok(table)
}

pub fn load_ratings(path: &Path) -> Result<RatingsTable> {
    read_ratings(open(path)?, path)
}

pub fn write_ratings<W: Write>(r: &RatingsTable, mut w: W) -> std::io::Result<()> {
    for (user, item, rating) in r.records() {
        writeln!(w, "{user}\t{item}\t{rating}")?;
    }
    w.flush()
}

/// `follower<TAB>followee`; self-follows are dropped with a warning.
pub fn read_follows<R: BufRead>(reader: R, path: &Path) -> Result<FollowTable> {
    let mut table = FollowTable::new();
    for item in data_lines(reader, path) {
        let (line, text) = item?;
        let fields = tab_fields(&text);
        let [follower, followee] = fields[..] else {
            return Err(CliError::parse(path, line, format!("expected 2 tab-separated fields, found {}", fields.len())));
        };
        if follower == followee {
            warn!("{}:{line}: dropping self-follow of `{follower}`", path.display());
            continue;
        }
        table.insert(follower, followee);
    }
    Ok(table)
}

pub fn load_follows(path: &Path) -> Result<FollowTable> {
    read_follows(open(path)?, path)
}

pub fn write_follows<W: Write>(f: &FollowTable, mut w: W) -> std::io::Result<()> {
    for (a, b) in f.records() {
        writeln!(w, "{a}\t{b}")?;
    }
    w.flush()
}

/// Sparse vectors, one user per line: the label, a tab, then space-separated
/// `index:value` entries. A zero vector is the label alone.
///
/// ```text
/// # kind=rating dimension=3
/// alice<TAB>0:4 2:5
/// bob
/// ```
pub fn write_vectors<W: Write>(m: &BehavioralMatrix, labels: &[String], mut w: W) -> std::io::Result<()> {
    writeln!(w, "# kind={} dimension={}", m.kind().as_str(), m.dimension())?;
    for (label, v) in labels.iter().zip(m.vectors()) {
        write!(w, "{label}")?;
        for (i, &(index, value)) in v.entries().iter().enumerate() {
            write!(w, "{}{index}:{value}", if i == 0 { '\t' } else { ' ' })?;
        }
        writeln!(w)?;
    }
    w.flush()
}

pub fn save_vectors(m: &BehavioralMatrix, labels: &[String], path: &Path) -> Result<()> {
    write_vectors(m, labels, create(path)?).map_err(|e| CliError::io(path, e))
}

fn parse_header(text: &str) -> Option<(VectorKind, usize)> {
    let mut kind = None;
    let mut dimension = None;
    for token in text.trim_start_matches('#').split_whitespace() {
        match token.split_once('=') {
            Some(("kind", k)) => kind = VectorKind::parse(k),
            Some(("dimension", d)) => dimension = d.parse().ok(),
            _ => {}
        }
    }
    Some((kind?, dimension?))
}

/// Reads a vector file and aligns it with `g`'s node labels. Nodes without a
/// line get an all-zero vector; lines for unknown labels are skipped. Both
/// cases are logged.
pub fn read_vectors<R: BufRead>(reader: R, path: &Path, g: &Graph) -> Result<BehavioralMatrix> {
    let mut header = None;
    let mut vectors: Vec<Option<SparseVector>> = vec![None; g.node_count()];
    let mut unknown = 0usize;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let number = i + 1;
        let text = line.trim_end_matches(['\r', '\n']);
        if text.trim().is_empty() {
            continue;
        }
        if text.starts_with('#') {
            if header.is_none() {
                header = parse_header(text);
            }
            continue;
        }
        let (kind, dimension) =
            header.ok_or_else(|| CliError::parse(path, number, "missing `# kind=... dimension=...` header"))?;
        let (label, rest) = text.split_once('\t').unwrap_or((text, ""));
        let label = label.trim();
        let mut entries = Vec::new();
        for token in rest.split_whitespace() {
            let parsed = token.split_once(':').and_then(|(i, v)| Some((i.parse::<u32>().ok()?, v.parse::<f64>().ok()?)));
            let Some((index, value)) = parsed else {
                return Err(CliError::parse(path, number, format!("malformed entry `{token}`")));
            };
            if index as usize >= dimension || !kind.admits(value) {
                return Err(CliError::parse(path, number, format!("entry `{token}` invalid for {} vectors of dimension {dimension}", kind.as_str())));
            }
            entries.push((index, value));
        }
        match g.labels().get(label) {
            Some(v) => vectors[v] = Some(SparseVector::from_entries(entries)),
            None => unknown += 1,
        }
    }
    let (kind, dimension) = header.ok_or_else(|| CliError::parse(path, 1, "missing `# kind=... dimension=...` header"))?;
    if unknown > 0 {
        warn!("{}: skipped {unknown} vectors for labels not in the graph", path.display());
    }
    let missing = vectors.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        warn!("{}: {missing} graph nodes have no vector; using all-zero vectors", path.display());
    }
    let vectors = vectors.into_iter().map(Option::unwrap_or_default).collect();
    Ok(BehavioralMatrix::new(kind, dimension, vectors)?)
}

pub fn load_vectors(path: &Path, g: &Graph) -> Result<BehavioralMatrix> {
    read_vectors(open(path)?, path, g)
}

/// Applies `key=value` lines to `config`. Unknown keys and non-integer values are errors.
pub fn read_filter_config<R: BufRead>(reader: R, path: &Path, config: &mut FilterConfig) -> Result<()> {
    for item in data_lines(reader, path) {
        let (line, text) = item?;
        let Some((key, value)) = text.split_once('=') else {
            return Err(CliError::parse(path, line, "expected key=value"));
        };
        let (key, value) = (key.trim(), value.trim());
        let value: usize =
            value.parse().map_err(|_| CliError::parse(path, line, format!("`{value}` is not a non-negative integer")))?;
        if !config.set(key, value) {
            return Err(CliError::parse(path, line, format!("unknown key `{key}`")));
        }
    }
    Ok(())
}

pub fn load_filter_config(path: &Path, config: &mut FilterConfig) -> Result<()> {
    read_filter_config(open(path)?, path, config)
}
