//! Result files: metrics CSV, partition JSON, dendrogram text, network
//! statistics and SVG line plots.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use likemind_core::sweep::{max_modularity_report, MaxModularity, MetricRow, MetricSeries};
use likemind_core::{Dendrogram, Graph, NetworkStats, Partition};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const METRICS_HEADER: &str = "algorithm,k,modularity_newman,modularity_literal,like_mindedness";

/// CSV with one row per `(algorithm, k)`. Floats use the shortest exact
/// representation, so parsing gives back identical values.
pub fn metrics_csv(series: &MetricSeries) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for r in &series.rows {
        writeln!(out, "{},{},{},{},{}", r.algorithm, r.k, r.modularity_newman, r.modularity_literal, r.like_mindedness)
            .unwrap();
    }
    out
}

pub fn parse_metrics_csv(text: &str, path: &Path) -> Result<MetricSeries> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == METRICS_HEADER => {}
        Some((i, _)) => return Err(CliError::parse(path, i + 1, format!("expected header `{METRICS_HEADER}`"))),
        None => return Err(CliError::parse(path, 1, "empty metrics file")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.trim().split(',').collect();
        let bad = |what: &str| CliError::parse(path, i + 1, what.to_string());
        let [algorithm, k, qn, ql, lm] = fields[..] else {
            return Err(bad("expected 5 comma-separated fields"));
        };
        let float = |s: &str| s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| bad("metric is not a finite number"));
        rows.push(MetricRow {
            algorithm: algorithm.to_string(),
            k: k.parse().map_err(|_| bad("k is not a non-negative integer"))?,
            modularity_newman: float(qn)?,
            modularity_literal: float(ql)?,
            like_mindedness: float(lm)?,
        });
    }
    Ok(MetricSeries { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub algorithm: String,
    pub k: usize,
    pub modularity_newman: Option<f64>,
    pub modularity_literal: Option<f64>,
    pub like_mindedness: Option<f64>,
    /// Node labels per community, ordered by smallest member.
    pub communities: Vec<Vec<String>>,
}

impl PartitionRecord {
    pub fn new(algorithm: &str, g: &Graph, p: &Partition) -> Self {
        PartitionRecord {
            algorithm: algorithm.to_string(),
            k: p.community_count(),
            modularity_newman: None,
            modularity_literal: None,
            like_mindedness: None,
            communities: p
                .communities()
                .iter()
                .map(|members| members.iter().map(|&v| g.label(v).to_string()).collect())
                .collect(),
        }
    }
}

pub fn partition_json(record: &PartitionRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("partition records serialize");
    s.push('\n');
    s
}

/// `step<TAB>a<TAB>b<TAB>merged<TAB>score`, one merge per line, labels for ids.
pub fn dendrogram_text(d: &Dendrogram, g: &Graph) -> String {
    let mut out = format!("# leaves={} merges={}\n# step\ta\tb\tmerged\tscore\n", d.leaf_count(), d.merges().len());
    for (step, m) in d.merges().iter().enumerate() {
        writeln!(out, "{}\t{}\t{}\t{}\t{}", step + 1, g.label(m.a), g.label(m.b), g.label(m.merged), m.score).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub node_count: usize,
    pub isolated_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub avg_clustering_coefficient: f64,
    pub diameter: usize,
    pub avg_path_length: f64,
    pub giant_component_size: usize,
    pub giant_component_fraction: f64,
    pub homophily_ratio: Option<f64>,
    pub degree_histogram: Vec<usize>,
}

impl StatsRecord {
    pub fn new(s: &NetworkStats, homophily_ratio: Option<f64>, degree_histogram: Vec<usize>) -> Self {
        StatsRecord {
            node_count: s.node_count,
            isolated_count: s.isolated_count,
            edge_count: s.edge_count,
            avg_degree: s.avg_degree,
            avg_clustering_coefficient: s.avg_clustering_coefficient,
            diameter: s.diameter,
            avg_path_length: s.avg_path_length,
            giant_component_size: s.giant_component_size,
            giant_component_fraction: s.giant_component_fraction,
            homophily_ratio,
            degree_histogram,
        }
    }
}

/// Two-column property table.
pub fn stats_text(s: &StatsRecord) -> String {
    let mut rows = vec![
        ("Number of nodes", s.node_count.to_string()),
        ("Number of isolated nodes", s.isolated_count.to_string()),
        ("Number of edges", s.edge_count.to_string()),
        ("Average degree", format!("{:.4}", s.avg_degree)),
        ("Avg. clustering coefficient", format!("{:.4}", s.avg_clustering_coefficient)),
        ("Diameter", s.diameter.to_string()),
        ("Avg. path length", format!("{:.4}", s.avg_path_length)),
        ("Size of giant component", s.giant_component_size.to_string()),
        ("Fraction in giant component", format!("{:.4}", s.giant_component_fraction)),
    ];
    if let Some(h) = s.homophily_ratio {
        rows.push(("Homophily ratio", format!("{h:.4}")));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
    out
}

pub fn max_modularity_csv(report: &[MaxModularity]) -> String {
    let mut out = String::from("algorithm,k_newman,modularity_newman,k_literal,modularity_literal\n");
    for r in report {
        writeln!(out, "{},{},{},{},{}", r.algorithm, r.k_newman, r.newman, r.k_literal, r.literal).unwrap();
    }
    out
}

pub fn max_modularity_table(report: &[MaxModularity]) -> String {
    let mut out = format!("{:<10} {:>6} {:>10} {:>6} {:>10}\n", "algorithm", "k", "newman", "k", "literal");
    for r in report {
        writeln!(out, "{:<10} {:>6} {:>10.4} {:>6} {:>10.4}", r.algorithm, r.k_newman, r.newman, r.k_literal, r.literal)
            .unwrap();
    }
    out
}

const PALETTE: [&str; 10] =
    ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

/// Metric columns that get a plot, with file stem and axis title.
pub const PLOTTED: [(&str, &str); 3] = [
    ("modularity_newman", "Modularity (Newman)"),
    ("modularity_literal", "Modularity (literal)"),
    ("like_mindedness", "Like-mindedness"),
];

fn metric(row: &MetricRow, name: &str) -> f64 {
    match name {
        "modularity_newman" => row.modularity_newman,
        "modularity_literal" => row.modularity_literal,
        _ => row.like_mindedness,
    }
}

/// Line plot of one metric against `k`: one polyline per algorithm and a legend.
pub fn svg_plot(series: &MetricSeries, name: &str, title: &str) -> String {
    let (w, h) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 130.0, 30.0, 50.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let ks = series.rows.iter().map(|r| r.k as f64);
    let (kmin, kmax) = ks.clone().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), k| (a.min(k), b.max(k)));
    let ys = series.rows.iter().map(|r| metric(r, name));
    let (mut ymin, mut ymax) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    if series.rows.is_empty() {
        (ymin, ymax) = (0.0, 1.0);
    }
    if ymax - ymin < 1e-12 {
        (ymin, ymax) = (ymin - 0.5, ymax + 0.5);
    }
    let kspan = if kmax > kmin { kmax - kmin } else { 1.0 };
    let x = |k: f64| if series.rows.is_empty() { left } else { left + (k - kmin) / kspan * pw };
    let y = |v: f64| top + (ymax - v) / (ymax - ymin) * ph;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{title} vs. number of communities</text>"#, left + pw / 2.0).unwrap();
    writeln!(s, r#"<g class="axes" stroke="black" fill="none"><line x1="{left}" y1="{}" x2="{}" y2="{}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{}"/></g>"#, top + ph, left + pw, top + ph, top + ph).unwrap();
    for i in 0..=4 {
        let v = ymin + (ymax - ymin) * i as f64 / 4.0;
        writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{v:.3}</text>"#, left - 6.0, y(v) + 4.0).unwrap();
    }
    if !series.rows.is_empty() {
        for i in 0..=4 {
            let k = kmin + kspan * i as f64 / 4.0;
            if kmax == kmin && i > 0 {
                break;
            }
            writeln!(s, r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#, x(k), top + ph + 18.0, k.round()).unwrap();
        }
    }
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">number of communities |C|</text>"#, left + pw / 2.0, h - 10.0).unwrap();
    writeln!(s, r#"<text transform="translate(16 {}) rotate(-90)" text-anchor="middle">{title}</text>"#, top + ph / 2.0).unwrap();

    for (i, alg) in series.algorithms().into_iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> =
            series.rows_for(alg).map(|r| format!("{:.2},{:.2}", x(r.k as f64), y(metric(r, name)))).collect();
        writeln!(s, r#"<polyline class="series" data-algorithm="{alg}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, points.join(" ")).unwrap();
        if points.len() == 1 {
            let (px, py) = points[0].split_once(',').unwrap();
            writeln!(s, r#"<circle cx="{px}" cy="{py}" r="3" fill="{color}"/>"#).unwrap();
        }
        let ly = top + 10.0 + 18.0 * i as f64;
        let lx = left + pw + 16.0;
        writeln!(s, r#"<g class="legend"><line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{alg}</text></g>"#, lx + 20.0, lx + 26.0, ly + 4.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))
}

/// Everything a sweep writes to its output directory.
pub struct SweepOutputs<'a> {
    pub series: &'a MetricSeries,
    pub stats: Option<&'a StatsRecord>,
    pub partitions: &'a [PartitionRecord],
    pub dendrograms: &'a [(String, String)],
}

/// Writes `metrics.csv`, `max_modularity.csv`, `stats.txt`/`stats.json`,
/// `partitions/*.json`, `dendrograms/*.txt` and one SVG per metric.
pub fn emit_outputs(out: &Path, o: &SweepOutputs<'_>) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    write_file(&out.join("metrics.csv"), &metrics_csv(o.series))?;
    write_file(&out.join("max_modularity.csv"), &max_modularity_csv(&max_modularity_report(o.series)))?;
    if let Some(stats) = o.stats {
        write_file(&out.join("stats.txt"), &stats_text(stats))?;
        let json = serde_json::to_string_pretty(stats).expect("stats serialize") + "\n";
        write_file(&out.join("stats.json"), &json)?;
    }
    write_plots(out, o.series)?;
    if !o.partitions.is_empty() {
        let dir = out.join("partitions");
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        for record in o.partitions {
            write_file(&dir.join(format!("{}.json", record.algorithm)), &partition_json(record))?;
        }
    }
    if !o.dendrograms.is_empty() {
        let dir = out.join("dendrograms");
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        for (code, text) in o.dendrograms {
            write_file(&dir.join(format!("{code}.txt")), text)?;
        }
    }
    Ok(())
}

pub fn write_plots(out: &Path, series: &MetricSeries) -> Result<()> {
    for (name, title) in PLOTTED {
        write_file(&out.join(format!("{name}.svg")), &svg_plot(series, name, title))?;
    }
    Ok(())
}

pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    write_file(path, contents)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(alg: &str, k: usize, q: f64) -> MetricRow {
        MetricRow {
            algorithm: alg.into(),
            k,
            modularity_newman: q,
            modularity_literal: q / 3.0,
            like_mindedness: 1.0 / (k as f64 + 0.1),
        }
    }

    #[test]
    fn csv_round_trip() {
        let series = MetricSeries { rows: vec![row("A", 3, 0.1), row("A", 2, -1.0 / 7.0), row("L", 2, 5.0 / 14.0)] };
        let text = metrics_csv(&series);
        assert!(text.starts_with(METRICS_HEADER));
        assert_eq!(parse_metrics_csv(&text, Path::new("m.csv")).unwrap(), series);
        let empty = metrics_csv(&MetricSeries::default());
        assert_eq!(empty, format!("{METRICS_HEADER}\n"));
        assert!(parse_metrics_csv("a,b\n", Path::new("m.csv")).is_err());
        assert!(parse_metrics_csv(&format!("{METRICS_HEADER}\nA,2,x,0,0\n"), Path::new("m.csv")).is_err());
    }

    #[test]
    fn plots() {
        let empty = svg_plot(&MetricSeries::default(), "like_mindedness", "LM");
        assert!(!empty.contains("<polyline"));
        let series = MetricSeries { rows: vec![row("LMM", 3, 0.1), row("LMM", 2, 0.3), row("L", 2, 0.2)] };
        let svg = svg_plot(&series, "modularity_newman", "Q");
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"class="legend""#).count(), 2);
        assert!(svg.contains(">LMM</text>") && svg.contains(">L</text>"));
    }

    #[test]
    fn partition_record() {
        let g = Graph::from_labeled_edges(None, [("a", "b"), ("c", "d")]).unwrap();
        let p = g.connected_components();
        let json = partition_json(&PartitionRecord::new("L", &g, &p));
        let back: PartitionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.communities, vec![vec!["a", "b"], vec!["c", "d"]]);
        assert_eq!(back.k, 2);
    }
}
