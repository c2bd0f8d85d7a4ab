//! Report bundle: the corpus size-distribution table, the per-cluster
//! averaged-metrics table, the k-sweep series, tag-frequency data, cluster
//! membership lists, and a human-readable summary. The report stage only
//! reformats serialized artifacts; it never recomputes anything.

use crate::config::PipelineConfig;
use crate::errors::CliError;
use crate::stages::{
    cluster_profiles_csv, load_cluster_profiles, load_corpus_index, require_artifact, Stage,
    StageWriter,
};
use std::fmt::Write as _;
use steamnet_core::Scalar;

/// Linear interpolation between order statistics (`h = (n−1)p`).
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty data");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Group digits with commas: `17273 → "17,273"`, preserving up to
/// `decimals` fractional digits (trailing handling fixed by the caller).
pub fn format_grouped(value: f64, decimals: usize) -> String {
    let formatted = format!("{value:.decimals$}");
    let (int_part, frac_part) = match formatted.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (formatted.as_str(), None),
    };
    let (sign, digits) = match int_part.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", int_part),
    };
    let mut grouped = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            grouped.push(',');
        }
        grouped.push(c);
    }
    match frac_part {
        Some(f) => format!("{sign}{grouped}.{f}"),
        None => format!("{sign}{grouped}"),
    }
}

/// A count-valued statistic: integer display unless interpolation left a
/// fraction.
fn format_count_stat(value: f64) -> String {
    if (value - value.round()).abs() < 1e-9 {
        format_grouped(value.round(), 0)
    } else {
        format_grouped(value, 2)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SizeRow {
    pub min: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

pub fn size_row(values: &[usize]) -> SizeRow {
    let mut sorted: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let var = sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    SizeRow {
        min: sorted[0],
        p25: percentile(&sorted, 0.25),
        p50: percentile(&sorted, 0.50),
        p75: percentile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        mean,
        std: var.sqrt(),
    }
}

/// Render one labelled row of the size-distribution table.
pub fn format_size_row(label: &str, row: &SizeRow) -> String {
    format!(
        "{label}  {}  {}  {}  {}  {}  {}  {}",
        format_count_stat(row.min),
        format_count_stat(row.p25),
        format_count_stat(row.p50),
        format_count_stat(row.p75),
        format_count_stat(row.max),
        format_grouped(row.mean, 2),
        format_grouped(row.std, 2),
    )
}

fn size_distribution_txt(nodes: &SizeRow, edges: &SizeRow) -> String {
    let mut out = String::from("Distribution of the size of the friendship graphs\n\n");
    out.push_str("        Min  25%  50%  75%  Max  Mean  Std\n");
    out.push_str(&format_size_row("#nodes", nodes));
    out.push('\n');
    out.push_str(&format_size_row("#edges", edges));
    out.push('\n');
    out
}

fn size_distribution_csv(nodes: &SizeRow, edges: &SizeRow) -> String {
    let mut out = String::from("metric,min,p25,p50,p75,max,mean,std\n");
    for (label, row) in [("nodes", nodes), ("edges", edges)] {
        let _ = writeln!(
            out,
            "{label},{},{},{},{},{},{},{}",
            row.min, row.p25, row.p50, row.p75, row.max, row.mean, row.std
        );
    }
    out
}

pub fn run_report(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Report);
    for (label, stage, rel) in [
        ("subgraphs/corpus.json", Stage::Subgraphs, "corpus.json"),
        (
            "characterize/cluster_profiles.json",
            Stage::Characterize,
            "cluster_profiles.json",
        ),
        ("cluster/sweep.csv", Stage::Cluster, "sweep.csv"),
        (
            "characterize/tag_frequencies.json",
            Stage::Characterize,
            "tag_frequencies.json",
        ),
    ] {
        let path = require_artifact(cfg, stage, rel)?;
        writer.record_input(label, &path)?;
    }

    // (a) Corpus size distribution.
    let index = load_corpus_index(cfg)?;
    let node_counts: Vec<usize> = index.games.iter().map(|e| e.n_nodes).collect();
    let edge_counts: Vec<usize> = index.games.iter().map(|e| e.n_edges).collect();
    let nodes_row = size_row(&node_counts);
    let edges_row = size_row(&edge_counts);
    writer.write(
        "size_distribution.txt",
        size_distribution_txt(&nodes_row, &edges_row).as_bytes(),
    )?;
    writer.write(
        "size_distribution.csv",
        size_distribution_csv(&nodes_row, &edges_row).as_bytes(),
    )?;

    // (b) Per-cluster averaged metrics.
    let clusters = load_cluster_profiles(cfg)?;
    writer.write("cluster_metrics.csv", cluster_profiles_csv(&clusters).as_bytes())?;

    // (c) K-sweep series.
    let sweep_path = require_artifact(cfg, Stage::Cluster, "sweep.csv")?;
    let sweep_bytes = std::fs::read(&sweep_path)?;
    writer.write("k_sweep.csv", &sweep_bytes)?;

    // (d) Tag frequencies (word-cloud input).
    let freq_path = require_artifact(cfg, Stage::Characterize, "tag_frequencies.json")?;
    let freq_bytes = std::fs::read(&freq_path)?;
    writer.write("tag_frequencies.json", &freq_bytes)?;

    // (e) Membership lists grouped by cluster.
    let mut memberships = String::from("Titles contained in each cluster\n");
    for cluster in &clusters {
        let _ = writeln!(memberships, "\n#{} ({} games)", cluster.cluster, cluster.size);
        for name in &cluster.members {
            let _ = writeln!(memberships, "  {name}");
        }
    }
    writer.write("memberships.txt", memberships.as_bytes())?;

    // (f) Human-readable summary.
    writer.write(
        "summary.md",
        summary_md(cfg, &nodes_row, &edges_row, &clusters, &sweep_bytes).as_bytes(),
    )?;
    writer.finish()
}

fn summary_md(
    cfg: &PipelineConfig,
    nodes_row: &SizeRow,
    edges_row: &SizeRow,
    clusters: &[steamnet_core::characterization::ClusterProfile<Scalar>],
    sweep_csv: &[u8],
) -> String {
    let mut out = String::new();
    out.push_str("# Game friendship-network corpus report\n\n");
    let total: usize = clusters.iter().map(|c| c.size).sum();
    let _ = writeln!(
        out,
        "{total} game networks, clustered into {} groups (k = {}, seed = {}).\n",
        clusters.len(),
        cfg.clustering.k,
        cfg.seed
    );

    out.push_str("## Corpus size distribution\n\n");
    out.push_str("| | Min | 25% | 50% | 75% | Max | Mean | Std |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for (label, row) in [("#nodes", nodes_row), ("#edges", edges_row)] {
        let _ = writeln!(
            out,
            "| {label} | {} | {} | {} | {} | {} | {} | {} |",
            format_count_stat(row.min),
            format_count_stat(row.p25),
            format_count_stat(row.p50),
            format_count_stat(row.p75),
            format_count_stat(row.max),
            format_grouped(row.mean, 2),
            format_grouped(row.std, 2),
        );
    }

    out.push_str("\n## Model selection (distortion / silhouette per k)\n\n```\n");
    out.push_str(&String::from_utf8_lossy(sweep_csv));
    out.push_str("```\n");

    out.push_str("\n## Cluster structure (averages over member networks)\n\n");
    out.push_str("| Cluster | Size | Nodes | Density | Mean deg | Std deg | Avg clust | #CC | %LCC | Modularity | Assort | %PL | Deg centr | Betw centr |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
    let cell = |v: Option<Scalar>| v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "–".into());
    for c in clusters {
        let a = &c.avg_metrics;
        let _ = writeln!(
            out,
            "| {} | {} | {:.1} | {} | {:.2} | {:.2} | {:.4} | {:.1} | {:.3} | {} | {} | {:.0}% | {} | {} |",
            c.cluster,
            c.size,
            a.n_nodes,
            cell(a.density),
            a.mean_degree,
            a.std_degree,
            a.avg_clustering,
            a.n_components,
            a.lcc_fraction,
            cell(a.modularity),
            cell(a.assortativity),
            a.pct_power_law * 100.0,
            cell(a.degree_centralization),
            cell(a.betweenness_centralization),
        );
    }

    out.push_str("\n## Most frequent selected tags per cluster\n\n");
    for c in clusters {
        let mut tags: Vec<(&String, &usize)> = c.tag_frequencies.iter().collect();
        tags.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
        let head: Vec<String> = tags
            .iter()
            .take(10)
            .map(|(tag, count)| {
                let share = **count as f64 / c.size as f64 * 100.0;
                format!("{tag} ({share:.0}%)")
            })
            .collect();
        let _ = writeln!(out, "- **Cluster {}** ({}): {}", c.cluster, c.size, head.join(", "));
    }

    out.push_str("\n## Genre distribution per cluster\n\n");
    for c in clusters {
        let mut genres: Vec<(&String, &Scalar)> = c.genre_distribution.iter().collect();
        genres.sort_by(|a, b| b.1.partial_cmp(a.1).expect("finite").then_with(|| a.0.cmp(b.0)));
        let head: Vec<String> = genres
            .iter()
            .take(6)
            .map(|(genre, share)| format!("{genre} ({:.0}%)", **share * 100.0))
            .collect();
        let _ = writeln!(out, "- **Cluster {}**: {}", c.cluster, head.join(", "));
    }

    out.push_str("\n## Members\n\n");
    for c in clusters {
        let _ = writeln!(out, "- **Cluster {}**: {}", c.cluster, c.members.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles_interpolate_linearly() {
        let data = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&data, 0.0), 1.0);
        assert_eq!(percentile(&data, 0.5), 2.5);
        assert_eq!(percentile(&data, 0.25), 1.75);
        assert_eq!(percentile(&data, 1.0), 4.0);
    }

    #[test]
    fn size_row_statistics_are_ordered() {
        let row = size_row(&[270, 400, 505, 900, 17_273]);
        assert!(row.min <= row.p25);
        assert!(row.p25 <= row.p50);
        assert!(row.p50 <= row.p75);
        assert!(row.p75 <= row.max);
    }

    #[test]
    fn grouped_formatting() {
        assert_eq!(format_grouped(17_273.0, 0), "17,273");
        assert_eq!(format_grouped(879.79, 2), "879.79");
        assert_eq!(format_grouped(1_445.36, 2), "1,445.36");
        assert_eq!(format_grouped(2_413.29, 2), "2,413.29");
        assert_eq!(format_grouped(1_234_567.0, 0), "1,234,567");
        assert_eq!(format_grouped(42.0, 0), "42");
    }

    #[test]
    fn golden_size_rows_render_with_reference_layout() {
        // Reference rows for the size-distribution table format.
        let nodes = SizeRow {
            min: 270.0,
            p25: 369.0,
            p50: 505.0,
            p75: 833.0,
            max: 17_273.0,
            mean: 879.79,
            std: 1_445.36,
        };
        assert_eq!(
            format_size_row("#nodes", &nodes),
            "#nodes  270  369  505  833  17,273  879.79  1,445.36"
        );
        let edges = SizeRow {
            min: 7.0,
            p25: 38.0,
            p50: 91.0,
            p75: 217.0,
            max: 32_507.0,
            mean: 478.60,
            std: 2_413.29,
        };
        assert_eq!(
            format_size_row("#edges", &edges),
            "#edges  7  38  91  217  32,507  478.60  2,413.29"
        );
    }
}
