//! CSV and JSON writers for sweep results and single traces.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{ExperimentConfig, ExperimentError, ResultsTable};
use crate::attacks::{AttackKind, AttackTrace};
use crate::metrics::LoopStats;

pub const SUMMARY_HEADER: &str = "gamma,sigma2_mean,sigma2_std,kmax_mean,kmax_std,mean_l,mean_l_std,R_degree,R_degree_std,R_betweenness,R_betweenness_std,R_bp,R_bp_std";

/// `%g`-style formatting with 6 significant digits. NaN prints as `nan`.
pub fn fmt_g6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can push the exponent up by one (e.g. 999999.5)
    let sci = format!("{:.5e}", x);
    let (mant, e) = sci.split_once('e').unwrap();
    let e: i32 = e.parse().unwrap();
    let exp = exp.max(e);
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mant.to_string()),
            if e < 0 { '-' } else { '+' },
            e.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn gamma_label(gamma: f64) -> String {
    format!("{gamma:.1}")
}

/// One row per gamma. Attacks that were not run print `nan`.
pub fn format_summary_csv(table: &ResultsTable) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for row in &table.rows {
        let mut fields = vec![
            gamma_label(row.gamma),
            fmt_g6(row.variance.mean),
            fmt_g6(row.variance.std),
            fmt_g6(row.k_max.mean),
            fmt_g6(row.k_max.std),
            fmt_g6(row.mean_loop.mean),
            fmt_g6(row.mean_loop.std),
        ];
        for kind in AttackKind::ALL {
            match row.robustness.get(&kind) {
                Some(ms) => {
                    fields.push(fmt_g6(ms.mean));
                    fields.push(fmt_g6(ms.std));
                }
                None => fields.extend(["nan".to_string(), "nan".to_string()]),
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// `q,S_over_N` with `q = t/n` for `t = 1..n`.
pub fn format_curve_csv(curve: &[f64]) -> String {
    let n = curve.len();
    let mut out = String::from("q,S_over_N\n");
    for (i, s) in curve.iter().enumerate() {
        let _ = writeln!(out, "{},{}", fmt_g6((i + 1) as f64 / n as f64), fmt_g6(*s));
    }
    out
}

fn format_histogram_csv<'a>(
    header: &str,
    hist: impl Iterator<Item = (&'a usize, &'a f64)>,
) -> String {
    let mut out = format!("{header}\n");
    for (k, p) in hist {
        let _ = writeln!(out, "{k},{}", fmt_g6(*p));
    }
    out
}

/// `t,removed_node,lcc_size`, one line per removal.
pub fn format_trace_csv(trace: &AttackTrace) -> String {
    let mut out = String::from("t,removed_node,lcc_size\n");
    for (t, (v, s)) in trace.removal_order.iter().zip(&trace.lcc_curve).enumerate() {
        let _ = writeln!(out, "{},{},{}", t + 1, v.0, s);
    }
    out
}

/// `l,count,probability` followed by a `# mean_l=... bridges=...` line.
pub fn format_loops_csv(stats: &LoopStats) -> String {
    let mut out = String::from("l,count,probability\n");
    for (l, c) in &stats.counts {
        let _ = writeln!(out, "{l},{c},{:.6}", stats.histogram[l]);
    }
    let mean = stats.mean.map_or("nan".to_string(), |m| format!("{m:.6}"));
    let _ = writeln!(out, "# mean_l={mean} bridges={}", stats.bridge_count);
    out
}

fn write_file(
    path: PathBuf,
    contents: &str,
    written: &mut Vec<PathBuf>,
) -> Result<(), ExperimentError> {
    fs::write(&path, contents).map_err(|source| ExperimentError::Io {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(())
}

/// Writes the summary, per-gamma curves and histograms, a config snapshot,
/// and `cells.jsonl` when cells were kept. Files already written are removed
/// if a later write fails.
pub fn write_outputs(
    table: &ResultsTable,
    config: &ExperimentConfig,
    dir: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(dir).map_err(|source| ExperimentError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    let result = write_all(table, config, dir, &mut written);
    if result.is_err() {
        for p in &written {
            let _ = fs::remove_file(p);
        }
    }
    result.map(|_| written)
}

fn write_all(
    table: &ResultsTable,
    config: &ExperimentConfig,
    dir: &Path,
    written: &mut Vec<PathBuf>,
) -> Result<(), ExperimentError> {
    write_file(dir.join("summary.csv"), &format_summary_csv(table), written)?;
    for row in &table.rows {
        let g = gamma_label(row.gamma);
        for (kind, curve) in &row.curves {
            write_file(
                dir.join(format!("curves_{kind}_{g}.csv")),
                &format_curve_csv(curve),
                written,
            )?;
        }
        write_file(
            dir.join(format!("loops_{g}.csv")),
            &format_histogram_csv("l,probability", row.loop_hist.iter()),
            written,
        )?;
        write_file(
            dir.join(format!("degrees_{g}.csv")),
            &format_histogram_csv("k,probability", row.degree_hist.iter()),
            written,
        )?;
    }
    let snapshot = serde_json::to_string_pretty(config).expect("config serializes");
    write_file(dir.join("config.json"), &snapshot, written)?;
    if let Some(cells) = &table.cells {
        let mut lines = String::new();
        for c in cells {
            lines.push_str(&serde_json::to_string(c).expect("cell serializes"));
            lines.push('\n');
        }
        write_file(dir.join("cells.jsonl"), &lines, written)?;
    }
    Ok(())
}
