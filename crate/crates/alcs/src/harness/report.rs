//! CSV serialization, plain-text summary tables and SVG line charts.

use super::experiment::{mean_curve, ExperimentError, ExperimentOutcome, Summary};
use super::metrics::MetricsRecord;
use crate::engine::Algorithm;
use std::fs;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str = "repeat,trial,phase,numerosity,reliable,knowledge_pct,steps,success,elapsed_s";

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Renders the per-trial records of every repeat as CSV text.
pub fn format_csv(per_repeat: &[Vec<MetricsRecord>]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (repeat, series) in per_repeat.iter().enumerate() {
        for r in series {
            out.push_str(&format!(
                "{repeat},{},{},{},{},{},{},{},{}\n",
                r.trial,
                r.phase,
                opt(&r.numerosity),
                opt(&r.reliable),
                opt(&r.knowledge_pct),
                r.steps,
                r.success,
                r.elapsed_s
            ));
        }
    }
    out
}

/// Writes the CSV to `path`, reporting the path on failure.
pub fn write_csv(per_repeat: &[Vec<MetricsRecord>], path: &Path) -> Result<(), ExperimentError> {
    fs::write(path, format_csv(per_repeat)).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses CSV text produced by `format_csv` back into per-repeat series.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<MetricsRecord>>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("unexpected CSV header: {other:?}")),
    }
    let mut per_repeat: Vec<Vec<MetricsRecord>> = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(format!("row {} has {} fields, expected 9", i + 2, fields.len()));
        }
        let parse_err = |what: &str| format!("row {}: bad {what}", i + 2);
        let repeat: usize = fields[0].parse().map_err(|_| parse_err("repeat"))?;
        let record = MetricsRecord {
            trial: fields[1].parse().map_err(|_| parse_err("trial"))?,
            phase: fields[2].parse().map_err(|_| parse_err("phase"))?,
            numerosity: parse_opt(fields[3]).map_err(|_| parse_err("numerosity"))?,
            reliable: parse_opt(fields[4]).map_err(|_| parse_err("reliable"))?,
            knowledge_pct: parse_opt(fields[5]).map_err(|_| parse_err("knowledge_pct"))?,
            steps: fields[6].parse().map_err(|_| parse_err("steps"))?,
            success: fields[7].parse().map_err(|_| parse_err("success"))?,
            elapsed_s: fields[8].parse().map_err(|_| parse_err("elapsed_s"))?,
        };
        while per_repeat.len() <= repeat {
            per_repeat.push(Vec::new());
        }
        per_repeat[repeat].push(record);
    }
    Ok(per_repeat)
}

fn parse_opt<T: std::str::FromStr>(s: &str) -> Result<Option<T>, T::Err> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

/// Writes `metrics.csv` and `summary.json` under `base_dir/<label>/` and
/// returns that directory.
pub fn write_run_artifacts(
    outcome: &ExperimentOutcome,
    base_dir: &Path,
) -> Result<PathBuf, ExperimentError> {
    let dir = base_dir.join(outcome.summary.label.as_str());
    let io_err = |path: &Path, source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    write_csv(&outcome.per_repeat, &dir.join("metrics.csv"))?;
    let summary_path = dir.join("summary.json");
    let json = serde_json::to_string_pretty(&outcome.summary).expect("summary serializes");
    fs::write(&summary_path, json).map_err(|e| io_err(&summary_path, e))?;
    Ok(dir)
}

/// One previously written run, loaded back for reporting.
#[derive(Clone, Debug)]
pub struct RunArtifacts {
    pub summary: Summary,
    pub per_repeat: Vec<Vec<MetricsRecord>>,
}

/// Loads every `<dir>/*/summary.json` + `metrics.csv` pair, sorted by label.
pub fn collect_runs(dir: &Path) -> Result<Vec<RunArtifacts>, ExperimentError> {
    let io_err = |path: &Path, source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut runs = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| io_err(dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| io_err(dir, e))?;
        let sub = entry.path();
        let summary_path = sub.join("summary.json");
        let csv_path = sub.join("metrics.csv");
        if !summary_path.is_file() || !csv_path.is_file() {
            continue;
        }
        let summary_text = fs::read_to_string(&summary_path).map_err(|e| io_err(&summary_path, e))?;
        let summary: Summary = serde_json::from_str(&summary_text).map_err(|e| {
            io_err(&summary_path, std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })?;
        let csv_text = fs::read_to_string(&csv_path).map_err(|e| io_err(&csv_path, e))?;
        let per_repeat = parse_csv(&csv_text).map_err(|e| {
            io_err(&csv_path, std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })?;
        runs.push(RunArtifacts { summary, per_repeat });
    }
    runs.sort_by(|a, b| a.summary.label.cmp(&b.summary.label));
    Ok(runs)
}

fn model_name(algo: Algorithm) -> &'static str {
    match algo {
        Algorithm::Acs2 => "ACS2",
        Algorithm::Acs2Er => "ACS2ER",
        Algorithm::Acs2Her => "ACS2HER",
    }
}

fn parameters_label(s: &Summary) -> String {
    match (s.hindsight_count, s.batch_size) {
        (Some(k), Some(m)) => format!("K-{k} | M-{m}"),
        (None, Some(m)) => format!("M-{m}"),
        _ => String::new(),
    }
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Fixed-width plain-text table.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    fn render(&self, title: &str) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (cell, &w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(&format!("{cell:<w$}"));
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        out.push_str(title);
        out.push('\n');
        let head = line(&self.header);
        out.push_str(&"-".repeat(head.len().max(title.len())));
        out.push('\n');
        out.push_str(&head);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

/// Renders the comparative summary tables for a set of runs.
pub fn render_report(summaries: &[Summary]) -> String {
    let mut out = String::new();
    let any_exploit = summaries.iter().any(|s| s.exploit_trials > 0);

    if summaries.iter().any(|s| s.knowledge_measured) {
        let threshold = summaries
            .iter()
            .find(|s| s.knowledge_measured)
            .map(|s| s.knowledge_threshold)
            .unwrap_or(95.0);
        let mut table = Table::new(&[
            "Model",
            "Parameters",
            &format!("Trial of {threshold}%"),
            "Best knowledge [%]",
        ]);
        for s in summaries.iter().filter(|s| s.knowledge_measured) {
            table.row(vec![
                model_name(s.algo).into(),
                parameters_label(s),
                s.trial_at_threshold.map_or("-".into(), |t| t.to_string()),
                s.best_knowledge_pct.map_or("-".into(), fmt2),
            ]);
        }
        out.push_str(&table.render("Trial at knowledge threshold and best knowledge"));
        out.push('\n');
    }

    {
        let mut table = Table::new(&[
            "Model",
            "Parameters",
            "Max numerosity",
            "Avg numerosity",
            "Avg reliable",
            "Difference",
        ]);
        for s in summaries {
            table.row(vec![
                model_name(s.algo).into(),
                parameters_label(s),
                s.max_numerosity.map_or("-".into(), fmt2),
                s.avg_numerosity.map_or("-".into(), fmt2),
                s.avg_reliable.map_or("-".into(), fmt2),
                s.difference.map_or("-".into(), fmt2),
            ]);
        }
        out.push_str(&table.render("Population numerosity and reliable classifiers"));
        out.push('\n');
    }

    {
        let mut header = vec!["Model", "Parameters", "In explore phase"];
        if any_exploit {
            header.push("In exploit phase");
        }
        let mut table = Table::new(&header);
        for s in summaries {
            let mut row = vec![
                model_name(s.algo).into(),
                parameters_label(s),
                fmt2(s.explore_steps_mean),
            ];
            if any_exploit {
                row.push(s.exploit_steps_mean.map_or("-".into(), fmt2));
            }
            table.row(row);
        }
        out.push_str(&table.render("Average number of steps to the goal"));
        out.push('\n');
    }

    {
        let explore_trials = summaries.first().map_or(0, |s| s.explore_trials);
        let exploit_trials = summaries.first().map_or(0, |s| s.exploit_trials);
        let mut header = vec![
            "Model".to_string(),
            "Parameters".to_string(),
            format!("In explore phase (over {explore_trials})"),
        ];
        if any_exploit {
            header.push(format!("In exploit phase (over {exploit_trials})"));
        }
        let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
        let mut table = Table::new(&header_refs);
        for s in summaries {
            let mut row = vec![
                model_name(s.algo).into(),
                parameters_label(s),
                fmt2(s.explore_successes_mean),
            ];
            if any_exploit {
                row.push(s.exploit_successes_mean.map_or("-".into(), fmt2));
            }
            table.row(row);
        }
        out.push_str(&table.render("Average number of trials in which the goal was achieved"));
        out.push('\n');
    }

    {
        let mut header = vec!["Model", "Parameters", "Explore phase [s]"];
        if any_exploit {
            header.push("Exploit phase [s]");
        }
        let mut table = Table::new(&header);
        for s in summaries {
            let mut row = vec![
                model_name(s.algo).into(),
                parameters_label(s),
                fmt2(s.explore_time_s_mean),
            ];
            if any_exploit {
                row.push(s.exploit_time_s_mean.map_or("-".into(), fmt2));
            }
            table.row(row);
        }
        out.push_str(&table.render("Average time to complete one repeat"));
    }

    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Self-contained SVG line chart.
fn line_chart_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> String {
    let (width, height) = (860.0, 520.0);
    let (ml, mr, mt, mb) = (70.0, 170.0, 40.0, 50.0);
    let plot_w = width - ml - mr;
    let plot_h = height - mt - mb;

    let points: Vec<(f64, f64)> = series.iter().flat_map(|(_, pts)| pts.iter().copied()).collect();
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (0.0f64, f64::NEG_INFINITY);
    for &(x, y) in &points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if points.is_empty() {
        x_min = 0.0;
        x_max = 1.0;
        y_max = 1.0;
    }
    if (x_max - x_min).abs() < f64::EPSILON {
        x_max = x_min + 1.0;
    }
    if (y_max - y_min).abs() < f64::EPSILON {
        y_max = y_min + 1.0;
    }
    let sx = |x: f64| ml + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| mt + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">{title}</text>\n",
        ml + plot_w / 2.0
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + plot_h,
        ml + plot_w,
        mt + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + plot_h
    ));
    // ticks
    for i in 0..=5 {
        let fx = x_min + (x_max - x_min) * i as f64 / 5.0;
        let fy = y_min + (y_max - y_min) * i as f64 / 5.0;
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n\
             <text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\">{4:.0}</text>\n",
            sx(fx),
            mt + plot_h,
            mt + plot_h + 5.0,
            mt + plot_h + 20.0,
            fx
        ));
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n\
             <text x=\"{3}\" y=\"{4}\" text-anchor=\"end\">{5:.1}</text>\n",
            ml - 5.0,
            sy(fy),
            ml,
            ml - 8.0,
            sy(fy) + 4.0,
            fy
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n",
        ml + plot_w / 2.0,
        height - 10.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{y_label}</text>\n",
        mt + plot_h / 2.0,
        mt + plot_h / 2.0
    ));
    // series
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                path.join(" ")
            ));
        }
        let ly = mt + 14.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{ly}\" x2=\"{1}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n\
             <text x=\"{2}\" y=\"{3}\">{name}</text>\n",
            width - mr + 8.0,
            width - mr + 28.0,
            width - mr + 34.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Rolling across-repeat mean of steps per trial, smoothed over `window`
/// trials to keep the curve legible.
fn steps_curve(per_repeat: &[Vec<MetricsRecord>], window: usize) -> Vec<(f64, f64)> {
    let Some(first) = per_repeat.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + window).min(n);
        let mut sum = 0.0;
        let mut count = 0;
        for series in per_repeat {
            for r in &series[start..end] {
                sum += r.steps as f64;
                count += 1;
            }
        }
        if count > 0 {
            out.push((first[(start + end) / 2].trial as f64, sum / count as f64));
        }
        start = end;
    }
    out
}

/// Writes `knowledge.svg`, `population.svg` and `steps.svg` for the given
/// runs into `out_dir`; returns the files written.
pub fn render_charts(runs: &[RunArtifacts], out_dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    let io_err = |path: &Path, source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    let mut written = Vec::new();

    let to_f = |curve: Vec<(usize, f64)>| -> Vec<(f64, f64)> {
        curve.into_iter().map(|(t, v)| (t as f64, v)).collect()
    };

    let knowledge_series: Vec<(String, Vec<(f64, f64)>)> = runs
        .iter()
        .filter(|r| r.summary.knowledge_measured)
        .map(|r| {
            (
                r.summary.label.clone(),
                to_f(mean_curve(&r.per_repeat, |x| x.knowledge_pct)),
            )
        })
        .collect();
    if !knowledge_series.is_empty() {
        let path = out_dir.join("knowledge.svg");
        fs::write(
            &path,
            line_chart_svg("Knowledge", "trial", "knowledge [%]", &knowledge_series),
        )
        .map_err(|e| io_err(&path, e))?;
        written.push(path);
    }

    let mut population_series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for r in runs {
        population_series.push((
            format!("{} numerosity", r.summary.label),
            to_f(mean_curve(&r.per_repeat, |x| x.numerosity.map(|n| n as f64))),
        ));
        population_series.push((
            format!("{} reliable", r.summary.label),
            to_f(mean_curve(&r.per_repeat, |x| x.reliable.map(|n| n as f64))),
        ));
    }
    let path = out_dir.join("population.svg");
    fs::write(
        &path,
        line_chart_svg(
            "Population numerosity and reliable classifiers",
            "trial",
            "classifiers",
            &population_series,
        ),
    )
    .map_err(|e| io_err(&path, e))?;
    written.push(path);

    let steps_series: Vec<(String, Vec<(f64, f64)>)> = runs
        .iter()
        .map(|r| (r.summary.label.clone(), steps_curve(&r.per_repeat, 25)))
        .collect();
    let path = out_dir.join("steps.svg");
    fs::write(
        &path,
        line_chart_svg("Steps to the goal", "trial", "steps", &steps_series),
    )
    .map_err(|e| io_err(&path, e))?;
    written.push(path);

    Ok(written)
}

/// Drops the wall-clock column, leaving only the seed-deterministic fields.
pub fn strip_elapsed_column(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rsplit_once(',') {
            Some((rest, _)) => rest.to_string(),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::EnvKind;
    use crate::harness::metrics::Phase as P;

    fn record(trial: usize, phase: P, sampled: bool) -> MetricsRecord {
        MetricsRecord {
            trial,
            phase,
            numerosity: sampled.then_some(40),
            reliable: sampled.then_some(30),
            knowledge_pct: sampled.then_some(85.5),
            steps: 12,
            success: trial % 2 == 0,
            elapsed_s: 0.125,
        }
    }

    fn sample_series() -> Vec<Vec<MetricsRecord>> {
        vec![
            vec![record(1, P::Explore, false), record(2, P::Explore, true), record(3, P::Exploit, true)],
            vec![record(1, P::Explore, false), record(2, P::Explore, true), record(3, P::Exploit, true)],
        ]
    }

    #[test]
    fn csv_header_is_pinned() {
        let csv = format_csv(&sample_series());
        assert!(csv.starts_with(
            "repeat,trial,phase,numerosity,reliable,knowledge_pct,steps,success,elapsed_s\n"
        ));
    }

    #[test]
    fn csv_round_trips_exactly() {
        let series = sample_series();
        let csv = format_csv(&series);
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed, series);
        // and the re-rendered bytes are identical
        assert_eq!(format_csv(&parsed), csv);
    }

    #[test]
    fn empty_optional_fields_round_trip_as_none() {
        let csv = format_csv(&sample_series());
        let parsed = parse_csv(&csv).unwrap();
        assert!(parsed[0][0].numerosity.is_none());
        assert_eq!(parsed[0][1].numerosity, Some(40));
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(parse_csv("nonsense\n").is_err());
        let mut csv = String::from(CSV_HEADER);
        csv.push_str("\n0,1,explore,,,\n");
        assert!(parse_csv(&csv).is_err());
    }

    fn summary(algo: Algorithm, m: Option<usize>, k: Option<usize>) -> Summary {
        Summary {
            label: "x".into(),
            algo,
            env: EnvKind::Maze6,
            batch_size: m,
            hindsight_count: k,
            strategy: None,
            repeats: 5,
            explore_trials: 2000,
            exploit_trials: 500,
            knowledge_measured: true,
            knowledge_threshold: 95.0,
            trial_at_threshold: Some(239),
            best_knowledge_pct: Some(99.95),
            max_numerosity: Some(495.22),
            avg_numerosity: Some(381.78),
            avg_reliable: Some(381.22),
            difference: Some(0.56),
            explore_steps_mean: 12.81,
            exploit_steps_mean: Some(5.21),
            explore_successes_mean: 1999.0,
            exploit_successes_mean: Some(500.0),
            explore_time_s_mean: 280.0,
            exploit_time_s_mean: Some(2.7),
        }
    }

    #[test]
    fn report_contains_the_difference_column_and_dash_for_missing() {
        let mut never = summary(Algorithm::Acs2, None, None);
        never.trial_at_threshold = None;
        let rows = [never, summary(Algorithm::Acs2Er, Some(8), None)];
        let report = render_report(&rows);
        assert!(report.contains("Difference"));
        assert!(report.contains("ACS2ER"));
        assert!(report.contains("M-8"));
        assert!(report.contains('-'));
        assert!(report.contains("0.56"));
    }

    #[test]
    fn report_omits_exploit_columns_without_an_exploit_phase() {
        let mut s = summary(Algorithm::Acs2, None, None);
        s.exploit_trials = 0;
        s.exploit_steps_mean = None;
        s.exploit_successes_mean = None;
        s.exploit_time_s_mean = None;
        let report = render_report(&[s]);
        assert!(!report.contains("exploit"));
        assert!(report.contains("explore"));
    }

    #[test]
    fn stripping_the_elapsed_column_removes_only_the_last_field() {
        let csv = format_csv(&sample_series());
        let stripped = strip_elapsed_column(&csv);
        assert!(stripped.starts_with(
            "repeat,trial,phase,numerosity,reliable,knowledge_pct,steps,success"
        ));
        assert!(!stripped.contains("0.125"));
        assert!(stripped.contains("12,true"));
    }

    #[test]
    fn chart_svg_is_self_contained() {
        let svg = line_chart_svg(
            "t",
            "x",
            "y",
            &[("a".into(), vec![(0.0, 0.0), (10.0, 5.0)])],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("polyline"));
    }
}
