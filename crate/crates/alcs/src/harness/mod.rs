//! Experiment protocol: repeated independent runs, the four study metrics,
//! aggregation across repeats, and CSV/report/chart emission.

mod config;
mod experiment;
mod metrics;
mod report;

pub use config::{ConfigError, EnvKind, ExperimentConfig};
pub use experiment::{run_experiment, ExperimentError, ExperimentOutcome, Summary, THREADS_ENV_VAR};
pub use metrics::{knowledge, trial_of_threshold, MetricsRecord, Phase};
pub use report::{
    collect_runs, format_csv, parse_csv, render_charts, render_report, strip_elapsed_column,
    write_csv, write_run_artifacts, RunArtifacts, CSV_HEADER,
};
