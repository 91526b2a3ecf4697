use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use monogamy_core::monogamy::{check, InequalityId, InequalityReport, Verdict};
use monogamy_core::states::RandomStream;

use crate::config::CampaignConfig;
use crate::error::{LabError, Result};
use crate::fmt_f64;

pub const CSV_HEADER: &str =
    "state_fingerprint,inequality_id,exponent,lhs,lhs_dir,rhs_sum,verdict,residual";

/// One report row together with where its state came from.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub suite: usize,
    pub sample: usize,
    pub seed: u64,
    pub stream_id: u64,
    pub state_fingerprint: String,
    #[serde(flatten)]
    pub report: InequalityReport,
}

impl ReportRecord {
    fn csv_line(&self) -> String {
        let r = &self.report;
        format!(
            "{},{},{},{},{},{},{},{}",
            self.state_fingerprint,
            r.inequality_id,
            fmt_f64(r.exponent),
            fmt_f64(r.lhs.value),
            r.lhs.direction.as_str(),
            fmt_f64(r.rhs_sum()),
            r.verdict.as_str(),
            fmt_f64(r.residual),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub inequality_id: InequalityId,
    pub exponents: Vec<f64>,
    pub sample_count: usize,
    pub n_verified: usize,
    pub n_inconclusive: usize,
    pub n_violated: usize,
    pub n_near_equality: usize,
    pub min_residual: f64,
    pub max_residual: f64,
    pub wall_time_seconds: f64,
}

impl SuiteSummary {
    pub fn total(&self) -> usize {
        self.n_verified + self.n_inconclusive + self.n_violated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub seed: u64,
    pub suites: Vec<SuiteSummary>,
    pub n_violated: usize,
    pub wall_time_seconds: f64,
}

impl CampaignSummary {
    pub fn exit_code(&self) -> i32 {
        if self.n_violated > 0 {
            crate::EXIT_VIOLATION
        } else {
            crate::EXIT_OK
        }
    }
}

/// Overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct RunOverrides {
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

/// Stream of sample `i` in suite `s`. Distinct suites never share streams.
pub fn state_stream(seed: u64, suite: usize, sample: usize) -> RandomStream {
    RandomStream::new(seed, ((suite as u64) << 32) | sample as u64)
}

fn run_sample(cfg: &CampaignConfig, s: usize, i: usize) -> Result<Vec<ReportRecord>> {
    let suite = &cfg.suites[s];
    let seed = suite.state.seed.unwrap_or(cfg.seed);
    let stream = state_stream(seed, s, i);
    let state = suite.state.realize(&stream)?;
    let fingerprint = state.fingerprint();
    suite
        .exponent_values()
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let opts = cfg.roof_options.clone().with_rng(stream.fork(k as u64));
            let report = check(suite.inequality_id, &state, e, &opts)?;
            Ok(ReportRecord {
                suite: s,
                sample: i,
                seed,
                stream_id: stream.stream_id,
                state_fingerprint: fingerprint.clone(),
                report,
            })
        })
        .collect()
}

fn summarize(cfg: &CampaignConfig, s: usize, records: &[ReportRecord], secs: f64) -> SuiteSummary {
    let suite = &cfg.suites[s];
    let count = |v: Verdict| records.iter().filter(|r| r.report.verdict == v).count();
    let residuals = records.iter().map(|r| r.report.residual).filter(|r| !r.is_nan());
    SuiteSummary {
        inequality_id: suite.inequality_id,
        exponents: suite.exponent_values(),
        sample_count: suite.sample_count,
        n_verified: count(Verdict::Verified),
        n_inconclusive: count(Verdict::Inconclusive),
        n_violated: count(Verdict::Violated),
        n_near_equality: records.iter().filter(|r| r.report.near_equality).count(),
        min_residual: residuals.clone().fold(f64::INFINITY, f64::min),
        max_residual: residuals.fold(f64::NEG_INFINITY, f64::max),
        wall_time_seconds: secs,
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(bytes))
        .map_err(|e| LabError::io(path, e))
}

/// Evaluates every suite and returns the records in deterministic order:
/// suite, then sample, then exponent.
pub fn evaluate(cfg: &CampaignConfig) -> Result<(Vec<ReportRecord>, Vec<SuiteSummary>)> {
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for (s, suite) in cfg.suites.iter().enumerate() {
        let start = Instant::now();
        let rows: Vec<Vec<ReportRecord>> = (0..suite.sample_count)
            .into_par_iter()
            .map(|i| run_sample(cfg, s, i))
            .collect::<Result<_>>()?;
        let rows: Vec<ReportRecord> = rows.into_iter().flatten().collect();
        summaries.push(summarize(cfg, s, &rows, start.elapsed().as_secs_f64()));
        records.extend(rows);
    }
    Ok((records, summaries))
}

pub fn render_csv(records: &[ReportRecord]) -> String {
    let mut out = String::with_capacity(128 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Runs a validated campaign and writes its outputs. The seed override has
/// already folded in the environment variable; `jobs` sizes the worker pool.
pub fn run_campaign_with(cfg: &CampaignConfig, overrides: &RunOverrides) -> Result<CampaignSummary> {
    let mut cfg = cfg.clone();
    if let Some(seed) = overrides.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &overrides.output_dir {
        cfg.output_dir = dir.clone();
    }
    cfg.validate()?;
    let start = Instant::now();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = overrides.jobs {
        if jobs == 0 {
            return Err(LabError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start worker pool: {e}")))?;
    let (records, suites) = pool.install(|| evaluate(&cfg))?;

    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    if cfg.format.csv() {
        write_file(&dir.join("reports.csv"), render_csv(&records).as_bytes())?;
    }
    if cfg.format.json() {
        let json = serde_json::to_vec_pretty(&records).expect("reports serialize");
        write_file(&dir.join("reports.json"), &json)?;
    }
    let summary = CampaignSummary {
        seed: cfg.seed,
        n_violated: suites.iter().map(|s| s.n_violated).sum(),
        suites,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let json = serde_json::to_vec_pretty(&summary).expect("summary serializes");
    write_file(&dir.join("summary.json"), &json)?;
    Ok(summary)
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    run_campaign_with(cfg, &RunOverrides::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use monogamy_core::measures::FOUR_LN_2;

    fn config(text: &str) -> CampaignConfig {
        CampaignConfig::from_json_str(text).unwrap()
    }

    #[test]
    fn ghz_single_row() {
        let cfg = config(
            r#"{"suites": [{"inequality_id": "thm1_logneg", "exponents": ["4ln2"],
                "state": {"family": "ghz", "dims": [2, 2, 2]}, "sample_count": 1}]}"#,
        );
        let (records, suites) = evaluate(&cfg).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(suites[0].n_verified, 1);
        assert!((suites[0].min_residual - 1.0).abs() < 1e-9);
        assert_eq!(records[0].report.exponent, FOUR_LN_2);
        let csv = render_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 8);
        assert_eq!(row[1], "thm1_logneg");
        assert_eq!(row[2].parse::<f64>().unwrap(), FOUR_LN_2);
        assert_eq!(row[4], "exact");
        assert_eq!(row[6], "verified");
    }

    #[test]
    fn exit_code_reflects_violations() {
        let mut s = CampaignSummary {
            seed: 0,
            suites: Vec::new(),
            n_violated: 1,
            wall_time_seconds: 0.0,
        };
        assert_eq!(s.exit_code(), crate::EXIT_VIOLATION);
        s.n_violated = 0;
        assert_eq!(s.exit_code(), crate::EXIT_OK);
    }

    #[test]
    fn streams_separate_suites_and_samples() {
        assert_ne!(state_stream(1, 0, 1).stream_id, state_stream(1, 1, 1).stream_id);
        assert_eq!(state_stream(1, 2, 5).stream_id, (2 << 32) | 5);
    }

    #[test]
    fn order_is_independent_of_pool_size() {
        let cfg = config(
            r#"{"seed": 3, "suites": [{"inequality_id": "thm1_lcrenoa_poly", "exponents": [1, 2],
                "state": {"family": "haar_pure", "dims": [2, 2, 2]}, "sample_count": 20}]}"#,
        );
        let run = |n| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            render_csv(&pool.install(|| evaluate(&cfg)).unwrap().0)
        };
        let a = run(1);
        assert_eq!(a, run(4));
        assert_eq!(a.lines().count(), 41);
    }
}
