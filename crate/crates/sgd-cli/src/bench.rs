//! Compressibility benchmark: synthesize a describing sentence per job,
//! measure lengths and diameters, re-check the sentence on its own group,
//! sweep the catalog for uniqueness, and fit symbol count against (v + ℓ).

use crate::catalog;
use serde::Serialize;
use sgd_core::check::{check_sentence, describes_uniquely, CheckOptions};
use sgd_core::files::{self, LoadedGroup};
use sgd_core::formula::{symbol_count, Formula};
use sgd_core::synth::{describing_sentence, DescriptionJob, SynthError, SYNTH_CONSTANTS};
use std::path::Path;

/// Default cap on the uniqueness-sweep scope. Sweeping a sentence over the
/// 720-element S6 table is out of desk range (see README); the cap keeps
/// bench runs in minutes while still sweeping every group up to twice the
/// target order for targets of order ≤ 180.
pub const DEFAULT_SWEEP_CAP: usize = 360;

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub check: CheckOptions,
    pub sweep_cap: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            check: CheckOptions::default(),
            sweep_cap: DEFAULT_SWEEP_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub name: String,
    pub order: usize,
    pub presentation_length: usize,
    pub diameter: u32,
    pub v: u32,
    pub symbol_count: u64,
    pub length_bound: u64,
    pub check_ms: f64,
    pub self_check: bool,
    pub unique: bool,
    pub violators: Vec<String>,
    pub sweep_scope: usize,
    /// "ok", or the failure kind for jobs that produced no sentence.
    pub status: String,
}

impl BenchRecord {
    pub fn ok(&self) -> bool {
        self.status == "ok" && self.self_check && self.unique
    }

    fn failed(name: &str, order: usize, presentation_length: usize, status: &str) -> BenchRecord {
        BenchRecord {
            name: name.to_string(),
            order,
            presentation_length,
            diameter: 0,
            v: 0,
            symbol_count: 0,
            length_bound: 0,
            check_ms: 0.0,
            self_check: false,
            unique: false,
            violators: Vec::new(),
            sweep_scope: 0,
            status: status.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthSummary {
    pub jobs: usize,
    pub jobs_ok: usize,
    /// Range and mean of symbol_count / (v + ℓ) over successful jobs.
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub ratio_mean: f64,
    pub all_within_bound: bool,
}

#[derive(Debug, Serialize)]
pub struct BenchOutcome {
    pub schema: u32,
    pub constants: sgd_core::synth::SynthConstants,
    pub records: Vec<BenchRecord>,
    pub summary: GrowthSummary,
}

/// Run every job; failures are recorded and the run continues. Jobs run in
/// parallel when `options.check.jobs > 1`, each worker fully sequential.
pub fn bench_family(
    jobs: &[(String, DescriptionJob<LoadedGroup>)],
    options: &BenchOptions,
) -> (BenchOutcome, Vec<(String, Formula)>) {
    let per_job = BenchOptions {
        check: sgd_core::check::CheckOptions { jobs: 1, ..options.check },
        ..*options
    };
    let results: Vec<(BenchRecord, Option<(String, Formula)>)> = if options.check.jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.check.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| jobs.par_iter().map(|(name, job)| run_job(name, job, &per_job)).collect())
    } else {
        jobs.iter().map(|(name, job)| run_job(name, job, &per_job)).collect()
    };

    let mut records = Vec::with_capacity(results.len());
    let mut sentences = Vec::new();
    for (record, sentence) in results {
        records.push(record);
        sentences.extend(sentence);
    }

    let ratios: Vec<f64> = records
        .iter()
        .filter(|r| r.status == "ok")
        .map(|r| r.symbol_count as f64 / (f64::from(r.v) + r.presentation_length as f64))
        .collect();
    let summary = GrowthSummary {
        jobs: records.len(),
        jobs_ok: ratios.len(),
        ratio_min: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        ratio_max: ratios.iter().copied().fold(0.0, f64::max),
        ratio_mean: if ratios.is_empty() {
            0.0
        } else {
            ratios.iter().sum::<f64>() / ratios.len() as f64
        },
        all_within_bound: records
            .iter()
            .filter(|r| r.status == "ok")
            .all(|r| r.symbol_count <= r.length_bound),
    };
    (BenchOutcome { schema: 1, constants: SYNTH_CONSTANTS, records, summary }, sentences)
}

fn run_job(
    name: &str,
    job: &DescriptionJob<LoadedGroup>,
    options: &BenchOptions,
) -> (BenchRecord, Option<(String, Formula)>) {
    let order = sgd_core::group::Group::order(&job.target);
    let ell = job.presentation.length();
    match describing_sentence(job) {
            Err(err) => {
                let status = match err {
                    SynthError::PresentationFails(_) => "presentation_fails",
                    SynthError::NotSimple => "not_simple",
                    SynthError::DiameterExceeded(_) => "diameter_exceeded",
                    SynthError::Group(_) => "group_error",
                };
                records.push(BenchRecord::failed(name, order, ell, status));
            }
            Ok((psi, report)) => {
                let table = job.target.to_table();
                let outcome = check_sentence(&psi, &table, options.check);
                let (self_check, check_ms) = match outcome {
                    Ok(o) => (o.value, o.elapsed.as_secs_f64() * 1e3),
                    Err(_) => (false, 0.0),
                };
                let scope = (2 * order).min(options.sweep_cap);
                let sweep_catalog = catalog::tables_up_to(scope);
                let (unique, violators) =
                    match describes_uniquely(&psi, &table, &sweep_catalog, options.check) {
                        Ok(r) => (r.unique(), r.violators),
                        Err(_) => (false, vec!["<sweep aborted>".to_string()]),
                    };
                records.push(BenchRecord {
                    name: name.clone(),
                    order,
                    presentation_length: ell,
                    diameter: report.diameter,
                    v: report.v,
                    symbol_count: report.length.symbol_count,
                    length_bound: report.length_bound,
                    check_ms,
                    self_check,
                    unique,
                    violators,
                    sweep_scope: sweep_catalog.len(),
                    status: "ok".into(),
                });
                sentences.push((name.clone(), psi));
            }
        }
    }

    let ratios: Vec<f64> = records
        .iter()
        .filter(|r| r.status == "ok")
        .map(|r| r.symbol_count as f64 / (f64::from(r.v) + r.presentation_length as f64))
        .collect();
    let summary = GrowthSummary {
        jobs: records.len(),
        jobs_ok: ratios.len(),
        ratio_min: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        ratio_max: ratios.iter().copied().fold(0.0, f64::max),
        ratio_mean: if ratios.is_empty() {
            0.0
        } else {
            ratios.iter().sum::<f64>() / ratios.len() as f64
        },
        all_within_bound: records
            .iter()
            .filter(|r| r.status == "ok")
            .all(|r| r.symbol_count <= r.length_bound),
    };
    (
        BenchOutcome {
            schema: 1,
            constants: SYNTH_CONSTANTS,
            records,
            summary,
        },
        sentences,
    )
}

/// Fixed CSV column order (documented in the README).
pub const CSV_HEADER: &str =
    "name,order,presentation_length,diameter,v,symbol_count,length_bound,check_ms,self_check,unique,sweep_scope,status";

pub fn to_csv(outcome: &BenchOutcome) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &outcome.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.3},{},{},{},{}\n",
            r.name,
            r.order,
            r.presentation_length,
            r.diameter,
            r.v,
            r.symbol_count,
            r.length_bound,
            r.check_ms,
            r.self_check,
            r.unique,
            r.sweep_scope,
            r.status
        ));
    }
    out
}

/// Write `bench.csv`, `bench.json`, and one sentence file per successful job.
pub fn write_outputs(
    outcome: &BenchOutcome,
    sentences: &[(String, Formula)],
    dir: &Path,
) -> Result<(), files::FilesError> {
    std::fs::create_dir_all(dir).map_err(|source| files::FilesError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    files::write_atomic(&dir.join("bench.csv"), to_csv(outcome).as_bytes())?;
    let json_path = dir.join("bench.json");
    let mut text =
        serde_json::to_string_pretty(outcome).map_err(|source| files::FilesError::Json {
            path: json_path.clone(),
            source,
        })?;
    text.push('\n');
    files::write_atomic(&json_path, text.as_bytes())?;
    for (name, psi) in sentences {
        let stem: String = name
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() {
                    c.to_ascii_lowercase()
                } else {
                    '_'
                }
            })
            .collect();
        files::write_sentence(
            &dir.join(format!("psi_{stem}.sexp")),
            psi,
            &[
                format!("describing sentence for {name}"),
                format!("symbols: {}", symbol_count(psi)),
            ],
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_job_list_gives_empty_report() {
        let (outcome, sentences) = bench_family(&[], &BenchOptions::default());
        assert!(outcome.records.is_empty());
        assert!(sentences.is_empty());
        assert_eq!(outcome.summary.jobs, 0);
        assert_eq!(to_csv(&outcome).lines().count(), 1);
    }
}
