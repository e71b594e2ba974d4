//! Experiment orchestration: replications × arm cells, aggregation and output.
//!
//! Replications run in parallel; arm cells inside a replication run in order
//! on the same data set, each with its own derived seed. Output is a pure
//! function of the config, so reruns produce byte-identical files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use mlo_core::diagnostics::{burn_thin, posterior_summary, replication_metrics, transform_samples};
use mlo_core::samplers::{adaptive_mlo_mh, mlo_subsampled_mh, standard_mh, uniform_subsampled_mh};
use mlo_core::weights::mlo_weights;
use mlo_core::{chain_io, ChainConfig, DataMatrix, Model, PosteriorSummary, RandomWalkProposal, ReplicationReport, SizeRule};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{DataConfig, ExperimentConfig, Method, ModelConfig};
use crate::data::{generate_gaussian_mean_data, generate_gaussian_precision_data, generate_logistic_data, load_csv_dataset};
use crate::error::{HarnessError, Result};
use crate::seeds::derive_seed;

pub const BUNDLE_FILE: &str = "bundle.json";
pub const MSE_CURVE_FILE: &str = "mse_curve.csv";

/// One (arm, subsample size) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub label: String,
    pub arm: String,
    pub method: Method,
    /// `None` for the full-data arm.
    pub r: Option<usize>,
    pub weights_at: Option<Vec<f64>>,
    pub r_max: usize,
    pub delta: f64,
}

pub fn expand_cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut cells = Vec::new();
    for arm in &cfg.arms {
        let sizes: Vec<Option<usize>> = match arm.method {
            Method::Full => vec![None],
            _ => arm.r.iter().copied().map(Some).collect(),
        };
        for r in sizes {
            let label = match r {
                Some(r) => format!("{}@r={r}", arm.name),
                None => arm.name.clone(),
            };
            cells.push(Cell {
                label,
                arm: arm.name.clone(),
                method: arm.method,
                r,
                weights_at: arm.weights_at.clone(),
                r_max: arm.r_max,
                delta: arm.delta,
            });
        }
    }
    cells
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub replication: usize,
    pub cell: String,
    pub seed: u64,
    /// Posterior mean on the reported scale.
    pub estimate: Option<Vec<f64>>,
    pub summary: Option<PosteriorSummary>,
    pub acceptance_rate: f64,
    pub mean_fraction: f64,
    pub median_fraction: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub label: String,
    pub arm: String,
    pub method: Method,
    pub r: Option<usize>,
    pub report: Option<ReplicationReport>,
    pub mean_fraction: f64,
    pub median_fraction: f64,
    pub acceptance_rate: f64,
    pub successes: usize,
    pub failures: usize,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSeeds {
    pub replication: usize,
    pub data_seed: Option<u64>,
    pub cell_seeds: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    /// SHA-256 of the canonical JSON form of the config (output dir excluded).
    pub config_hash: String,
    pub base_seed: u64,
    pub replications: usize,
    pub crate_version: String,
    pub seed_derivation: String,
    pub seeds: Vec<ReplicationSeeds>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub manifest: Manifest,
    pub config: ExperimentConfig,
    /// Data set size (per replication for synthetic data).
    pub n: usize,
    pub parameter_names: Vec<String>,
    /// True parameter on the reported scale (synthetic data only).
    pub truth: Option<Vec<f64>>,
    pub cells: Vec<CellReport>,
    pub runs: Vec<RunRecord>,
}

pub fn config_hash(cfg: &ExperimentConfig) -> Result<String> {
    let mut canonical = cfg.clone();
    canonical.output_dir = PathBuf::new();
    let json = serde_json::to_string(&canonical)?;
    let digest = Sha256::digest(json.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

fn make_data(cfg: &ExperimentConfig, seed: u64) -> Result<DataMatrix> {
    match &cfg.data {
        DataConfig::Synthetic { n, theta_true } => match cfg.model {
            ModelConfig::GaussianMean { .. } => generate_gaussian_mean_data(*n, theta_true[0], seed),
            ModelConfig::GaussianPrecision { .. } => generate_gaussian_precision_data(*n, theta_true[0], seed),
            ModelConfig::Logistic { .. } => generate_logistic_data(*n, theta_true, seed),
        },
        DataConfig::Csv {
            path,
            label_column,
            covariate_columns,
            standardize,
            add_intercept,
        } => load_csv_dataset(path, label_column, covariate_columns, *standardize, *add_intercept),
    }
}

struct CellRun {
    record: RunRecord,
    chain: Option<mlo_core::ChainRun>,
}

fn run_cell(
    cfg: &ExperimentConfig,
    model: &dyn Model,
    data: &DataMatrix,
    theta_hat: &[f64],
    cell: &Cell,
    seed: u64,
) -> Result<(RunRecord, mlo_core::ChainRun)> {
    let p = model.param_dim();
    let proposal = RandomWalkProposal::new(cfg.proposal_scales(p)?)?;
    let init = match &cfg.chain.init {
        Some(v) => model.from_reported(v)?,
        None => theta_hat.to_vec(),
    };
    let r = cell.r.unwrap_or(1);
    let rule = SizeRule::new(cell.delta, cell.r_max.max(r))?;
    let chain_cfg = ChainConfig::new(cfg.chain.iters, seed)
        .with_init(init)
        .with_subsample(r)
        .with_size_rule(rule);
    let anchor = match &cell.weights_at {
        Some(v) => model.from_reported(v)?,
        None => theta_hat.to_vec(),
    };

    let run = match cell.method {
        Method::Full => standard_mh(model, data, &proposal, &chain_cfg)?,
        Method::Uniform => uniform_subsampled_mh(model, data, &proposal, &chain_cfg)?,
        Method::Mlo => {
            let w = mlo_weights(model, data, &anchor)?;
            mlo_subsampled_mh(model, data, &proposal, &w, &chain_cfg)?
        }
        Method::Adaptive => {
            let w = mlo_weights(model, data, &anchor)?;
            adaptive_mlo_mh(model, data, &proposal, &w, &chain_cfg)?
        }
    };
    let kept = burn_thin(&run, cfg.chain.burn, cfg.chain.thin)?;
    let reported = transform_samples(&kept, |t| model.to_reported(t));
    let summary = posterior_summary(&reported, cfg.hpd_alpha)?;
    let (mean_fraction, median_fraction) = run.subsample_fraction(data.n());
    let record = RunRecord {
        replication: 0,
        cell: cell.label.clone(),
        seed,
        estimate: Some(summary.mean.clone()),
        summary: Some(summary),
        acceptance_rate: run.acceptance_rate(),
        mean_fraction,
        median_fraction,
        error: None,
    };
    Ok((record, run))
}

fn failed(b: usize, cell: &Cell, seed: u64, err: &HarnessError) -> RunRecord {
    RunRecord {
        replication: b,
        cell: cell.label.clone(),
        seed,
        estimate: None,
        summary: None,
        acceptance_rate: 0.0,
        mean_fraction: 0.0,
        median_fraction: 0.0,
        error: Some(err.to_string()),
    }
}

fn run_replication(
    cfg: &ExperimentConfig,
    cells: &[Cell],
    b: usize,
    shared: Option<&DataMatrix>,
) -> (ReplicationSeeds, Vec<CellRun>) {
    let data_seed = derive_seed(cfg.base_seed, b as u64, "data");
    let cell_seeds: Vec<(String, u64)> = cells
        .iter()
        .map(|c| (c.label.clone(), derive_seed(cfg.base_seed, b as u64, &c.label)))
        .collect();
    let seeds = ReplicationSeeds {
        replication: b,
        data_seed: shared.is_none().then_some(data_seed),
        cell_seeds: cell_seeds.clone(),
    };

    let prepared = (|| -> Result<(DataMatrix, Box<dyn Model>, Vec<f64>)> {
        let data = match shared {
            Some(d) => d.clone(),
            None => make_data(cfg, data_seed)?,
        };
        let model = cfg.build_model(data.arity())?;
        model.check_data(&data)?;
        let theta_hat = model.mle(&data)?;
        Ok((data, model, theta_hat))
    })();

    let runs = cells
        .iter()
        .zip(&cell_seeds)
        .map(|(cell, (_, seed))| {
            let outcome = match &prepared {
                Ok((data, model, theta_hat)) => run_cell(cfg, model.as_ref(), data, theta_hat, cell, *seed),
                Err(e) => Err(HarnessError::Config(format!("replication setup failed: {e}"))),
            };
            match outcome {
                Ok((mut record, chain)) => {
                    record.replication = b;
                    CellRun {
                        record,
                        chain: Some(chain),
                    }
                }
                Err(e) => CellRun {
                    record: failed(b, cell, *seed, &e),
                    chain: None,
                },
            }
        })
        .collect();
    (seeds, runs)
}

fn aggregate(cell: &Cell, records: &[&RunRecord], truth: Option<&[f64]>) -> Result<CellReport> {
    let ok: Vec<&RunRecord> = records.iter().copied().filter(|r| r.error.is_none()).collect();
    let estimates: Vec<Vec<f64>> = ok.iter().filter_map(|r| r.estimate.clone()).collect();
    let report = match truth {
        Some(t) if estimates.len() >= 2 => Some(replication_metrics(&estimates, t)?),
        _ => None,
    };
    let avg = |f: fn(&RunRecord) -> f64| {
        if ok.is_empty() {
            0.0
        } else {
            ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
        }
    };
    let errors: BTreeSet<String> = records.iter().filter_map(|r| r.error.clone()).collect();
    Ok(CellReport {
        label: cell.label.clone(),
        arm: cell.arm.clone(),
        method: cell.method,
        r: cell.r,
        report,
        mean_fraction: avg(|r| r.mean_fraction),
        median_fraction: avg(|r| r.median_fraction),
        acceptance_rate: avg(|r| r.acceptance_rate),
        successes: ok.len(),
        failures: records.len() - ok.len(),
        errors: errors.into_iter().collect(),
    })
}

/// Runs every replication and aggregates, without touching the filesystem
/// (except chain dumps when `save_chains` is set).
pub fn execute(cfg: &ExperimentConfig) -> Result<ResultBundle> {
    cfg.validate()?;
    let cells = expand_cells(cfg);
    let shared = match cfg.data {
        DataConfig::Csv { .. } => Some(make_data(cfg, 0)?),
        DataConfig::Synthetic { .. } => None,
    };
    let (n, truth) = match (&cfg.data, &shared) {
        (DataConfig::Synthetic { n, theta_true }, _) => (*n, Some(theta_true.clone())),
        (_, Some(d)) => (d.n(), None),
        _ => unreachable!("csv data is loaded above"),
    };
    let dim = match &shared {
        Some(d) => cfg.build_model(d.arity())?.param_dim(),
        None => truth.as_ref().map_or(1, Vec::len),
    };

    let chain_dir = cfg.output_dir.join("chains");
    if cfg.save_chains {
        fs::create_dir_all(&chain_dir)?;
    }

    let per_rep: Vec<(ReplicationSeeds, Vec<CellRun>)> = (0..cfg.replications)
        .into_par_iter()
        .map(|b| run_replication(cfg, &cells, b, shared.as_ref()))
        .collect();

    let mut seeds = Vec::with_capacity(per_rep.len());
    let mut runs = Vec::new();
    for (s, cell_runs) in per_rep {
        seeds.push(s);
        for cr in cell_runs {
            if cfg.save_chains {
                if let Some(chain) = &cr.chain {
                    let file = chain_dir.join(format!("rep{:04}_{}.csv", cr.record.replication, sanitize(&cr.record.cell)));
                    chain_io::write_csv(chain, std::io::BufWriter::new(fs::File::create(file)?))?;
                }
            }
            runs.push(cr.record);
        }
    }

    let mut reports = Vec::with_capacity(cells.len());
    for cell in &cells {
        let records: Vec<&RunRecord> = runs.iter().filter(|r| r.cell == cell.label).collect();
        reports.push(aggregate(cell, &records, truth.as_deref())?);
    }

    Ok(ResultBundle {
        manifest: Manifest {
            name: cfg.name.clone(),
            config_hash: config_hash(cfg)?,
            base_seed: cfg.base_seed,
            replications: cfg.replications,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            seed_derivation: "splitmix64(splitmix64(splitmix64(base) ^ b) ^ fnv1a64(label))".into(),
            seeds,
        },
        config: cfg.clone(),
        n,
        parameter_names: cfg.parameter_names(dim),
        truth,
        cells: reports,
        runs,
    })
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

/// Runs the experiment and writes the full output tree to `cfg.output_dir`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultBundle> {
    let bundle = execute(cfg)?;
    write_bundle(&bundle, &cfg.output_dir)?;
    Ok(bundle)
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

fn csv_err(e: csv::Error) -> HarnessError {
    HarnessError::Io(e.to_string())
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map(|r| r.to_string()).unwrap_or_default()
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Full => "full",
        Method::Mlo => "mlo",
        Method::Uniform => "uniform",
        Method::Adaptive => "adaptive",
    }
}

/// Writes `bundle.json`, `manifest.json`, `reports.csv`, `cells.csv`,
/// `summaries.csv`, `estimates.csv` and `mse_table.csv`.
pub fn write_bundle(bundle: &ResultBundle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut json = serde_json::to_string_pretty(bundle)?;
    json.push('\n');
    fs::write(dir.join(BUNDLE_FILE), json)?;
    let mut manifest = serde_json::to_string_pretty(&bundle.manifest)?;
    manifest.push('\n');
    fs::write(dir.join("manifest.json"), manifest)?;

    let names = &bundle.parameter_names;
    let mut w = csv_writer(&dir.join("reports.csv"))?;
    w.write_record(["cell", "arm", "method", "r", "parameter", "bias", "sd", "mse", "replications"])
        .map_err(csv_err)?;
    for c in &bundle.cells {
        if let Some(rep) = &c.report {
            for (j, name) in names.iter().enumerate() {
                w.write_record([
                    c.label.clone(),
                    c.arm.clone(),
                    method_name(c.method).into(),
                    fmt_opt(c.r),
                    name.clone(),
                    rep.bias[j].to_string(),
                    rep.sd[j].to_string(),
                    rep.mse[j].to_string(),
                    rep.replications.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    w.flush()?;

    let mut w = csv_writer(&dir.join("cells.csv"))?;
    w.write_record([
        "cell",
        "arm",
        "method",
        "r",
        "mse_sum",
        "mean_fraction",
        "median_fraction",
        "acceptance_rate",
        "successes",
        "failures",
    ])
    .map_err(csv_err)?;
    for c in &bundle.cells {
        w.write_record([
            c.label.clone(),
            c.arm.clone(),
            method_name(c.method).into(),
            fmt_opt(c.r),
            c.report.as_ref().map(|r| r.mse_sum().to_string()).unwrap_or_default(),
            c.mean_fraction.to_string(),
            c.median_fraction.to_string(),
            c.acceptance_rate.to_string(),
            c.successes.to_string(),
            c.failures.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;

    let mut w = csv_writer(&dir.join("summaries.csv"))?;
    w.write_record(["replication", "cell", "parameter", "mean", "sd", "hpd_lo", "hpd_hi"])
        .map_err(csv_err)?;
    let mut e = csv_writer(&dir.join("estimates.csv"))?;
    e.write_record(["replication", "cell", "parameter", "estimate"]).map_err(csv_err)?;
    for run in &bundle.runs {
        if let Some(s) = &run.summary {
            for (j, name) in names.iter().enumerate() {
                w.write_record([
                    run.replication.to_string(),
                    run.cell.clone(),
                    name.clone(),
                    s.mean[j].to_string(),
                    s.sd[j].to_string(),
                    s.hpd_lo[j].to_string(),
                    s.hpd_hi[j].to_string(),
                ])
                .map_err(csv_err)?;
                e.write_record([run.replication.to_string(), run.cell.clone(), name.clone(), s.mean[j].to_string()])
                    .map_err(csv_err)?;
            }
        }
    }
    w.flush()?;
    e.flush()?;

    write_mse_table(bundle, &dir.join("mse_table.csv"))
}

/// Summed MSE laid out with one row per subsample size and one column per
/// arm; full-data arms repeat their single value on every row.
pub fn write_mse_table(bundle: &ResultBundle, path: &Path) -> Result<()> {
    let mut arms: Vec<&str> = Vec::new();
    for c in &bundle.cells {
        if !arms.contains(&c.arm.as_str()) {
            arms.push(&c.arm);
        }
    }
    let sizes: BTreeSet<usize> = bundle.cells.iter().filter_map(|c| c.r).collect();
    let mut w = csv_writer(path)?;
    let mut header = vec!["r".to_string()];
    header.extend(arms.iter().map(|a| a.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for r in sizes {
        let mut row = vec![r.to_string()];
        for arm in &arms {
            let value = bundle
                .cells
                .iter()
                .find(|c| c.arm == *arm && (c.r == Some(r) || c.method == Method::Full))
                .and_then(|c| c.report.as_ref())
                .map(|rep| rep.mse_sum().to_string())
                .unwrap_or_default();
            row.push(value);
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_bundle(dir: &Path) -> Result<ResultBundle> {
    let path = dir.join(BUNDLE_FILE);
    let text = fs::read_to_string(&path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes `arm,r,mse_sum` rows for plotting MSE against subsample size.
/// Full-data arms are emitted once with `r = n` as a reference level.
pub fn emit_mse_curve(bundle: &ResultBundle, path: &Path) -> Result<()> {
    let mut per_arm: Vec<(&str, usize)> = Vec::new();
    for c in bundle.cells.iter().filter(|c| c.method != Method::Full) {
        match per_arm.iter_mut().find(|(a, _)| *a == c.arm) {
            Some((_, k)) => *k += 1,
            None => per_arm.push((&c.arm, 1)),
        }
    }
    if let Some((arm, _)) = per_arm.iter().find(|(_, k)| *k < 2) {
        return Err(HarnessError::Config(format!(
            "arm '{arm}' has fewer than two subsample sizes; nothing to plot"
        )));
    }
    let mut w = csv_writer(path)?;
    w.write_record(["arm", "r", "mse_sum"]).map_err(csv_err)?;
    for c in &bundle.cells {
        let Some(rep) = &c.report else { continue };
        let r = c.r.unwrap_or(bundle.n);
        w.write_record([c.arm.clone(), r.to_string(), rep.mse_sum().to_string()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per (cell, parameter): posterior summaries averaged over
/// replications, followed by the replication metrics when a truth exists.
pub fn summarize(bundle: &ResultBundle) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "cell",
        "parameter",
        "mean",
        "sd",
        "hpd_lo",
        "hpd_hi",
        "bias",
        "rep_sd",
        "mse",
        "mean_fraction",
        "median_fraction",
    ])
    .map_err(csv_err)?;
    for c in &bundle.cells {
        let summaries: Vec<&PosteriorSummary> = bundle
            .runs
            .iter()
            .filter(|r| r.cell == c.label)
            .filter_map(|r| r.summary.as_ref())
            .collect();
        for (j, name) in bundle.parameter_names.iter().enumerate() {
            let avg = |f: fn(&PosteriorSummary) -> &Vec<f64>| -> String {
                if summaries.is_empty() {
                    String::new()
                } else {
                    (summaries.iter().map(|s| f(s)[j]).sum::<f64>() / summaries.len() as f64).to_string()
                }
            };
            let rep = |f: fn(&ReplicationReport) -> &Vec<f64>| -> String {
                c.report.as_ref().map(|r| f(r)[j].to_string()).unwrap_or_default()
            };
            w.write_record([
                c.label.clone(),
                name.clone(),
                avg(|s| &s.mean),
                avg(|s| &s.sd),
                avg(|s| &s.hpd_lo),
                avg(|s| &s.hpd_hi),
                rep(|r| &r.bias),
                rep(|r| &r.sd),
                rep(|r| &r.mse),
                c.mean_fraction.to_string(),
                c.median_fraction.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Io(e.to_string()))
}
