//! Verify-versus-solve scaling measurements.
//!
//! For every n in a range and every trial, an instance is generated and
//! solved exhaustively with a single worker, and one fixed witness
//! (all-positive) is verified repeatedly and timed. Growth statistics
//! are computed only from exhaustive (`no`) scans.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{gen_instance, GenConfig};
use crate::instance::{Instance, SignVector};
use crate::rng::XorShift64Star;
use crate::solver::{solve_with, Answer, SolveOptions, Stopwatch};
use crate::verify::verify;

const VERIFY_ROUNDS: u32 = 21;

pub const CSV_HEADER: &str = "n,trial,verify_ns,solve_ns,assignments_tried,answer,verify_mod_ops";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub trial: usize,
    /// Wall time of one verification in nanoseconds (median of batch means).
    pub verify_ns: u64,
    pub solve_ns: u64,
    pub assignments_tried: u64,
    pub answer: Answer,
    pub verify_mod_ops: u64,
    /// Multi-worker solve time, present only when parallel timing was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel_solve_ns: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub psi_len: usize,
    pub c_max: u64,
    /// Verifications per record, timed in up to 21 interleaved batches.
    pub verify_reps: u32,
    /// Keep drawing instances until the solver answers `no`, up to this many
    /// draws per (n, trial). `None` records whatever the first instance gives.
    pub require_unsatisfiable: Option<usize>,
    pub budget: Option<u64>,
    pub parallel_workers: Option<usize>,
}

impl ScalingConfig {
    pub fn new(n_min: usize, n_max: usize, trials: usize, seed: u64) -> Self {
        ScalingConfig {
            n_min,
            n_max,
            trials,
            seed,
            psi_len: 36,
            c_max: 999,
            verify_reps: 200,
            require_unsatisfiable: None,
            budget: None,
            parallel_workers: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(1 <= self.n_min && self.n_min <= self.n_max && self.n_max <= 24) {
            return Err(Error::InvalidConfig("need 1 <= n_min <= n_max <= 24".into()));
        }
        if self.trials < 3 {
            return Err(Error::InvalidConfig("need at least 3 trials".into()));
        }
        if self.verify_reps == 0 {
            return Err(Error::InvalidConfig("verify_reps must be positive".into()));
        }
        Ok(())
    }
}

pub fn run_scaling(cfg: &ScalingConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut seeds = XorShift64Star::new(cfg.seed);
    let mut cells = Vec::with_capacity((cfg.n_max - cfg.n_min + 1) * cfg.trials);
    // trial-major order spreads each n's trials over the whole run
    for trial in 0..cfg.trials {
        for n in cfg.n_min..=cfg.n_max {
            let attempts = cfg.require_unsatisfiable.unwrap_or(1).max(1);
            let mut cell = None;
            for _ in 0..attempts {
                let gen = GenConfig::new(n, cfg.psi_len, cfg.c_max, seeds.next_u64());
                let inst = gen_instance(&gen)?;
                let record = time_solve(&inst, trial, cfg);
                let done = cfg.require_unsatisfiable.is_none() || record.answer == Answer::No;
                cell = Some((inst, record));
                if done {
                    break;
                }
            }
            cells.push(cell.expect("at least one attempt"));
        }
    }
    time_verify(&mut cells, cfg.verify_reps)?;
    let mut records: Vec<BenchRecord> = cells.into_iter().map(|(_, r)| r).collect();
    records.sort_by_key(|r| (r.n, r.trial));
    Ok(records)
}

fn time_solve(inst: &Instance, trial: usize, cfg: &ScalingConfig) -> BenchRecord {
    let verdict = solve_with(
        inst,
        SolveOptions {
            workers: 1,
            budget: cfg.budget,
        },
    );
    let parallel_solve_ns = cfg.parallel_workers.map(|w| {
        solve_with(
            inst,
            SolveOptions {
                workers: w,
                budget: cfg.budget,
            },
        )
        .elapsed
        .as_nanos() as u64
    });
    BenchRecord {
        n: inst.n(),
        trial,
        verify_ns: 0,
        solve_ns: verdict.elapsed.as_nanos() as u64,
        assignments_tried: verdict.assignments_tried,
        answer: verdict.answer,
        verify_mod_ops: 0,
        parallel_solve_ns,
    }
}

/// Times `reps` verifications of the all-positive witness per cell.
///
/// The work runs in rounds; each round times one batch for every cell, so
/// a transient slowdown of the machine lands on all n alike. A cell's
/// `verify_ns` is the median of its per-batch means.
fn time_verify(cells: &mut [(Instance, BenchRecord)], reps: u32) -> Result<()> {
    let rounds = reps.clamp(1, VERIFY_ROUNDS);
    let per_batch = reps / rounds;
    let witnesses: Vec<SignVector> = cells.iter().map(|(i, _)| SignVector::all_positive(i.n())).collect();
    let mut samples = vec![Vec::with_capacity(rounds as usize); cells.len()];
    for _ in 0..rounds {
        for (k, (inst, record)) in cells.iter_mut().enumerate() {
            let timer = Stopwatch::start();
            for _ in 0..per_batch {
                let report = std::hint::black_box(verify(inst, &witnesses[k])?);
                record.verify_mod_ops = report.counters.modulo;
            }
            samples[k].push((timer.elapsed().as_nanos() / per_batch as u128) as u64);
        }
    }
    for ((_, record), s) in cells.iter_mut().zip(samples.iter_mut()) {
        record.verify_ns = median(s).round() as u64;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerN {
    pub n: usize,
    pub records: usize,
    pub median_solve_ns: f64,
    pub median_verify_ns: f64,
    pub mod_ops: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSummary {
    pub per_n: Vec<PerN>,
    /// `(n, median(n + 1) / median(n))` for each adjacent pair present.
    pub ratios: Vec<(usize, f64)>,
    pub verify_slope: f64,
    pub verify_intercept: f64,
    /// Root-mean-square residual of the verify fit divided by the mean verify time.
    pub verify_relative_residual: f64,
}

fn median(values: &mut [u64]) -> f64 {
    values.sort_unstable();
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m] as f64
    } else {
        (values[m - 1] as f64 + values[m] as f64) / 2.0
    }
}

/// Least-squares line through `points`; returns (slope, intercept, relative residual).
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let rms = (points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    let rel = if my == 0.0 { 0.0 } else { rms / my.abs() };
    (slope, intercept, rel)
}

pub fn fit_growth(records: &[BenchRecord]) -> Result<GrowthSummary> {
    let mut groups: BTreeMap<usize, Vec<&BenchRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.answer == Answer::No) {
        groups.entry(r.n).or_default().push(r);
    }
    if groups.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need exhaustive records for at least 2 distinct n, found {}",
            groups.len()
        )));
    }
    let per_n: Vec<PerN> = groups
        .iter()
        .map(|(&n, rs)| PerN {
            n,
            records: rs.len(),
            median_solve_ns: median(&mut rs.iter().map(|r| r.solve_ns).collect::<Vec<_>>()),
            median_verify_ns: median(&mut rs.iter().map(|r| r.verify_ns).collect::<Vec<_>>()),
            mod_ops: rs[0].verify_mod_ops,
        })
        .collect();
    let ratios = per_n
        .windows(2)
        .filter(|w| w[1].n == w[0].n + 1)
        .map(|w| (w[0].n, w[1].median_solve_ns / w[0].median_solve_ns))
        .collect();
    let points: Vec<(f64, f64)> = per_n.iter().map(|p| (p.n as f64, p.median_verify_ns)).collect();
    let (verify_slope, verify_intercept, verify_relative_residual) = linear_fit(&points);
    Ok(GrowthSummary {
        per_n,
        ratios,
        verify_slope,
        verify_intercept,
        verify_relative_residual,
    })
}

impl GrowthSummary {
    /// Human-readable block for standard output.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>3} {:>7} {:>16} {:>14} {:>8} {:>7}",
            "n", "records", "median_solve_ns", "median_verify", "mod_ops", "ratio"
        );
        for p in &self.per_n {
            let ratio = self
                .ratios
                .iter()
                .find(|(n, _)| *n + 1 == p.n)
                .map(|(_, r)| format!("{r:.3}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "{:>3} {:>7} {:>16.0} {:>14.1} {:>8} {:>7}",
                p.n, p.records, p.median_solve_ns, p.median_verify_ns, p.mod_ops, ratio
            );
        }
        let _ = writeln!(
            s,
            "verify fit: {:.3} ns/n + {:.1} ns, relative residual {:.4}",
            self.verify_slope, self.verify_intercept, self.verify_relative_residual
        );
        s
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let parallel = records.iter().any(|r| r.parallel_solve_ns.is_some());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let mut header: Vec<&str> = CSV_HEADER.split(',').collect();
    if parallel {
        header.push("parallel_solve_ns");
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.n.to_string(),
            r.trial.to_string(),
            r.verify_ns.to_string(),
            r.solve_ns.to_string(),
            r.assignments_tried.to_string(),
            r.answer.to_string(),
            r.verify_mod_ops.to_string(),
        ];
        if parallel {
            row.push(r.parallel_solve_ns.map(|v| v.to_string()).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BenchRecord], path: &Path) -> Result<()> {
    write_csv(records, std::fs::File::create(path)?)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
