use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinoza_core::bench::{self, ScalingConfig};
use spinoza_core::construct::ThetaTemplate;
use spinoza_core::error::Error;
use spinoza_core::generator::{self, GenConfig, DEFAULT_LABEL_CAP};
use spinoza_core::instance::{format_witness, parse_instance, parse_witness, Instance, SignVector};
use spinoza_core::solver::{solve_with, Answer, SolveOptions};
use spinoza_core::{explain, verify};

/// Verify, solve, generate and benchmark SPINOZA instances.
#[derive(Parser, Debug)]
#[command(name = "spinoza", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one witness and print the verification report
    Verify(WitnessArgs),
    /// Print every construction stage for one witness
    Explain {
        #[command(flatten)]
        witness: WitnessArgs,
        /// Start from this Θ template instead of building it from the letters
        #[arg(long)]
        template: Option<String>,
    },
    /// Decide an instance by trying every sign vector
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Examine at most this many assignments
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness (comma-separated integers) to this file
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Generate seeded instances and a manifest
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 36)]
        psi_len: usize,
        #[arg(long, default_value_t = 999)]
        c_max: u64,
        /// Number of instances, with consecutive seeds
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Label each instance by exhaustive search
        #[arg(long)]
        label: bool,
        #[arg(long, default_value_t = DEFAULT_LABEL_CAP)]
        n_cap: usize,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
    /// Time verification against exhaustive solving across n
    Bench {
        #[arg(long, default_value_t = 10)]
        n_min: usize,
        #[arg(long, default_value_t = 22)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        verify_reps: u32,
        /// Redraw up to this many instances per cell until one is unsatisfiable
        #[arg(long)]
        require_unsat: Option<usize>,
        /// Also time a solve with this many workers (extra CSV column)
        #[arg(long)]
        parallel_workers: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    instance: PathBuf,
    /// Witness as comma-separated signed integers, e.g. "-45,-12,567"
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LengthMismatch { .. } | Error::BadInteger(_) | Error::InvalidConfig(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn load_with_witness(args: &WitnessArgs) -> Result<(Instance, SignVector), Failure> {
    let inst = load(&args.instance)?;
    let delta = parse_witness(&args.delta, &inst.c)?;
    Ok((inst, delta))
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Verify(args) => {
            let (inst, delta) = load_with_witness(&args)?;
            let report = verify::verify(&inst, &delta)?;
            print!("{}", report.to_record());
        }
        Command::Explain { witness, template } => {
            let (inst, delta) = load_with_witness(&witness)?;
            let text = match template {
                Some(t) => {
                    let tpl = ThetaTemplate::parse(t.trim())?;
                    explain::explain_from_template(&tpl, &inst.c, &delta)?
                }
                None => explain::explain(&inst, &delta)?,
            };
            print!("{text}");
        }
        Command::Solve {
            instance,
            workers,
            budget,
            witness_out,
        } => {
            if workers == 0 {
                return Err(Failure::Usage("--workers must be at least 1".into()));
            }
            let inst = load(&instance)?;
            let verdict = solve_with(&inst, SolveOptions { workers, budget });
            let witness = verdict
                .witness
                .as_ref()
                .map(|w| format_witness(w, &inst.c))
                .unwrap_or_else(|| "none".into());
            println!("answer={} witness={}", verdict.answer, witness);
            for line in verdict.to_record(&inst).lines().skip(2) {
                println!("{line}");
            }
            if let (Some(path), Some(_)) = (witness_out, &verdict.witness) {
                fs::write(&path, format!("{witness}\n")).map_err(|e| Failure::Domain(e.to_string()))?;
            }
            if verdict.answer == Answer::Aborted {
                eprintln!("error: assignment budget exhausted before the search space");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen {
            n,
            seed,
            psi_len,
            c_max,
            count,
            label,
            n_cap,
            out,
        } => {
            let cfg = GenConfig::new(n, psi_len, c_max, seed);
            let entries = generator::write_corpus(&out, &cfg, count, label, n_cap)?;
            println!("{}", generator::MANIFEST_HEADER);
            for e in &entries {
                println!("{}", e.manifest_line());
            }
        }
        Command::Bench {
            n_min,
            n_max,
            trials,
            seed,
            verify_reps,
            require_unsat,
            parallel_workers,
            budget,
            out,
        } => {
            let mut cfg = ScalingConfig::new(n_min, n_max, trials, seed);
            cfg.verify_reps = verify_reps;
            cfg.require_unsatisfiable = require_unsat;
            cfg.parallel_workers = parallel_workers;
            cfg.budget = budget;
            let records = bench::run_scaling(&cfg)?;
            bench::emit_csv(&records, &out)?;
            println!("wrote {} records to {}", records.len(), out.display());
            match bench::fit_growth(&records) {
                Ok(summary) => print!("{}", summary.render()),
                Err(e) => println!("no growth summary: {e}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
