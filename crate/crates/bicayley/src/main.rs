//! Command-line front end.
//!
//! Exit codes: 0 = clean run, 1 = usage or resource error, 2 = a
//! mathematical cross-check failed (falsification).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use bicayley::connectivity::DEFAULT_ORACLE_THRESHOLD;
use bicayley::digraph::{build_bicayley, BiCayleySpec};
use bicayley::export;
use bicayley::harness::{self, CheckKind, SweepConfig, SweepMode};
use bicayley::{Error, FiniteGroup};

#[derive(Parser)]
#[command(
    name = "bicayley",
    about = "Construct Bi-Cayley digraphs, compute exact connectivity, and cross-validate \
             the algebraic super arc-connectivity characterization against brute force"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Group descriptor, e.g. cyclic:6, dihedral:4, product:cyclic:2,cyclic:4
    #[arg(long)]
    group: String,
    /// Comma-separated element ids for T0, e.g. 0,1,2
    #[arg(long)]
    t0: String,
    /// Comma-separated element ids for T1
    #[arg(long)]
    t1: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Max vertex count for the exhaustive oracles
    #[arg(long, default_value_t = DEFAULT_ORACLE_THRESHOLD)]
    oracle_threshold: usize,
    /// Comma-separated check names (connectivity, superlambda, automorphism,
    /// superatom_structure, fragment_algebra); default: all
    #[arg(long)]
    checks: Option<String>,
    /// Evaluate the proper-subset reading of the witness conditions
    #[arg(long)]
    strict_subset: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build one instance and export it (JSON digraph dump or DOT)
    Construct {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "json")]
        format: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full check pipeline on one instance and print the record
    Analyze {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        checks: CheckArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Algebraic super-λ decision with witness, oracle-confirmed when small
    CheckSuperlambda {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_THRESHOLD)]
        oracle_threshold: usize,
        #[arg(long)]
        strict_subset: bool,
    },
    /// Sweep group catalogs; writes records.csv and summary.json
    Sweep {
        /// Group descriptor (repeatable)
        #[arg(long)]
        group: Vec<String>,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        oracle_threshold: Option<usize>,
        /// Output directory for records.csv and summary.json
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        strict_subset: bool,
        /// Allow exhaustive sweeps over groups of order > 8
        #[arg(long)]
        force_exhaustive: bool,
        /// JSON config file; explicit flags override its fields
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Export one instance as json (digraph dump), dot, or csv (record row)
    Export {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ids(text: &str) -> Result<Vec<usize>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| Error::InvalidArgument(format!("bad element id {part:?}: {e}")))
        })
        .collect()
}

fn parse_checks(text: &str) -> Result<BTreeSet<CheckKind>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(CheckKind::from_str)
        .collect()
}

fn instance_spec(args: &InstanceArgs) -> Result<BiCayleySpec, Error> {
    let group = Arc::new(FiniteGroup::from_descriptor(&args.group)?);
    BiCayleySpec::new(
        group,
        bicayley::ElementSet::new(parse_ids(&args.t0)?),
        bicayley::ElementSet::new(parse_ids(&args.t1)?),
    )
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Construct {
            instance,
            format,
            out,
        } => {
            let spec = instance_spec(&instance)?;
            let x = build_bicayley(&spec);
            let content = match format.as_str() {
                "json" => export::digraph_json(&x),
                "dot" => export::digraph_dot(&x),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "construct supports json or dot, not {other:?}"
                    )))
                }
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            instance,
            checks,
            out,
        } => {
            let spec = instance_spec(&instance)?;
            let mut config = SweepConfig {
                oracle_threshold: checks.oracle_threshold,
                strict_subsets: checks.strict_subset,
                ..SweepConfig::default()
            };
            if let Some(list) = &checks.checks {
                config.checks = parse_checks(list)?;
            }
            config.validate()?;
            let record = harness::run_instance(&spec, &config);
            let json = serde_json::to_string_pretty(&record)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            emit(&out, &json)?;
            if record.is_falsified() {
                eprintln!("FALSIFICATION: {}", record.falsifications.join("; "));
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckSuperlambda {
            instance,
            oracle_threshold,
            strict_subset,
        } => {
            let spec = instance_spec(&instance)?;
            let config = SweepConfig {
                oracle_threshold,
                strict_subsets: strict_subset,
                ..SweepConfig::default()
            };
            let record = harness::run_instance(&spec, &config);
            let verdict = serde_json::json!({
                "instance": spec.fingerprint(),
                "applicability": record.applicability,
                "algebraic_super_lambda": record.algebraic_super_lambda,
                "oracle_super_lambda": record.oracle_super_lambda,
                "oracle_confirmed": record.oracle_confirmed,
                "witness": record.witness,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict)
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?
            );
            if record.is_falsified() {
                eprintln!("FALSIFICATION: {}", record.falsifications.join("; "));
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            group,
            mode,
            samples,
            seed,
            oracle_threshold,
            out,
            checks,
            strict_subset,
            force_exhaustive,
            config,
        } => {
            let mut sweep_config = match config {
                Some(path) => SweepConfig::from_json_file(path)?,
                None => SweepConfig::default(),
            };
            if !group.is_empty() {
                sweep_config.group_descriptors = group;
            }
            sweep_config.mode = SweepMode::from_str(&mode)?;
            if let Some(samples) = samples {
                sweep_config.sample_count = samples;
            }
            if let Some(seed) = seed {
                sweep_config.rng_seed = seed;
            }
            if let Some(threshold) = oracle_threshold {
                sweep_config.oracle_threshold = threshold;
            }
            if let Some(out) = out {
                sweep_config.output_dir = Some(out);
            }
            if let Some(list) = &checks {
                sweep_config.checks = parse_checks(list)?;
            }
            if strict_subset {
                sweep_config.strict_subsets = true;
            }
            if force_exhaustive {
                sweep_config.force_exhaustive = true;
            }
            sweep_config.validate()?;
            if sweep_config.group_descriptors.is_empty() {
                return Err(Error::InvalidArgument(
                    "sweep needs at least one --group descriptor".into(),
                ));
            }

            let records = harness::run_sweep(&sweep_config)?;
            let summary = harness::summarize(&records);
            if let Some(dir) = &sweep_config.output_dir {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("records.csv"), export::records_csv(&records))?;
                std::fs::write(
                    dir.join("summary.json"),
                    serde_json::to_string_pretty(&summary)
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?,
                )?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&summary)
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?
            );
            if summary.falsifications > 0 {
                eprintln!(
                    "FALSIFICATION: {} cross-check failure(s)",
                    summary.falsifications
                );
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            instance,
            format,
            out,
        } => {
            let spec = instance_spec(&instance)?;
            let content = match format.as_str() {
                "json" => export::digraph_json(&build_bicayley(&spec)),
                "dot" => export::digraph_dot(&build_bicayley(&spec)),
                "csv" => {
                    let record = harness::run_instance(&spec, &SweepConfig::default());
                    format!(
                        "{}\n{}\n",
                        export::csv_header(),
                        export::record_csv_row(&record)
                    )
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "export supports json, csv, or dot, not {other:?}"
                    )))
                }
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
