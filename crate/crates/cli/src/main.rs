//! Command-line front end for the transform library: convert evidence
//! documents between representations, fuse them conjunctively, check every
//! scheme against the naive powerset evaluation, and benchmark combine
//! counts against the dense baseline.

mod bench;
mod document;
mod pipeline;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use emt::{fuse_conjunctive, BeliefFunction, TransformOptions};

use bench::GeneratorFlag;
use document::{EvidenceDocument, FunctionKind};
use pipeline::{run_transform, to_mass, SchemeFlag};

#[derive(Parser)]
#[command(
    name = "emt",
    about = "Zeta/Möbius transforms of belief functions on their focal points",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an evidence document to another representation.
    Transform {
        /// Input document (JSON).
        input: PathBuf,
        /// Representation to produce.
        #[arg(long, value_enum)]
        target: FunctionKind,
        /// Evaluation scheme; `auto` picks per support shape.
        #[arg(long, value_enum, default_value = "auto")]
        scheme: SchemeFlag,
        /// Print per-step scheme names and operation counts to stderr.
        #[arg(long)]
        counts: bool,
        /// Also write the output document to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Conjunctively fuse two evidence documents.
    Fuse {
        /// First input document.
        doc1: PathBuf,
        /// Second input document.
        doc2: PathBuf,
        /// Renormalize away the mass the fusion puts on the empty set.
        #[arg(long)]
        normalize: bool,
        /// Also write the output document to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare every applicable scheme against the naive powerset oracle.
    Verify {
        /// Input document.
        input: PathBuf,
        /// Largest frame the oracle will sweep.
        #[arg(long, default_value_t = 12)]
        max_omega: usize,
        /// Corrupt one oracle cell first; the report must turn red.
        #[arg(long)]
        inject_fault: bool,
        /// Seed for the fault position.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate random supports and compare combine counts to the dense baseline.
    Bench {
        /// Support shape to generate.
        #[arg(long, value_enum, default_value = "random")]
        generator: GeneratorFlag,
        /// Frame size |Ω|.
        #[arg(long)]
        omega: usize,
        /// Focal sets per instance |S|.
        #[arg(long)]
        support: usize,
        /// RNG seed (required: runs must be reproducible).
        #[arg(long)]
        seed: u64,
        /// Instances to generate.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Evaluation scheme to measure.
        #[arg(long, value_enum, default_value = "auto")]
        scheme: SchemeFlag,
        /// Write the full JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read_document(path: &PathBuf) -> Result<EvidenceDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    EvidenceDocument::from_json(&text)
}

/// Write to stdout, exiting quietly when the reader has gone away (the
/// default `println!` panics if the output is piped into `head`).
fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn emit(doc: &EvidenceDocument, report: Option<&PathBuf>) -> Result<()> {
    let text = doc.to_json();
    write_stdout(&text);
    if let Some(path) = report {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

/// Exit code 1 signals a failed verification, 2 an error; 0 is success.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Transform {
            input,
            target,
            scheme,
            counts,
            report,
        } => {
            let doc = read_document(&input)?;
            let options = scheme.options().unwrap_or_default();
            let source = doc.to_belief(&options)?;
            let (belief, steps) = run_transform(&source, target.target(), scheme)?;
            if counts {
                for step in &steps {
                    eprintln!("{}", step.render());
                }
            }
            emit(&EvidenceDocument::from_belief(&belief, doc.normalized)?, report.as_ref())?;
            Ok(0)
        }
        Command::Fuse {
            doc1,
            doc2,
            normalize,
            report,
        } => {
            let options = TransformOptions::default();
            let m1 = to_mass(&read_document(&doc1)?.to_belief(&options)?, &options)?;
            let m2 = to_mass(&read_document(&doc2)?.to_belief(&options)?, &options)?;
            let fused = fuse_conjunctive(&m1, &m2, normalize, &options)?;
            let belief = BeliefFunction::Mass(fused);
            emit(&EvidenceDocument::from_belief(&belief, normalize)?, report.as_ref())?;
            Ok(0)
        }
        Command::Verify {
            input,
            max_omega,
            inject_fault,
            seed,
        } => {
            let options = TransformOptions::default();
            let source = read_document(&input)?.to_belief(&options)?;
            let lines = verify::run_verify(&source, max_omega, inject_fault, seed)?;
            let mut all_pass = true;
            for line in &lines {
                write_stdout(&format!("{}\n", line.render()));
                all_pass &= line.pass;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Bench {
            generator,
            omega,
            support,
            seed,
            trials,
            scheme,
            report,
        } => {
            let result = bench::run_bench(generator, omega, support, seed, trials, scheme)?;
            for line in result.summary_lines() {
                write_stdout(&format!("{line}\n"));
            }
            if let Some(path) = report {
                std::fs::write(&path, result.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if result.pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
