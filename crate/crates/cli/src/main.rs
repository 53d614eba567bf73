use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dak::commands;
use dak::report::{human_table, markdown_table};
use dak::Method;
use dak_core::exec::Exec;
use dak_core::io::InputFormat;
use dak_core::synth;

#[derive(Parser)]
#[command(name = "dak", version, about = "Document arrays from suffix arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Lines,
    Fasta,
    Raw,
}

impl From<Format> for InputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Lines => InputFormat::Lines,
            Format::Fasta => InputFormat::Fasta,
            Format::Raw => InputFormat::Raw,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Lines,
    Fasta,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index directory (text, suffix array, metadata) from a collection
    Build {
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the document array of an index with one method
    Compute {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        out: PathBuf,
        /// Run the bulk passes on all cores
        #[arg(long)]
        parallel: bool,
    },
    /// Time and meter several methods over several indexes
    Bench {
        #[arg(long, num_args = 1.., required = true)]
        index: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "inplace,isa,rank-plain,rank-sparse")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Write one JSON report per line to this file
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
    },
    /// Check a document array file against an index
    Verify {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        da: PathBuf,
    },
    /// Write a seeded synthetic collection
    Gen {
        /// Length of the concatenated text, markers included
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        docs: usize,
        #[arg(long, default_value_t = 4)]
        sigma: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "lines")]
        format: GenFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the BWT of an index as raw symbol codes
    DumpBwt {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exec(parallel: bool) -> Exec {
    if parallel {
        Exec::Parallel
    } else {
        Exec::Sequential
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { format, input, out } => {
            let meta = commands::build(&input, format.into(), &out)?;
            println!("{}", serde_json::to_string(&meta)?);
        }
        Command::Compute { index, method, out, parallel } => {
            let report = commands::compute(&index, method, &out, exec(parallel))?;
            print!("{}", human_table(std::slice::from_ref(&report)));
            println!("{}", report.json_line());
            if !report.verified || report.sa_restored == Some(false) {
                eprintln!("error: computed document array failed verification");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench { index, methods, reps, json, parallel } => {
            let reports = commands::bench(&index, &methods, reps, exec(parallel))?;
            print!("{}", markdown_table(&reports));
            if let Some(path) = json {
                let mut f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                for r in &reports {
                    writeln!(f, "{}", r.json_line())?;
                }
            }
            if reports.iter().any(|r| !r.verified || r.sa_restored == Some(false)) {
                eprintln!("error: at least one method failed verification");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { index, da } => {
            let report = commands::verify(&index, &da)?;
            const SHOWN: usize = 16;
            let mut hist: Vec<String> = report
                .histogram
                .iter()
                .enumerate()
                .skip(1)
                .take(SHOWN)
                .map(|(j, c)| format!("{j}:{c}"))
                .collect();
            let ids = report.histogram.len().saturating_sub(1);
            if ids > SHOWN {
                hist.push(format!("... {} more ids", ids - SHOWN));
            }
            match report.first_mismatch {
                None => println!("ok: document array matches ({})", hist.join(" ")),
                Some(m) => {
                    println!(
                        "mismatch at index {}: expected document {}, found {}",
                        m.index, m.expected, m.found
                    );
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Gen { n, docs, sigma, seed, format, out } => {
            let docs = synth::corpus_docs(seed, n, docs, sigma);
            let mut buf = Vec::with_capacity(n + docs.len() * 16);
            for (j, doc) in docs.iter().enumerate() {
                match format {
                    GenFormat::Lines => {
                        buf.extend_from_slice(doc);
                        buf.push(b'\n');
                    }
                    GenFormat::Fasta => {
                        writeln!(buf, ">doc{}", j + 1)?;
                        for chunk in doc.chunks(80) {
                            buf.extend_from_slice(chunk);
                            buf.push(b'\n');
                        }
                    }
                }
            }
            fs::write(&out, buf).with_context(|| format!("writing {}", out.display()))?;
        }
        Command::DumpBwt { index, out } => commands::dump_bwt(&index, &out)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
