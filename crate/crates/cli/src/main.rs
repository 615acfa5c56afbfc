//! `cpb`: spectra, overlaps and model comparisons from the command line.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when a numerical
//! routine fails to converge, 4 when the output cannot be written.

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::*;
use emit::{Document, Format};

#[derive(Debug, Parser)]
#[command(name = "cpb", version, about = "Cooper-pair-box qubit models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lowest levels of the two-mode Hamiltonian in its fixed-N sector
    #[command(allow_hyphen_values = true)]
    TwoModeSpectrum(TwoModeSpectrumArgs),
    /// Lowest levels of the charge-basis Hamiltonian
    #[command(allow_hyphen_values = true)]
    EffectiveSpectrum(EffectiveSpectrumArgs),
    /// Charge dispersion: lowest levels over a gate-charge grid
    #[command(allow_hyphen_values = true)]
    SweepNg(SweepArgs),
    /// Overlap of two condensate product states
    #[command(allow_hyphen_values = true)]
    Overlap(OverlapArgs),
    /// Overlaps over a grid of charge differences
    #[command(allow_hyphen_values = true)]
    ConeScan(ConeScanArgs),
    /// Gap table of the two-mode model against its mapped charge-basis model
    #[command(allow_hyphen_values = true)]
    Compare(CompareArgs),
    /// Qubit states, charge separation and condensate overlap in one run
    #[command(allow_hyphen_values = true)]
    Pipeline(PipelineArgs),
}

const EXIT_INVALID: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

fn run(command: &Command) -> cpb_core::Result<Document> {
    match command {
        Command::TwoModeSpectrum(a) => two_mode_spectrum_cmd(a),
        Command::EffectiveSpectrum(a) => effective_spectrum_cmd(a),
        Command::SweepNg(a) => sweep_cmd(a),
        Command::Overlap(a) => overlap_cmd(a),
        Command::ConeScan(a) => cone_scan_cmd(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Pipeline(a) => pipeline_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // First paragraph of clap's message, folded onto one line.
            let rendered = e.render().to_string();
            let line: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(EXIT_INVALID);
        }
        Err(e) => e.exit(),
    };

    let doc = match run(&cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INVALID };
            return ExitCode::from(code);
        }
    };

    let text = doc.render(cli.format);
    if let Err(e) = emit::write(&text, cli.output.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::SUCCESS
}
