use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use functor_audit::classify::ExcludedPolicy;
use functor_audit::corpus::QuantileBounds;
use functor_audit::report::{run, Mode, OutputFormat, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Source,
    Cam,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExcludedArg {
    Rest,
    Drop,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

/// Cohesion and complexity audit of Java classes grouped by naming.
#[derive(Debug, Parser)]
#[command(name = "audit", version)]
struct Args {
    /// Parse Java sources, or read a precomputed CAM metrics CSV.
    #[arg(long, value_enum)]
    mode: ModeArg,

    /// Source roots (one per repository) or CSV files.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// TOML file mapping record fields to CSV column names.
    #[arg(long)]
    cam_map: Option<PathBuf>,

    /// Suffix rules file with [utils] and [exclude] sections.
    #[arg(long)]
    rules: Option<PathBuf>,

    #[arg(long, default_value_t = 0.01)]
    q_low: f64,

    #[arg(long, default_value_t = 0.99)]
    q_high: f64,

    /// Where classes with an excluded suffix go.
    #[arg(long, value_enum, default_value = "rest")]
    excluded_to: ExcludedArg,

    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Directory for SVG bar charts and their CSV data.
    #[arg(long)]
    charts: Option<PathBuf>,

    /// Write SKIP/WARN lines here instead of stderr.
    #[arg(long)]
    diagnostics: Option<PathBuf>,

    /// Keep classes with undefined metrics (source mode only).
    #[arg(long)]
    lenient: bool,
}

fn config(args: Args) -> RunConfig {
    let styled = matches!(args.format, FormatArg::Text)
        && io::stdout().is_terminal()
        && std::env::var_os("AUDIT_NO_COLOR").is_none();
    RunConfig {
        mode: match args.mode {
            ModeArg::Source => Mode::Source,
            ModeArg::Cam => Mode::Cam,
        },
        inputs: args.input,
        cam_map: args.cam_map,
        rules: args.rules,
        bounds: QuantileBounds {
            low: args.q_low,
            high: args.q_high,
        },
        excluded_to: match args.excluded_to {
            ExcludedArg::Rest => ExcludedPolicy::Rest,
            ExcludedArg::Drop => ExcludedPolicy::Drop,
        },
        format: match args.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        },
        charts: args.charts,
        lenient: args.lenient,
        styled,
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };

    let mut diag: Box<dyn Write> = match &args.diagnostics {
        Some(path) => match File::create(path) {
            Ok(file) => Box::new(BufWriter::new(file)),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(io::stderr()),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();

    let result = run(&config(args), &mut out, &mut diag);
    let flushed = out.flush().and(diag.flush());
    match (result, flushed) {
        (Ok(outcome), Ok(())) => ExitCode::from(outcome.exit_code() as u8),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
