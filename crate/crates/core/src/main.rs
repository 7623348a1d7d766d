use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use agc::boolalg::{DEFAULT_ATOM_CAP, MAX_ATOMS};
use agc::dsl::{eval, parse_spec_with_cap, Evaluation};
use agc::laws::{run_laws, LawsConfig, Suite};
use agc::quantify::DEFAULT_SEED;

const ATOM_CAP_VAR: &str = "AGC_ATOM_CAP";

#[derive(Parser)]
#[command(name = "agc", version, about = "Assume-guarantee contract algebra over finite Boolean algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a specification file and print every binding and query.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run law suites over the algebra with N atoms.
    Laws {
        #[arg(long)]
        atoms: usize,
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suites: SuiteList,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Sampling seed in hexadecimal, used at 4 atoms.
        #[arg(long, value_parser = parse_hex)]
        seed: Option<u64>,
    },
    /// Evaluate a specification file; exit 0 iff every check holds.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone)]
struct SuiteList(Vec<Suite>);

fn parse_suites(text: &str) -> Result<SuiteList, String> {
    if text == "all" {
        return Ok(SuiteList(Suite::ALL.to_vec()));
    }
    text.split(',')
        .map(|s| s.trim().parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()
        .map(SuiteList)
}

fn parse_hex(text: &str) -> Result<u64, String> {
    let digits = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")).unwrap_or(text);
    u64::from_str_radix(digits, 16).map_err(|e| format!("`{text}` is not a hexadecimal seed: {e}"))
}

fn atom_cap() -> Result<usize, String> {
    match std::env::var(ATOM_CAP_VAR) {
        Err(_) => Ok(DEFAULT_ATOM_CAP),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_ATOMS).contains(&n) => Ok(n),
            _ => Err(format!("{ATOM_CAP_VAR} must be an integer between 1 and {MAX_ATOMS}, got `{raw}`")),
        },
    }
}

fn load(file: &Path) -> Result<Evaluation, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let spec = parse_spec_with_cap(&text, atom_cap()?).map_err(|e| {
        // the error's Display already starts with line:col for positioned variants
        let pos = e.position();
        let msg = e.to_string();
        let prefix = format!("{pos}: ");
        let body = msg.strip_prefix(&prefix).unwrap_or(&msg);
        format!("{}:{pos}: {body}", file.display())
    })?;
    Ok(eval(&spec))
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval { file, format } => {
            let ev = load(&file)?;
            match format {
                Format::Text => emit(&ev.to_text()),
                Format::Json => emit(&to_json(&ev)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file } => {
            let ev = load(&file)?;
            emit(&ev.check_summary());
            Ok(if ev.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Laws {
            atoms,
            suites,
            format,
            seed,
        } => {
            let config = LawsConfig {
                suites: suites.0,
                seed: seed.unwrap_or(DEFAULT_SEED),
                ..LawsConfig::new(atoms)
            };
            let report = run_laws(&config).map_err(|e| e.to_string())?;
            match format {
                Format::Text => emit(&report.to_text()),
                Format::Json => emit(&to_json(&report)),
            }
            Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
