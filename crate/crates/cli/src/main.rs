use branching_cli::commands;
use branching_cli::config::RunConfig;
use branching_cli::CliError;
use clap::{Args, CommandFactory, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "branching", version, about = "Continue spectral integrals with movable poles along w-paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Print the branch points 1/2 ± i·sqrt(c) of a model.
    BranchPoints,
    /// Track the pole along one path; JSON trace plus a CSV of s(w).
    Trace,
    /// Continue the integral along one path and evaluate it at the end.
    Continue,
    /// Difference of the continuations along two paths to --w-end.
    Diff,
    /// Run property suites (one with --suite, or all).
    Verify,
    /// Radicand parabolas for horizontal crossings at heights alpha·|t|.
    Curve,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Flat `key = value` config file; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Model descriptor JSON file (or inline JSON).
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<String>,
    /// Numerator descriptor JSON file (or inline JSON).
    #[arg(long, global = true, value_name = "FILE")]
    numerator: Option<String>,
    /// Waypoints "re,im;re,im;…"; repeat for a second path.
    #[arg(long, global = true, value_name = "PATH")]
    path: Vec<String>,
    /// Common endpoint "re,im", appended to paths that stop short of it.
    #[arg(long = "w-end", global = true, value_name = "W", allow_hyphen_values = true)]
    w_end: Option<String>,
    /// Truncation height of the line integral.
    #[arg(long = "T", global = true, value_name = "FLOAT")]
    t_max: Option<f64>,
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "NAME")]
    suite: Option<String>,
    #[arg(long = "t-norm", global = true, value_name = "FLOAT")]
    t_norm: Option<f64>,
    /// Crossing height in units of |t|; repeatable.
    #[arg(long, global = true, value_name = "FLOAT", allow_hyphen_values = true)]
    alpha: Vec<f64>,
    /// Sigma range "from,to".
    #[arg(long, global = true, value_name = "A,B", allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Largest radicand step between curve samples.
    #[arg(long, global = true, value_name = "FLOAT")]
    step: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn read_descriptor(v: Option<String>) -> Result<Option<String>, CliError> {
    match v {
        Some(s) if s.trim_start().starts_with('{') => Ok(Some(s)),
        Some(p) => {
            std::fs::read_to_string(&p).map(Some).map_err(|e| CliError::Validation(format!("cannot read {p}: {e}")))
        }
        None => Ok(None),
    }
}

fn config(flags: Flags) -> Result<RunConfig, CliError> {
    let base = match &flags.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let from_flags = RunConfig {
        model: read_descriptor(flags.model)?,
        numerator: read_descriptor(flags.numerator)?,
        paths: flags.path,
        w_end: flags.w_end,
        t_max: flags.t_max,
        tol: flags.tol,
        out: flags.out,
        suite: flags.suite,
        t_norm: flags.t_norm,
        alphas: flags.alpha,
        sigma: flags.sigma,
        step: flags.step,
        seed: flags.seed,
    };
    let cfg = base.overlay(from_flags);
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = config(cli.flags)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::BranchPoints => commands::branch_points(&cfg, &mut out)?,
        Command::Trace => commands::trace(&cfg, &mut out)?,
        Command::Continue => commands::continue_cmd(&cfg, &mut out)?,
        Command::Diff => commands::diff(&cfg, &mut out)?,
        Command::Verify => {
            if !commands::verify(&cfg, &mut out)? {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Curve => commands::curve(&cfg, &mut out)?,
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Usage(_) = e {
                eprintln!("known suites: {}", commands::known_suites());
                eprintln!("{}", Cli::command().render_help());
            }
            e.into()
        }
    }
}
