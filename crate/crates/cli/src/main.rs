use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use compat_linf_cli::document::Document;
use compat_linf_cli::{run, Command, DeformAction, Flags, Form, Outcome, EXIT_INPUT};
use compat_linf::exactla::parse_scalar;

/// Environment variable fixing the size of the worker pool.
const THREADS_VAR: &str = "COMPAT_LINF_THREADS";

#[derive(Parser, Debug)]
#[command(name = "compat-linf", version, about = "Exact checks for compatible L-infinity, A-infinity and Lie structures")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Highest arity (or cohomology level) to check.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Truncate coderivations above this arity.
    #[arg(long, global = true)]
    arity_cap: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify every defining and compatibility identity of a document.
    Check { input: PathBuf },
    /// Dimensions of the compatible cohomology.
    Cohomology { input: PathBuf },
    /// Analyze a finite-order deformation.
    Deform {
        input: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "check")]
        action: Action,
        /// Write the resulting deformation here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Convert between 2-term structures, crossed modules, triples and Lie 2-algebra data.
    Convert {
        input: PathBuf,
        #[arg(long, value_parser = parse_form)]
        from: Form,
        #[arg(long, value_parser = parse_form)]
        to: Form,
        /// Write the converted document here instead of printing it.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Rota-Baxter operators on a compatible representation.
    Rota {
        input: PathBuf,
        /// Candidate operator document.
        #[arg(long, conflicts_with = "search")]
        check: Option<PathBuf>,
        #[arg(long)]
        search: bool,
        /// Comma-separated entry values for the search.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        entries: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Action {
    Check,
    Obstruction,
    Extend,
    Trivialize,
}

fn parse_form(s: &str) -> Result<Form, String> {
    Form::parse(s).ok_or_else(|| format!("unknown form {s:?}; expected two-term, strict, skeletal, crossed, triple or lie2"))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(o: &Outcome, json: bool) -> ExitCode {
    let s = o.render(json);
    // a closed pipe is not an error worth reporting
    let _ = if o.code == EXIT_INPUT && !json {
        writeln!(std::io::stderr(), "{s}")
    } else {
        writeln!(std::io::stdout(), "{s}")
    };
    ExitCode::from(o.code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flags = Flags { json: cli.json, n_max: cli.n_max, arity_cap: cli.arity_cap };
    let fail = |msg: String| emit(&Outcome::input(msg), flags.json);
    if let Err(e) = configure_threads() {
        return fail(e);
    }
    let (input, command, output) = match cli.command {
        Cmd::Check { input } => (input, Command::Check, None),
        Cmd::Cohomology { input } => (input, Command::Cohomology, None),
        Cmd::Deform { input, order, action, output } => {
            let action = match action {
                Action::Check => DeformAction::Check,
                Action::Obstruction => DeformAction::Obstruction,
                Action::Extend => DeformAction::Extend,
                Action::Trivialize => DeformAction::Trivialize,
            };
            (input, Command::Deform { order, action }, output)
        }
        Cmd::Convert { input, from, to, output } => (input, Command::Convert { from, to }, output),
        Cmd::Rota { input, check, search, entries } => {
            let parsed = entries.split(',').filter(|s| !s.trim().is_empty()).map(parse_scalar).collect::<Result<Vec<_>, _>>();
            match parsed {
                Ok(entries) => (input, Command::Rota { check, search, entries }, None),
                Err(e) => return fail(format!("--entries: {e}")),
            }
        }
    };
    let doc = match Document::load(&input) {
        Ok(d) => d,
        Err(e) => return emit(&Outcome::load_error(&e), flags.json),
    };
    let mut outcome = run(&command, &doc, &flags);
    if let Some(path) = &output {
        if let Some(d) = outcome.document.take() {
            if let Err(e) = d.save(path) {
                return fail(format!("cannot write {}: {e}", path.display()));
            }
            outcome.text.push_str(&format!("\nwrote {}", path.display()));
        }
    }
    emit(&outcome, flags.json)
}
