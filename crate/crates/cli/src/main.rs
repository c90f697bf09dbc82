use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_jordan::identity::IdentityMode;
use cubic_jordan::recipe::{run_recipe, verify_report, Part, Recipe, RunOptions, RECIPE_VERSION};
use cubic_jordan::report::{Report, Status};
use cubic_jordan::Error;

#[derive(Parser, Debug)]
#[command(name = "cubicjordan", version, about = "Cubic Jordan algebras from JSON recipes")]
struct Cli {
    /// Seed for randomized identity checks and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on exhaustive enumerations (accepts 1e7).
    #[arg(long, global = true, default_value = "1e7", value_parser = parse_budget)]
    budget: u64,
    #[arg(long = "identity-mode", global = true, value_enum, default_value_t = Mode::Auto)]
    identity_mode: Mode,
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Formal,
    Randomized,
    Auto,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GroupKind {
    Sym3,
    Uw,
    OuterCheck,
}

impl GroupKind {
    fn key(self) -> &'static str {
        match self {
            GroupKind::Sym3 => "sym3",
            GroupKind::Uw => "uw",
            GroupKind::OuterCheck => "outer-check",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every clause of a recipe.
    Run { recipe: PathBuf },
    /// Build the construction and run its checks.
    Check { recipe: PathBuf },
    /// Run the search clause of a recipe.
    Search { recipe: PathBuf },
    /// Structure-group operations; INPUT holds the field and the operation's fields.
    Group { kind: GroupKind, input: PathBuf },
    /// Re-validate the witnesses stored in a report.
    VerifyReport { report: PathBuf },
}

fn parse_budget(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(format!("'{s}' is not a non-negative integer")),
    }
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// A bare group input `{"field": .., ...}` becomes a one-clause recipe.
fn group_recipe(kind: GroupKind, input: Value) -> Value {
    if input.get("version").is_some() {
        return input;
    }
    let mut body = input;
    let field = body.as_object_mut().and_then(|m| m.remove("field")).unwrap_or(Value::Null);
    let seed = body.as_object_mut().and_then(|m| m.remove("seed"));
    let mut r = json!({"version": RECIPE_VERSION, "field": field, "group": {kind.key(): body}});
    if let Some(s) = seed {
        r["seed"] = s;
    }
    r
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        seed: cli.seed,
        budget: cli.budget,
        identity_mode: match cli.identity_mode {
            Mode::Formal => IdentityMode::Formal,
            Mode::Randomized => IdentityMode::Randomized,
            Mode::Auto => IdentityMode::Auto,
        },
        jobs: cli.jobs.max(1),
    };
    let (input, part) = match &cli.command {
        Command::VerifyReport { report } => return verify(report, &cli.out),
        Command::Run { recipe } => (read_json(recipe), Part::All),
        Command::Check { recipe } => (read_json(recipe), Part::Checks),
        Command::Search { recipe } => (read_json(recipe), Part::Search),
        Command::Group { kind, input } => (read_json(input).map(|v| group_recipe(*kind, v)), Part::Group),
    };
    let report = match input {
        Err(e) => Report::error(Value::Null, opts.to_json(), &e),
        Ok(v) => match Recipe::from_value(&v) {
            Err(e) => Report::error(v, opts.to_json(), &e),
            Ok(recipe) => run_recipe(&recipe, &opts, part),
        },
    };
    if let Some(msg) = report.value["first_failure"].as_str() {
        eprintln!("{}: {msg}", report.status.as_str());
    }
    if let Err(e) = emit(&cli.out, &report.to_pretty()) {
        eprintln!("{e}");
        return ExitCode::from(Status::RecipeError.exit_code() as u8);
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn verify(path: &Path, out: &Option<PathBuf>) -> ExitCode {
    let outcome = read_json(path).and_then(|v| verify_report(&v));
    let (text, code) = match outcome {
        Ok(o) => {
            let code = if o.passed() { 0 } else { 1 };
            (serde_json::to_string_pretty(&o.to_json()).expect("serializable") + "\n", code)
        }
        Err(e) => {
            eprintln!("{e}");
            (serde_json::to_string_pretty(&json!({"passed": false, "error": e.to_string()})).expect("serializable") + "\n", 2)
        }
    };
    if let Err(e) = emit(out, &text) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
