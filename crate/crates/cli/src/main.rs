//! Command-line front end: parse a JSON session spec, run the selected check
//! battery, emit a machine-readable report (and table artifacts), and exit
//! with 0 on pass, 1 on check failure, 2 on input errors.

mod report;
mod runner;
mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use mackey_engine::driver::Scope;
use runner::{run, Command as CheckCommand, RunOutput};
use spec::SessionSpec;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mackey",
    about = "Verification engine for finite group actions on semisimple linear categories"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Sampled,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Path to the JSON session specification.
    #[arg(long)]
    spec: PathBuf,
    /// Override the seed from the spec file.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the outer subgroup loop.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Check scope: every tuple, or class representatives with sampled data.
    #[arg(long, value_enum, default_value_t = ScopeArg::All)]
    scope: ScopeArg,
    /// Directory for report and table artifacts (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Validate the action (and pointed/algebra) axioms of the input data.
    Validate(CommonArgs),
    /// Construct and verify the double-coset decomposition of Res∘Ind.
    Mackey(CommonArgs),
    /// Check the coherence diagrams of the comparison isomorphisms.
    Coherence(CommonArgs),
    /// Check the induction/restriction adjunction.
    Adjunction(CommonArgs),
    /// Emit Grothendieck-group tables and verify the Mackey/Green axioms.
    Tables(CommonArgs),
    /// Compare smash-product block data with the abstract engine.
    SmashCompare(CommonArgs),
    /// Run the shipped demonstration specs end to end.
    Demo {
        /// Directory for demo artifacts (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_spec(path: &Path, seed_override: Option<u64>) -> Result<SessionSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut spec: SessionSpec =
        serde_json::from_str(&text).map_err(|e| format!("invalid spec JSON: {e}"))?;
    if let Some(seed) = seed_override {
        spec.seed = seed;
    }
    Ok(spec)
}

fn write_or_print(out: &Option<PathBuf>, filename: &str, content: &str) -> Result<(), String> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            let path = dir.join(filename);
            std::fs::write(&path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit(
    output: &RunOutput,
    args_out: &Option<PathBuf>,
    command: &CheckCommand,
) -> Result<(), String> {
    write_or_print(
        args_out,
        &format!("{}.json", command.name()),
        &output.report.to_json(),
    )?;
    if let Some((json, text)) = &output.tables {
        write_or_print(args_out, "tables.json", json)?;
        write_or_print(args_out, "tables.txt", text)?;
    }
    Ok(())
}

fn execute(cmd: &CheckCommand, args: &CommonArgs) -> ExitCode {
    let started = Instant::now();
    let spec = match read_spec(&args.spec, args.seed) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("input error: {e}");
            return ExitCode::from(2);
        }
    };
    // The validate command reports on broken invariants instead of refusing
    // to construct the session.
    let session = match cmd {
        CheckCommand::Validate => spec.build_unvalidated(),
        _ => spec.build(),
    };
    let session = match session {
        Ok(session) => session,
        Err(e) => {
            if matches!(cmd, CheckCommand::Validate) {
                // Semantic failures caught by a constructor still produce a
                // named report with exit code 1.
                let mut check = mackey_engine::report::CheckReport::new();
                check.fail("input construction", e);
                let report = report::Report::from_check(cmd.name(), spec.seed, "all", &check);
                let _ = write_or_print(&args.out, "validate.json", &report.to_json());
                return ExitCode::from(1);
            }
            eprintln!("input error: {e}");
            return ExitCode::from(2);
        }
    };
    let scope = match args.scope {
        ScopeArg::All => Scope::All,
        ScopeArg::Sampled => Scope::Sampled,
    };
    match run(&session, cmd, scope, args.jobs) {
        Ok(output) => {
            if let Err(e) = emit(&output, &args.out, cmd) {
                eprintln!("output error: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "{}: {} checks, {} failed ({:?})",
                cmd.name(),
                output.report.summary.total,
                output.report.summary.failed,
                started.elapsed()
            );
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(2)
        }
    }
}

const DEMO_SPECS: [(&str, &str); 3] = [
    ("s3_trivial", include_str!("../../../specs/s3_trivial.json")),
    (
        "pointed_c3_inversion",
        include_str!("../../../specs/pointed_c3_inversion.json"),
    ),
    (
        "smash_s3_fields",
        include_str!("../../../specs/smash_s3_fields.json"),
    ),
];

fn demo(out: &Option<PathBuf>) -> ExitCode {
    let mut all_passed = true;
    for (name, text) in DEMO_SPECS {
        let spec: SessionSpec = match serde_json::from_str(text) {
            Ok(spec) => spec,
            Err(e) => {
                eprintln!("demo spec {name} is invalid: {e}");
                return ExitCode::from(2);
            }
        };
        let session = match spec.build() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("demo spec {name} failed to build: {e}");
                return ExitCode::from(2);
            }
        };
        let commands: Vec<CheckCommand> = match &session.backend {
            spec::Backend::Smash(_) => vec![CheckCommand::Validate, CheckCommand::SmashCompare],
            _ => vec![
                CheckCommand::Validate,
                CheckCommand::Mackey,
                CheckCommand::Coherence,
                CheckCommand::Adjunction,
                CheckCommand::Tables,
            ],
        };
        for cmd in &commands {
            match run(&session, cmd, Scope::All, 1) {
                Ok(output) => {
                    all_passed &= output.passed;
                    let sub_out = out.as_ref().map(|d| d.join(name));
                    if let Err(e) = emit(&output, &sub_out, cmd) {
                        eprintln!("output error: {e}");
                        return ExitCode::from(2);
                    }
                    eprintln!(
                        "demo {name}/{}: {} checks, {} failed",
                        cmd.name(),
                        output.report.summary.total,
                        output.report.summary.failed
                    );
                }
                Err(e) => {
                    eprintln!("demo {name}/{} failed to run: {e}", cmd.name());
                    return ExitCode::from(2);
                }
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        CliCommand::Validate(args) => execute(&CheckCommand::Validate, args),
        CliCommand::Mackey(args) => execute(&CheckCommand::Mackey, args),
        CliCommand::Coherence(args) => execute(&CheckCommand::Coherence, args),
        CliCommand::Adjunction(args) => execute(&CheckCommand::Adjunction, args),
        CliCommand::Tables(args) => execute(&CheckCommand::Tables, args),
        CliCommand::SmashCompare(args) => execute(&CheckCommand::SmashCompare, args),
        CliCommand::Demo { out } => demo(out),
    }
}
