//! `swd`: exact verification batteries for multiloop Schur-Weyl duality.

mod config;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use swduality::report::Status;
use swduality::Exec;

use config::{CliError, RunConfig, Suite};
use suites::{run_task, skip_reason, Skipped, TargetResult, Task};

#[derive(Parser)]
#[command(name = "swd", version, about = "Exact checks for the toroidal Schur-Weyl functor and its inverse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CommandKind {
    VerifyAff,
    BuildF,
    VerifyToroidal,
    ExtractAlpha,
    Roundtrip,
    Glue,
    CompareDirect,
    Hom,
    RunAll,
}

#[derive(Subcommand)]
enum Command {
    /// Defining relations of each fixture module.
    VerifyAff(Common),
    /// Build F(M) and report its dimensions, embedding and weights.
    #[command(name = "build-F", alias = "build-f")]
    BuildF(Common),
    /// Toroidal relations on F(M), two loops only.
    VerifyToroidal(Common),
    /// Extract the alpha maps and check their identities.
    ExtractAlpha(Common),
    /// F followed by the inverse construction reproduces M.
    Roundtrip(Common),
    /// Glue single-loop actions and check the gluing conditions.
    Glue(Common),
    /// Glued two-loop operators against the direct toroidal action.
    CompareDirect(Common),
    /// Hom spaces on both sides of the functor, for every fixture pair.
    Hom(Common),
    /// Every suite listed in the configuration.
    RunAll(Common),
}

impl Command {
    fn split(self) -> (CommandKind, Common) {
        match self {
            Command::VerifyAff(c) => (CommandKind::VerifyAff, c),
            Command::BuildF(c) => (CommandKind::BuildF, c),
            Command::VerifyToroidal(c) => (CommandKind::VerifyToroidal, c),
            Command::ExtractAlpha(c) => (CommandKind::ExtractAlpha, c),
            Command::Roundtrip(c) => (CommandKind::Roundtrip, c),
            Command::Glue(c) => (CommandKind::Glue, c),
            Command::CompareDirect(c) => (CommandKind::CompareDirect, c),
            Command::Hom(c) => (CommandKind::Hom, c),
            Command::RunAll(c) => (CommandKind::RunAll, c),
        }
    }
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::VerifyAff => "verify-aff",
            CommandKind::BuildF => "build-F",
            CommandKind::VerifyToroidal => "verify-toroidal",
            CommandKind::ExtractAlpha => "extract-alpha",
            CommandKind::Roundtrip => "roundtrip",
            CommandKind::Glue => "glue",
            CommandKind::CompareDirect => "compare-direct",
            CommandKind::Hom => "hom",
            CommandKind::RunAll => "run-all",
        }
    }

    fn tasks(self, cfg: &RunConfig) -> Vec<Task> {
        match self {
            CommandKind::VerifyAff => vec![Task::AffRelations],
            CommandKind::BuildF => vec![Task::BuildF],
            CommandKind::VerifyToroidal => vec![Task::Toroidal],
            CommandKind::ExtractAlpha => vec![Task::Alpha],
            CommandKind::Roundtrip => vec![Task::Roundtrip],
            CommandKind::Glue => vec![Task::Glue],
            CommandKind::CompareDirect => vec![Task::CompareDirect],
            CommandKind::Hom => vec![Task::Hom],
            CommandKind::RunAll => {
                let mut suites = cfg.suites.clone();
                suites.sort();
                suites.dedup();
                suites.into_iter().flat_map(|s| Task::expand(s).iter().copied()).collect()
            }
        }
    }

    /// The suite a single command belongs to, for hypothesis checks.
    fn suite(self) -> Option<Suite> {
        match self {
            CommandKind::VerifyAff | CommandKind::VerifyToroidal => Some(Suite::Relations),
            CommandKind::BuildF => Some(Suite::Degree),
            CommandKind::ExtractAlpha => Some(Suite::Alpha),
            CommandKind::Roundtrip => Some(Suite::Roundtrip),
            CommandKind::Glue | CommandKind::CompareDirect => Some(Suite::Glue),
            CommandKind::Hom => Some(Suite::Hom),
            CommandKind::RunAll => None,
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// JSON run configuration; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Rank parameter: the Lie algebra is sl_{n+1}.
    #[arg(long)]
    n: Option<usize>,
    /// Tensor degree.
    #[arg(long)]
    ell: Option<usize>,
    /// Number of loops.
    #[arg(long)]
    loops: Option<usize>,
    /// Largest loop exponent checked.
    #[arg(long)]
    kmax: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random samples per depth for the gluing conditions.
    #[arg(long)]
    samples: Option<usize>,
    /// Fixture such as `eval:2,3;5,7`, `jordan:...`, `trivial:1;2`, `sign:...` or a JSON module file.
    #[arg(long = "fixtures", alias = "fixture", value_name = "FIXTURE")]
    fixtures: Vec<String>,
    /// Same as `--fixtures`.
    #[arg(long = "module", value_name = "FIXTURE")]
    modules: Vec<String>,
    /// Suites for `run-all`.
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run without the thread pool.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = self.ell {
            cfg.ell = v;
        }
        if let Some(v) = self.loops {
            cfg.m = v;
        }
        if let Some(v) = self.kmax {
            cfg.kmax = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        let fixtures: Vec<String> = self.fixtures.iter().chain(&self.modules).cloned().collect();
        if !fixtures.is_empty() {
            cfg.fixtures = fixtures;
        }
        if !self.suites.is_empty() {
            cfg.suites = self.suites.clone();
        }
        Ok(cfg)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    command: &'static str,
    config: &'a RunConfig,
    results: Vec<TargetResult>,
    skipped: Vec<Skipped>,
    status: Status,
}

fn run(kind: CommandKind, common: &Common) -> Result<Status, CliError> {
    let mut cfg = common.resolve()?;
    if let Some(s) = kind.suite() {
        cfg.suites = vec![s];
    }
    cfg.validate()?;
    cfg.fixtures = cfg.fixture_specs();
    let tasks = kind.tasks(&cfg);
    if kind != CommandKind::RunAll {
        if let Some(reason) = skip_reason(tasks[0], &cfg) {
            return Err(CliError::Usage(format!("{}: {reason}", kind.name())));
        }
    }
    let modules = cfg.modules()?;
    let exec = common.exec();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for task in tasks {
        match skip_reason(task, &cfg) {
            Some(reason) => skipped.push(Skipped { task, reason }),
            None => results.extend(run_task(task, &modules, &cfg, exec)),
        }
    }
    let status = Status::from_bool(results.iter().all(|r| r.status.passed()));
    for r in &results {
        for c in &r.checks {
            let tag = if c.status.passed() { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => eprintln!("{tag} {} [{}] {}: {w}", r.task, r.target, c.name),
                None => eprintln!("{tag} {} [{}] {} ({} checked)", r.task, r.target, c.name, c.checked),
            }
        }
    }
    for s in &skipped {
        eprintln!("SKIP {}: {}", s.task, s.reason);
    }
    let report = Report { schema: 1, command: kind.name(), config: &cfg, results, skipped, status };
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, common) = cli.command.split();
    match run(kind, &common) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("swd {}: {e}", kind.name());
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
