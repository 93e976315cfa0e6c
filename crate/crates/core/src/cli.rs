//! Command-line front end: `verify`, `eval` and `laws`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::calculus::Mutation;
use crate::error::{Error, Result};
use crate::expr::{eval_script, parse, EvalConfig};
use crate::laws::{list_laws, run_all, run_law, Report, Status, TrialConfig};
use crate::operad::BackendKind;

#[derive(Debug, Parser)]
#[command(name = "preoperad", version, about = "Pre-operad calculus checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identity checks and write a JSON report.
    Verify(Common),
    /// Evaluate a script file.
    Eval(Common),
    /// List the registered identities.
    Laws,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Common {
    #[arg(long)]
    backend: Option<BackendKind>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    #[serde(alias = "max_degree")]
    max_degree: Option<usize>,
    /// A law id, or `all`.
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    script: Option<PathBuf>,
    /// JSON file with the same keys as the flags; flags win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, hide = true)]
    canary: Option<Mutation>,
}

macro_rules! overlay {
    ($dst:expr, $src:expr, $($field:ident),*) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )*
    };
}

impl Common {
    fn resolved(mut self) -> Result<Common> {
        if let Some(path) = self.config.clone() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::BadConfig(format!("{}: {e}", path.display())))?;
            let file: Common = serde_json::from_str(&text)
                .map_err(|e| Error::BadConfig(format!("{}: {e}", path.display())))?;
            overlay!(
                self, file, backend, prime, dim, trials, seed, max_degree, law, report, script,
                canary
            );
        }
        Ok(self)
    }

    fn trial_config(&self) -> TrialConfig {
        let d = TrialConfig::default();
        TrialConfig {
            backend: self.backend.unwrap_or(d.backend),
            prime: self.prime.unwrap_or(d.prime),
            dim: self.dim.unwrap_or(d.dim),
            trials: self.trials.unwrap_or(d.trials),
            seed: self.seed.unwrap_or(d.seed),
            max_degree: self.max_degree.unwrap_or(d.max_degree),
            mutation: self.canary.unwrap_or(d.mutation),
            ..d
        }
    }
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Decode(e.to_string()))?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")
            .map_err(|e| Error::BadConfig(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn verify(args: Common) -> Result<i32> {
    let cfg = args.trial_config();
    let reports: Vec<Report> = match args.law.as_deref() {
        None | Some("all") => run_all(&cfg)?,
        Some(id) => vec![run_law(id, &cfg)?],
    };
    let mut err = std::io::stderr().lock();
    for r in &reports {
        let _ = writeln!(
            err,
            "{:<28} {:<12} trials={} vacuous={} failed={} ({} ms)",
            r.law_id, r.status, r.trials, r.vacuous, r.failed_trials, r.millis
        );
    }
    write_json(args.report.as_deref(), &reports)?;
    let ok = reports
        .iter()
        .all(|r| matches!(r.status, Status::Pass | Status::Skipped));
    Ok(if ok { 0 } else { 1 })
}

fn eval(args: Common) -> Result<i32> {
    let path = args
        .script
        .as_ref()
        .ok_or_else(|| Error::BadConfig("eval needs --script PATH".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadConfig(format!("{}: {e}", path.display())))?;
    let d = EvalConfig::default();
    let cfg = EvalConfig {
        backend: args.backend.unwrap_or(d.backend),
        prime: args.prime.unwrap_or(d.prime),
        dim: args.dim.unwrap_or(d.dim),
        seed: args.seed.unwrap_or(d.seed),
    };
    let out = eval_script(&parse(&text)?, &cfg, &BTreeMap::new())?;
    write_json(args.report.as_deref(), &out)?;
    Ok(0)
}

/// Runs the command line and returns the process exit code: 0 when every
/// check passes, 1 on a failed or underpowered check, 2 on usage errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Laws => {
            for law in list_laws() {
                println!("{:<28} {}", law.id, law.description);
            }
            Ok(0)
        }
        Command::Verify(args) => args.resolved().and_then(verify),
        Command::Eval(args) => args.resolved().and_then(eval),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
