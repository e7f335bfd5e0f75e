mod args;
mod commands;
mod inputs;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind as ClapKind};
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, GlobalArgs};

/// A failed run: exit code 1 for bad input, 2 for resource or solver
/// failures.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
    flag: Option<String>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { kind: "input", message: message.into(), flag: None }
    }

    fn exit_code(&self) -> u8 {
        if self.kind == "input" {
            1
        } else {
            2
        }
    }
}

impl From<liftlab::Error> for Failure {
    fn from(e: liftlab::Error) -> Self {
        let kind = match e.kind() {
            liftlab::ErrorKind::Input => "input",
            liftlab::ErrorKind::Resource => "resource",
            liftlab::ErrorKind::Solver => "solver",
        };
        Failure { kind, message: e.to_string(), flag: None }
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Primary output of a subcommand plus optional side tables.
pub struct Output {
    pub command: &'static str,
    pub args: Value,
    pub result: Value,
    pub csv: Option<String>,
    pub plots: Vec<(String, String)>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&usage_failure(&e)),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(&f),
    }
}

fn usage_failure(e: &clap::Error) -> Failure {
    let flag = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => Some(s.clone()),
        Some(ContextValue::Strings(v)) => v.first().cloned(),
        _ => None,
    };
    let rendered = e.render().to_string();
    let message = rendered.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
    Failure { kind: "input", message, flag }
}

fn report(f: &Failure) -> ExitCode {
    let mut error = json!({ "kind": f.kind, "message": f.message });
    if let Some(flag) = &f.flag {
        error["flag"] = json!(flag);
    }
    eprintln!("{}", json!({ "tool": "liftlab", "version": env!("CARGO_PKG_VERSION"), "error": error }));
    ExitCode::from(f.exit_code())
}

fn run(cli: Cli) -> Outcome<()> {
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return Err(Failure::input("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Failure {
            kind: "resource",
            message: e.to_string(),
            flag: None,
        })?;
    }
    let out = commands::dispatch(cli.command, &cli.global)?;
    write_outputs(&cli.global, out)
}

fn write_outputs(global: &GlobalArgs, out: Output) -> Outcome<()> {
    let doc = json!({
        "tool": "liftlab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": {
            "command": out.command,
            "global": global,
            "args": out.args,
        },
        "result": out.result,
    });
    let text = if global.pretty { serde_json::to_string_pretty(&doc) } else { serde_json::to_string(&doc) }
        .expect("output JSON serialization");
    match &global.output {
        Some(path) => write_file(path, &(text + "\n"))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(Failure { kind: "resource", message: format!("stdout: {e}"), flag: None })
                }
                _ => {}
            }
        }
    }
    if let Some(path) = &global.csv {
        match &out.csv {
            Some(csv) => write_file(path, csv)?,
            None => return Err(Failure::input(format!("`{}` has no CSV side-table", out.command))),
        }
    }
    if let Some(dir) = &global.plot_data {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for (name, csv) in &out.plots {
            write_file(&dir.join(format!("{name}.csv")), csv)?;
        }
    }
    Ok(())
}

pub fn write_file(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

pub fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}
