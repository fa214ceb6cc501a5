use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bds::{parse_system, parse_system_unchecked, run, Command, Options};
use clap::Parser;

/// Invariants of Boolean dynamical systems.
#[derive(Parser, Debug)]
#[command(name = "bds", version, after_help = commands_help())]
struct Cli {
    /// Command to run.
    command: String,
    /// System document (JSON); `-` reads stdin.
    file: PathBuf,
    /// Expression for `semigroup-eval`.
    expr: Option<String>,
    /// Print the JSON report.
    #[arg(long)]
    json: bool,
    /// `graph`: print DOT.
    #[arg(long)]
    dot: bool,
    /// `quotient`: seed element; its hereditary saturated closure is used.
    #[arg(long)]
    ideal: Option<String>,
    /// `cover-check`: the idempotent to cover.
    #[arg(long)]
    x: Option<String>,
    /// `cover-check`: a cover member (repeatable).
    #[arg(long = "z")]
    z: Vec<String>,
    /// `spectrum`, `regular`: element argument.
    #[arg(long)]
    elem: Option<String>,
    /// `cofinal`: the set A of the two-set condition.
    #[arg(long, requires = "b")]
    a: Option<String>,
    /// `cofinal`: the set B of the two-set condition.
    #[arg(long, requires = "a")]
    b: Option<String>,
}

fn commands_help() -> String {
    let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
    format!("Commands: {}\n\nBDS_BOUND=<n> overrides every iteration cap.\nExit codes: 0 computed, 1 input error, 2 inconclusive or unsupported.", names.join(", "))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("bds: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Some(command) = Command::parse(&cli.command) else {
        eprintln!("bds: unknown command `{}`\n\n{}", cli.command, commands_help());
        return ExitCode::from(1);
    };
    let bound = match std::env::var("BDS_BOUND") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => return fail(format!("BDS_BOUND must be a positive integer, got `{v}`")),
        },
        Err(_) => None,
    };
    let text = if cli.file.as_os_str() == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut s) {
            return fail(e);
        }
        s
    } else {
        match std::fs::read_to_string(&cli.file) {
            Ok(s) => s,
            Err(e) => return fail(format!("{}: {e}", cli.file.display())),
        }
    };
    // `validate` reports violations instead of refusing the document
    let parsed = if command == Command::Validate { parse_system_unchecked(&text) } else { parse_system(&text) };
    let sys = match parsed {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let opts = Options {
        dot: cli.dot,
        ideal: cli.ideal,
        expr: if command == Command::CoverCheck { cli.x } else { cli.expr.or(cli.x) },
        cover: cli.z,
        elem: cli.elem,
        pair: cli.a.zip(cli.b),
        bound,
    };
    let outcome = match run(command, &sys, &opts) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports serialize"));
    } else {
        print!("{}", outcome.text);
    }
    if command == Command::Validate && outcome.report.result["valid"] == false {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
