use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gorinj::tor::{TableRow, TorTable};
use gorinj_cli::command::{Command, ReportFormat, SweepBounds};
use gorinj_cli::report::emit_report;
use gorinj_cli::session::Session;

/// Exact tensor, Tor and Gorenstein injective computations over small rings.
#[derive(Parser, Debug)]
#[command(name = "gorinj", version)]
struct Args {
    /// Ring descriptor, e.g. `Z`, `Z/12`, `F2[x]/(x^3)`.
    #[arg(long)]
    ring: Option<String>,
    /// Batch script, one command per line.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Write the JSON report here on exit.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run the verification sweep over the ring.
    #[arg(long)]
    sweep: bool,
    #[arg(long, value_delimiter = ',')]
    primes: Vec<String>,
    #[arg(long, default_value_t = 2)]
    max_exp: u32,
    #[arg(long, default_value_t = 2)]
    max_atoms: u32,
    #[arg(long, default_value_t = 2)]
    tor_max: u32,
    /// Corrupt one row of the closed-form Tor table (for testing the checks).
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("gorinj: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let table = match &args.inject_fault {
        None => TorTable::exact(),
        Some(name) => match TableRow::from_name(name) {
            Some(row) => TorTable::with_fault(row),
            None => {
                let names: Vec<&str> = TableRow::ALL.iter().map(|r| r.name()).collect();
                return usage(format!("unknown table row '{name}'; expected one of {}", names.join(", ")));
            }
        },
    };
    let mut session = Session::with_table(table);

    if let Some(desc) = &args.ring {
        if let Err(e) = session.execute(&Command::SetRing(desc.clone())) {
            return usage(e);
        }
    }
    if let Some(path) = &args.script {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
        };
        match session.run_script(&text) {
            Ok(lines) => {
                for l in lines {
                    println!("{l}");
                }
            }
            Err(e) => return usage(e),
        }
    }
    if args.sweep {
        if session.ring().is_none() {
            return usage("--sweep needs --ring");
        }
        let bounds = SweepBounds {
            primes: args.primes.clone(),
            max_exp: args.max_exp,
            max_atoms: args.max_atoms,
            tor_max: args.tor_max,
        };
        match session.execute(&Command::Sweep(bounds)) {
            Ok(s) => println!("{s}"),
            Err(e) => return usage(e),
        }
    }
    if args.script.is_none() && !args.sweep {
        repl(&mut session);
    }

    let doc = session.report();
    if let Some(path) = &args.json {
        if let Err(e) = emit_report(doc, path, ReportFormat::Json) {
            return usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    let s = &doc.summary;
    eprintln!("summary: {} cases, {} failures, {} mismatches", s.cases, s.failures, s.mismatches);
    ExitCode::from(doc.exit_code() as u8)
}

fn repl(session: &mut Session) {
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    let prompt = || {
        if interactive {
            print!("> ");
            let _ = std::io::stdout().flush();
        }
    };
    prompt();
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        match session.run_line(&line) {
            Ok(Some(out)) => println!("{out}"),
            Ok(None) => {}
            Err(e) => eprintln!("error: {e}"),
        }
        prompt();
    }
}
