mod args;
mod generate;
mod play;
mod solve;
mod verify;

use std::fmt;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use gadget_gen::{gen_example, GadgetError};
use graph_core::{parse_instance, Cost, Graph, RuleSet};
use spe_solver::SolveError;

use args::{Cli, Command, InputArgs, Rules};

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Infeasible,
    Budget(String),
    Aborted,
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Infeasible => 2,
            Failure::Budget(_) => 3,
            Failure::Aborted => 4,
            Failure::Verification(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Verification(m) => f.write_str(m),
            Failure::Infeasible => f.write_str("no feasible play"),
            Failure::Aborted => f.write_str("session aborted"),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NoFeasiblePlay => Failure::Infeasible,
            SolveError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

pub fn parse_cost(text: &str, what: &str) -> Result<Cost, Failure> {
    Cost::parse(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

/// Reads the instance named on the command line.
pub fn load(input: &InputArgs) -> Result<Graph, Failure> {
    let m = input.m.as_deref().map(|m| parse_cost(m, "--m")).transpose()?;
    if let Some(which) = input.input.strip_prefix("example-") {
        if !std::path::Path::new(&input.input).exists() {
            let which = which
                .parse::<u8>()
                .map_err(|_| Failure::Usage(format!("unknown instance `{}`", input.input)))?;
            return Ok(gen_example(which, m.as_ref())?.graph);
        }
    }
    let text = if input.input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&input.input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", input.input)))?
    };
    parse_instance(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.input)))
}

pub fn rules_for(g: &Graph, flag: Option<Rules>) -> RuleSet {
    match flag {
        Some(Rules::R2) => RuleSet::R2,
        Some(Rules::R3) => RuleSet::R3,
        None => g.rules(),
    }
}

fn run(cli: Cli) -> CmdResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Solve(a) => solve::cmd_solve(&a, &mut out),
        Command::Generate(a) => generate::cmd_generate(&a, &mut out),
        Command::Verify(a) => verify::cmd_verify(&a, &mut out),
        Command::Play(a) => {
            let stdin = io::stdin();
            play::cmd_play(&a, &mut stdin.lock(), &mut out)
        }
        Command::Poa(a) => solve::cmd_poa(&a, &mut out),
        Command::Export(a) => {
            let g = load(&a)?;
            out.write_all(graph_core::export_dot(&g).as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
