//! Command-line front end. `run` returns the exit code and both output streams.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::atoms::AtomTable;
use crate::error::Error;
use crate::expr::{self, EvalError};
use crate::msp;
use crate::props;
use crate::rational::format;
use crate::report::{self, graph_text};
use crate::tables::Tables;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cubic-fjrw", version, about = "Genus-one invariant of the cubic Fermat pair, computed exactly")]
pub struct Cli {
    /// Load the intersection tables from a JSON file instead of the built-in ones.
    #[arg(long, global = true, value_name = "PATH")]
    pub tables: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the invariant computed by one method.
    Theta {
        #[arg(value_enum)]
        method: Method,
    },
    /// Evaluate a class expression, e.g. `deg(push(virt()^3))`.
    Eval { expr: String },
    /// Dump the intersection tables.
    Tables {
        #[arg(long)]
        json: bool,
    },
    /// Localization graphs.
    Msp {
        #[command(subcommand)]
        cmd: MspCommand,
    },
    /// Run everything and compare the two methods.
    Report {
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MspCommand {
    /// One line per graph with its contribution.
    Graphs {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ThreeSpin,
    Msp,
    MaxGroup,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn compute_err(e: Error) -> Outcome {
    Outcome::fail(EXIT_COMPUTE, e)
}

fn load_tables(path: &Option<PathBuf>) -> Result<Tables, Outcome> {
    match path {
        None => Ok(Tables::standard()),
        Some(p) => {
            let s = std::fs::read_to_string(p)
                .map_err(|e| Outcome::fail(EXIT_COMPUTE, format!("{}: {e}", p.display())))?;
            Tables::from_json_str(&s).map_err(compute_err)
        }
    }
}

fn tables_text(t: &Tables) -> String {
    let j = t.to_json();
    let mut out = vec!["pairing".to_string()];
    out.extend(j.pairing.entries.iter().map(|(k, v)| format!("  {k} = {v}")));
    out.extend(j.pairing.node_psi.iter().map(|(k, v)| format!("  {k} = {v}")));
    out.push("strata".to_string());
    out.push(format!("  deg st = {}", j.strata.deg_st));
    for m in [&j.strata.deg1, &j.strata.deg2, &j.strata.deg3] {
        out.extend(m.iter().map(|(k, v)| format!("  deg {k} = {v}")));
    }
    for (k, v) in &j.strata.mplus {
        let image = j.strata.image.get(k).map(String::as_str).unwrap_or("as Dirr1");
        out.push(format!("  {k}: m+ = {v}, image {image}"));
    }
    out.join("\n") + "\n"
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let tables = match load_tables(&cli.tables) {
        Ok(t) => t,
        Err(o) => return o,
    };
    match execute(&cli.command, &tables) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(cmd: &Command, t: &Tables) -> Result<Outcome, Outcome> {
    Ok(match cmd {
        Command::Theta { method } => {
            let v = match method {
                Method::ThreeSpin => props::theta_three_spin(t),
                Method::Msp => msp::solve_theta(),
                Method::MaxGroup => props::theta_max_group(t),
            }
            .map_err(compute_err)?;
            Outcome::ok(format!("{}\n", format(&v)))
        }
        Command::Eval { expr: src } => match expr::eval_str(src, t) {
            Ok(v) => Outcome::ok(format!("{v}\n")),
            Err(EvalError::Parse(e)) => Outcome::fail(EXIT_PARSE, format!("parse error at {e}")),
            Err(EvalError::Compute(e)) => compute_err(e),
        },
        Command::Tables { json } => Outcome::ok(if *json { t.to_json_string() } else { tables_text(t) }),
        Command::Msp { cmd: MspCommand::Graphs { json } } => {
            let graphs = report::graphs_json(&AtomTable::standard()).map_err(compute_err)?;
            Outcome::ok(if *json {
                serde_json::to_string_pretty(&graphs).expect("graphs serialize") + "\n"
            } else {
                graphs.iter().map(|g| graph_text(g) + "\n").collect()
            })
        }
        Command::Report { json, out } => {
            let c = report::build(t).map_err(compute_err)?;
            let text = if *json { c.report.to_json_string() } else { c.report.to_text() };
            let stdout = match out {
                Some(p) => {
                    std::fs::write(p, &text)
                        .map_err(|e| Outcome::fail(EXIT_COMPUTE, format!("{}: {e}", p.display())))?;
                    String::new()
                }
                None => text,
            };
            if c.report.agree {
                Outcome::ok(stdout)
            } else {
                Outcome {
                    code: EXIT_DISAGREE,
                    stdout,
                    stderr: format!(
                        "error: methods disagree: three-spin {} vs msp {}\n",
                        c.report.theta_three_spin, c.report.theta_msp
                    ),
                }
            }
        }
    })
}
