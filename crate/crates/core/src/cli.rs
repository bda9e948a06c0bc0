//! Command-line front end: edge-list parsing and the user commands.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::grouplib::{cayley_graph, ConnectionSet};
use crate::oracle::{
    brute_regular_e4cp, brute_semiregular_p, exhaustive_small_p, is_vertex_transitive, verify_certificate,
    DEFAULT_BUDGET,
};
use crate::solver::{all_representations, iso_test, prime_of_degree, represent, Certificate};

/// Exit status for a positive answer.
pub const EXIT_FOUND: i32 = 0;
/// Exit status for a negative answer.
pub const EXIT_NOT_FOUND: i32 = 1;
/// Exit status for usage, parse and input errors.
pub const EXIT_USAGE: i32 = 2;

fn parse_error<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Parses the edge-list format: a header `n=<int>`, then one `a b` arc or
/// `u a b` undirected edge per line. `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut graph: Option<Digraph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(g) = graph.as_mut() else {
            let Some(value) = line.strip_prefix("n=") else {
                return parse_error(line_no, format!("expected header `n=<int>`, found `{line}`"));
            };
            let n = value
                .trim()
                .parse::<usize>()
                .or_else(|_| parse_error(line_no, format!("bad vertex count `{value}`")))?;
            graph = Some(Digraph::new(n));
            continue;
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (undirected, ends) = match fields.as_slice() {
            ["u", a, b] => (true, [*a, *b]),
            [a, b] => (false, [*a, *b]),
            _ => return parse_error(line_no, format!("expected `a b` or `u a b`, found `{line}`")),
        };
        let vertex = |s: &str| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .or_else(|_| parse_error(line_no, format!("bad vertex `{s}`")))?;
            if v >= g.n() {
                return parse_error(line_no, format!("vertex {v} out of range for n={}", g.n()));
            }
            Ok(v)
        };
        let (a, b) = (vertex(ends[0])?, vertex(ends[1])?);
        let fresh = if undirected {
            let first = g.add_arc(a, b);
            let second = a == b || g.add_arc(b, a);
            first && second
        } else {
            g.add_arc(a, b)
        };
        if !fresh {
            return parse_error(line_no, format!("duplicate arc ({a}, {b})"));
        }
    }
    graph.map_or_else(|| parse_error(1, "missing header `n=<int>`"), Ok)
}

#[derive(Parser, Debug)]
#[command(name = "cayrep", version, about = "Cayley graphs over E4 x Cp on 4p vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print yes if the graph is a Cayley graph over E4 x Cp.
    Recognize { file: String },
    /// Print a Cayley representation as JSON.
    Represent {
        file: String,
        /// List one certificate per inequivalent connection set.
        #[arg(long)]
        all: bool,
    },
    /// Test whether Cay(G, S) is isomorphic to the graph.
    Isotest {
        #[arg(long)]
        connset: String,
        file: String,
    },
    /// Print Cay(E4 x Cp, S) in edge-list format.
    Gen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        connset: String,
    },
    /// Brute-force checks used by test harnesses.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Check a JSON certificate against the graph.
    Verify { file: String, certificate: String },
    /// List automorphisms with cycle type p^(n/p).
    Semiregular {
        file: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count regular E4 x Cp subgroups of the automorphism group.
    Regular {
        file: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Solve n = 8 or 12 by exhaustive search.
    Small { file: String },
    /// Decide vertex-transitivity.
    Transitive { file: String },
}

fn read_source(path: &str) -> Result<String> {
    let read = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn read_graph(path: &str) -> Result<Digraph> {
    parse_graph(&read_source(path)?)
}

fn verdict(found: bool) -> i32 {
    if found {
        EXIT_FOUND
    } else {
        EXIT_NOT_FOUND
    }
}

fn perms_json(perms: &[crate::perm::Perm]) -> serde_json::Value {
    perms.iter().map(|g| g.images()).collect()
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let mut emit = |text: String| writeln!(out, "{text}").map_err(|e| Error::Input(format!("write failed: {e}")));
    match command {
        Command::Recognize { file } => {
            let found = represent(&read_graph(&file)?)?.is_some();
            emit(if found { "yes" } else { "no" }.to_string())?;
            Ok(verdict(found))
        }
        Command::Represent { file, all: false } => match represent(&read_graph(&file)?)? {
            Some(cert) => emit(cert.to_json()).map(|_| EXIT_FOUND),
            None => emit(json!({ "cayley": false }).to_string()).map(|_| EXIT_NOT_FOUND),
        },
        Command::Represent { file, all: true } => {
            let graph = read_graph(&file)?;
            let certs = match prime_of_degree(graph.n()) {
                Some(p) if p < 5 => exhaustive_small_p(&graph, p)?.into_iter().collect(),
                _ => all_representations(&graph)?,
            };
            let docs: Vec<serde_json::Value> = certs
                .iter()
                .map(|c| serde_json::from_str(&c.to_json()).expect("certificate JSON"))
                .collect();
            emit(serde_json::to_string_pretty(&docs).expect("JSON list"))?;
            Ok(verdict(!certs.is_empty()))
        }
        Command::Isotest { connset, file } => {
            let graph = read_graph(&file)?;
            let Some(p) = prime_of_degree(graph.n()) else {
                emit(json!({ "isomorphic": false }).to_string())?;
                return Ok(EXIT_NOT_FOUND);
            };
            let s = ConnectionSet::parse(p, &connset)?;
            match iso_test(&s, &graph)? {
                Some(f) => emit(json!({ "isomorphic": true, "bijection": f.images() }).to_string()).map(|_| EXIT_FOUND),
                None => emit(json!({ "isomorphic": false }).to_string()).map(|_| EXIT_NOT_FOUND),
            }
        }
        Command::Gen { p, connset } => {
            let s = ConnectionSet::parse(p, &connset)?;
            let text = cayley_graph(p, &s)?.to_edge_list();
            emit(text.trim_end().to_string())?;
            Ok(EXIT_FOUND)
        }
        Command::Oracle { command } => match command {
            OracleCommand::Verify { file, certificate } => {
                let cert = Certificate::from_json(&read_source(&certificate)?)?;
                let ok = verify_certificate(&read_graph(&file)?, &cert);
                emit(json!({ "valid": ok }).to_string())?;
                Ok(verdict(ok))
            }
            OracleCommand::Semiregular { file, p, budget } => {
                let found = brute_semiregular_p(&read_graph(&file)?, p, budget)?;
                emit(json!({ "elements": perms_json(&found) }).to_string())?;
                Ok(verdict(!found.is_empty()))
            }
            OracleCommand::Regular { file, budget } => {
                let found = brute_regular_e4cp(&read_graph(&file)?, budget)?;
                emit(json!({ "subgroups": found.len() }).to_string())?;
                Ok(verdict(!found.is_empty()))
            }
            OracleCommand::Small { file } => {
                let graph = read_graph(&file)?;
                let Some(p) = prime_of_degree(graph.n()) else {
                    return Err(Error::Input(format!("{} vertices is not 4p for a prime p", graph.n())));
                };
                match exhaustive_small_p(&graph, p)? {
                    Some(cert) => emit(cert.to_json()).map(|_| EXIT_FOUND),
                    None => emit(json!({ "cayley": false }).to_string()).map(|_| EXIT_NOT_FOUND),
                }
            }
            OracleCommand::Transitive { file } => {
                let ok = is_vertex_transitive(&read_graph(&file)?)?;
                emit(if ok { "yes" } else { "no" }.to_string())?;
                Ok(verdict(ok))
            }
        },
    }
}

/// Runs the command line given by `args` (program name first), writing
/// results to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_FOUND };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
