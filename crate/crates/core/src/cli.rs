//! Command-line front end. Exit codes: 0 success, 1 usage or parse error,
//! 2 infeasible instance or invalid artifact.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::decompose::{arboricity, decompose, Verdict};
use crate::graph::{EdgeId, Graph};
use crate::io::{export_dot, parse_assignment, parse_certificate, parse_graph, write_assignment, write_certificate};
use crate::oracle::{check_condition, verify_certificate, verify_decomposition, ConditionReport, DEFAULT_MAX_VERTICES};
use crate::preassign::preassign;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "arboricity",
    version,
    about = "Certifying forest decompositions of multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split the edges into R forests, or print a violating vertex set
    Decompose {
        #[arg(long = "forests", value_name = "R")]
        forests: usize,
        /// Pins as "edge:slot,..."; slots must be exactly 1..s
        #[arg(long)]
        preassign: Option<String>,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the exact arboricity
    Arboricity {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "cert-out")]
        cert_out: Option<PathBuf>,
    },
    /// Brute-force check of the sparsity condition (small graphs only)
    Check {
        #[arg(long = "forests", value_name = "R")]
        forests: usize,
        input: PathBuf,
    },
    /// Validate an assignment file (or a certificate file) against a graph
    Verify {
        #[arg(long = "forests", value_name = "R")]
        forests: usize,
        #[arg(long, conflicts_with = "certificate", required_unless_present = "certificate")]
        assignment: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        input: PathBuf,
    },
    /// Render an assignment as a Graphviz DOT graph
    ExportDot {
        #[arg(long)]
        assignment: PathBuf,
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure carrying the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INFEASIBLE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

/// Parses "id:slot,id:slot" into edges ordered by slot; slots must be 1..=s.
fn parse_pins(text: &str) -> Result<Vec<EdgeId>, Failure> {
    let mut pairs = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (e, slot) = item
            .split_once(':')
            .and_then(|(e, s)| Some((e.trim().parse::<usize>().ok()?, s.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| usage(format!("bad pin `{item}`, expected edge:slot")))?;
        pairs.push((slot, e));
    }
    pairs.sort_unstable();
    if pairs.iter().enumerate().any(|(k, &(slot, _))| slot != k + 1) {
        return Err(usage("pin slots must be exactly 1..s, each used once"));
    }
    Ok(pairs.into_iter().map(|(_, e)| e).collect())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<'a, I, T>(args: I, stdout: &'a mut dyn Write, stderr: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Decompose {
            forests,
            preassign: pins,
            input,
            out,
            dot,
        } => {
            let g = load_graph(&input)?;
            let pins = pins.as_deref().map(parse_pins).transpose()?;
            match decompose(&g, forests) {
                Verdict::Feasible(d) => {
                    let d = match pins {
                        Some(pins) => preassign(&g, &d, &pins).map_err(|e| usage(e.to_string()))?,
                        None => d,
                    };
                    emit(&write_assignment(&d), out.as_deref(), stdout)?;
                    if let Some(path) = dot {
                        emit(&export_dot(&g, &d), Some(&path), stdout)?;
                    }
                    Ok(EXIT_OK)
                }
                Verdict::Infeasible(cert) => {
                    emit(&write_certificate(&g, &cert), out.as_deref(), stdout)?;
                    Ok(EXIT_INFEASIBLE)
                }
            }
        }
        Command::Arboricity { input, out, cert_out } => {
            let g = load_graph(&input)?;
            let report = arboricity(&g).map_err(|e| invalid(e.to_string()))?;
            emit(&format!("arboricity {}\n", report.forests), None, stdout)?;
            if let Some(path) = out {
                emit(&write_assignment(&report.decomposition), Some(&path), stdout)?;
            }
            if let (Some(path), Some(cert)) = (cert_out, &report.certificate) {
                emit(&write_certificate(&g, cert), Some(&path), stdout)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { forests, input } => {
            let g = load_graph(&input)?;
            let report = check_condition(&g, forests, DEFAULT_MAX_VERTICES).map_err(|e| usage(e.to_string()))?;
            match report {
                ConditionReport::Satisfied => {
                    emit("satisfied\n", None, stdout)?;
                    Ok(EXIT_OK)
                }
                ConditionReport::Violated { x, excess } => {
                    let cert = crate::decompose::Certificate::new(forests, x);
                    emit(
                        &format!("violated excess={excess}\n{}", write_certificate(&g, &cert)),
                        None,
                        stdout,
                    )?;
                    Ok(EXIT_INFEASIBLE)
                }
            }
        }
        Command::Verify {
            forests,
            assignment,
            certificate,
            input,
        } => {
            let g = load_graph(&input)?;
            if let Some(path) = certificate {
                let cert = parse_certificate(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                if cert.forests() != forests {
                    return Err(invalid(format!(
                        "certificate is for r={}, not r={forests}",
                        cert.forests()
                    )));
                }
                return if verify_certificate(&g, forests, cert.vertices()) {
                    emit("valid certificate\n", None, stdout)?;
                    Ok(EXIT_OK)
                } else {
                    Err(invalid("certificate does not violate the bound"))
                };
            }
            let path = assignment.expect("clap requires --assignment or --certificate");
            let d = parse_assignment(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if d.forests() != forests {
                return Err(invalid(format!("assignment uses r={}, not r={forests}", d.forests())));
            }
            if verify_decomposition(&g, &d) {
                emit("valid\n", None, stdout)?;
                Ok(EXIT_OK)
            } else {
                Err(invalid("assignment is not a forest decomposition of the graph"))
            }
        }
        Command::ExportDot { assignment, input, out } => {
            let g = load_graph(&input)?;
            let d =
                parse_assignment(&read(&assignment)?).map_err(|e| usage(format!("{}: {e}", assignment.display())))?;
            if d.edge_count() != g.edge_count() {
                return Err(invalid("assignment does not cover the graph's edges"));
            }
            emit(&export_dot(&g, &d), Some(&out), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_pins;

    #[test]
    fn pins_are_ordered_by_slot() {
        assert_eq!(parse_pins("4:2, 7:1").ok(), Some(vec![7, 4]));
        assert_eq!(parse_pins("").ok(), Some(vec![]));
        assert!(parse_pins("4:1,5:3").is_err());
        assert!(parse_pins("4:1,5:1").is_err());
        assert!(parse_pins("4-1").is_err());
    }
}
