//! Command-line front end.
//!
//! Exit codes are uniform: 0 for success, 1 for a well-formed input that
//! fails the check being asked for, 2 for usage and parse errors. Every
//! command that reads a graph or certificate accepts `-` for stdin.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificate::{verify, Certificate};
use crate::enumerate::{
    enumerate_cubic_multigraphs, enumerate_quartic_tp, random_op_walk, BaseChooser, DEFAULT_SEED,
    MAX_CUBIC_VERTICES, MAX_QUARTIC_VERTICES,
};
use crate::families::{complete_graph, five_vertex_exception, line_multigraph, squared_cycle, triple_edge, NamedBlock};
use crate::multigraph::Multigraph;
use crate::operations::{apply, find_sites, Direction, OpKind, OpStep};
use crate::recognize::{classify, classify_simple, ClassifyError};

#[derive(Parser, Debug)]
#[command(name = "quartic-tp", version, about = "Quartic multigraphs with the triangle property")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report connectivity, 4-regularity and the triangle property.
    Check { graph: String },
    /// Classify a graph and optionally write its certificate.
    Classify {
        graph: String,
        /// Use the simple-graph normal form (Operation 2 steps only).
        #[arg(long)]
        simple: bool,
        /// Write the certificate here (`-` for stdout, after the summary).
        #[arg(long)]
        cert: Option<String>,
    },
    /// Print a named graph in MG1, optionally after applying steps.
    Build(BuildArgs),
    /// Apply steps to a graph and print the result.
    Apply {
        graph: String,
        /// A step such as "op 2 fwd 0 1 2"; repeat for several.
        #[arg(long = "step", required = true)]
        steps: Vec<String>,
    },
    /// List the applicable sites of an operation.
    Sites {
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        kind: Option<u8>,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
    },
    /// Enumerate connected quartic triangle-property multigraphs.
    Enumerate {
        max_n: usize,
        /// Write one MG1 file per class into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Enumerate connected cubic multigraphs instead.
        #[arg(long)]
        cubic: bool,
    },
    /// Check a certificate against a graph without using the classifier.
    Verify { graph: String, cert: String },
    /// Random forward walk from a random base graph.
    Walk {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = BaseArg::Any)]
        base: BaseArg,
    },
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// squared-cycle <n> | complete <n> | line-of-cubic <file> | five-vertex |
    /// triple-edge | k113 | op5-left | op5-right | fig8-outer | fig8-inner
    name: String,
    param: Option<String>,
    /// Apply this step to the built graph; repeat for several.
    #[arg(long = "apply")]
    steps: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Fwd,
    Rev,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BaseArg {
    SquaredCycle,
    LineOfCubic,
    Any,
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn negative(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
        }
    }

    fn graph(&mut self, path: &str) -> Result<Multigraph, Failure> {
        let text = self.read(path)?;
        Multigraph::from_mg1(&text).map_err(|e| usage(format!("{path}: {e}")))
    }

    fn print(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| usage(format!("stdout: {e}")))
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin, out: stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match cmd {
        Command::Check { graph } => {
            let g = io.graph(&graph)?;
            let (c, r, t) = (g.is_connected(), g.is_k_regular(4), g.has_triangle_property());
            io.print(&format!("connected={c} regular4={r} triangle-property={t}\n"))?;
            Ok(if c && r && t { 0 } else { 1 })
        }
        Command::Classify { graph, simple, cert } => {
            let g = io.graph(&graph)?;
            let result = if simple { classify_simple(&g) } else { classify(&g) };
            let certificate = result.map_err(|e| match e {
                ClassifyError::Graph(e) => usage(e.to_string()),
                other => negative(other.to_string()),
            })?;
            io.print(&format!("{}\n", certificate.classification.summary()))?;
            match cert.as_deref() {
                Some("-") => io.print(&certificate.to_string())?,
                Some(path) => fs::write(path, certificate.to_string()).map_err(|e| usage(format!("{path}: {e}")))?,
                None => {}
            }
            Ok(0)
        }
        Command::Build(args) => {
            let mut g = build(&args, io)?;
            for s in &args.steps {
                g = apply_text(&g, s)?;
            }
            io.print(&g.to_mg1())?;
            Ok(0)
        }
        Command::Apply { graph, steps } => {
            let mut g = io.graph(&graph)?;
            for s in &steps {
                g = apply_text(&g, s)?;
            }
            io.print(&g.to_mg1())?;
            Ok(0)
        }
        Command::Sites { graph, kind, direction } => {
            let g = io.graph(&graph)?;
            let kinds: Vec<OpKind> = match kind {
                Some(k) => vec![OpKind::from_number(k).expect("range checked by the parser")],
                None => OpKind::ALL.to_vec(),
            };
            let dirs = match direction {
                Some(DirectionArg::Fwd) => vec![Direction::Forward],
                Some(DirectionArg::Rev) => vec![Direction::Reverse],
                None => vec![Direction::Forward, Direction::Reverse],
            };
            let mut text = String::new();
            for &k in &kinds {
                for &d in &dirs {
                    for s in find_sites(&g, k, d) {
                        text.push_str(&format!("{s}\n"));
                    }
                }
            }
            io.print(&text)?;
            Ok(0)
        }
        Command::Enumerate { max_n, out, threads, cubic } => {
            let max = if cubic { MAX_CUBIC_VERTICES } else { MAX_QUARTIC_VERTICES };
            if max_n > max {
                return Err(usage(format!("bound {max_n} exceeds the maximum {max}")));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| usage(e.to_string()))?;
            let graphs: Vec<Multigraph> = if cubic {
                let gs = pool.install(|| enumerate_cubic_multigraphs(max_n)).map_err(|e| usage(e.to_string()))?;
                let mut text = String::new();
                for n in (2..=max_n).step_by(2) {
                    let of_n: Vec<&Multigraph> = gs.iter().filter(|g| g.n() == n).collect();
                    text.push_str(&format!("n={n} classes={}\n", of_n.len()));
                    for g in of_n {
                        text.push_str(&format!("{}\n", g.canonical_code().expect("small graph")));
                    }
                }
                io.print(&text)?;
                gs
            } else {
                let report = pool.install(|| enumerate_quartic_tp(max_n)).map_err(|e| usage(e.to_string()))?;
                io.print(&report.to_string())?;
                report.graphs()
            };
            if let Some(dir) = out {
                dump(&dir, &graphs)?;
            }
            Ok(0)
        }
        Command::Verify { graph, cert } => {
            let g = io.graph(&graph)?;
            let text = io.read(&cert)?;
            let cert: Certificate = text.parse().map_err(|e| usage(format!("{}: {e}", display_path(&cert))))?;
            match verify(&g, &cert) {
                Ok(()) => {
                    io.print("ok\n")?;
                    Ok(0)
                }
                Err(e) => Err(negative(e.to_string())),
            }
        }
        Command::Walk { seed, depth, base } => {
            let chooser = match base {
                BaseArg::SquaredCycle => BaseChooser::SquaredCycle,
                BaseArg::LineOfCubic => BaseChooser::LineOfCubic,
                BaseArg::Any => BaseChooser::Any,
            };
            let walk = random_op_walk(seed, depth, chooser).map_err(|e| usage(e.to_string()))?;
            io.print(&walk.graph.to_mg1())?;
            Ok(0)
        }
    }
}

fn display_path(p: &str) -> &str {
    if p == "-" {
        "stdin"
    } else {
        p
    }
}

fn build(args: &BuildArgs, io: &mut Io<'_>) -> Result<Multigraph, Failure> {
    let count = |what: &str| -> Result<usize, Failure> {
        args.param
            .as_deref()
            .ok_or_else(|| usage(format!("{what} needs a vertex count")))?
            .parse()
            .map_err(|_| usage(format!("{what} needs a vertex count")))
    };
    let no_param = || match &args.param {
        Some(p) => Err(usage(format!("unexpected argument {p:?}"))),
        None => Ok(()),
    };
    match args.name.as_str() {
        "squared-cycle" => squared_cycle(count("squared-cycle")?).map_err(|e| usage(e.to_string())),
        "complete" => Ok(complete_graph(count("complete")?)),
        "line-of-cubic" => {
            let path = args.param.as_deref().ok_or_else(|| usage("line-of-cubic needs an MG1 file"))?;
            Ok(line_multigraph(&io.graph(path)?))
        }
        "five-vertex" => no_param().map(|_| five_vertex_exception()),
        "triple-edge" => no_param().map(|_| triple_edge()),
        other => {
            let block: NamedBlock = other.parse().map_err(|_| usage(format!("unknown graph {other:?}")))?;
            no_param()?;
            Ok(block.graph())
        }
    }
}

fn apply_text(g: &Multigraph, text: &str) -> Result<Multigraph, Failure> {
    let step: OpStep = text.parse().map_err(|e| usage(format!("{text:?}: {e}")))?;
    apply(g, &step).map(|out| out.graph).map_err(|e| negative(format!("{step}: {e}")))
}

fn dump(dir: &Path, graphs: &[Multigraph]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    for g in graphs {
        let code = g.canonical_code().expect("enumerated graphs are small");
        let path = dir.join(format!("{code}.mg1"));
        fs::write(&path, g.to_mg1()).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
