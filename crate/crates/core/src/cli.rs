//! Command-line driver.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable input or a lex/parse/static
//! error, 4 runtime error. Code 3 is reserved for analysis limits; truncated path
//! enumeration is only a warning and still exits 0.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cfg::build_cfg;
use crate::dataflow::Dependences;
use crate::export::{render_dot, render_text, DotOptions, Graph};
use crate::frontend::{load, Node, NumberedProgram};
use crate::interp::{execute, render_dynamic_report, render_env, DEFAULT_STEP_LIMIT};
use crate::paths::{
    enumerate_static_paths, render_path_report, DEFAULT_LOOP_BOUND, DEFAULT_MAX_PATHS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FRONTEND: i32 = 2;
pub const EXIT_ANALYSIS_LIMIT: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "flowgraph",
    version,
    about = "Control-flow, dependence-graph and execution-path analysis for a small Java subset"
)]
pub struct Cli {
    /// Source file containing a single class with a `main` method
    pub input: PathBuf,

    /// Write the result to this file instead of standard output
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print static path enumeration or the dynamic execution path
    Paths {
        #[arg(long, value_enum, default_value_t = Mode::Static)]
        mode: Mode,
        /// Maximum True-edge traversals per loop header on one static path
        #[arg(long, default_value_t = DEFAULT_LOOP_BOUND)]
        loop_bound: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_PATHS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max_paths: u64,
        #[arg(long, default_value_t = DEFAULT_STEP_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
        step_limit: u64,
    },
    /// Serialize a control-flow or dependence graph
    Graph {
        #[arg(long, value_enum, default_value_t = GraphKind::Cfg)]
        kind: GraphKind,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Keep ENTRY and its control edges in dependence graphs
        #[arg(long)]
        include_entry: bool,
    },
    /// Execute the program, then print its output and final variable values
    Run {
        #[arg(long, default_value_t = DEFAULT_STEP_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
        step_limit: u64,
    },
    /// Print the parsed program with statement IDs
    Ast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Static,
    Dynamic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Cfg,
    Ddg,
    Cdg,
    Pdg,
    Vdg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Text,
}

/// Runs one invocation. `args` includes the program name.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{err}");
                    EXIT_USAGE
                }
            };
        }
    };

    let source = match std::fs::read_to_string(&cli.input) {
        Ok(s) => s,
        Err(err) => {
            let _ = writeln!(stderr, "error: cannot read {}: {err}", cli.input.display());
            return EXIT_FRONTEND;
        }
    };
    let program = match load(&source) {
        Ok(p) => p,
        Err(err) => {
            let _ = writeln!(stderr, "{}:{err}", cli.input.display());
            return EXIT_FRONTEND;
        }
    };

    let (text, code) = match &cli.command {
        Command::Paths {
            mode: Mode::Static,
            loop_bound,
            max_paths,
            ..
        } => {
            let cfg = build_cfg(&program);
            let max = usize::try_from(*max_paths).unwrap_or(usize::MAX);
            let ps = enumerate_static_paths(&cfg, *loop_bound, max);
            if ps.truncated {
                let _ = writeln!(
                    stderr,
                    "warning: path enumeration stopped after {} paths (--max-paths)",
                    ps.len()
                );
            }
            (render_path_report(&program, &ps), EXIT_OK)
        }
        Command::Paths {
            mode: Mode::Dynamic,
            step_limit,
            ..
        } => match execute(&program, *step_limit) {
            Ok(trace) => (render_dynamic_report(&program, &trace), EXIT_OK),
            Err(err) => {
                let _ = writeln!(stderr, "runtime error: {err}");
                return EXIT_RUNTIME;
            }
        },
        Command::Run { step_limit } => match execute(&program, *step_limit) {
            Ok(trace) => {
                let mut out: String = trace.output.iter().map(|v| format!("{v}\n")).collect();
                out.push_str(&render_env(&trace.final_env));
                (out, EXIT_OK)
            }
            Err(err) => {
                let out: String = err.trace.output.iter().map(|v| format!("{v}\n")).collect();
                let _ = writeln!(stderr, "runtime error: {err}");
                (out, EXIT_RUNTIME)
            }
        },
        Command::Graph {
            kind,
            format,
            include_entry,
        } => {
            let cfg = build_cfg(&program);
            let deps = (*kind != GraphKind::Cfg).then(|| Dependences::compute(&program, &cfg));
            let graph: Graph<'_> = match (kind, &deps) {
                (GraphKind::Cfg, _) => Graph::Cfg(&cfg),
                (GraphKind::Ddg, Some(d)) => Graph::Dependence(&d.data),
                (GraphKind::Cdg, Some(d)) => Graph::Dependence(&d.control),
                (GraphKind::Pdg, Some(d)) => Graph::Dependence(&d.program),
                (GraphKind::Vdg, Some(d)) => Graph::Variable(&d.variables),
                (_, None) => unreachable!("dependences computed for every non-CFG kind"),
            };
            let text = match format {
                Format::Dot => {
                    let options = DotOptions {
                        include_entry: *include_entry,
                    };
                    render_dot(graph, &program, options).text
                }
                Format::Text => render_text(graph),
            };
            (text, EXIT_OK)
        }
        Command::Ast => (render_ast(&program), EXIT_OK),
    };

    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        let _ = writeln!(stderr, "error: cannot write output: {err}");
        return EXIT_USAGE;
    }
    code
}

/// Indented tree of numbered statements.
pub fn render_ast(program: &NumberedProgram) -> String {
    fn seq(program: &NumberedProgram, nodes: &[Node], depth: usize, out: &mut String) {
        for n in nodes {
            node(program, n, depth, out);
        }
    }

    fn node(program: &NumberedProgram, n: &Node, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let id = n.first_id();
        let _ = writeln!(out, "{pad}[{id}] {}", program.source_text_of(id));
        match n {
            Node::Simple(_) => {}
            Node::If {
                then_arm, else_arm, ..
            } => {
                let _ = writeln!(out, "{pad}  then:");
                seq(program, then_arm, depth + 2, out);
                if let Some(arm) = else_arm {
                    let _ = writeln!(out, "{pad}  else:");
                    seq(program, arm, depth + 2, out);
                }
            }
            Node::While { body, .. } => {
                let _ = writeln!(out, "{pad}  body:");
                seq(program, body, depth + 2, out);
            }
        }
    }

    let mut out = format!(
        "class {}\n  main(String[] {})\n",
        program.ast.class_name, program.ast.args_name
    );
    seq(program, &program.skeleton, 2, &mut out);
    out
}
