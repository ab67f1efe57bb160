//! Command-line front end. [`run`] takes explicit streams so it can be
//! driven from tests; the `planedraw` binary wires it to the process streams.
//!
//! Exit codes: 0 success or verification pass, 1 verification failure
//! (including a floating-point drawing that could not be certified), 2 usage,
//! parse or structural errors.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::augment::triangulate;
use crate::drawing::ExactDrawing;
use crate::error::Error;
use crate::geometry::Kernel;
use crate::io::generate::{generate, GeneratorSpec};
use crate::io::{emit_svg, parse_document, write_document, Document, SvgOptions};
use crate::layout::{draw_with, LayoutOptions};
use crate::reduce::{separating_triangles, Strategy};
use crate::verify::{verify, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "planedraw", version, about = "Straight-line drawings of plane graphs")]
struct Cli {
    /// Print a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Main,
    Footnote,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Main => Strategy::Main,
            StrategyArg::Footnote => Strategy::Footnote,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute coordinates for a graph file.
    Draw {
        /// Input graph file; `-` or absent reads stdin.
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "main")]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "exact")]
        kernel: KernelArg,
        /// Relative tolerance of the floating kernel.
        #[arg(long, default_value_t = Kernel::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Accepted for interface stability; drawing is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Run the full verifier after every vertex split.
        #[arg(long)]
        paranoid: bool,
    },
    /// Check the coordinates in a graph file against its rotation system.
    Verify {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "exact")]
        kernel: KernelArg,
        #[arg(long, default_value_t = Kernel::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Render the drawing with violating edges highlighted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Add edges until every face is a triangle.
    Triangulate {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate an instance: triangle, k4, octahedron, wheel N, stacked DEPTH,
    /// cycle N, star N, random N.
    Gen {
        family: String,
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Vertex, edge and face counts plus the separating-triangle census.
    Stats { input: Option<PathBuf> },
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    json: bool,
}

/// Failure of a subcommand, with its exit code.
struct Failure {
    code: i32,
    error: Option<Error>,
    message: String,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::Kernel(_) | Error::Invariant(_) | Error::Degenerate(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: error.to_string(),
            error: Some(error),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: None,
        message: format!("{}: {e}", path.display()),
    }
}

fn error_kind(error: &Error) -> &'static str {
    match error {
        Error::Structure(_) => "structure",
        Error::Size(_) => "size",
        Error::Argument(_) => "argument",
        Error::Precondition(_) => "precondition",
        Error::NotTriangulation => "not_triangulation",
        Error::Invariant(_) => "invariant",
        Error::Degenerate(_) => "degenerate",
        Error::Kernel(_) => "kernel",
        Error::Parse { .. } => "parse",
    }
}

type Outcome = Result<i32, Failure>;

fn is_stdio(path: &Option<PathBuf>) -> bool {
    path.as_deref().is_none_or(|p| p == Path::new("-"))
}

impl Streams<'_> {
    fn read(&mut self, input: &Option<PathBuf>) -> Result<String, Failure> {
        if is_stdio(input) {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|e| Failure {
                code: EXIT_USAGE,
                error: None,
                message: format!("stdin: {e}"),
            })?;
            Ok(text)
        } else {
            let path = input.as_ref().expect("path");
            fs::read_to_string(path).map_err(|e| io_failure(path, e))
        }
    }

    fn write(&mut self, output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
        if is_stdio(output) {
            self.stdout.write_all(text.as_bytes()).map_err(|e| Failure {
                code: EXIT_USAGE,
                error: None,
                message: format!("stdout: {e}"),
            })
        } else {
            let path = output.as_ref().expect("path");
            fs::write(path, text).map_err(|e| io_failure(path, e))
        }
    }

    fn report(&mut self, value: &Value) {
        let _ = writeln!(self.stdout, "{}", serde_json::to_string_pretty(value).expect("json"));
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let mut io = Streams {
        stdin,
        stdout,
        stderr,
        json: cli.json,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(failure) => {
            io.note(&format!("error: {}", failure.message));
            if io.json {
                let kind = failure.error.as_ref().map_or("io", error_kind);
                io.report(&json!({ "error": { "kind": kind, "message": failure.message } }));
            }
            failure.code
        }
    }
}

fn dispatch(command: Command, io: &mut Streams<'_>) -> Outcome {
    match command {
        Command::Draw {
            input,
            output,
            svg,
            strategy,
            kernel,
            tolerance,
            seed,
            paranoid,
        } => cmd_draw(io, &input, &output, &svg, strategy.into(), kernel, tolerance, seed, paranoid),
        Command::Verify {
            input,
            kernel,
            tolerance,
            svg,
        } => cmd_verify(io, &input, kernel, tolerance, &svg),
        Command::Triangulate { input, output } => cmd_triangulate(io, &input, &output),
        Command::Gen {
            family,
            size,
            seed,
            output,
        } => cmd_gen(io, &family, size, seed, &output),
        Command::Stats { input } => cmd_stats(io, &input),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_draw(
    io: &mut Streams<'_>,
    input: &Option<PathBuf>,
    output: &Option<PathBuf>,
    svg: &Option<PathBuf>,
    strategy: Strategy,
    kernel: KernelArg,
    tolerance: f64,
    seed: Option<u64>,
    paranoid: bool,
) -> Outcome {
    let text = io.read(input)?;
    let doc = parse_document(&text)?;
    let graph = doc.graph;
    let options = LayoutOptions {
        verify_each_split: paranoid,
        ..match kernel {
            KernelArg::Exact => LayoutOptions::exact(),
            KernelArg::Float => LayoutOptions::floating(tolerance),
        }
    };
    let (drawing, halvings, added): (ExactDrawing, _, _) = match kernel {
        KernelArg::Exact => {
            let out = draw_with(&graph, strategy, &options)?;
            (out.drawing, out.halvings, out.added_edges)
        }
        KernelArg::Float => {
            let out = draw_with::<f64>(&graph, strategy, &options)?;
            (out.drawing.to_exact(), out.halvings, out.added_edges)
        }
    };
    let drawing = drawing.as_exact_kernel();
    let document = write_document(&Document::with_drawing(graph.clone(), drawing.clone()));
    if let Some(path) = svg {
        let rendered = emit_svg(&graph, &drawing, &SvgOptions::default());
        fs::write(path, rendered).map_err(|e| io_failure(path, e))?;
    }
    if io.json {
        let embedded = is_stdio(output);
        if !embedded {
            io.write(output, &document)?;
        }
        io.report(&json!({
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "added_edges": added,
            "strategy": strategy.to_string(),
            "kernel": match kernel { KernelArg::Exact => "exact", KernelArg::Float => "float" },
            "seed": seed,
            "splits": halvings.len(),
            "max_halvings": halvings.iter().max().copied().unwrap_or(0),
            "document": if embedded { Value::String(document) } else { Value::Null },
        }));
    } else {
        io.write(output, &document)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    io: &mut Streams<'_>,
    input: &Option<PathBuf>,
    kernel: KernelArg,
    tolerance: f64,
    svg: &Option<PathBuf>,
) -> Outcome {
    let text = io.read(input)?;
    let doc = parse_document(&text)?;
    let drawing = doc
        .drawing
        .ok_or_else(|| Error::Argument("document has no coordinates section".into()))?;
    let report: VerifyReport = match kernel {
        KernelArg::Exact => verify(&doc.graph, &drawing)?,
        KernelArg::Float => verify(&doc.graph, &drawing.to_float(tolerance))?,
    };
    if let Some(path) = svg {
        let options = SvgOptions {
            highlight: report.violations.iter().flat_map(|v| v.edges()).collect(),
            ..SvgOptions::default()
        };
        let rendered = emit_svg(&doc.graph, &drawing, &options);
        fs::write(path, rendered).map_err(|e| io_failure(path, e))?;
    }
    if io.json {
        io.report(&serde_json::to_value(&report).expect("report serializes"));
    } else if report.passed {
        let _ = writeln!(io.stdout, "PASS");
    } else {
        let _ = writeln!(io.stdout, "FAIL: {} violation(s)", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(io.stdout, "  {}", serde_json::to_string(v).expect("violation serializes"));
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_triangulate(io: &mut Streams<'_>, input: &Option<PathBuf>, output: &Option<PathBuf>) -> Outcome {
    let text = io.read(input)?;
    let doc = parse_document(&text)?;
    let aug = triangulate(&doc.graph)?;
    let document = write_document(&Document::new(aug.triangulated.clone()));
    if io.json {
        if !is_stdio(output) {
            io.write(output, &document)?;
        }
        io.report(&json!({
            "added_edges": aug.added_edges,
            "document": if is_stdio(output) { Value::String(document) } else { Value::Null },
        }));
    } else {
        io.write(output, &document)?;
        io.note(&format!("added {} edge(s)", aug.added_edges.len()));
    }
    Ok(EXIT_OK)
}

fn cmd_gen(io: &mut Streams<'_>, family: &str, size: Option<usize>, seed: u64, output: &Option<PathBuf>) -> Outcome {
    let spec = GeneratorSpec::parse(family, size, seed)?;
    let graph = generate(&spec)?;
    io.write(output, &write_document(&Document::new(graph)))?;
    Ok(EXIT_OK)
}

fn cmd_stats(io: &mut Streams<'_>, input: &Option<PathBuf>) -> Outcome {
    let text = io.read(input)?;
    let g = parse_document(&text)?.graph;
    let triangulated = g.is_triangulation();
    let census = if triangulated {
        separating_triangles(&g)?
    } else {
        Vec::new()
    };
    let faces = g.face_count();
    let outer_len = g.outer_face().len();
    if io.json {
        io.report(&json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "faces": faces,
            "outer_face_length": outer_len,
            "triangulation": triangulated,
            "separating_triangles": if triangulated { json!(census) } else { Value::Null },
        }));
    } else {
        let _ = writeln!(io.stdout, "vertices: {}", g.vertex_count());
        let _ = writeln!(io.stdout, "edges: {}", g.edge_count());
        let _ = writeln!(io.stdout, "faces: {faces}");
        let _ = writeln!(io.stdout, "outer face length: {outer_len}");
        let _ = writeln!(io.stdout, "triangulation: {}", if triangulated { "yes" } else { "no" });
        if triangulated {
            let _ = writeln!(io.stdout, "separating triangles: {}", census.len());
            for t in &census {
                let [a, b, c] = t.cycle;
                let _ = writeln!(io.stdout, "  {a} {b} {c} (interior {})", t.interior.len());
            }
        } else {
            let _ = writeln!(io.stdout, "separating triangles: n/a (not a triangulation)");
        }
    }
    Ok(EXIT_OK)
}
