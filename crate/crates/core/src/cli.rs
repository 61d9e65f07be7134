//! Command-line surface. `run` returns the process exit code:
//! 0 optimal / success, 1 not optimal, 2 usage error, 3 I/O or validation
//! failure.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::characterize::{check_optimal, CharacterizationReport, density_audit, FaceMode, OptimalClass};
use crate::drawing::Drawing;
use crate::generate::{dodecahedron, generate_optimal, theta_hexangulation, theta_pentagulation, GenerateOptions};
use crate::io::{self, DrawingDocument, IoError};
use crate::visibility::{extend_to_bar1, verify_bar1, AbstractGraph};
use crate::PlaneMultigraph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_OPTIMAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kplanar", version, about = "Optimal 2- and 3-planar drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    #[value(name = "2opt")]
    TwoOpt,
    #[value(name = "3opt")]
    ThreeOpt,
}

impl From<ClassArg> for OptimalClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::TwoOpt => OptimalClass::TwoPlanar,
            ClassArg::ThreeOpt => OptimalClass::ThreePlanar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Svg,
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an optimal drawing as a JSON document.
    Generate {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// theta:P, dodecahedron, or file:PATH (a crossing-free drawing)
        #[arg(long)]
        skeleton: String,
        /// Middle chord left out of every hexagonal face (0, 1 or 2).
        #[arg(long, default_value_t = 0)]
        missing_middle: usize,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Check whether drawings are optimal; exit 0 only if all are.
    Verify {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        /// Emit the reports as JSON.
        #[arg(long)]
        json: bool,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Print structural statistics and diagnostics.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Bar 1-visibility representation of a simple optimal 2-planar drawing.
    Barvis {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        /// Also write the plain-text table here.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Export a drawing as SVG, DOT, or canonical JSON.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
}

struct Failure(String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure(e.to_string())
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn execute(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Generate {
            class,
            skeleton,
            missing_middle,
            output,
        } => {
            let class = OptimalClass::from(class);
            let sk = match parse_skeleton(&skeleton, class) {
                Ok(sk) => sk,
                Err(SkeletonSpecError::Usage(msg)) => {
                    eprintln!("error: {msg}");
                    return Ok(EXIT_USAGE);
                }
                Err(SkeletonSpecError::Failed(msg)) => return Err(Failure(msg)),
            };
            let opts = GenerateOptions {
                default_missing_middle: missing_middle,
                ..Default::default()
            };
            let d = generate_optimal(class, sk, &opts).map_err(|e| Failure(e.to_string()))?;
            let doc = DrawingDocument::from_drawing(&d)
                .with_metadata("class", class.to_string())
                .with_metadata("skeleton", skeleton);
            write_output(&output, &doc.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            class,
            mode,
            json,
            inputs,
        } => {
            let mode = match mode {
                ModeArg::Strict => FaceMode::Strict,
                ModeArg::Count => FaceMode::Count,
            };
            let mut all_optimal = true;
            let mut out = String::new();
            let mut reports = Vec::new();
            for input in &inputs {
                let d = read_drawing(input)?;
                let (r, code) = verify_drawing(&d, class.into(), mode);
                all_optimal &= code == EXIT_OK;
                if json {
                    reports.push(serde_json::json!({ "input": input.display().to_string(), "report": r }));
                } else {
                    if inputs.len() > 1 {
                        out.push_str(&format!("== {}\n", input.display()));
                    }
                    out.push_str(&r.to_string());
                }
            }
            if json {
                out = serde_json::to_string_pretty(&reports).expect("reports serialize");
                out.push('\n');
            }
            print_stdout(&out)?;
            Ok(if all_optimal { EXIT_OK } else { EXIT_NOT_OPTIMAL })
        }
        Command::Analyze { inputs } => {
            let mut out = String::new();
            for input in &inputs {
                let d = read_drawing(input)?;
                if inputs.len() > 1 {
                    out.push_str(&format!("== {}\n", input.display()));
                }
                out.push_str(&analyze(&d));
            }
            print_stdout(&out)?;
            Ok(EXIT_OK)
        }
        Command::Barvis { input, output, table } => {
            let d = read_drawing(&input)?;
            let rep = extend_to_bar1(&d).map_err(|e| Failure(e.to_string()))?;
            let violations = verify_bar1(&rep, &AbstractGraph::of_drawing(&d));
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(Failure(format!("representation failed verification: {}", list.join(", "))));
            }
            write_output(&output, &io::bar_visibility_svg(&rep))?;
            if let Some(t) = table {
                write_output(&t, &io::bar_visibility_table(&rep))?;
            }
            Ok(EXIT_OK)
        }
        Command::Export { input, format, output } => {
            let d = read_drawing(&input)?;
            let text = match format {
                ExportFormat::Svg => io::to_svg(&d).map_err(|e| Failure(e.to_string()))?,
                ExportFormat::Dot => io::to_dot(&d),
                ExportFormat::Json => DrawingDocument::from_drawing(&d).to_json(),
            };
            write_output(&output, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Report and exit code of `verify` for one drawing.
pub fn verify_drawing(d: &Drawing, class: OptimalClass, mode: FaceMode) -> (CharacterizationReport, i32) {
    let r = check_optimal(d, class, mode);
    let code = if r.is_optimal() { EXIT_OK } else { EXIT_NOT_OPTIMAL };
    (r, code)
}

/// Report printed by `analyze`.
pub fn analyze(d: &Drawing) -> String {
    let simple = d.is_simple();
    let mut s = String::new();
    let mut line = |k: &str, v: String| {
        s.push_str(k);
        s.push_str(": ");
        s.push_str(&v);
        s.push('\n');
    };
    line("n", d.num_vertices().to_string());
    line("m", d.num_edges().to_string());
    line("crossings", d.num_crossings().to_string());
    line("simple", simple.to_string());
    line("slack k=2", density_audit(d, 2, false).slack.to_string());
    line("slack k=3", density_audit(d, 3, false).slack.to_string());
    line("slack k=3 simple", density_audit(d, 3, true).slack.to_string());
    let hist: Vec<String> = d
        .crossing_histogram()
        .iter()
        .map(|(c, n)| format!("{c}:{n}"))
        .collect();
    line("crossing histogram", format!("{{{}}}", hist.join(", ")));
    line("max crossings per edge", d.max_crossings_per_edge().to_string());
    line("quasi-planar", d.is_quasi_planar().to_string());
    line("fan-planar", d.is_fan_planar().to_string());
    line("double crossings", d.double_crossing_pairs().len().to_string());
    line("odd true-planar cycle", d.odd_true_planar_cycle().is_some().to_string());
    line("empty true-planar triangle", d.empty_true_planar_triangle().is_some().to_string());
    line("homotopic witnesses", d.homotopic_witnesses().len().to_string());
    s
}

enum SkeletonSpecError {
    Usage(String),
    Failed(String),
}

fn parse_skeleton(spec: &str, class: OptimalClass) -> Result<PlaneMultigraph, SkeletonSpecError> {
    if spec == "dodecahedron" {
        return Ok(dodecahedron());
    }
    if let Some(p) = spec.strip_prefix("theta:") {
        let p: usize = p
            .parse()
            .map_err(|_| SkeletonSpecError::Usage(format!("bad path count in '{spec}'")))?;
        let sk = match class {
            OptimalClass::TwoPlanar => theta_pentagulation(p),
            OptimalClass::ThreePlanar => theta_hexangulation(p),
        };
        return sk.map_err(|e| SkeletonSpecError::Usage(e.to_string()));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let d = read_drawing(Path::new(path)).map_err(|Failure(m)| SkeletonSpecError::Failed(m))?;
        if d.num_crossings() > 0 {
            return Err(SkeletonSpecError::Failed(format!("skeleton {path} has crossings")));
        }
        return Ok(d.planarization().clone());
    }
    Err(SkeletonSpecError::Usage(format!(
        "unknown skeleton '{spec}' (expected theta:P, dodecahedron or file:PATH)"
    )))
}

fn read_drawing(path: &Path) -> Result<Drawing, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure(format!("stdin: {e}")))?;
        s
    } else {
        io::read_text(path)?
    };
    io::parse_drawing(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print_stdout(text)
    } else {
        io::write_text(path, text).map_err(Failure::from)
    }
}

fn print_stdout(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure(format!("stdout: {e}")))
}
