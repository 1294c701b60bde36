//! `mathplay`: solve games and puzzles, render figures, run estimators and
//! start the HTTP service.
//!
//! Exit status is 0 on success, 1 when the request is well formed but cannot
//! be carried out (bad input file, illegal parameters), and 2 for usage
//! errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use mathplay::figures::Figure;
use mathplay::numerics::NeedleSpec;
use mathplay_service::ops::{self, CurveParams, Format, LsystemParams, PuzzleParams, PuzzleView, RenderView};
use mathplay_service::{ApiError, ServeConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mathplay", version, about = "Recreational mathematics from the command line")]
struct Cli {
    /// Print the JSON shapes used by the HTTP API instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a game or solve a puzzle.
    #[command(subcommand)]
    Solve(Solve),
    /// Count configurations.
    Count {
        what: Countable,
        n: u64,
    },
    /// Render a figure as SVG.
    #[command(subcommand)]
    Render(Render),
    /// Run an estimator.
    #[command(subcommand)]
    Estimate(Estimate),
    /// Start the HTTP service on the loopback interface.
    Serve {
        #[arg(long, env = "PORT", default_value_t = 8080)]
        port: u16,
        /// Idle time before a game session is dropped.
        #[arg(long, default_value_t = 3600)]
        ttl_secs: u64,
        /// Append-only session log, replayed at startup.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// Perfect play for Nim.
    Nim {
        #[arg(required = true)]
        heaps: Vec<u64>,
    },
    /// Race to `target`, each turn adding one of `moves`.
    Make {
        target: u64,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        moves: Vec<u64>,
    },
    /// Every completion of a 4×4 Sudoku grid file.
    Sudoku4 { file: PathBuf },
    /// Domino tiling of a board file.
    Dominoes { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Countable {
    Squares,
    Rooks,
    Triangles,
}

#[derive(clap::Args)]
struct Output {
    /// Write the SVG here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit point lists (JSON) instead of SVG.
    #[arg(long)]
    points: bool,
}

#[derive(Subcommand)]
enum Render {
    /// Chords joining m to k·m mod n.
    Modular {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Rolling-circle curves and the other curve family figures.
    Curve {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(ops::CURVE_KINDS))]
        kind: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        big: Option<f64>,
        #[arg(long)]
        small: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Expand and draw an L-system.
    Lsystem {
        #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
        rules_file: Option<PathBuf>,
        /// koch, snowflake, sierpinski, plant, hilbert or fibonacci.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        angle: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Curve stitching between two perpendicular lines.
    Stitch {
        #[arg(short)]
        n: u32,
        #[arg(long, default_value = "perpendicular")]
        style: String,
        #[command(flatten)]
        output: Output,
    },
    /// The recursive three-branch tree.
    Tree {
        #[arg(long)]
        len: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        decrement: Option<f64>,
        #[arg(long)]
        min_len: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Skip counting around a circle of n points.
    Skip {
        #[arg(short)]
        n: u32,
        #[arg(long)]
        skip: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Estimate {
    /// Buffon's needle.
    Pi {
        #[arg(long, default_value_t = 1_000_000)]
        drops: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Api(ApiError),
    Io(PathBuf, std::io::Error),
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::Api(e)
    }
}

impl From<mathplay::Error> for Failure {
    fn from(e: mathplay::Error) -> Self {
        Failure::Api(e.into())
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Api(e) => f.write_str(&e.message),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reply serializes")
}

fn analysis_text(a: &ops::AnalysisView) -> String {
    let best = match a.optimal_moves.first() {
        Some(ops::MoveView { heap: Some(h), take }) => format!("heap {} take {take}", h + 1),
        Some(ops::MoveView { heap: None, take }) => format!("take {take}"),
        None => "none".into(),
    };
    format!("outcome: {}\ngrundy: {}\nmove: {best}", a.outcome, a.grundy)
}

fn puzzle_text(view: &PuzzleView) -> String {
    match view {
        PuzzleView::Squares { count, .. } | PuzzleView::Triangles { count, .. } => count.to_string(),
        PuzzleView::Rooks { count, .. } => count.to_string(),
        PuzzleView::Dominoes { tileable, tiling } => {
            let mut s = format!("tileable: {tileable}");
            for d in tiling.iter().flatten() {
                let [(c0, r0), (c1, r1)] = d.cells();
                s.push_str(&format!("\ndomino: {c0},{r0} {c1},{r1}"));
            }
            s
        }
        PuzzleView::Sudoku4 { count, truncated, solutions } => {
            let mut s = format!("solutions: {count}");
            if *truncated {
                s.push_str("\ntruncated: true");
            }
            for grid in solutions {
                s.push('\n');
                for row in grid {
                    s.push_str(&format!("\n{} {} {} {}", row[0], row[1], row[2], row[3]));
                }
            }
            s
        }
        other => json(other),
    }
}

fn render_output(figure: &Figure, output: &Output, as_json: bool) -> Result<String, Failure> {
    let format = if output.points { Format::Points } else { Format::Svg };
    let view = ops::render(figure, format)?;
    if let Some(path) = &output.out {
        let content = match &view {
            RenderView { svg: Some(svg), .. } => svg.clone(),
            _ => json(&view) + "\n",
        };
        std::fs::write(path, content).map_err(|e| Failure::Io(path.clone(), e))?;
        return Ok(if as_json {
            json(&serde_json::json!({ "out": path }))
        } else {
            format!("wrote: {}", path.display())
        });
    }
    Ok(match view {
        RenderView { svg: Some(svg), .. } if !as_json => svg,
        view => json(&view) + "\n",
    })
}

/// Returns everything destined for stdout, newline terminated.
fn run(cli: Cli) -> Result<String, Failure> {
    let as_json = cli.json;
    match cli.command {
        Command::Solve(Solve::Nim { heaps }) => {
            let a = ops::analyze_nim(&heaps);
            Ok(if as_json { json(&a) } else { analysis_text(&a) })
        }
        Command::Solve(Solve::Make { target, moves }) => {
            let a = ops::analyze_subtraction(target, &moves)?;
            Ok(if as_json { json(&a) } else { analysis_text(&a) })
        }
        Command::Solve(Solve::Sudoku4 { file }) => {
            let params = PuzzleParams {
                grid: Some(read(&file)?),
                ..Default::default()
            };
            let view = ops::solve_puzzle("sudoku4", &params)?;
            Ok(if as_json { json(&view) } else { puzzle_text(&view) })
        }
        Command::Solve(Solve::Dominoes { file }) => {
            let params = PuzzleParams {
                board: Some(read(&file)?),
                ..Default::default()
            };
            let view = ops::solve_puzzle("dominoes", &params)?;
            Ok(if as_json { json(&view) } else { puzzle_text(&view) })
        }
        Command::Count { what, n } => {
            let name = match what {
                Countable::Squares => "squares",
                Countable::Rooks => "rooks",
                Countable::Triangles => "triangles",
            };
            let view = ops::solve_puzzle(name, &PuzzleParams { n: Some(n), ..Default::default() })?;
            Ok(if as_json { json(&view) } else { puzzle_text(&view) })
        }
        Command::Render(r) => {
            let (figure, output) = match r {
                Render::Modular { n, k, output } => (Figure::ModularChords { n, k }, output),
                Render::Curve { kind, samples, r, big, small, output } => {
                    let p = CurveParams { kind, samples, r, big, small, ..Default::default() };
                    (ops::curve_figure(&p)?, output)
                }
                Render::Lsystem { rules_file, preset, order, angle, step, output } => {
                    let rules = rules_file.as_deref().map(read).transpose()?;
                    let p = LsystemParams { rules, preset, order, angle, step, ..Default::default() };
                    (ops::lsystem_figure(&p)?, output)
                }
                Render::Stitch { n, style, output } => {
                    let p = CurveParams { kind: "stitch".into(), n: Some(n), style: Some(style), ..Default::default() };
                    (ops::curve_figure(&p)?, output)
                }
                Render::Tree { len, theta, decrement, min_len, output } => {
                    let p = CurveParams {
                        kind: "tree".into(),
                        len: Some(len),
                        theta: Some(theta),
                        decrement,
                        min_len,
                        ..Default::default()
                    };
                    (ops::curve_figure(&p)?, output)
                }
                Render::Skip { n, skip, output } => {
                    let p = CurveParams { kind: "skip".into(), n: Some(n), skip: Some(skip), ..Default::default() };
                    (ops::curve_figure(&p)?, output)
                }
            };
            render_output(&figure, &output, as_json)
        }
        Command::Estimate(Estimate::Pi { drops, seed, length, spacing }) => {
            let v = ops::estimate_pi(&NeedleSpec { length, spacing, drops, seed })?;
            Ok(if as_json {
                json(&v)
            } else {
                format!(
                    "estimate: {}\ncrossings: {}\ndrops: {}\nseed: {}\nprng: {}",
                    v.estimate, v.crossings, v.drops, v.seed, v.prng
                )
            })
        }
        Command::Serve { port, ttl_secs, snapshot } => {
            let config = ServeConfig {
                ttl: Duration::from_secs(ttl_secs),
                snapshot,
                ..ServeConfig::loopback(port)
            };
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(PathBuf::from("runtime"), e))?;
            runtime
                .block_on(mathplay_service::serve(config))
                .map_err(|e| Failure::Io(PathBuf::from(format!("127.0.0.1:{port}")), e))?;
            Ok(String::new())
        }
    }
    .map(|out| if out.is_empty() || out.ends_with('\n') { out } else { out + "\n" })
}

/// Parses argv; every usage error ends with the synopsis and exits 2.
fn parse() -> Cli {
    use clap::error::ErrorKind;
    let err = match Cli::try_parse() {
        Ok(cli) => return cli,
        Err(e) => e,
    };
    if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        err.exit();
    }
    let text = err.render().to_string();
    eprint!("{text}");
    if !text.contains("Usage:") {
        eprintln!("\n{}", Cli::command().render_usage());
    }
    std::process::exit(2);
}

fn main() -> ExitCode {
    let cli = parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            match (&e, as_json) {
                (Failure::Api(api), true) => {
                    eprintln!("{}", json(&serde_json::json!({"code": api.code, "message": api.message})))
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn nim_text() {
        assert_eq!(analysis_text(&ops::analyze_nim(&[5, 6, 7])), "outcome: First\ngrundy: 4\nmove: heap 1 take 4");
        assert_eq!(analysis_text(&ops::analyze_nim(&[3, 3])), "outcome: Second\ngrundy: 0\nmove: none");
    }

    #[test]
    fn make_text() {
        let a = ops::analyze_subtraction(10, &[1, 2]).unwrap();
        assert_eq!(analysis_text(&a), "outcome: First\ngrundy: 1\nmove: take 1");
    }

    #[test]
    fn parse_usage() {
        assert!(Cli::try_parse_from(["mathplay", "solve", "nim"]).is_err());
        assert!(Cli::try_parse_from(["mathplay", "render", "curve", "--kind", "spiral"]).is_err());
        assert!(Cli::try_parse_from(["mathplay", "render", "lsystem", "--order", "3"]).is_err());
        assert!(Cli::try_parse_from(["mathplay", "--json", "count", "rooks", "8"]).is_ok());
        assert!(Cli::try_parse_from(["mathplay", "render", "lsystem", "--preset", "sierpinski", "--order", "2", "--angle", "-60"]).is_ok());
    }
}
