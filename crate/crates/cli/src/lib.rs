//! Argument parsing and dispatch for the `entrocone` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use entrocone::analysis::{
    bc_marginal_cone, full_marginal_outer_cone, observed_outer_cone, verify_line_cone, ConeReport,
    Engine, PipelineOptions, Verdict, DEFAULT_MAX_NODES, DEFAULT_TOLERANCE,
};
use entrocone::causal_model::resolve_structure;
use entrocone::distributions::{bc_functional, entropy_vector, load_model, BcTables};
use entrocone::error::Error;
use entrocone::polyhedra::io::ConeFile;
use entrocone::polyhedra::{enumerate_rays, facets_from_rays};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Fm,
    Dd,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Fm => Engine::Fm,
            EngineArg::Dd => Engine::Dd,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "entrocone", version, about = "Entropy cones of classical causal structures")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Projection strategy
    #[arg(long, value_enum, default_value = "dd", global = true)]
    pub engine: EngineArg,
    /// Tolerance for entropy comparisons, in bits
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, global = true)]
    pub tolerance: f64,
    /// Largest total node count accepted by `marginalize`
    #[arg(long, default_value_t = DEFAULT_MAX_NODES, global = true)]
    pub max_nodes: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shannon cone of the observed nodes cut by observed independences
    Outer { structure: String },
    /// Check that every ray of the line cone `pn:<n>` is achieved
    Verify { line: String },
    /// Project the full causal cone onto the observed coordinates
    Marginalize { structure: String },
    /// Post-selected marginal cone of the doubled line with k = 3 or 4
    BcCone { k: usize },
    /// Evaluate the chained conditional-entropy functional on four tables
    BcEval { tables: PathBuf },
    /// Entropy vector of a compiled model
    Entropy {
        model: PathBuf,
        /// Restrict to the observed nodes
        #[arg(long)]
        observed: bool,
    },
    /// Extremal rays of an H-represented cone file
    Rays { cone: PathBuf },
    /// Facets of a V-represented cone file
    Facets { cone: PathBuf },
}

/// Rendered output and process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

pub fn render_report(report: &ConeReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    }
}

/// Bits with integral values shown as integers.
pub fn format_bits(v: f64, tolerance: f64) -> String {
    let r = v.round();
    if (v - r).abs() <= tolerance {
        format!("{}", r as i64)
    } else {
        let s = format!("{v:.12}");
        s.trim_end_matches('0').to_string()
    }
}

fn parse_line_selector(s: &str) -> Result<usize, Error> {
    s.strip_prefix("pn:")
        .and_then(|n| n.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("`verify` expects pn:<n> with n >= 1, got `{s}`")))
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn cone_output(file: ConeFile, format: Format) -> String {
    match format {
        Format::Text => file.to_text(),
        Format::Json => file.to_json() + "\n",
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let opts = PipelineOptions {
        engine: cli.engine.into(),
        max_nodes: cli.max_nodes,
        tolerance: cli.tolerance,
    };
    match &cli.command {
        Command::Outer { structure } => {
            let g = resolve_structure(structure)?;
            Ok(Outcome::ok(render_report(&observed_outer_cone(&g)?, cli.format)))
        }
        Command::Verify { line } => {
            let n = parse_line_selector(line)?;
            let report = verify_line_cone(n, cli.tolerance)?;
            let status = if report.verdict == Some(Verdict::Tight) { 0 } else { 2 };
            Ok(Outcome {
                output: render_report(&report, cli.format),
                status,
            })
        }
        Command::Marginalize { structure } => {
            let g = resolve_structure(structure)?;
            Ok(Outcome::ok(render_report(&full_marginal_outer_cone(&g, &opts)?, cli.format)))
        }
        Command::BcCone { k } => Ok(Outcome::ok(render_report(&bc_marginal_cone(*k, opts.engine)?, cli.format))),
        Command::BcEval { tables } => {
            let t = BcTables::parse(&read(tables)?)?;
            let value = bc_functional(&t)?;
            let output = match cli.format {
                Format::Text => format!("{}\n", format_bits(value, cli.tolerance)),
                Format::Json => format!("{}\n", json!({ "value": value })),
            };
            Ok(Outcome::ok(output))
        }
        Command::Entropy { model, observed } => {
            let m = load_model(model)?;
            let joint = if *observed { m.observed_joint() } else { m.compile() };
            let ev = entropy_vector(&joint);
            let labels = ev.index.labels();
            let output = match cli.format {
                Format::Text => {
                    let mut s = String::new();
                    for (l, v) in labels.iter().zip(&ev.values) {
                        let _ = writeln!(s, "{l} = {}", format_bits(*v, cli.tolerance));
                    }
                    s
                }
                Format::Json => {
                    let out = json!({ "coordinates": labels, "values": ev.values });
                    serde_json::to_string_pretty(&out).expect("vector serializes") + "\n"
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::Rays { cone } => {
            let file = ConeFile::parse(&read(cone)?)?;
            let h = file.hrep()?.ok_or_else(|| Error::Format {
                field: "inequalities".into(),
                message: "cone file has no H-representation".into(),
            })?;
            let v = enumerate_rays(&h);
            Ok(Outcome::ok(cone_output(ConeFile::from_vrep(&v, file.coordinates), cli.format)))
        }
        Command::Facets { cone } => {
            let file = ConeFile::parse(&read(cone)?)?;
            let v = file.vrep()?.ok_or_else(|| Error::Format {
                field: "rays".into(),
                message: "cone file has no V-representation".into(),
            })?;
            let h = facets_from_rays(&v);
            Ok(Outcome::ok(cone_output(ConeFile::from_hrep(&h, file.coordinates), cli.format)))
        }
    }
}

/// Caps the global thread pool from `ENTROCONE_THREADS`.
pub fn configure_threads() -> Result<(), Error> {
    let Ok(value) = std::env::var("ENTROCONE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("ENTROCONE_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Parses `argv` and runs it. Usage errors and failures map to status 1.
pub fn run<I, T>(argv: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                (Outcome::ok(text), String::new())
            } else {
                (Outcome { output: String::new(), status }, text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => (out, String::new()),
        Err(e) => (
            Outcome {
                output: String::new(),
                status: 1,
            },
            format!("error: {e}\n"),
        ),
    }
}
