//! `fracindex` — catalog browsing, exact index computation and lab
//! experiments from the command line.

mod report;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fracindex::catalog::{builtin_names, to_document};
use fracindex::engine::{dirac_index, dolbeault_index, fractionality_report, spinc_index};
use fracindex::genera::{genus_series, GenusKind};
use fracindex::lab::{
    adjoint_index_check, composition_additivity_check, homotopy_sweep, mckean_singer_check,
    symbol_index, winding_number, HeatDoc, LabIndex, LabParams, PathDoc,
};

use report::{emit, row, Format, Row};

/// Environment variable naming the default output directory for `--out`.
const OUT_DIR_ENV: &str = "FRACINDEX_OUT_DIR";

#[derive(Parser)]
#[command(name = "fracindex", version, about = "Exact fractional-index workbench")]
struct Cli {
    /// Output format for the report table.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report to this file instead of stdout (relative paths are
    /// resolved against $FRACINDEX_OUT_DIR when set).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in manifold catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Expand the Taylor coefficients of a genus series.
    Genus {
        /// Series name: a-hat, todd or l.
        #[arg(long)]
        series: String,
        /// Expansion order (inclusive).
        #[arg(long)]
        order: usize,
    },
    /// Evaluate an index formula exactly.
    Index {
        /// Built-in manifold name or path to a manifold JSON document.
        #[arg(long)]
        manifold: String,
        /// Bundle spec: trivial[:rank], line:<p/q>, `+`-sums, or a JSON path.
        #[arg(long, default_value = "trivial")]
        bundle: String,
        /// Twist spec: lp=<p/q>,l=<p/q>,n=<N>, or a JSON path.
        #[arg(long)]
        twist: Option<String>,
        /// Formula override: dirac, spinc or dolbeault.
        #[arg(long)]
        formula: Option<String>,
    },
    /// Operator-laboratory experiments.
    Lab {
        #[command(subcommand)]
        action: LabCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List built-in model names.
    List,
    /// Show one model (full document in JSON format).
    Show {
        #[arg(long)]
        manifold: String,
    },
}

#[derive(Args, Clone)]
struct LabOpts {
    /// Mode cutoff K of the Toeplitz compression.
    #[arg(long = "K", default_value_t = 128)]
    cutoff: usize,
    /// Parametrix Fourier order M (numeric mode).
    #[arg(long = "M", default_value_t = 32)]
    order: usize,
    /// Trace window W.
    #[arg(long = "W", default_value_t = 16)]
    window: usize,
    /// Tolerance for numeric index comparisons.
    #[arg(long = "tolerance-index", default_value_t = 1e-9)]
    tolerance: f64,
}

impl LabOpts {
    fn params(&self, bandwidth: usize) -> Result<LabParams> {
        if !(self.tolerance > 0.0) {
            bail!("--tolerance-index must be strictly positive");
        }
        let mut p = LabParams {
            cutoff: self.cutoff,
            order: self.order,
            window: self.window,
        };
        if p.auto_adjust(bandwidth) {
            eprintln!(
                "fracindex: warning: window shrunk to W={} to satisfy the boundary exclusion \
                 (K={}, M={}, symbol bandwidth {})",
                p.window, p.cutoff, p.order, bandwidth
            );
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum LabCmd {
    /// Winding number of det a(theta).
    Winding {
        #[arg(long)]
        symbol: String,
    },
    /// Trace-commutator index of a symbol against its parametrix.
    Index {
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        opts: LabOpts,
    },
    /// Index along a linear homotopy of symbols.
    Homotopy {
        /// Start symbol (expression or JSON path); or use --path.
        #[arg(long, conflicts_with = "path", requires = "end")]
        start: Option<String>,
        /// End symbol.
        #[arg(long, requires = "start")]
        end: Option<String>,
        /// Path JSON document {start, end, steps}.
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[command(flatten)]
        opts: LabOpts,
    },
    /// Additivity of the index under composition.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        opts: LabOpts,
    },
    /// ind(A*) = -ind(A), reality, and the rotation family.
    Adjoint {
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        opts: LabOpts,
    },
    /// McKean-Singer supertrace experiment from a heat JSON document.
    Heat {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated positive t values overriding the document grid.
        #[arg(long = "t-grid")]
        t_grid: Option<String>,
    },
}

fn index_cell(ind: &LabIndex) -> Value {
    Value::String(ind.describe())
}

fn bound_cell(ind: &LabIndex) -> Value {
    match ind {
        LabIndex::Exact(_) => Value::String("0".into()),
        LabIndex::Numeric { bound, .. } => Value::String(format!("{bound:.3e}")),
    }
}

fn run(cli: &Cli) -> Result<Vec<Row>> {
    match &cli.command {
        Command::Catalog { action } => match action {
            CatalogCmd::List => Ok(builtin_names()
                .into_iter()
                .map(|(name, description)| {
                    row(&[("name", json!(name)), ("description", json!(description))])
                })
                .collect()),
            CatalogCmd::Show { manifold } => {
                let m = resolve::manifold(manifold)?;
                let doc = to_document(&m);
                Ok(vec![row(&[
                    ("label", json!(m.label())),
                    ("real_dimension", json!(m.real_dimension())),
                    ("complex", json!(m.is_complex())),
                    ("c1_parity_even", json!(m.c1_parity_even())),
                    ("annotations", serde_json::to_value(m.annotations())?),
                    ("document", serde_json::to_value(&doc)?),
                ])])
            }
        },
        Command::Genus { series, order } => {
            let kind = GenusKind::from_str(series)?;
            let s = genus_series(kind, *order);
            let coeffs: Vec<Value> = s
                .coefficients
                .iter()
                .map(|c| json!(fracindex::format_rational(c)))
                .collect();
            Ok(vec![row(&[
                ("series", json!(kind.name())),
                ("order", json!(order)),
                ("coefficients", Value::Array(coeffs)),
            ])])
        }
        Command::Index {
            manifold,
            bundle,
            twist,
            formula,
        } => {
            let m = resolve::manifold(manifold)?;
            let formula = formula.as_deref().unwrap_or(if twist.is_some() {
                "spinc"
            } else {
                "dirac"
            });
            let report = match formula {
                "dirac" => {
                    let e = resolve::bundle(bundle, &m)?;
                    dirac_index(&m, &e)?
                }
                "spinc" => {
                    let e = resolve::bundle(bundle, &m)?;
                    let t = resolve::twist(twist.as_deref(), &m)?;
                    spinc_index(&m, &e, &t)?
                }
                "dolbeault" => dolbeault_index(&m)?,
                other => bail!("unknown formula `{other}` (expected dirac, spinc, dolbeault)"),
            };
            Ok(fractionality_report(&[report])
                .into_iter()
                .map(|r| {
                    row(&[
                        ("manifold", json!(m.label())),
                        ("formula", json!(r.formula)),
                        ("value", json!(r.value)),
                        ("denominator", json!(r.denominator)),
                        ("integer", json!(r.is_integer)),
                        ("inputs", json!(r.digest)),
                    ])
                })
                .collect())
        }
        Command::Lab { action } => run_lab(action),
    }
}

fn run_lab(action: &LabCmd) -> Result<Vec<Row>> {
    match action {
        LabCmd::Winding { symbol } => {
            let s = resolve::symbol(symbol)?;
            let w = winding_number(&s)?;
            Ok(vec![row(&[
                ("symbol", json!(symbol)),
                ("winding", json!(w)),
            ])])
        }
        LabCmd::Index { symbol, opts } => {
            let s = resolve::symbol(symbol)?;
            let params = opts.params(s.bandwidth())?;
            let ind = symbol_index(&s, &params)?;
            if ind.bound() > opts.tolerance {
                eprintln!(
                    "fracindex: warning: truncation bound {:.3e} exceeds --tolerance-index {:.3e}; \
                     raise K/M",
                    ind.bound(),
                    opts.tolerance
                );
            }
            Ok(vec![row(&[
                ("symbol", json!(symbol)),
                ("index", index_cell(&ind)),
                ("bound", bound_cell(&ind)),
                ("winding", json!(winding_number(&s)?)),
            ])])
        }
        LabCmd::Homotopy {
            start,
            end,
            path,
            steps,
            opts,
        } => {
            let (a, b, steps) = match (path, start, end) {
                (Some(p), _, _) => {
                    let json = std::fs::read_to_string(p)
                        .with_context(|| format!("reading path file `{}`", p.display()))?;
                    let doc: PathDoc = serde_json::from_str(&json)
                        .with_context(|| format!("parsing path file `{}`", p.display()))?;
                    (doc.start.to_symbol()?, doc.end.to_symbol()?, doc.steps)
                }
                (None, Some(s), Some(e)) => {
                    (resolve::symbol(s)?, resolve::symbol(e)?, *steps)
                }
                _ => bail!("provide either --path or both --start and --end"),
            };
            let params = opts.params(a.bandwidth().max(b.bandwidth()))?;
            let sweep = homotopy_sweep(&a, &b, steps, &params)?;
            Ok(sweep
                .iter()
                .map(|(t, ind)| {
                    row(&[
                        ("t", json!(format!("{t:.6}"))),
                        ("index", index_cell(ind)),
                        ("bound", bound_cell(ind)),
                    ])
                })
                .collect())
        }
        LabCmd::Compose { left, right, opts } => {
            let a = resolve::symbol(left)?;
            let b = resolve::symbol(right)?;
            let params = opts.params(a.bandwidth() + b.bandwidth())?;
            let (lhs, rhs) = composition_additivity_check(&a, &b, &params)?;
            let diff = (lhs.to_c64() - rhs.to_c64()).norm();
            let pass = diff <= opts.tolerance + lhs.bound() + rhs.bound();
            Ok(vec![row(&[
                ("left", json!(left)),
                ("right", json!(right)),
                ("index_of_product", index_cell(&lhs)),
                ("sum_of_indices", index_cell(&rhs)),
                ("difference", json!(format!("{diff:.3e}"))),
                ("pass", json!(pass)),
            ])])
        }
        LabCmd::Adjoint { symbol, opts } => {
            let s = resolve::symbol(symbol)?;
            // the rotation family doubles the block size but not the bandwidth
            let params = opts.params(s.bandwidth())?;
            let report = adjoint_index_check(&s, &params)?;
            let sum = report.index.to_c64() + report.index_adjoint.to_c64();
            let antisym_pass = sum.norm()
                <= opts.tolerance + report.index.bound() + report.index_adjoint.bound();
            let mut rows = vec![
                row(&[
                    ("item", json!("index")),
                    ("value", index_cell(&report.index)),
                    ("bound", bound_cell(&report.index)),
                    ("pass", json!(report.index.to_c64().im.abs() <= opts.tolerance)),
                ]),
                row(&[
                    ("item", json!("index_adjoint")),
                    ("value", index_cell(&report.index_adjoint)),
                    ("bound", bound_cell(&report.index_adjoint)),
                    ("pass", json!(antisym_pass)),
                ]),
            ];
            for (phi, ind) in &report.rotation_sweep {
                rows.push(row(&[
                    ("item", json!(format!("rotation@{phi:.6}"))),
                    ("value", index_cell(ind)),
                    ("bound", bound_cell(ind)),
                    ("pass", json!(ind.to_c64().norm() <= opts.tolerance + ind.bound())),
                ]));
            }
            Ok(rows)
        }
        LabCmd::Heat { input, t_grid } => {
            let json = std::fs::read_to_string(input)
                .with_context(|| format!("reading heat file `{}`", input.display()))?;
            let doc: HeatDoc = serde_json::from_str(&json)
                .with_context(|| format!("parsing heat file `{}`", input.display()))?;
            let grid: Vec<f64> = match t_grid {
                Some(spec) => spec
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().context("t grid entry"))
                    .collect::<Result<_>>()?,
                None => doc.t_grid.clone(),
            };
            if grid.is_empty() || grid.iter().any(|&t| !(t > 0.0)) {
                bail!("t grid must be nonempty with strictly positive entries");
            }
            let op = doc.to_operator()?;
            let r = mckean_singer_check(&op, &grid);
            Ok(r
                .supertraces
                .iter()
                .map(|(t, st)| {
                    row(&[
                        ("t", json!(format!("{t:.6}"))),
                        ("supertrace", json!(format!("{st:.12}"))),
                        ("kernel_difference", json!(r.kernel_difference)),
                        ("dim_ker", json!(r.dim_ker_d_plus)),
                        ("dim_coker", json!(r.dim_ker_d_plus_adjoint)),
                    ])
                })
                .collect())
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os(OUT_DIR_ENV) {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .with_context(|| format!("creating `{}`", parent.display()))?;
                }
            }
            std::fs::write(&resolved, text)
                .with_context(|| format!("writing `{}`", resolved.display()))?;
            eprintln!("fracindex: wrote {}", resolved.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rows) => {
            let text = emit(&rows, cli.format);
            match write_output(&cli, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("fracindex: error: {e:#}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("fracindex: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
