//! `knotkit`: exact-arithmetic knot invariants, rational-surgery
//! bookkeeping, and slice obstructions from the command line.
//!
//! Exit codes: `0` — success (and, for verdict commands, a passing
//! verdict); `1` — a verdict command found a failure (a report row failed,
//! a factorization does not exist, a reduction got stuck); `2` — unusable
//! input or bad usage.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;

use knotkit::annulus::{annulus_twist_family, boundary_instructions, rho, AnnulusModSpec};
use knotkit::laurent::{is_fox_milnor, LaurentPoly};
use knotkit::seifert::{Metabolizer, RawSeifertMatrix, SeifertMatrix};
use knotkit::surgery::{reduce_figure6, DiagramInput, DiagramSnapshot, Reduction};
use knotkit_cli::catalog::Catalog;
use knotkit_cli::verify::{verify_all, SweepRange, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "knotkit",
    version,
    about = "Exact-arithmetic knot invariants, surgery calculus, and slice obstructions",
    propagate_version = true
)]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial det(M - tM^T) of a Seifert matrix, canonical.
    Alex {
        /// Seifert matrix: inline JSON or a file path.
        input: String,
    },
    /// Test whether a polynomial factors as f(t)·f(1/t) up to units.
    FoxMilnor {
        /// Polynomial: inline JSON or a file path.
        input: String,
    },
    /// Signature of the symmetrized Seifert form.
    Signature {
        /// Seifert matrix: inline JSON or a file path.
        input: String,
    },
    /// Arf invariant of the knot carried by a Seifert matrix.
    Arf {
        /// Seifert matrix: inline JSON or a file path.
        input: String,
    },
    /// Enumerate metabolizers of the Seifert pairing.
    Metab {
        /// Seifert matrix: inline JSON or a file path.
        input: String,
        /// Coordinate bound for basis vectors of candidate summands.
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        bound: i64,
    },
    /// Operations on rational surgery diagrams.
    #[command(subcommand)]
    Surgery(SurgeryCommand),
    /// The annulus-modification calculus.
    #[command(subcommand)]
    Annulus(AnnulusCommand),
    /// Show catalog entries (the bundled catalog by default).
    Catalog {
        /// Entry name; omit to list every entry.
        name: Option<String>,
        /// Alternative catalog file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Recompute and check every number the catalog claims.
    Verify {
        /// Alternative catalog file.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Coordinate bound for the metabolizer searches.
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        bound: i64,
        /// Inclusive parameter range MIN..MAX for the family sweeps.
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        sweep: String,
    },
}

#[derive(Subcommand)]
enum SurgeryCommand {
    /// Reduce a diagram to the empty diagram by twists and ∞-deletions.
    Reduce {
        /// Diagram: inline JSON or a file path. Alternative to --n/--l.
        input: Option<String>,
        /// Twist-family parameter n: boundary coefficients (nl±1)/n.
        #[arg(long, requires = "l", conflicts_with = "input", allow_negative_numbers = true)]
        n: Option<i64>,
        /// Twist-family parameter l: the number of clasp twists.
        #[arg(long, requires = "n", conflicts_with = "input", allow_negative_numbers = true)]
        l: Option<i64>,
    },
    /// Order of the first homology of the surgered manifold.
    H1 {
        /// Diagram: inline JSON or a file path.
        input: String,
    },
}

#[derive(Subcommand)]
enum AnnulusCommand {
    /// Surgery coefficients the n-twist modification puts on the annulus
    /// boundary curves.
    Instructions {
        /// Twisting parameter of the modification.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Framing parameter of the annulus.
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
    },
    /// The n-fold annulus twist on a presentation of sign ε.
    Twist {
        /// Presentation sign, +1 or -1.
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i64,
        /// Number of twists.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Alex { input } => {
            let m = parse_matrix(&read_payload(&input)?)?;
            let delta = m.alexander();
            emit(json, &delta, || format!("Δ(t) = {delta}"))?;
            Ok(0)
        }
        Command::FoxMilnor { input } => {
            let p = parse_poly(&read_payload(&input)?)?;
            let report = is_fox_milnor(&p).map_err(|e| anyhow!("cannot test {p}: {e}"))?;
            emit(json, &report, || match (&report.witness, &report.reason) {
                (Some(w), _) => format!("passes: {p} ≐ f(t)·f(1/t) with f = {w}"),
                (None, Some(reason)) => format!("fails: {reason}"),
                (None, None) => "fails".into(),
            })?;
            Ok(if report.passes { 0 } else { 1 })
        }
        Command::Signature { input } => {
            let m = parse_matrix(&read_payload(&input)?)?;
            let sigma = m.signature();
            #[derive(Serialize)]
            struct Out {
                signature: i64,
            }
            emit(json, &Out { signature: sigma }, || format!("signature = {sigma}"))?;
            Ok(0)
        }
        Command::Arf { input } => {
            let m = parse_matrix(&read_payload(&input)?)?;
            let arf = m.arf();
            #[derive(Serialize)]
            struct Out {
                arf: u8,
            }
            emit(json, &Out { arf }, || format!("arf = {arf}"))?;
            Ok(0)
        }
        Command::Metab { input, bound } => {
            let m = parse_matrix(&read_payload(&input)?)?;
            let metabolizers = m
                .metabolizer_search(bound)
                .map_err(|e| anyhow!("metabolizer search failed: {e}"))?;
            #[derive(Serialize)]
            struct Out {
                bound: i64,
                metabolizers: Vec<Metabolizer>,
            }
            let human = || {
                if metabolizers.is_empty() {
                    format!("no metabolizers with coordinates in [-{bound}, {bound}]")
                } else {
                    metabolizers
                        .iter()
                        .map(Metabolizer::to_string)
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            };
            emit(json, &Out { bound, metabolizers: metabolizers.clone() }, human)?;
            Ok(0)
        }
        Command::Surgery(cmd) => run_surgery(cmd, json),
        Command::Annulus(cmd) => run_annulus(cmd, json),
        Command::Catalog { name, catalog } => {
            let catalog = load_catalog(catalog.as_deref())?;
            match name {
                Some(name) => {
                    let entry = catalog
                        .lookup(&name)
                        .ok_or_else(|| anyhow!("no catalog entry named {name:?}"))?;
                    emit(json, entry, || entry.to_string())?;
                }
                None => {
                    let listing = || {
                        catalog
                            .entries
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join("\n\n")
                    };
                    emit(json, &catalog, listing)?;
                }
            }
            Ok(0)
        }
        Command::Verify { catalog, bound, sweep } => {
            let catalog = load_catalog(catalog.as_deref())?;
            let sweep = SweepRange::parse(&sweep).map_err(|e| anyhow!(e))?;
            let report = verify_all(&catalog, &VerifyOptions { bound, sweep });
            emit(json, &report, || report.render_text())?;
            Ok(if report.overall_pass { 0 } else { 1 })
        }
    }
}

fn run_surgery(cmd: SurgeryCommand, json: bool) -> Result<u8> {
    match cmd {
        SurgeryCommand::Reduce { input, n, l } => {
            let reduction: Reduction = match (input, n, l) {
                (None, Some(n), Some(l)) => reduce_figure6(n, l)
                    .map_err(|e| anyhow!("cannot build the (n = {n}, l = {l}) family: {e}"))?,
                (Some(input), None, None) => {
                    let diagram = parse_diagram(&read_payload(&input)?)?;
                    match diagram.schema() {
                        Some(schema) => schema.reduce(),
                        None => bail!(
                            "reduction needs the through-strand data of a schema \
                             diagram; abstract linking data only supports `surgery h1`"
                        ),
                    }
                }
                _ => bail!("pass a diagram, or --n and --l for the built-in family"),
            };
            emit(json, &reduction, || render_reduction(&reduction))?;
            Ok(if reduction.is_s3 { 0 } else { 1 })
        }
        SurgeryCommand::H1 { input } => {
            let diagram = parse_diagram(&read_payload(&input)?)?;
            let order = diagram
                .to_abstract()
                .and_then(|d| d.h1_order())
                .map_err(|e| anyhow!("cannot compute |H1|: {e}"))?;
            #[derive(Serialize)]
            struct Out {
                h1_order: String,
            }
            let human = || {
                if order.is_zero() {
                    "|H1| = 0 (infinite first homology)".to_string()
                } else {
                    format!("|H1| = {order}")
                }
            };
            emit(json, &Out { h1_order: order.to_string() }, human)?;
            Ok(0)
        }
    }
}

fn run_annulus(cmd: AnnulusCommand, json: bool) -> Result<u8> {
    #[derive(Serialize)]
    struct Out {
        eta1: String,
        eta2: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        lk: Option<i64>,
        rho: [[i64; 2]; 2],
    }
    let (out, human) = match cmd {
        AnnulusCommand::Instructions { n, l } => {
            let spec = AnnulusModSpec { l, n };
            let b = boundary_instructions(spec)
                .map_err(|e| anyhow!("no modification for (n = {n}, l = {l}): {e}"))?;
            let auto = rho(spec).map_err(|e| anyhow!("no regluing for (n = {n}, l = {l}): {e}"))?;
            let human = format!(
                "surgery instructions for the {n}-twist modification (l = {l}):\n\
                 eta1 ((nl+1)/n): {}\neta2 ((nl-1)/n): {}\nregluing matrix: {:?}",
                b.eta1,
                b.eta2,
                auto.matrix()
            );
            (
                Out {
                    eta1: b.eta1.to_string(),
                    eta2: b.eta2.to_string(),
                    lk: None,
                    rho: auto.matrix(),
                },
                human,
            )
        }
        AnnulusCommand::Twist { epsilon, n } => {
            let fam = annulus_twist_family(epsilon, n)
                .map_err(|e| anyhow!("no twist family for (ε = {epsilon}, n = {n}): {e}"))?;
            let spec = AnnulusModSpec { l: -epsilon, n };
            let auto =
                rho(spec).map_err(|e| anyhow!("no regluing for (ε = {epsilon}, n = {n}): {e}"))?;
            let human = format!(
                "{n}-fold annulus twist on a presentation of sign {epsilon:+}:\n\
                 eta1: {}\neta2: {}\nlinking number of the boundary curves: {}\n\
                 regluing matrix: {:?}",
                fam.eta1,
                fam.eta2,
                fam.lk,
                auto.matrix()
            );
            (
                Out {
                    eta1: fam.eta1.to_string(),
                    eta2: fam.eta2.to_string(),
                    lk: Some(fam.lk),
                    rho: auto.matrix(),
                },
                human,
            )
        }
    };
    emit(json, &out, || human)?;
    Ok(0)
}

/// Payloads arrive inline (anything that starts like JSON) or as a path.
fn read_payload(input: &str) -> Result<String> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    std::fs::read_to_string(input).with_context(|| format!("cannot read input file {input}"))
}

/// Accepts the `{"genus", "entries"}` wire form or a bare row-major array.
fn parse_matrix(text: &str) -> Result<SeifertMatrix> {
    let raw = match serde_json::from_str::<RawSeifertMatrix>(text) {
        Ok(raw) => raw,
        Err(structured) => match serde_json::from_str::<Vec<Vec<i64>>>(text) {
            Ok(entries) => RawSeifertMatrix { genus: entries.len() / 2, entries },
            Err(_) => bail!(
                "matrix must be {{\"genus\": g, \"entries\": [[..]]}} or a plain \
                 integer matrix: {structured}"
            ),
        },
    };
    SeifertMatrix::try_from(raw).map_err(|e| anyhow!("invalid Seifert matrix: {e}"))
}

/// Accepts the `{"min_exp", "coeffs"}` wire form or a bare coefficient
/// array read from exponent 0 upward.
fn parse_poly(text: &str) -> Result<LaurentPoly> {
    match serde_json::from_str::<LaurentPoly>(text) {
        Ok(p) => Ok(p),
        Err(structured) => match serde_json::from_str::<Vec<i64>>(text) {
            Ok(coeffs) => Ok(LaurentPoly::from_coeffs(0, &coeffs)),
            Err(_) => bail!(
                "polynomial must be {{\"min_exp\": k, \"coeffs\": [..]}} or a plain \
                 coefficient array: {structured}"
            ),
        },
    }
}

fn parse_diagram(text: &str) -> Result<DiagramInput> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!(
            "malformed diagram (expected {{\"schema\": ..}} or \
             {{\"components\": .., \"linking\": ..}}): {e}"
        )
    })
}

fn load_catalog(path: Option<&std::path::Path>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p),
        None => Ok(Catalog::bundled()),
    }
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value).context("cannot encode output")?);
    } else {
        println!("{}", human());
    }
    Ok(())
}

fn render_snapshot(s: &DiagramSnapshot) -> String {
    let mut parts: Vec<String> = Vec::new();
    if let Some(b) = s.twist_box {
        parts.push(format!("box {b:+}"));
    }
    for c in &s.components {
        parts.push(format!("{} = {}", c.label, c.coefficient));
    }
    if parts.is_empty() {
        "(empty diagram)".into()
    } else {
        parts.join(", ")
    }
}

fn render_reduction(r: &Reduction) -> String {
    let mut out = String::new();
    out.push_str(&format!("start: {}\n", render_snapshot(&r.initial)));
    for (i, step) in r.trace.iter().enumerate() {
        out.push_str(&format!("{:>3}. {}", i + 1, step.action));
        if let Some(note) = &step.note {
            out.push_str(&format!(" [{note}]"));
        }
        out.push_str(&format!("\n     -> {}\n", render_snapshot(&step.after)));
    }
    out.push_str(if r.is_s3 {
        "result: empty diagram — the surgered manifold is the 3-sphere"
    } else {
        "result: reduction stuck — no conclusion"
    });
    out
}
