//! Command-line driver for the ordinal-evidence library.
//!
//! Subcommands: `fuse` (the full pipeline), `combine-classic` (pairwise
//! rule of combination, left to right), `negate`, and `mrbf` (one
//! feature expansion). Exit codes: 0 success, 1 input error, 2
//! numeric/degenerate error, 3 internal error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ordinal_evidence::config::{
    CoefficientMode, Configuration, KMode, OrderScale, OutputFormat, WeightAxis,
};
use ordinal_evidence::document::parse_evidence_document;
use ordinal_evidence::frame::Frame;
use ordinal_evidence::fusion::{pipeline, BpaDocument};
use ordinal_evidence::mass::MassFunction;
use ordinal_evidence::{dempster, mrbf, negation, Error};

#[derive(Parser)]
#[command(
    name = "ordinal-evidence",
    version,
    about = "Fuse ordinal evidences into a basic probability assignment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full fusion pipeline on an evidence document.
    Fuse(FuseArgs),
    /// Combine a document's evidences pairwise with the classical rule.
    CombineClassic(DocumentArgs),
    /// Negate one evidence's mass function.
    Negate(NegateArgs),
    /// Expand a single (order, mass) pair into a feature vector.
    Mrbf(MrbfArgs),
}

#[derive(Args)]
struct DocumentArgs {
    /// Path to a JSON evidence document.
    file: PathBuf,
}

#[derive(Args)]
struct FuseArgs {
    /// Path to a JSON evidence document.
    file: PathBuf,
    /// How pairwise conflicts aggregate into the kernel width.
    #[arg(long, value_enum)]
    k_mode: Option<KModeArg>,
    /// Numeric encoding of entry positions.
    #[arg(long, value_enum)]
    order_scale: Option<OrderScaleArg>,
    /// Series dimensions kept per proposition.
    #[arg(long)]
    dims: Option<usize>,
    /// Coefficient scaling of the series expansion.
    #[arg(long, value_enum)]
    coefficients: Option<CoefficientsArg>,
    /// Drop uncertainty products whose factors share a role.
    #[arg(long)]
    role_filter: bool,
    /// Axis along which uncertainty scores normalize into weights.
    #[arg(long, value_enum)]
    weight_axis: Option<WeightAxisArg>,
    /// Output format.
    #[arg(long, value_enum)]
    output: Option<OutputArg>,
    /// Emit every intermediate stage.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct NegateArgs {
    /// Path to a JSON evidence document.
    file: PathBuf,
    /// 1-based index of the evidence to negate.
    #[arg(long, default_value_t = 1)]
    evidence: usize,
}

#[derive(Args)]
struct MrbfArgs {
    /// Order value (position) of the entry.
    #[arg(long)]
    order: f64,
    /// Mass of the entry, in [0,1].
    #[arg(long)]
    mass: f64,
    /// Kernel width.
    #[arg(long)]
    k: f64,
    /// Number of series terms.
    #[arg(long, default_value_t = 4)]
    dims: usize,
}

macro_rules! clap_enum {
    ($name:ident => $target:ty { $($variant:ident => $mapped:expr),+ $(,)? }) => {
        #[derive(Clone, Copy, clap::ValueEnum)]
        enum $name {
            $($variant),+
        }

        impl From<$name> for $target {
            fn from(value: $name) -> $target {
                match value {
                    $($name::$variant => $mapped),+
                }
            }
        }
    };
}

clap_enum!(KModeArg => KMode {
    PairwiseSum => KMode::PairwiseSum,
    PairwiseMean => KMode::PairwiseMean,
    PairwiseMax => KMode::PairwiseMax,
});
clap_enum!(OrderScaleArg => OrderScale {
    Normalized => OrderScale::Normalized,
    Raw => OrderScale::Raw,
});
clap_enum!(CoefficientsArg => CoefficientMode {
    Plain => CoefficientMode::Plain,
    WidthScaled => CoefficientMode::WidthScaled,
});
clap_enum!(WeightAxisArg => WeightAxis {
    Evidences => WeightAxis::Evidences,
    Propositions => WeightAxis::Propositions,
});
clap_enum!(OutputArg => OutputFormat {
    Table => OutputFormat::Table,
    Json => OutputFormat::Json,
});

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Fuse(args) => cmd_fuse(&args),
        Command::CombineClassic(args) => cmd_combine_classic(&args),
        Command::Negate(args) => cmd_negate(&args),
        Command::Mrbf(args) => cmd_mrbf(&args),
    };
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn cmd_fuse(args: &FuseArgs) -> anyhow::Result<String> {
    let (set, mut config) = load_document(&args.file)?;
    apply_flags(&mut config, args);
    let report = pipeline(&set, &config)?;
    match config.output {
        OutputFormat::Json => {
            let doc = report.to_document(set.frame(), config.trace);
            Ok(serde_json::to_string_pretty(&doc)?)
        }
        OutputFormat::Table => Ok(render_fuse_table(&report, &set, &config)),
    }
}

fn render_fuse_table(
    report: &ordinal_evidence::fusion::FusionReport,
    set: &ordinal_evidence::mass::EvidenceSet,
    config: &Configuration,
) -> String {
    let frame = set.frame();
    let mut out = String::new();
    out.push_str(&format!("kernel width: {:.6}\n", report.kernel_width));
    if config.trace {
        for (e, stage) in report.stages.iter().enumerate() {
            out.push_str(&format!("\nevidence {}\n", e + 1));
            out.push_str(&matrix_table(
                "feature",
                stage.feature.propositions(),
                &stage.feature.to_vec(),
                frame,
            ));
            out.push_str(&matrix_table(
                "normalized",
                stage.normalized.propositions(),
                &stage.normalized.rows().to_vec(),
                frame,
            ));
            out.push_str(&matrix_table(
                "negated",
                stage.negated.propositions(),
                &stage.negated.rows().to_vec(),
                frame,
            ));
            out.push_str("  uncertainty:");
            for (j, u) in stage.uncertainty.iter().enumerate() {
                out.push_str(&format!(
                    " {}={:.6}",
                    frame.describe(report.propositions[j]),
                    u
                ));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str(&bpa_table("modified", frame, &report.modified_bpa, report));
    out.push_str(&bpa_table("final", frame, &report.final_bpa, report));
    out.pop();
    out
}

fn matrix_table(
    label: &str,
    props: &[ordinal_evidence::frame::Proposition],
    rows: &Vec<Vec<f64>>,
    frame: &Frame,
) -> String {
    let mut out = format!("  {label} matrix:\n");
    for (p, row) in props.iter().zip(rows) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
        out.push_str(&format!(
            "    {:<12} {}\n",
            frame.describe(*p),
            cells.join("  ")
        ));
    }
    out
}

fn bpa_table(
    label: &str,
    frame: &Frame,
    bpa: &MassFunction,
    report: &ordinal_evidence::fusion::FusionReport,
) -> String {
    let mut out = format!("{label} BPA:\n");
    for &p in &report.propositions {
        out.push_str(&format!(
            "  {:<16} {:.6}\n",
            frame.describe(p),
            bpa.get(p)
        ));
    }
    out
}

fn cmd_combine_classic(args: &DocumentArgs) -> anyhow::Result<String> {
    let (set, _) = load_document(&args.file)?;
    let frame = set.frame();
    let bpas: Vec<MassFunction> = set.evidences().iter().map(|e| e.to_bpa()).collect();
    let mut combined = bpas[0].clone();
    for m in &bpas[1..] {
        combined = dempster::combine(frame, &combined, m)?;
    }
    let mut props: Vec<_> = combined.iter().map(|(p, _)| p).collect();
    props.sort_by_key(|p| (p.cardinality(), p.bits()));
    let mut out = String::from("combined BPA:\n");
    for p in props {
        out.push_str(&format!(
            "  {:<16} {:.6}\n",
            frame.describe(p),
            combined.get(p)
        ));
    }
    out.pop();
    Ok(out)
}

fn cmd_negate(args: &NegateArgs) -> anyhow::Result<String> {
    let (set, _) = load_document(&args.file)?;
    let frame = set.frame();
    let count = set.evidences().len();
    if args.evidence == 0 || args.evidence > count {
        anyhow::bail!(Error::Document(format!(
            "evidence index {} out of range 1..={count}",
            args.evidence
        )));
    }
    let bpa = set.evidences()[args.evidence - 1].to_bpa();
    let negated = negation::negate_bpa(&bpa)?;
    let mut props: Vec<_> = negated.iter().map(|(p, _)| p).collect();
    props.sort_by_key(|p| (p.cardinality(), p.bits()));
    let mut out = String::from("negated BPA:\n");
    for p in props {
        out.push_str(&format!(
            "  {:<16} {:.6}\n",
            frame.describe(p),
            negated.get(p)
        ));
    }
    out.pop();
    Ok(out)
}

fn cmd_mrbf(args: &MrbfArgs) -> anyhow::Result<String> {
    let vector = mrbf::expand(args.order, args.mass, args.k, args.dims)?;
    let kernel = mrbf::mrbf_kernel(args.order, args.mass, args.k)?;
    let cells: Vec<String> = vector
        .components()
        .iter()
        .map(|v| format!("{v:.6}"))
        .collect();
    Ok(format!(
        "features: [{}]\nsum: {:.6}\nkernel: {:.6}",
        cells.join(", "),
        vector.sum(),
        kernel
    ))
}

fn load_document(
    path: &PathBuf,
) -> anyhow::Result<(ordinal_evidence::mass::EvidenceSet, Configuration)> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!(Error::Document(format!("{}: {e}", path.display()))))?;
    Ok(parse_evidence_document(&text)?)
}

fn apply_flags(config: &mut Configuration, args: &FuseArgs) {
    if let Some(v) = args.k_mode {
        config.k_mode = v.into();
    }
    if let Some(v) = args.order_scale {
        config.order_scale = v.into();
    }
    if let Some(v) = args.dims {
        config.dims = v;
    }
    if let Some(v) = args.coefficients {
        config.coefficients = v.into();
    }
    if args.role_filter {
        config.role_filter = true;
    }
    if let Some(v) = args.weight_axis {
        config.weight_axis = v.into();
    }
    if let Some(v) = args.output {
        config.output = v.into();
    }
    if args.trace {
        config.trace = true;
    }
}

/// 1 = input, 2 = numeric/degenerate, 3 = internal.
fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(lib) = err.downcast_ref::<Error>() else {
        // I/O, JSON pretty-printing and the like.
        return if err.downcast_ref::<serde_json::Error>().is_some() {
            3
        } else {
            1
        };
    };
    match lib.root() {
        Error::EmptyFrame
        | Error::DuplicateElement(_)
        | Error::FrameTooLarge(_)
        | Error::UnknownElement(_)
        | Error::EmptyProposition
        | Error::PropositionOutsideFrame(_)
        | Error::InvalidBpa(_)
        | Error::DuplicateProposition(_)
        | Error::NoEvidences
        | Error::PropositionSetMismatch { .. }
        | Error::Document(_) => 1,
        Error::TotalConflict
        | Error::TooFewFocalElements(_)
        | Error::NegativeWidth(_)
        | Error::ZeroDims
        | Error::AllZeroMatrix
        | Error::ZeroRoleMass { .. }
        | Error::DegenerateNegation
        | Error::ZeroUncertaintyColumn(_)
        | Error::ZeroFusedDimension(_)
        | Error::IfsConstraint { .. }
        | Error::OutOfUnitRange { .. } => 2,
        _ => 3,
    }
}
