//! `knotpoly`: Jones polynomials, A-state combinatorics, and positivity
//! obstructions for knot and link diagrams given as PD codes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use knotpoly::census::{degree_json, emit_report, load_census, run_census_capped, ReportFormat};
use knotpoly::diagram::{is_positive, orient_and_sign, parse_pd, OrientedDiagram};
use knotpoly::generators::{random_balanced, Lcg};
use knotpoly::jones::{jones_polynomial_capped, v_coefficient, DEFAULT_CAP};
use knotpoly::laurent::lp_degrees;
use knotpoly::obstructions::classify_positivity;
use knotpoly::states::{
    a_state_graph, all_b_circles, classify_diagram, reduce_graph, seifert_circles, state_circles,
    StateVector,
};
use knotpoly::suites;
use knotpoly::{Error, Result};

#[derive(Parser)]
#[command(
    name = "knotpoly",
    version,
    about = "Jones polynomials and positivity obstructions from PD codes"
)]
struct Cli {
    /// Threads for the parallel state sum (default: all cores).  Output is
    /// identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramInput {
    /// PD text, e.g. "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]".
    #[arg(long)]
    pd: Option<String>,
    /// File containing PD text.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl DiagramInput {
    fn load(&self) -> Result<OrientedDiagram> {
        let text = match (&self.pd, &self.input) {
            (Some(text), None) => text.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)?,
            _ => unreachable!("clap enforces exactly one input source"),
        };
        orient_and_sign(&parse_pd(&text)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    /// Structure and synchronization of random Balanced diagrams.
    Balanced,
    /// Degree bounds on random Burdened corpora.
    Burdened,
    /// Prefix bounds along balancing sequences, and matching-pair splits.
    Prop6,
    /// First-coefficient formula against the computed polynomial.
    Stoimenow,
    /// Mirror inversion and double-mirror identities.
    Mirror,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Jones polynomial of one diagram.
    Jones {
        #[command(flatten)]
        input: DiagramInput,
        /// Maximum crossing count for the state sum.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// A-state, B-state, and Seifert circle structure of one diagram.
    States {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Positivity verdict for one diagram from its Jones polynomial.
    Classify {
        #[command(flatten)]
        input: DiagramInput,
        /// Whether the link is fibered.  Omit for positive diagrams to
        /// infer it from V1 = 0.
        #[arg(long)]
        fibered: Option<bool>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a census file and report per-record verdicts.
    Census {
        /// JSONL census file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Emit seeded random Balanced diagrams as PD text plus a manifest.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run a verification suite over generated diagrams.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Ignore the error when a pool already exists (e.g. repeat calls in
        // tests); the default pool is equivalent.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Jones { input, cap } => cmd_jones(&input, cap),
        Command::States { input } => cmd_states(&input),
        Command::Classify {
            input,
            fibered,
            cap,
        } => cmd_classify(&input, fibered, cap),
        Command::Census { input, format, cap } => cmd_census(&input, format, cap),
        Command::Generate { seed, count } => cmd_generate(seed, count),
        Command::Verify {
            suite,
            count,
            seed,
            cap,
        } => cmd_verify(suite, count, seed, cap),
    }
}

fn cmd_jones(input: &DiagramInput, cap: usize) -> Result<ExitCode> {
    let d = input.load()?;
    let result = jones_polynomial_capped(&d, cap)?;
    println!("{}", result.jones);
    let (min_q, max_q) = lp_degrees(&result.jones)?;
    let v1 = v_coefficient(&result.jones, 1)?;
    let v1 = i64::try_from(&v1)
        .map(|n| json!(n))
        .unwrap_or_else(|_| json!(v1.to_string()));
    let detail = json!({
        "min_deg": degree_json(min_q),
        "max_deg": degree_json(max_q),
        "v1": v1,
        "writhe": result.writhe,
        "components": result.n_components,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&detail).expect("detail serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_states(input: &DiagramInput) -> Result<ExitCode> {
    let d = input.load()?;
    let a = state_circles(&d, &StateVector::all_a(&d))?;
    let reduced = reduce_graph(&a_state_graph(&d)?);
    let classification = match classify_diagram(&d) {
        Ok(class) => json!(class.to_string()),
        Err(Error::NotPositive(_)) => json!(null),
        Err(e) => return Err(e),
    };
    let edges: Vec<serde_json::Value> = reduced
        .edges
        .iter()
        .map(|(&(i, j), crossings)| json!([i, j, crossings.len()]))
        .collect();
    let doc = json!({
        "a_circles": a.count(),
        "b_circles": all_b_circles(&d).count(),
        "seifert_circles": seifert_circles(&d).count(),
        "reduced_graph": {"edges": edges, "is_tree": reduced.is_tree},
        "classification": classification,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("states serialize")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(input: &DiagramInput, fibered: Option<bool>, cap: usize) -> Result<ExitCode> {
    let d = input.load()?;
    let result = jones_polynomial_capped(&d, cap)?;
    let (fibered, source) = match fibered {
        Some(flag) => (flag, "flag"),
        None if is_positive(&d) => {
            let v1 = v_coefficient(&result.jones, 1)?;
            (v1 == 0.into(), "inferred from V1 = 0 (positive diagram)")
        }
        None => {
            return Err(Error::Validation(
                "fiberedness cannot be inferred for a non-positive diagram; \
                 pass --fibered true|false"
                    .into(),
            ))
        }
    };
    let verdict = classify_positivity("diagram", &result.jones, fibered)?;
    let mut doc = serde_json::to_value(&verdict).expect("verdict serializes");
    doc["fibered"] = json!(fibered);
    doc["fibered_source"] = json!(source);
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("verdict serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(input: &std::path::Path, format: Format, cap: usize) -> Result<ExitCode> {
    let records = load_census(input)?;
    let report = run_census_capped(&records, cap)?;
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    print!("{}", emit_report(&report, format));
    Ok(if report.has_mismatches() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_generate(seed: u64, count: usize) -> Result<ExitCode> {
    let mut rng = Lcg::new(seed);
    for _ in 0..count {
        let k = 2 + (rng.next_draw() as usize) % 9;
        let dseed = rng.next_draw();
        let d = random_balanced(k, dseed);
        println!("{}", d.pd_text());
        let manifest = json!({
            "k": k,
            "seed": dseed,
            "crossings": d.n_crossings(),
            "classification": classify_diagram(&d)?.to_string(),
        });
        println!("{manifest}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: SuiteName, count: usize, seed: u64, cap: usize) -> Result<ExitCode> {
    let (name, outcome) = match suite {
        SuiteName::Balanced => ("balanced", suites::balanced_suite(count, seed, 10)?),
        SuiteName::Burdened => ("burdened", suites::burdened_suite(count, seed, cap, 16)?),
        SuiteName::Prop6 => ("prop6", suites::prop6_suite(count, seed)?),
        SuiteName::Stoimenow => ("stoimenow", suites::stoimenow_suite(count, seed, cap)?),
        SuiteName::Mirror => ("mirror", suites::mirror_suite(count, seed, cap)?),
    };
    println!(
        "{name}: checked {} diagrams; all invariants held",
        outcome.checked
    );
    Ok(ExitCode::SUCCESS)
}
