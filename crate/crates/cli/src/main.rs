//! Command-line front end: validate family descriptions, compute limit
//! linear systems and the limit ramification divisor, and emit the built-in
//! example families.
//!
//! Exit codes: 0 success, 1 identity-check failure, 2 parse/input error,
//! 3 validation error, 4 precision exhaustion after retries.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use limitram::error::Error;
use limitram::family::FamilyModel;
use limitram::lattice::{associated_extension, connecting_matrix, ExtensionRecord};
use limitram::ramification::limit_divisor;
use limitram::report::{ExtensionJson, FamilyJson, ReportJson, WhereJson};
use limitram::scalar::{parse_rat, Rat};

#[derive(Parser)]
#[command(name = "limitram", version, about = "Limit linear systems and ramification divisors of plane-curve degenerations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working t-adic precision (also via LIMITRAM_PRECISION).
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Precision-doubling retries before giving up.
    #[arg(long, global = true, default_value_t = 4)]
    retries: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family description for geometric consistency.
    Validate { file: PathBuf },
    /// Associated extensions and connecting numbers.
    Limits { file: PathBuf },
    /// The full limit ramification divisor with identity checks.
    Ramification { file: PathBuf },
    /// Emit a built-in example family as JSON.
    Example {
        name: String,
        /// Rational parameters for parametrized examples (e.g. case11 c1 c2).
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Serialize)]
struct LimitsJson {
    extensions: Vec<ExtensionJson>,
    connecting_numbers: Vec<Vec<i64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Json(_)
        | Error::NonHomogeneous(_, _)
        | Error::UnknownVariable(_) => 2,
        Error::Validation(_)
        | Error::BadFamily(_)
        | Error::DegenerateInput(_)
        | Error::UnknownExample(_) => 3,
        Error::PrecisionExhausted { .. } => 4,
        _ => 1,
    }
}

fn run(cli: &Cli) -> limitram::Result<()> {
    match &cli.command {
        Command::Validate { file } => {
            let model = load_model(file, cli)?;
            let warnings = model.validate()?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            println!("valid: {} components, degree {}", model.num_components(), model.total_degree());
            Ok(())
        }
        Command::Limits { file } => {
            let model = load_model(file, cli)?;
            model.validate()?.iter().for_each(|w| eprintln!("warning: {w}"));
            let (records, connecting) = with_retries(model.clone(), cli.retries, |m| {
                let records: Vec<ExtensionRecord> = (0..m.num_components())
                    .map(|i| associated_extension(m, i))
                    .collect::<limitram::Result<_>>()?;
                let connecting = connecting_matrix(&records)?;
                Ok((records, connecting))
            })?;
            let out = LimitsJson {
                extensions: records
                    .iter()
                    .map(|r| ExtensionJson {
                        component: model.components[r.component].name.clone(),
                        twist: r.class.entries().to_vec(),
                        multidegree: model.multidegree(r.class.entries()),
                    })
                    .collect(),
                connecting_numbers: connecting,
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("limits serialization")),
                Format::Table => print_limits(&out),
            }
            Ok(())
        }
        Command::Ramification { file } => {
            let model = load_model(file, cli)?;
            model.validate()?.iter().for_each(|w| eprintln!("warning: {w}"));
            let report = with_retries(model, cli.retries, |m| {
                let rep = limit_divisor(m)?;
                Ok(ReportJson::from_analysis(m, &rep))
            })?;
            match cli.format {
                Format::Json => println!("{}", report.to_string_pretty()),
                Format::Table => print_report(&report),
            }
            Ok(())
        }
        Command::Example { name, params } => {
            let params: Vec<Rat> = params
                .iter()
                .map(|s| parse_rat(s))
                .collect::<limitram::Result<_>>()?;
            let fam = limitram::examples::by_name(name, &params)?;
            println!("{}", fam.to_string_pretty());
            Ok(())
        }
    }
}

fn load_family(file: &PathBuf) -> limitram::Result<FamilyJson> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("cannot read {}: {e}", file.display()),
    })?;
    FamilyJson::from_str(&text)
}

/// Precision resolution order: --precision flag, then LIMITRAM_PRECISION,
/// then the file's own setting, then the engine default.
fn load_model(file: &PathBuf, cli: &Cli) -> limitram::Result<FamilyModel> {
    let mut fam = load_family(file)?;
    let env = std::env::var("LIMITRAM_PRECISION")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    if let Some(p) = cli.precision.or(env) {
        if p < 8 {
            return Err(Error::BadFamily(format!("precision {p} is below the minimum of 8")));
        }
        fam.precision = Some(p);
    }
    fam.to_model()
}

/// Run a computation, doubling the working precision on exhaustion. Retries
/// only ever recompute with more t-digits; successful values are final.
fn with_retries<T>(
    mut model: FamilyModel,
    retries: usize,
    f: impl Fn(&FamilyModel) -> limitram::Result<T>,
) -> limitram::Result<T> {
    for _ in 0..=retries {
        match f(&model) {
            Err(Error::PrecisionExhausted { .. }) => model.precision *= 2,
            other => return other,
        }
    }
    f(&model)
}

fn print_limits(out: &LimitsJson) {
    println!("extensions:");
    for e in &out.extensions {
        println!(
            "  {:<12} twist {:?}  multidegree {:?}",
            e.component, e.twist, e.multidegree
        );
    }
    println!("connecting numbers:");
    for row in &out.connecting_numbers {
        println!("  {row:?}");
    }
}

fn print_report(r: &ReportJson) {
    print_limits(&LimitsJson {
        extensions: r.extensions.clone(),
        connecting_numbers: r.connecting_numbers.clone(),
    });
    println!("Z(s):");
    if r.z.is_empty() {
        println!("  (empty)");
    }
    for w in &r.z {
        let loc = match &w.location {
            WhereJson::Smooth {
                component, plane, ..
            } => format!("smooth point ({}:{}:{}) on {component}", plane[0], plane[1], plane[2]),
            WhereJson::Factor { component, factor } => {
                format!("locus {factor} = 0 on {component}")
            }
            WhereJson::Node { components, plane } => format!(
                "node ({}:{}:{}) of {} and {}",
                plane[0], plane[1], plane[2], components[0], components[1]
            ),
            WhereJson::SelfNode { component, plane } => format!(
                "self-node ({}:{}:{}) of {component}",
                plane[0], plane[1], plane[2]
            ),
        };
        println!("  weight {:>2}  at {loc}", w.weight);
    }
    println!("total weight: {}", r.total_weight);
    println!(
        "checks: cor8 {}, global degree {}, prop6 {}",
        ok(r.checks.cor8),
        ok(r.checks.global_degree),
        ok(r.checks.prop6)
    );
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}
