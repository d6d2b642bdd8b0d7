//! `phc`: exact computations in the pattern algebras of permutations (`per`),
//! packed words (`pw`), and parking functions (`pf`).
//!
//! Objects are written as digit strings (`2314`) or bracketed comma form for
//! letters past 9 (`[10,2,3]`); factor lists are comma-separated.  Output is
//! JSON by default (`--format table` for aligned text) and byte-deterministic
//! for a fixed request.  Exit status: 0 on success or a passing verification,
//! 1 on verification failure, 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pattern_hopf::algebra::{coproduct, pattern_coefficient, qss_coefficient, PatternExpr};
use pattern_hopf::antipode::{
    antipode, interlacing_coefficient, interlacing_coefficient_experimental, AntipodeMethod,
};
use pattern_hopf::species::{PackedWord, ParkingFunction, Permutation, Species, SpeciesTag};
use pattern_hopf::verify::{run_check, Check, VerifyReport, PF3_TABLE};
use pattern_hopf::Error;

#[derive(Parser)]
#[command(name = "phc", version, about = "Pattern algebras of permutations, packed words, and parking functions")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpeciesArg {
    Per,
    Pw,
    Pf,
}

impl SpeciesArg {
    fn tag(self) -> SpeciesTag {
        match self {
            SpeciesArg::Per => SpeciesTag::Permutations,
            SpeciesArg::Pw => SpeciesTag::PackedWords,
            SpeciesArg::Pf => SpeciesTag::ParkingFunctions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Interlacing,
    Takeuchi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Agreement,
    AntipodeAxiom,
    Filter,
    TablePf3,
    Counts,
}

impl CheckArg {
    fn check(self) -> Check {
        match self {
            CheckArg::Agreement => Check::Agreement,
            CheckArg::AntipodeAxiom => Check::AntipodeAxiom,
            CheckArg::Filter => Check::Filter,
            CheckArg::TablePf3 => Check::TablePf3,
            CheckArg::Counts => Check::Counts,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every class of one size
    Enumerate {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        size: usize,
    },
    /// Count the position subsets of the target whose restriction is the pattern
    Pattern {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        target: String,
        #[arg(long)]
        pattern: String,
    },
    /// Count quasi-shuffle signatures of the target from the factor list
    Qss {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        target: String,
        /// Comma-separated factor objects, e.g. 1,21,1,1
        #[arg(long)]
        factors: String,
        /// Report only the interlacing count
        #[arg(long)]
        interlacing_only: bool,
        /// Compute the interlacing count for parking functions too
        /// (exploratory; nothing is asserted about its meaning)
        #[arg(long)]
        experimental_pf_interlacing: bool,
    },
    /// Expand the product of two pattern functions
    Product {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Deconcatenation coproduct of one pattern function
    Coproduct {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        object: String,
    },
    /// Antipode of one pattern function
    Antipode {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long)]
        object: String,
        /// Defaults to interlacing for per/pw and takeuchi for pf
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Run a verification suite; exits 1 if any instance fails
    Verify {
        #[arg(long, value_enum)]
        species: SpeciesArg,
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long)]
        max_size: Option<usize>,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("PHC_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: PHC_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    match cli.command {
        Command::Enumerate { species, size } => {
            dispatch_enumerate(species, size, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Pattern {
            species,
            target,
            pattern,
        } => {
            let coefficient = match species {
                SpeciesArg::Per => pattern_coefficient::<Permutation>(&target.parse()?, &pattern.parse()?),
                SpeciesArg::Pw => pattern_coefficient::<PackedWord>(&target.parse()?, &pattern.parse()?),
                SpeciesArg::Pf => pattern_coefficient::<ParkingFunction>(&target.parse()?, &pattern.parse()?),
            };
            match format {
                Format::Json => println!("{}", json!({ "coefficient": coefficient })),
                Format::Table => println!("coefficient  {coefficient}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Qss {
            species,
            target,
            factors,
            interlacing_only,
            experimental_pf_interlacing,
        } => {
            let counts = match species {
                SpeciesArg::Per => {
                    qss_counts::<Permutation>(&target, &factors, interlacing_only, experimental_pf_interlacing)?
                }
                SpeciesArg::Pw => {
                    qss_counts::<PackedWord>(&target, &factors, interlacing_only, experimental_pf_interlacing)?
                }
                SpeciesArg::Pf => {
                    qss_counts::<ParkingFunction>(&target, &factors, interlacing_only, experimental_pf_interlacing)?
                }
            };
            print_qss(counts, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { species, left, right } => {
            let value = match species {
                SpeciesArg::Per => expr_json(product_of::<Permutation>(&left, &right)?, format),
                SpeciesArg::Pw => expr_json(product_of::<PackedWord>(&left, &right)?, format),
                SpeciesArg::Pf => expr_json(product_of::<ParkingFunction>(&left, &right)?, format),
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Coproduct { species, object } => {
            let rendered = match species {
                SpeciesArg::Per => coproduct_of::<Permutation>(&object, format)?,
                SpeciesArg::Pw => coproduct_of::<PackedWord>(&object, format)?,
                SpeciesArg::Pf => coproduct_of::<ParkingFunction>(&object, format)?,
            };
            println!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Antipode {
            species,
            object,
            method,
        } => {
            let method = match (method, species) {
                (Some(MethodArg::Interlacing), _) => AntipodeMethod::Interlacing,
                (Some(MethodArg::Takeuchi), _) => AntipodeMethod::Takeuchi,
                (None, SpeciesArg::Pf) => AntipodeMethod::Takeuchi,
                (None, _) => AntipodeMethod::Interlacing,
            };
            let value = match species {
                SpeciesArg::Per => expr_json(antipode::<Permutation>(&object.parse()?, method)?, format),
                SpeciesArg::Pw => expr_json(antipode::<PackedWord>(&object.parse()?, method)?, format),
                SpeciesArg::Pf => expr_json(antipode::<ParkingFunction>(&object.parse()?, method)?, format),
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            species,
            check,
            max_size,
        } => {
            let report = run_check(species.tag(), check.check(), max_size)?;
            print_report(&report, check, format);
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn dispatch_enumerate(species: SpeciesArg, size: usize, format: Format) {
    let (tag, objects): (SpeciesTag, Vec<String>) = match species {
        SpeciesArg::Per => (
            SpeciesTag::Permutations,
            Permutation::enumerate(size).iter().map(|c| c.to_string()).collect(),
        ),
        SpeciesArg::Pw => (
            SpeciesTag::PackedWords,
            PackedWord::enumerate(size).iter().map(|c| c.to_string()).collect(),
        ),
        SpeciesArg::Pf => (
            SpeciesTag::ParkingFunctions,
            ParkingFunction::enumerate(size).iter().map(|c| c.to_string()).collect(),
        ),
    };
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "species": tag.code(),
                "size": size,
                "count": objects.len(),
                "objects": objects,
            })
        ),
        Format::Table => {
            for o in &objects {
                println!("{o}");
            }
        }
    }
}

struct QssCounts {
    total: Option<i64>,
    interlacing: Option<i64>,
}

fn parse_factors<S: Species>(text: &str) -> Result<Vec<S>, Error> {
    split_top_level(text)
        .iter()
        .map(|piece| piece.parse::<S>())
        .collect()
}

/// Splits on commas outside brackets, so `1,[10,2],1` has three pieces.
fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    out.push(current);
    out
}

fn qss_counts<S: Species>(
    target: &str,
    factors: &str,
    interlacing_only: bool,
    experimental: bool,
) -> Result<QssCounts, Error> {
    let target: S = target.parse()?;
    let factors: Vec<S> = parse_factors(factors)?;
    let total = (!interlacing_only).then(|| qss_coefficient(&target, &factors));
    let interlacing = match S::TAG {
        SpeciesTag::ParkingFunctions if experimental => {
            Some(interlacing_coefficient_experimental(&target, &factors))
        }
        SpeciesTag::ParkingFunctions if interlacing_only => {
            return Err(Error::UnprovenForSpecies("pf"));
        }
        SpeciesTag::ParkingFunctions => None,
        _ => Some(interlacing_coefficient(&target, &factors)?),
    };
    Ok(QssCounts { total, interlacing })
}

fn print_qss(counts: QssCounts, format: Format) {
    match format {
        Format::Json => {
            let mut map = serde_json::Map::new();
            if let Some(t) = counts.total {
                map.insert("total".into(), t.into());
            }
            if let Some(i) = counts.interlacing {
                map.insert("interlacing".into(), i.into());
            }
            println!("{}", Value::Object(map));
        }
        Format::Table => {
            if let Some(t) = counts.total {
                println!("total        {t}");
            }
            if let Some(i) = counts.interlacing {
                println!("interlacing  {i}");
            }
        }
    }
}

fn product_of<S: Species>(left: &str, right: &str) -> Result<PatternExpr<S>, Error> {
    let left: S = left.parse()?;
    let right: S = right.parse()?;
    Ok(PatternExpr::pattern(left).product(&PatternExpr::pattern(right)))
}

fn expr_json<S: Species>(expr: PatternExpr<S>, format: Format) -> String {
    match format {
        Format::Json => expr.to_json().to_string(),
        Format::Table => {
            let width = expr
                .terms()
                .map(|(c, _)| c.to_string().len())
                .max()
                .unwrap_or(1);
            let mut out = String::new();
            for (c, w) in expr.terms() {
                let name = c.to_string();
                let shown = if name.is_empty() { "-" } else { &name };
                out.push_str(&format!("{shown:<width$}  {w}\n"));
            }
            out.pop();
            out
        }
    }
}

fn coproduct_of<S: Species>(object: &str, format: Format) -> Result<String, Error> {
    let object: S = object.parse()?;
    let pairs = coproduct(&object);
    Ok(match format {
        Format::Json => {
            let terms: Vec<Value> = pairs
                .iter()
                .map(|(l, r)| json!({"left": l.to_string(), "right": r.to_string()}))
                .collect();
            json!({
                "species": S::TAG.code(),
                "object": object.to_string(),
                "terms": terms,
            })
            .to_string()
        }
        Format::Table => {
            let rows: Vec<String> = pairs
                .iter()
                .map(|(l, r)| {
                    let l = if l.size() == 0 { "-".to_string() } else { l.to_string() };
                    let r = if r.size() == 0 { "-".to_string() } else { r.to_string() };
                    format!("{l} | {r}")
                })
                .collect();
            rows.join("\n")
        }
    })
}

fn print_report(report: &VerifyReport, check: CheckArg, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_value(report).expect("report serializes"));
        }
        Format::Table => {
            if check == CheckArg::TablePf3 {
                print_pf3_grid();
            }
            println!("check      {}", report.check);
            println!("instances  {}", report.instances);
            println!("failures   {}", report.failures.len());
            for f in &report.failures {
                println!("  {f}");
            }
            println!("result     {}", if report.passed() { "pass" } else { "fail" });
        }
    }
}

/// Renders the computed pat_11 / pat_12 / pat_21 values on the sixteen size-3
/// parking functions in the same layout as the reference table.
fn print_pf3_grid() {
    let patterns: Vec<ParkingFunction> =
        ["11", "12", "21"].iter().map(|s| s.parse().expect("valid word")).collect();
    let mut header = String::from("     ");
    for (word, ..) in PF3_TABLE {
        header.push_str(&format!("{word:>4}"));
    }
    println!("{header}");
    for pat in &patterns {
        let mut row = format!("{:<5}", pat.to_string());
        for (word, ..) in PF3_TABLE {
            let target: ParkingFunction = word.parse().expect("valid word");
            row.push_str(&format!("{:>4}", pattern_coefficient(&target, pat)));
        }
        println!("{row}");
    }
}
