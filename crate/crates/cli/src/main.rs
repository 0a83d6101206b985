//! `modelcat` — analyze model catalogs from the command line.
//!
//! Exit codes are stable: 0 success, 1 validation failures found, 2
//! input/parse error, 3 internal limit exceeded. Diagnostics go to stderr,
//! results to stdout or `-o`. Pass `-` as FILE to read from stdin.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modelcat_core::{
    build_catalog, compare, derive_relation, emit_chains_text, emit_dot, emit_report, validate_all,
    AnalysisBundle, Catalog, CatalogMode, Chain, ComplexityPoset, DotOptions, OrderError,
    ValidationReport, DEFAULT_CHAIN_CAP,
};

const EXIT_OK: u8 = 0;
const EXIT_VALIDATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "modelcat",
    version,
    about = "Parse, order, validate, and report on model catalogs",
    after_help = "Exit codes: 0 success, 1 validation failures, 2 input/parse error, 3 limit exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a catalog and run every consistency check
    Check {
        /// Catalog file (`-` for stdin)
        file: String,
    },
    /// Print the pairwise complexity comparison matrix (sets mode only)
    Order { file: String },
    /// Print ordering status, extremal case, and extremes
    Classify { file: String },
    /// Print the most complex and the simplest object
    Extremes { file: String },
    /// Enumerate the maximal chains (totally ordered subcategories)
    Chains {
        file: String,
        /// Abort if more than this many chains exist
        #[arg(long)]
        max: Option<usize>,
    },
    /// Emit the Hasse diagram as DOT text
    Diagram {
        file: String,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw non-covering order pairs, dashed
        #[arg(long)]
        composites: bool,
    },
    /// Show which assumptions two models (do not) share
    Diff {
        file: String,
        model_a: String,
        model_b: String,
    },
    /// Emit the full JSON analysis report
    Report {
        file: String,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Order { file } => cmd_order(&file),
        Command::Classify { file } => cmd_classify(&file),
        Command::Extremes { file } => cmd_extremes(&file),
        Command::Chains { file, max } => cmd_chains(&file, max),
        Command::Diagram {
            file,
            output,
            composites,
        } => cmd_diagram(&file, output.as_deref(), composites),
        Command::Diff {
            file,
            model_a,
            model_b,
        } => cmd_diff(&file, &model_a, &model_b),
        Command::Report { file, output } => cmd_report(&file, output.as_deref()),
    }
    .unwrap_or_else(|code| code)
}

/// Read, parse, and build; every diagnostic goes to stderr with the file name
/// prefixed so editors can jump to it.
fn load(file: &str) -> Result<Catalog, u8> {
    let display = if file == "-" { "<stdin>" } else { file };
    let text = if file == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| input_error(&format!("cannot read stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| input_error(&format!("cannot read `{file}`: {e}")))?
    };

    let parsed = modelcat_core::parse(&text);
    for diagnostic in &parsed.diagnostics {
        eprintln!("{display}:{diagnostic}");
    }
    if parsed.has_errors() {
        return Err(EXIT_INPUT);
    }

    build_catalog(parsed.header.as_ref(), &parsed.decls).map_err(|errors| {
        for error in &errors {
            match error.span {
                Some(span) => eprintln!("{display}:{span}: error: {error}"),
                None => eprintln!("{display}: error: {error}"),
            }
        }
        EXIT_INPUT
    })
}

fn input_error(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

/// Derive the order; cycles are a validation failure, not an input error.
fn analyze(catalog: &Catalog, file: &str) -> Result<ComplexityPoset, u8> {
    match derive_relation(catalog) {
        Ok(poset) => {
            for (a, b) in poset.equal_pairs() {
                eprintln!("warning: models `{a}` and `{b}` declare identical assumption sets");
            }
            Ok(poset)
        }
        Err(err) => {
            eprintln!("{file}: error: {err}");
            Err(EXIT_VALIDATION)
        }
    }
}

fn chain_cap(flag: Option<usize>) -> Result<usize, u8> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("MODELCAT_CHAIN_CAP") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| input_error(&format!("invalid MODELCAT_CHAIN_CAP value `{value}`"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CHAIN_CAP),
        Err(e) => Err(input_error(&format!("invalid MODELCAT_CHAIN_CAP: {e}"))),
    }
}

fn enumerate_chains(poset: &ComplexityPoset, cap: usize) -> Result<Vec<Chain>, u8> {
    poset.maximal_chains_capped(cap).map_err(|err| {
        debug_assert!(matches!(err, OrderError::ChainExplosion { .. }));
        eprintln!("error: {err}");
        EXIT_LIMIT
    })
}

fn write_output(text: &str, output: Option<&std::path::Path>) -> Result<(), u8> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| input_error(&format!("cannot write `{}`: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_check(file: &str) -> Result<u8, u8> {
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    let report = validate_all(&catalog, &poset);
    for entry in &report.checks {
        println!("{entry}");
    }
    let failed = report.failures().count();
    if failed > 0 {
        eprintln!("{failed} check(s) failed");
        Ok(EXIT_VALIDATION)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_order(file: &str) -> Result<u8, u8> {
    let catalog = load(file)?;
    if catalog.mode() != CatalogMode::Sets {
        return Err(input_error(
            "`order` needs assumption sets; this catalog is in declared mode",
        ));
    }
    let ids = catalog.model_ids();
    let cells: Vec<Vec<&str>> = ids
        .iter()
        .map(|a| {
            ids.iter()
                .map(|b| {
                    let sa = catalog.assumption_set_of(a).expect("sets mode");
                    let sb = catalog.assumption_set_of(b).expect("sets mode");
                    compare(sa, sb).as_str()
                })
                .collect()
        })
        .collect();

    let width = ids
        .iter()
        .map(|id| id.len())
        .chain(["incomparable".len(), "model".len()])
        .max()
        .unwrap_or(5)
        + 2;
    let mut out = String::new();
    write!(out, "{:<width$}", "model").unwrap();
    for id in &ids {
        write!(out, "{id:<width$}").unwrap();
    }
    out.push('\n');
    for (row, id) in ids.iter().enumerate() {
        write!(out, "{id:<width$}").unwrap();
        for cell in &cells[row] {
            write!(out, "{cell:<width$}").unwrap();
        }
        out.push('\n');
    }
    let trimmed: String = out
        .lines()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n");
    println!("{trimmed}");
    Ok(EXIT_OK)
}

fn cmd_classify(file: &str) -> Result<u8, u8> {
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    let classification = poset.classify(&catalog);
    println!(
        "{}, case {}, most_complex={}, simplest={}",
        classification.ordering.as_str(),
        classification.prop1_case.as_str(),
        classification.most_complex.as_deref().unwrap_or("none"),
        classification.simplest.as_deref().unwrap_or("none"),
    );
    Ok(EXIT_OK)
}

fn cmd_extremes(file: &str) -> Result<u8, u8> {
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    println!("most_complex={}", poset.most_complex().unwrap_or("none"));
    println!("simplest={}", poset.simplest().unwrap_or("none"));
    Ok(EXIT_OK)
}

fn cmd_chains(file: &str, max: Option<usize>) -> Result<u8, u8> {
    let cap = chain_cap(max)?;
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    let chains = enumerate_chains(&poset, cap)?;
    print!("{}", emit_chains_text(&chains));
    Ok(EXIT_OK)
}

fn cmd_diagram(file: &str, output: Option<&std::path::Path>, composites: bool) -> Result<u8, u8> {
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    let dot = emit_dot(
        &catalog,
        &poset,
        &DotOptions {
            show_composites: composites,
        },
    );
    write_output(&dot, output)?;
    Ok(EXIT_OK)
}

fn cmd_diff(file: &str, model_a: &str, model_b: &str) -> Result<u8, u8> {
    let catalog = load(file)?;
    if catalog.mode() != CatalogMode::Sets {
        return Err(input_error(
            "`diff` needs assumption sets; this catalog is in declared mode",
        ));
    }
    let diff = catalog
        .diff_models(model_a, model_b)
        .map_err(|e| input_error(&e.to_string()))?;
    let listing = |set: &std::collections::BTreeSet<String>| {
        if set.is_empty() {
            "(none)".to_owned()
        } else {
            let mut ids: Vec<&str> = set.iter().map(String::as_str).collect();
            ids.sort_by(|a, b| modelcat_core::ident::natural_cmp(a, b));
            ids.join(" ")
        }
    };
    println!("only in {model_a}: {}", listing(&diff.only_in_a));
    println!("only in {model_b}: {}", listing(&diff.only_in_b));
    println!("shared: {}", listing(&diff.shared));
    Ok(EXIT_OK)
}

fn cmd_report(file: &str, output: Option<&std::path::Path>) -> Result<u8, u8> {
    let cap = chain_cap(None)?;
    let catalog = load(file)?;
    let poset = analyze(&catalog, file)?;
    let classification = poset.classify(&catalog);
    let chains = enumerate_chains(&poset, cap)?;
    let validation: ValidationReport = validate_all(&catalog, &poset);
    let failed = validation.failures().count();
    let bundle = AnalysisBundle::full(&catalog, &classification, &chains, &validation);
    write_output(&emit_report(&bundle), output)?;
    if failed > 0 {
        eprintln!("{failed} check(s) failed");
        Ok(EXIT_VALIDATION)
    } else {
        Ok(EXIT_OK)
    }
}
