//! Command-line driver for the polytope library.
//!
//! Exit codes: 0 on success, 1 on validation or verification failure, 2 on
//! usage errors (clap's default).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use apoly_core::catalog::{catalog_entries, catalog_get};
use apoly_core::constructions;
use apoly_core::io::{analyze, read_poset, render_report, write_poset, write_poset_string, ReportFormat};
use apoly_core::limits::Limits;
use apoly_core::poset::FacePoset;
use apoly_core::presentation::{build_polytope, coset_enumerate, parse_presentation};
use apoly_core::verify::run_suite;

#[derive(Parser)]
#[command(name = "apoly", about = "Finite abstract polytopes: validation, symmetry, constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Medial,
    Halved,
    Twopower,
    Extension,
    Alternating,
    Dual,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a .apoly file is a valid abstract polytope.
    Validate { file: PathBuf },
    /// Full symmetry and heredity report for a .apoly file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report_format: Format,
    },
    /// Apply a construction to a .apoly file.
    Construct {
        #[arg(value_enum)]
        op: Op,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Skip the group-order cross-check in 2^K.
        #[arg(long)]
        no_check: bool,
        /// Vertex limit for 2^K (default 16).
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Work with a .grp group presentation file.
    Group {
        file: PathBuf,
        /// Print the group order by coset enumeration.
        #[arg(long)]
        order: bool,
        /// Build the polytope and print (or write) it as .apoly.
        #[arg(long)]
        build: bool,
        /// Coset limit for the enumeration.
        #[arg(long, default_value = "1000000")]
        limit: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the built-in instances, or export one.
    Catalog {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-run the verification suite.
    Verify {
        /// Only "paper" is supported.
        target: String,
        #[arg(long)]
        slow: bool,
    },
}

fn emit(p: &FacePoset, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => write_poset(p, path).map_err(|e| e.to_string()),
        None => {
            print!("{}", write_poset_string(p));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Validate { file } => {
            let p = read_poset(&file).map_err(|e| e.to_string())?;
            println!("valid polytope of rank {} with {:?} faces per rank", p.rank(), p.counts());
            Ok(())
        }
        Command::Analyze { file, report_format } => {
            let p = read_poset(&file).map_err(|e| e.to_string())?;
            let a = analyze(&p).map_err(|e| e.to_string())?;
            let fmt = match report_format {
                Format::Text => ReportFormat::Text,
                Format::Machine => ReportFormat::Machine,
            };
            print!("{}", render_report(&a, fmt));
            Ok(())
        }
        Command::Construct { op, input, output, no_check, max_vertices } => {
            let p = read_poset(&input).map_err(|e| e.to_string())?;
            let mut limits = Limits::default();
            if let Some(v) = max_vertices {
                limits.max_two_power_vertices = v;
            }
            let out = match op {
                Op::Medial => constructions::medial(&p),
                Op::Halved => constructions::halved(&p),
                Op::Twopower => constructions::two_power_with_limits(&p, !no_check, &limits),
                Op::Extension => constructions::chiral_extension_with_limits(&p, &limits),
                Op::Alternating => constructions::alternating(&p),
                Op::Dual => Ok(p.dual()),
            }
            .map_err(|e| e.to_string())?;
            emit(&out, Some(&output))
        }
        Command::Group { file, order, build, limit, output } => {
            if order == build {
                return Err("pass exactly one of --order and --build".into());
            }
            let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
            let pres = parse_presentation(&text).map_err(|e| e.to_string())?;
            if order {
                let table = coset_enumerate(&pres, &[], limit).map_err(|e| e.to_string())?;
                println!("{}", table.coset_count());
                Ok(())
            } else {
                let fg = build_polytope(&pres, limit).map_err(|e| e.to_string())?;
                let p = fg.to_poset().map_err(|e| e.to_string())?;
                emit(&p, output.as_ref())
            }
        }
        Command::Catalog { name, output } => match name {
            None => {
                for e in catalog_entries() {
                    println!("{:<24} {}", e.name, e.description);
                }
                Ok(())
            }
            Some(name) => {
                let p = catalog_get(&name).map_err(|e| e.to_string())?;
                emit(&p, output.as_ref())
            }
        },
        Command::Verify { target, slow } => {
            if target != "paper" {
                return Err(format!("unknown verification target '{target}'"));
            }
            let outcomes = run_suite(slow);
            let mut ok = true;
            for o in &outcomes {
                println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
                ok &= o.passed;
            }
            if ok {
                Ok(())
            } else {
                Err("verification failed".into())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
