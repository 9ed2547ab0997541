mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Report};

#[derive(Parser, Debug)]
#[command(
    name = "akcurves",
    version,
    about = "Exact computations with A_k singularities of plane curves and links between Hirzebruch surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient field Q(sqrt(d)): 0 for Q, -1 for Q(i), -3 for Q(w) with w = sqrt(-3).
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true,
          value_parser = parse_field)]
    field: i64,

    /// Emit the report as JSON: {command, inputs, results, pass}.
    #[arg(long, global = true)]
    json: bool,

    /// Print the elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

/// A polynomial given inline or read from a file.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Polynomial text, e.g. "y^2 - x^5".
    #[arg(allow_hyphen_values = true)]
    poly: Option<String>,
    /// Read the polynomial from a file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the singularity of an affine curve at a point.
    Classify {
        #[command(flatten)]
        input: PolyInput,
        /// Affine point "x,y".
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        at: String,
    },
    /// Local intersection number of two affine curves at a point.
    Intersect {
        /// Two polynomials, unless given by --file.
        #[arg(num_args = 0..=2, allow_hyphen_values = true)]
        polys: Vec<String>,
        /// Read a polynomial from a file (repeatable).
        #[arg(long)]
        file: Vec<PathBuf>,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        at: String,
    },
    /// Test whether a polynomial has bidegree (a, b).
    Bidegree {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 3)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Homogenize a polynomial in x, y with respect to z.
    Homogenize {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Set z = 1 in a homogeneous polynomial in x, y, z.
    Dehomogenize {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Apply the elementary link centered at a point to a curve on F_m.
    Link {
        #[command(flatten)]
        input: PolyInput,
        /// Surface index.
        #[arg(long)]
        m: u32,
        /// Center "[x0:x1;y0:y1]".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run and verify the transversal chain behind a catalog witness.
    Chain {
        #[arg(long)]
        b: u32,
        /// Chain length; defaults to the length used by the catalog.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build the catalog witness for bidegree (a, b) and classify it.
    Witness {
        #[arg(long, default_value_t = 3)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Upper bounds for N(3, b).
    Bounds {
        /// One value of b; defaults to 3..=12.
        #[arg(long)]
        b: Option<u32>,
    },
    /// Verify the table of N(3, b) for b = 3..=12.
    VerifyTable {
        /// Restrict to one row.
        #[arg(long)]
        b: Option<u32>,
    },
    /// Check the substitution identities used by the constructions.
    Identities,
}

fn parse_field(s: &str) -> Result<i64, String> {
    match s.trim() {
        "0" => Ok(0),
        "-1" => Ok(-1),
        "-3" => Ok(-3),
        _ => Err(format!("field must be 0, -1 or -3, got '{}'", s)),
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let field = cli.field;
    match &cli.command {
        Command::Classify { input, at } => {
            commands::classify(&commands::read(&input.poly, &input.file)?, at, field)
        }
        Command::Intersect { polys, file, at } => {
            let mut texts: Vec<String> = polys.clone();
            for f in file {
                texts.push(commands::read(&None, &Some(f.clone()))?);
            }
            if texts.len() != 2 {
                return Err(CliError::Usage(format!(
                    "intersect needs exactly two polynomials, got {}",
                    texts.len()
                )));
            }
            commands::intersect(&texts[0], &texts[1], at, field)
        }
        Command::Bidegree { input, a, b } => {
            commands::bidegree(&commands::read(&input.poly, &input.file)?, *a, *b, field)
        }
        Command::Homogenize { input } => {
            commands::homogenize(&commands::read(&input.poly, &input.file)?, field)
        }
        Command::Dehomogenize { input } => {
            commands::dehomogenize(&commands::read(&input.poly, &input.file)?, field)
        }
        Command::Link { input, m, point } => {
            commands::link(&commands::read(&input.poly, &input.file)?, *m, point, field)
        }
        Command::Chain { b, n } => commands::chain(*b, *n),
        Command::Witness { a, b } => commands::witness(*a, *b),
        Command::Bounds { b } => commands::bounds(*b),
        Command::VerifyTable { b } => commands::verify_table(*b),
        Command::Identities => commands::identities(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.text);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
