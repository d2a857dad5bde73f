//! The `phcalc` command-line front end.
//!
//! Each subcommand is a function from parsed arguments to the text it prints,
//! so the binary is a thin wrapper that maps [`CliError`] to exit codes.

pub mod bench;
pub mod check;
mod error;
pub mod formats;
pub mod render;

use std::fs;
use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phcalc_core::random::{default_vertices, random_level_facets, FiltrationParams};
use phcalc_core::{persistence, Barcode, BettiTable, Filtration, SimplicialComplex};

pub use error::CliError;
use formats::{BarcodeRecord, FiltrationFile};

#[derive(Debug, Parser)]
#[command(name = "phcalc", version, about = "Exact persistent homology over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FiltrationInput {
    /// Filtration file (JSON), or `-` for standard input.
    pub file: String,

    /// Read each level as the facets added at that level rather than the
    /// full facet list.
    #[arg(long)]
    pub incremental: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti number of the complex spanned by a facet list.
    Betti {
        /// Facet list, one facet per line, or `-` for standard input.
        file: String,
        dim: usize,
    },
    /// Persistent Betti number: classes of level J still alive at level P.
    Pbetti {
        #[command(flatten)]
        input: FiltrationInput,
        n: usize,
        j: usize,
        p: usize,
    },
    /// Multiplicity of the interval [J, P); P may be `inf`.
    Mu {
        #[command(flatten)]
        input: FiltrationInput,
        n: usize,
        j: usize,
        p: String,
    },
    /// Barcode of one dimension, or of every dimension up to the top one.
    Barcode {
        #[command(flatten)]
        input: FiltrationInput,
        /// Homology dimension; all dimensions when omitted.
        dim: Option<usize>,
        #[arg(long, conflicts_with = "dim")]
        all_dims: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify boundary, inclusion and fundamental-lemma invariants.
    Check {
        #[command(flatten)]
        input: FiltrationInput,
        /// Highest homology dimension to check; defaults to the top dimension.
        #[arg(long)]
        max_dim: Option<usize>,
        /// Also compare against brute-force enumeration where feasible.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a random filtration of triangles.
    Gen {
        #[arg(long)]
        triangles: usize,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Defaults to 3 * ceil(sqrt(triangles)).
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
    },
    /// Time Betti and persistent-Betti computations on random filtrations.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 50, 100, 200, 500])]
        triangles: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a successful or invariant-failing command: what to print and
/// the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(Path::new(path)).map_err(io_err)
    }
}

pub fn load_filtration(input: &FiltrationInput) -> Result<Filtration, CliError> {
    FiltrationFile::parse(&read_input(&input.file)?)?.to_filtration(input.incremental)
}

fn usage(e: phcalc_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn barcode_or_invariant(table: &BettiTable) -> Result<Barcode, CliError> {
    table.barcode().map_err(|e| CliError::Invariant(e.to_string()))
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Betti { file, dim } => {
            let facets = formats::parse_complex(&read_input(file)?)?;
            let k = SimplicialComplex::closure_of_facets(facets);
            Ok(Output::ok(format!("{}\n", k.betti(*dim))))
        }
        Command::Pbetti { input, n, j, p } => {
            let f = load_filtration(input)?;
            let b = persistence::persistent_betti(&f, *n, *j, *p).map_err(usage)?;
            Ok(Output::ok(format!("{b}\n")))
        }
        Command::Mu { input, n, j, p } => {
            let f = load_filtration(input)?;
            let value = if p == "inf" || p == "infinity" {
                persistence::mu_infinity(&f, *n, *j)
            } else {
                let p: usize = p
                    .parse()
                    .map_err(|_| CliError::Usage(format!("death level must be an integer or `inf`, got `{p}`")))?;
                persistence::mu(&f, *n, *j, p)
            }
            .map_err(usage)?;
            Ok(Output::ok(format!("{value}\n")))
        }
        Command::Barcode {
            input,
            dim,
            all_dims: _,
            format,
        } => {
            let f = load_filtration(input)?;
            let dims: Vec<usize> = match dim {
                Some(d) => vec![*d],
                None => (0..=f.top_dimension().unwrap_or(0)).collect(),
            };
            let barcodes = dims
                .iter()
                .map(|&n| barcode_or_invariant(&BettiTable::compute(&f, n)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::ok(render_barcodes(&barcodes, f.last_level(), *format, dim.is_some())))
        }
        Command::Check {
            input,
            max_dim,
            oracle,
        } => {
            let f = load_filtration(input)?;
            let max_dim = max_dim.unwrap_or_else(|| f.top_dimension().unwrap_or(0));
            let oracle = if *oracle {
                Some(check::oracle_from_env().map_err(CliError::Usage)?)
            } else {
                None
            };
            let report = check::run_checks(&f, max_dim, oracle);
            let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
            stdout.push('\n');
            Ok(Output {
                stdout,
                code: if report.passed { 0 } else { 3 },
            })
        }
        Command::Gen {
            triangles,
            levels,
            vertices,
            seed,
            output,
        } => {
            let vertices = vertices.unwrap_or_else(|| default_vertices(*triangles));
            if *triangles < 1 || *levels < 1 || vertices < 3 {
                return Err(CliError::Usage(
                    "need --triangles >= 1, --levels >= 1 and --vertices >= 3".into(),
                ));
            }
            let params = FiltrationParams {
                triangles: *triangles,
                levels: *levels,
                vertices,
                seed: *seed,
            };
            let name = format!(
                "random triangles={triangles} levels={levels} vertices={vertices} seed={seed}"
            );
            let json = FiltrationFile::from_level_facets(Some(name), &random_level_facets(&params)).to_json();
            match output.as_deref() {
                None | Some("-") => Ok(Output::ok(json)),
                Some(path) => {
                    fs::write(path, json).map_err(|source| CliError::Io {
                        path: path.to_string(),
                        source,
                    })?;
                    Ok(Output::ok(String::new()))
                }
            }
        }
        Command::Bench {
            triangles,
            levels,
            seed,
        } => {
            if *levels < 1 || triangles.iter().any(|&t| t < 1) {
                return Err(CliError::Usage("need --levels >= 1 and triangle counts >= 1".into()));
            }
            Ok(Output::ok(bench::format_table(&bench::run(triangles, *levels, *seed))))
        }
    }
}

/// Renders barcodes. Text output prefixes each dimension with a `#` header
/// line; every other line is one bar.
pub fn render_barcodes(barcodes: &[Barcode], last_level: usize, format: Format, single: bool) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for b in barcodes {
                out.push_str(&format!("# dimension {}, levels 0..{last_level}\n", b.dimension));
                out.push_str(&render::render_text(b, last_level));
            }
            out
        }
        Format::Structured => {
            let records: Vec<BarcodeRecord> = barcodes.iter().map(BarcodeRecord::from).collect();
            let mut s = if single && records.len() == 1 {
                serde_json::to_string_pretty(&records[0])
            } else {
                serde_json::to_string_pretty(&records)
            }
            .expect("barcodes serialize");
            s.push('\n');
            s
        }
        Format::Svg => render::render_svg(barcodes, last_level),
    }
}
