//! `mvvd`: build the matrices of the multivariate Vandermonde identities,
//! verify the identities, and test point configurations for general
//! position.
//!
//! Every failure prints one line `error: <code>: <message>` to stderr and
//! exits with status 2. `verify` and `selftest` exit 1 when the computation
//! succeeds but the outcome is not the expected one.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mvvd_core::acceptance::{run_all, SuiteConfig, DEFAULT_SYMBOLIC_CAP};
use mvvd_core::format::{read_matrix, to_pretty_json, write_matrix, BasisDocument};
use mvvd_core::genpos::{
    bench_genpos, in_general_position, in_general_position_via_eta_with, random_configuration,
    PointConfiguration,
};
use mvvd_core::random::{random_matrix, ring_from_tag, symbolic_matrix, trial_rng};
use mvvd_core::vandermonde::{
    eta_matrix, hdv_shape, monomial_basis, mu_matrix, sym_power_matrix, symbolic_points,
    verify_abstract, verify_affine, verify_column_lemma, verify_dual, verify_hdv, verify_naive,
    verify_sym_power, veronese_matrix,
};
use mvvd_core::{binomial, DetAlgorithm, Error, ExactMatrix, Identity, Ring, VerificationReport};

#[derive(Parser)]
#[command(
    name = "mvvd",
    version,
    about = "Exact multivariate Vandermonde determinants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the degree-d monomials in n+1 variables, descending lex order.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Degree-d Veronese image of the input rows.
    Veronese {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Matrix of maximal minors omitting one row set and one column.
    Mu {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Dual matrix: products of d rows read as linear forms.
    Eta {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// d-th symmetric power of a square matrix.
    Sym {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Check one identity on an input file, a seeded random matrix or a
    /// matrix of formal unknowns.
    Verify(VerifyArgs),
    /// Decide whether a point configuration is in general position.
    Genpos(GenposArgs),
    /// Time the minor route against the dual-determinant route.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a tenth of the trials.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 2014)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SYMBOLIC_CAP)]
        symbolic_cap: usize,
        /// Also write a JSON summary here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Matrix document to read.
    #[arg(long)]
    input: PathBuf,
    /// Convert integer entries into this ring after reading.
    #[arg(long, value_enum)]
    ring: Option<RingTag>,
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, value_enum, default_value_t = RingTag::Int)]
    ring: RingTag,
    /// Prime modulus for mod_p (default 1000003).
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingTag {
    Int,
    #[value(name = "mod_p")]
    ModP,
    Poly,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Affine,
    Hdv,
    Dual,
    Lemma,
    Sym,
    Abstract,
    Naive,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    ring: Option<RingTag>,
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "auto")]
    algorithm: DetAlgorithm,
    /// Use a matrix of formal unknowns over the polynomial ring.
    #[arg(long)]
    symbolic: bool,
    /// Largest matrix order allowed with --symbolic.
    #[arg(long, default_value_t = DEFAULT_SYMBOLIC_CAP)]
    symbolic_cap: usize,
    /// Column operation scalar for the lemma.
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    alpha: i64,
    #[arg(long, default_value_t = 0)]
    src: usize,
    #[arg(long, default_value_t = 1)]
    dst: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct GenposArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Projective dimension of a random configuration.
    #[arg(long)]
    n: Option<usize>,
    /// Number of random points.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    ring: Option<RingTag>,
    #[arg(long)]
    modulus: Option<u64>,
    /// Decide with one determinant of the dual matrix instead of the minors.
    #[arg(long)]
    eta: bool,
    #[arg(long, default_value = "auto")]
    algorithm: DetAlgorithm,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Core(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn line(&self) -> String {
        match self {
            Failure::Core(e) => format!("error: {}: {e}", e.code()),
            Failure::Io(msg) => format!("error: io-error: {msg}"),
            Failure::Usage(msg) => format!("error: usage: {msg}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!(
                "{}",
                Failure::Usage(first.trim_start_matches("error: ").to_string()).line()
            );
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", f.line());
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<bool> {
    match command {
        Command::Basis { n, d, out } => {
            let doc = BasisDocument::from_basis(&monomial_basis(n, d)?);
            emit(&out, &to_pretty_json(&doc))?;
        }
        Command::Veronese { d, input, out } => {
            emit(&out, &write_matrix(&veronese_matrix(&load(&input)?, d)?))?;
        }
        Command::Mu { input, out } => emit(&out, &write_matrix(&mu_matrix(&load(&input)?)?))?,
        Command::Eta { d, input, out } => {
            emit(&out, &write_matrix(&eta_matrix(&load(&input)?, d)?))?;
        }
        Command::Sym { d, input, out } => {
            emit(&out, &write_matrix(&sym_power_matrix(&load(&input)?, d)?))?;
        }
        Command::Verify(args) => return verify(args),
        Command::Genpos(args) => return genpos(args),
        Command::Bench {
            n,
            d,
            trials,
            seed,
            ring,
            out,
        } => {
            let ring = numeric_ring(ring.ring, ring.modulus)?;
            let report = bench_genpos(n, d, trials, seed, &ring)?;
            emit(&out, &to_pretty_json(&report))?;
        }
        Command::Selftest {
            quick,
            seed,
            symbolic_cap,
            output,
        } => {
            let cfg = SuiteConfig {
                seed,
                quick,
                symbolic_cap,
            };
            let outcomes = run_all(&cfg);
            for o in &outcomes {
                println!("{o}");
            }
            let passed = outcomes.iter().all(|o| o.passed);
            if let Some(path) = output {
                let doc = json!({
                    "seed": seed,
                    "quick": quick,
                    "passed": passed,
                    "criteria": outcomes.iter().map(|o| json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "seconds": o.elapsed.as_secs_f64(),
                        "detail": o.detail,
                    })).collect::<Vec<_>>(),
                });
                write_file(&path, &to_pretty_json(&doc))?;
            }
            return Ok(passed);
        }
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> CliResult<bool> {
    let alg = args.algorithm;
    let report = match args.identity {
        IdentityArg::Affine => {
            let points = match (&args.input, args.symbolic) {
                (Some(path), _) => {
                    let m = read_input(path, args.ring, args.modulus)?;
                    if m.cols() != 1 {
                        return Err(Error::Shape(format!(
                            "affine points are a single column, got {} columns",
                            m.cols()
                        ))
                        .into());
                    }
                    m.entries().to_vec()
                }
                (None, true) => {
                    let d = need(args.d, "--d")?;
                    check_cap(d + 1, args.symbolic_cap)?;
                    symbolic_points(d)?
                }
                (None, false) => {
                    let d = need(args.d, "--d")?;
                    let ring = numeric_ring(args.ring.unwrap_or(RingTag::Int), args.modulus)?;
                    random_matrix(&mut trial_rng(args.seed, 0), &ring, d + 1, 1)
                        .entries()
                        .to_vec()
                }
            };
            verify_affine(&points, alg)?
        }
        IdentityArg::Sym => {
            let u = match &args.input {
                Some(path) => read_input(path, args.ring, args.modulus)?,
                None => {
                    let m = need(args.n, "--n")?;
                    let d = need(args.d, "--d")?;
                    if args.symbolic {
                        check_cap(binomial(m + d - 1, d), args.symbolic_cap)?;
                    }
                    generate(&args, m, m)?
                }
            };
            let d = need(args.d, "--d")?;
            verify_sym_power(&u, d, alg)?
        }
        IdentityArg::Naive => match &args.input {
            Some(path) => verify_naive(&read_input(path, args.ring, args.modulus)?, alg)?,
            None => {
                let n = need(args.n, "--n")?;
                let d = need(args.d, "--d")?;
                if n == 0 {
                    return Err(Error::Unsupported("n must be >= 1".into()).into());
                }
                let rows = binomial(n + d, n);
                if args.symbolic {
                    check_cap(rows, args.symbolic_cap)?;
                }
                let x = generate(&args, rows, n + 1)?;
                seeded(verify_naive(&x, alg)?, &args)
            }
        },
        IdentityArg::Hdv | IdentityArg::Dual | IdentityArg::Lemma | IdentityArg::Abstract => {
            let x = match &args.input {
                Some(path) => {
                    let x = read_input(path, args.ring, args.modulus)?;
                    let (n, d) = hdv_shape(&x)?;
                    for (flag, given, actual) in [("--n", args.n, n), ("--d", args.d, d)] {
                        if given.is_some_and(|g| g != actual) {
                            return Err(Error::Shape(format!(
                                "{flag} {} disagrees with the input shape ({}x{} gives {flag} {actual})",
                                given.unwrap_or(0),
                                x.rows(),
                                x.cols()
                            ))
                            .into());
                        }
                    }
                    x
                }
                None => {
                    let n = need(args.n, "--n")?;
                    let d = need(args.d, "--d")?;
                    if n == 0 {
                        return Err(Error::Unsupported("n must be >= 1".into()).into());
                    }
                    if args.symbolic {
                        check_cap(binomial(n + d, n), args.symbolic_cap)?;
                    }
                    generate(&args, n + d, n + 1)?
                }
            };
            let report = match args.identity {
                IdentityArg::Hdv => verify_hdv(&x, alg)?,
                IdentityArg::Dual => verify_dual(&x, alg)?,
                IdentityArg::Abstract => verify_abstract(&x, alg)?,
                _ => {
                    let alpha = x.ring().from_int(args.alpha);
                    verify_column_lemma(&x, &alpha, args.src, args.dst, alg)?
                }
            };
            seeded(report, &args)
        }
    };
    emit(&args.out, &to_pretty_json(&report.to_document()))?;
    Ok(report.matches_expectation())
}

/// Records the seed only when the matrix was drawn from it.
fn seeded(report: VerificationReport, args: &VerifyArgs) -> VerificationReport {
    if args.input.is_none() && !args.symbolic && report.identity != Identity::Affine {
        report.with_seed(args.seed)
    } else {
        report
    }
}

/// Random matrix from the seed, or formal unknowns with --symbolic.
fn generate(args: &VerifyArgs, rows: usize, cols: usize) -> CliResult<ExactMatrix> {
    if args.symbolic {
        if matches!(args.ring, Some(RingTag::Int | RingTag::ModP)) {
            return Err(
                Error::Unsupported("--symbolic works over the poly ring only".into()).into(),
            );
        }
        return Ok(symbolic_matrix(rows, cols)?);
    }
    let ring = numeric_ring(args.ring.unwrap_or(RingTag::Int), args.modulus)?;
    Ok(random_matrix(
        &mut trial_rng(args.seed, 0),
        &ring,
        rows,
        cols,
    ))
}

fn genpos(args: GenposArgs) -> CliResult<bool> {
    let points = match (&args.input, args.n, args.m) {
        (Some(path), None, None) => read_input(path, args.ring, args.modulus)?,
        (None, Some(n), Some(m)) => {
            let ring = numeric_ring(args.ring.unwrap_or(RingTag::Int), args.modulus)?;
            random_configuration(&mut trial_rng(args.seed, 0), &ring, n, m, 0.0)?
                .points()
                .clone()
        }
        _ => {
            return Err(Failure::Usage(
                "genpos takes either --input or both --n and --m".into(),
            ))
        }
    };
    let cfg = PointConfiguration::new(points)?;
    let verdict = if args.eta {
        in_general_position_via_eta_with(&cfg, args.algorithm)?
    } else {
        in_general_position(&cfg)?
    };
    emit(&args.out, &to_pretty_json(&verdict))?;
    Ok(true)
}

fn need(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| Failure::Usage(format!("{flag} is required here")))
}

fn check_cap(size: usize, cap: usize) -> CliResult<()> {
    if size > cap {
        return Err(Error::SymbolicCap { size, cap }.into());
    }
    Ok(())
}

fn numeric_ring(tag: RingTag, modulus: Option<u64>) -> CliResult<Ring> {
    match tag {
        RingTag::Int if modulus.is_some() => {
            Err(Failure::Usage("--modulus needs --ring mod_p".into()))
        }
        RingTag::Int => Ok(ring_from_tag("int", None)?),
        RingTag::ModP => Ok(ring_from_tag("mod_p", modulus)?),
        RingTag::Poly => Err(Error::Unsupported(
            "random poly matrices are not drawn; use --symbolic or --input".into(),
        )
        .into()),
    }
}

fn load(input: &Input) -> CliResult<ExactMatrix> {
    read_input(&input.input, input.ring, input.modulus)
}

fn read_input(path: &Path, ring: Option<RingTag>, modulus: Option<u64>) -> CliResult<ExactMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let m = read_matrix(&text)?;
    match ring {
        None if modulus.is_some() => Err(Failure::Usage("--modulus needs --ring mod_p".into())),
        None => Ok(m),
        Some(RingTag::Poly) if matches!(m.ring(), Ring::Polynomial(_)) => Ok(m),
        Some(RingTag::Poly) => {
            Err(Error::Unsupported("poly matrices are read from poly documents only".into()).into())
        }
        Some(tag) => Ok(m.map_into(&numeric_ring(tag, modulus)?)?),
    }
}

fn emit(out: &Output, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                Err(Failure::Io(format!("cannot write to stdout: {e}")))
            }
            _ => Ok(()),
        },
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}
