use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use midconv::algebra::{
    parse_rational, simultaneous_conjugacy, AlgebraError, ConjugacySearch, Field, Matrix, Rational,
};
use midconv::format::{
    emit_conjugator, emit_exhausted, emit_not_conjugate, emit_okubo, emit_report, emit_scan,
    emit_system, parse_system, parse_tuple, report_table, AnySystem, AnyTuple, Codec,
};
use midconv::fuchsian::FuchsianSystem;
use midconv::pcurvature::{nilpotence_report, scan_primes, Method, ScanOptions};

mod reproduce;

/// Exit status for a failed check.
const CHECK_FAILED: u8 = 1;
/// Exit status for malformed input.
const BAD_INPUT: u8 = 2;

/// Environment variable holding the default coefficient bound of the
/// conjugacy search.
const BOUND_VAR: &str = "MIDCONV_CONJUGACY_BOUND";

#[derive(Parser, Debug)]
#[command(
    name = "midconv",
    version,
    about = "Middle convolution and p-curvature of Fuchsian systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Middle (or naive) convolution of a system.
    Convolve {
        #[arg(long)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Emit the naive convolution instead.
        #[arg(long)]
        naive: bool,
    },
    /// p-curvature nilpotence report at one prime.
    Pcurv {
        #[arg(long)]
        input: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        /// Print an aligned table instead of a document.
        #[arg(long)]
        table: bool,
        /// Report zero milliseconds, for reproducible output.
        #[arg(long)]
        no_timings: bool,
    },
    /// Nilpotence reports over an inclusive prime range `lo..hi`.
    Scan {
        #[arg(long)]
        input: String,
        /// Defaults to `2..47` for systems of size at most 2, `2..13` otherwise.
        #[arg(long)]
        primes: Option<String>,
        /// Scan the middle convolution with this parameter.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        #[arg(long)]
        table: bool,
        #[arg(long)]
        no_timings: bool,
        /// Exit with status 1 unless every good prime is nilpotent.
        #[arg(long)]
        expect_nilpotent: bool,
    },
    /// Tensor product of two systems on the same points.
    Tensor { a: String, b: String },
    /// Dual system.
    Dual {
        #[arg(long)]
        input: String,
    },
    /// Okubo normal form of the naive convolution.
    Okubo {
        #[arg(long)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Simultaneous conjugacy of two systems or two tuples; exits 1 unless
    /// a conjugating matrix is found.
    Conjugate {
        a: String,
        b: String,
        /// Coefficient bound of the search (default from the environment or 3).
        #[arg(long)]
        bound: Option<i64>,
        /// Largest number of basis elements combined.
        #[arg(long, default_value_t = 2)]
        terms: usize,
    },
    /// Re-run one of the built-in reproductions.
    Reproduce {
        #[arg(value_enum)]
        name: reproduce::Name,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Recursive,
    Okubo,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Recursive => Method::Recursive,
            MethodArg::Okubo => Method::Okubo,
        }
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: BAD_INPUT,
        message: message.into(),
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| bad_input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| bad_input(format!("{path}: {e}")))
    }
}

fn load_system(path: &str) -> Result<AnySystem, Failure> {
    parse_system(&read_input(path)?).map_err(|e| bad_input(format!("{path}: {e}")))
}

fn load_rational_system(
    path: &str,
) -> Result<FuchsianSystem<midconv::algebra::Rationals>, Failure> {
    match load_system(path)? {
        AnySystem::Q(f) => Ok(f),
        AnySystem::Cyclotomic(_) => Err(bad_input(format!(
            "{path}: p-curvature needs a system over Q"
        ))),
    }
}

fn parse_mu(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|_| bad_input(format!("not a rational: {s:?}")))
}

fn default_prime_ceiling(size: usize) -> u64 {
    if size <= 2 {
        47
    } else {
        13
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let err = || bad_input(format!("expected a prime range lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(err)?;
    let lo: u64 = lo.trim().parse().map_err(|_| err())?;
    let hi: u64 = hi.trim().parse().map_err(|_| err())?;
    if lo > hi || hi >= 1 << 32 {
        return Err(err());
    }
    Ok((lo, hi))
}

fn algebra_failure(e: AlgebraError) -> Failure {
    Failure {
        code: CHECK_FAILED,
        message: e.to_string(),
    }
}

fn convolve<F: Codec>(f: &FuchsianSystem<F>, mu: &F::Elem, naive: bool) -> Outcome {
    let out = if naive {
        f.naive_convolution(mu)
    } else {
        f.middle_convolution(mu).map_err(algebra_failure)?.middle
    };
    Ok((emit_system(&out), 0))
}

fn conjugate<F: Codec>(a: &[Matrix<F>], b: &[Matrix<F>], search: ConjugacySearch) -> Outcome {
    match simultaneous_conjugacy(a, b, search) {
        Ok(Some(x)) => Ok((emit_conjugator(&x), 0)),
        Ok(None) => Ok((emit_not_conjugate(), CHECK_FAILED)),
        Err(AlgebraError::Exhausted { dim }) => Ok((emit_exhausted(dim), CHECK_FAILED)),
        Err(e) => Err(bad_input(e.to_string())),
    }
}

fn default_bound() -> Result<i64, Failure> {
    match std::env::var(BOUND_VAR) {
        Ok(v) => v
            .parse()
            .ok()
            .filter(|b| *b > 0)
            .ok_or_else(|| bad_input(format!("{BOUND_VAR} must be a positive integer"))),
        Err(_) => Ok(ConjugacySearch::default().coeff_bound),
    }
}

/// Documents of either kind, for `conjugate`.
enum Operand {
    System(AnySystem),
    Tuple(AnyTuple),
}

fn load_operand(path: &str) -> Result<Operand, Failure> {
    let text = read_input(path)?;
    match parse_system(&text) {
        Ok(s) => Ok(Operand::System(s)),
        Err(system_err) => parse_tuple(&text)
            .map(Operand::Tuple)
            .map_err(|_| bad_input(format!("{path}: {system_err}"))),
    }
}

fn same_points<F: Field>(a: &FuchsianSystem<F>, b: &FuchsianSystem<F>) -> Result<(), Failure> {
    if a.points() != b.points() {
        return Err(bad_input("systems have different singular points"));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Convolve { input, mu, naive } => {
            let mu = parse_mu(&mu)?;
            match load_system(&input)? {
                AnySystem::Q(f) => convolve(&f, &mu, naive),
                AnySystem::Cyclotomic(f) => {
                    let m = f.field().rational(mu);
                    convolve(&f, &m, naive)
                }
            }
        }
        Command::Pcurv {
            input,
            prime,
            method,
            table,
            no_timings,
        } => {
            let f = load_rational_system(&input)?;
            let r = nilpotence_report(&f, prime, method.into())
                .map_err(|e| bad_input(e.to_string()))?;
            let out = if table {
                report_table(std::slice::from_ref(&r))
            } else {
                emit_report(&r, !no_timings)
            };
            Ok((out, 0))
        }
        Command::Scan {
            input,
            primes,
            mu,
            jobs,
            method,
            table,
            no_timings,
            expect_nilpotent,
        } => {
            let f = load_rational_system(&input)?;
            let (lo, hi) = match primes {
                Some(r) => parse_range(&r)?,
                None => (2, default_prime_ceiling(f.size())),
            };
            let mut options = ScanOptions::new(lo, hi);
            options.mu = mu.as_deref().map(parse_mu).transpose()?;
            options.jobs = jobs;
            options.method = method.into();
            let report = scan_primes(&f, &options).map_err(|e| bad_input(e.to_string()))?;
            let out = if table {
                report_table(&report.records)
            } else {
                emit_scan(&report, options.mu.as_ref(), !no_timings)
            };
            let code = if expect_nilpotent && !report.verdict() {
                CHECK_FAILED
            } else {
                0
            };
            Ok((out, code))
        }
        Command::Tensor { a, b } => {
            let tensor_err = |e: midconv::fuchsian::FuchsianError| bad_input(e.to_string());
            match (load_system(&a)?, load_system(&b)?) {
                (AnySystem::Q(x), AnySystem::Q(y)) => {
                    Ok((emit_system(&x.tensor(&y).map_err(tensor_err)?), 0))
                }
                (AnySystem::Cyclotomic(x), AnySystem::Cyclotomic(y)) if x.field() == y.field() => {
                    Ok((emit_system(&x.tensor(&y).map_err(tensor_err)?), 0))
                }
                _ => Err(bad_input("systems are over different fields")),
            }
        }
        Command::Dual { input } => Ok((
            match load_system(&input)? {
                AnySystem::Q(f) => emit_system(&f.dual()),
                AnySystem::Cyclotomic(f) => emit_system(&f.dual()),
            },
            0,
        )),
        Command::Okubo { input, mu } => {
            let mu = parse_mu(&mu)?;
            Ok((
                match load_system(&input)? {
                    AnySystem::Q(f) => emit_okubo(&f.to_okubo(&mu)),
                    AnySystem::Cyclotomic(f) => {
                        let m = f.field().rational(mu);
                        emit_okubo(&f.to_okubo(&m))
                    }
                },
                0,
            ))
        }
        Command::Conjugate { a, b, bound, terms } => {
            let coeff_bound = match bound {
                Some(b) if b > 0 => b,
                Some(_) => return Err(bad_input("--bound must be positive")),
                None => default_bound()?,
            };
            let search = ConjugacySearch {
                coeff_bound,
                max_terms: terms,
            };
            use AnySystem as S;
            use AnyTuple as T;
            match (load_operand(&a)?, load_operand(&b)?) {
                (Operand::System(S::Q(x)), Operand::System(S::Q(y))) => {
                    same_points(&x, &y)?;
                    conjugate(x.residues(), y.residues(), search)
                }
                (Operand::System(S::Cyclotomic(x)), Operand::System(S::Cyclotomic(y)))
                    if x.field() == y.field() =>
                {
                    same_points(&x, &y)?;
                    conjugate(x.residues(), y.residues(), search)
                }
                (Operand::Tuple(T::Q(x)), Operand::Tuple(T::Q(y))) => {
                    conjugate(x.matrices(), y.matrices(), search)
                }
                (Operand::Tuple(T::Cyclotomic(x)), Operand::Tuple(T::Cyclotomic(y)))
                    if x.field() == y.field() =>
                {
                    conjugate(x.matrices(), y.matrices(), search)
                }
                _ => Err(bad_input("operands are of different kinds or fields")),
            }
        }
        Command::Reproduce { name, jobs } => {
            let report = reproduce::run(name, jobs);
            let code = if report.passed() { 0 } else { CHECK_FAILED };
            Ok((report.emit(), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("midconv: {message}");
            ExitCode::from(code)
        }
    }
}
