//! p-curvature of Fuchsian systems over `F_p(t)`: the derivative recursion,
//! the Okubo product formula, nilpotence reports and prime scans.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{
    primes_in, reduce_rational_mod_p, AlgebraError, Matrix, PolyRing, PrimeField, Rational,
    RationalFunctionField, Rationals, Ring,
};
use crate::fuchsian::{FuchsianError, FuchsianSystem, OkuboSystem};

pub type FpT = RationalFunctionField<PrimeField>;

/// Why a prime was excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BadPrime {
    /// Some residue entry has `p` in its denominator.
    ResidueDenominator { index: usize, value: String },
    /// A singular point has `p` in its denominator.
    PointDenominator { index: usize, value: String },
    /// The convolution parameter has `p` in its denominator.
    ParameterDenominator { value: String },
    /// Two singular points coincide mod `p`.
    PointCollision { first: usize, second: usize },
}

impl fmt::Display for BadPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BadPrime::ResidueDenominator { index, value } => {
                write!(f, "residue {index} has entry {value} with negative order")
            }
            BadPrime::PointDenominator { index, value } => {
                write!(f, "point {index} = {value} has negative order")
            }
            BadPrime::ParameterDenominator { value } => {
                write!(f, "parameter {value} has negative order")
            }
            BadPrime::PointCollision { first, second } => {
                write!(f, "points {first} and {second} collide")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error("the Okubo method needs a system presented in Okubo form")]
    NotOkubo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A Fuchsian system over `Q` reduced modulo a good prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSystem {
    prime: u64,
    mu: Option<u64>,
    system: FuchsianSystem<PrimeField>,
}

impl ReducedSystem {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Reduction of the convolution parameter, if one was given.
    pub fn mu(&self) -> Option<u64> {
        self.mu
    }

    pub fn system(&self) -> &FuchsianSystem<PrimeField> {
        &self.system
    }

    /// Coefficient matrix `C` over `F_p(t)`.
    pub fn coefficient_matrix(&self) -> Matrix<FpT> {
        self.system.coefficient_matrix()
    }
}

/// Reduces `f` (and `mu`) mod `p`. A bad prime is a value, reported with
/// the first failing reason: residues, then the parameter, then points.
pub fn reduce_system_mod_p(
    f: &FuchsianSystem<Rationals>,
    mu: Option<&Rational>,
    p: u64,
) -> Result<ReducedSystem, BadPrime> {
    let field = PrimeField::new(p);
    let mut residues = Vec::with_capacity(f.num_points());
    for (index, a) in f.residues().iter().enumerate() {
        let reduced = a
            .try_map(field, |x| {
                reduce_rational_mod_p(x, p).map_err(|_| x.clone())
            })
            .map_err(|x| BadPrime::ResidueDenominator {
                index,
                value: x.to_string(),
            })?;
        residues.push(reduced);
    }
    let mu = match mu {
        Some(m) => {
            Some(
                reduce_rational_mod_p(m, p).map_err(|_| BadPrime::ParameterDenominator {
                    value: m.to_string(),
                })?,
            )
        }
        None => None,
    };
    let mut points = Vec::with_capacity(f.num_points());
    for (index, t) in f.points().iter().enumerate() {
        points.push(
            reduce_rational_mod_p(t, p).map_err(|_| BadPrime::PointDenominator {
                index,
                value: t.to_string(),
            })?,
        );
    }
    let system = match FuchsianSystem::new(field, points, residues) {
        Ok(s) => s,
        Err(FuchsianError::DuplicatePoint(first, second)) => {
            return Err(BadPrime::PointCollision { first, second })
        }
        Err(e) => unreachable!("reduction preserves shapes: {e}"),
    };
    Ok(ReducedSystem {
        prime: p,
        mu,
        system,
    })
}

/// `C_n = P_n / Q^n` with `Q = prod (t - t_i)`, as the polynomial matrix
/// `P_n` together with `Q`.
#[derive(Debug, Clone)]
pub struct CurvatureNumerator {
    pub step: usize,
    pub numerator: Matrix<PolyRing<PrimeField>>,
    pub q: crate::algebra::Polynomial<u64>,
}

impl CurvatureNumerator {
    /// `P_n / Q^n` over `F_p(t)`.
    pub fn to_rational(&self) -> Matrix<FpT> {
        let polys = self.numerator.ring().clone();
        let k = RationalFunctionField::new(*polys.base());
        let qn = polys.pow(&self.q, self.step as u64);
        self.numerator
            .map(k.clone(), |x| k.fraction(x.clone(), qn.clone()))
    }
}

/// `C_n` for the system `Y' = C Y`, by `C_{n+1} = C_n' + C_n C` with
/// structural denominators: `P_1 = N`, `P_{n+1} = P_n' Q - n Q' P_n + P_n N`
/// where `C = N / Q`.
pub fn curvature_step(system: &FuchsianSystem<PrimeField>, n: usize) -> CurvatureNumerator {
    assert!(n >= 1);
    let field = *system.field();
    let polys = PolyRing::new(field);
    let size = system.size();
    let q = system
        .points()
        .iter()
        .fold(polys.one(), |acc, t| polys.mul(&acc, &polys.linear(t)));
    let dq = polys.derivative(&q);
    let mut numer = Matrix::zeros(polys.clone(), size, size);
    for (t, a) in system.points().iter().zip(system.residues()) {
        let cofactor = polys.div_exact(&q, &polys.linear(t));
        numer = numer.add(&a.map(polys.clone(), |x| polys.scale(&cofactor, x)));
    }
    let mut p = numer.clone();
    for step in 1..n {
        let dp = p.map(polys.clone(), |x| polys.derivative(x));
        let coeff = polys.scale(&dq, &field.elem(step as i64));
        p = dp
            .map(polys.clone(), |x| polys.mul(x, &q))
            .sub(&p.map(polys.clone(), |x| polys.mul(x, &coeff)))
            .add(&p.mul(&numer));
    }
    CurvatureNumerator {
        step: n,
        numerator: p,
        q,
    }
}

/// The p-curvature `C_p` of a reduced system, over `F_p(t)`.
pub fn curvature_recursive(reduced: &ReducedSystem) -> Matrix<FpT> {
    curvature_step(&reduced.system, reduced.prime as usize).to_rational()
}

/// `(t-T)^{-1}(B-p+1) (t-T)^{-1}(B-p+2) ... (t-T)^{-1}(B-1) (t-T)^{-1}B`
/// over `F_p(t)`, multiplied left to right.
pub fn curvature_okubo(okubo: &OkuboSystem<PrimeField>, p: u64) -> Matrix<FpT> {
    let field = *okubo.field();
    assert_eq!(field.modulus(), p, "Okubo system lives over another prime");
    let k = RationalFunctionField::new(field);
    let resolvent = okubo.resolvent();
    let factor = |j: u64| {
        let shifted = okubo.b().add_scalar(&field.elem(-(j as i64)));
        resolvent.mul(&shifted.map(k.clone(), |x| k.constant(*x)))
    };
    (0..p - 1)
        .rev()
        .fold(factor(p - 1), |acc, j| acc.mul(&factor(j)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Recursive,
    Okubo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Recursive => "recursive",
            Method::Okubo => "okubo",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeStatus {
    Good,
    Bad(BadPrime),
}

/// Outcome of the p-curvature computation at one prime.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub prime: u64,
    pub status: PrimeStatus,
    pub nilpotent: bool,
    /// Minimal `k` with `C_p^k = 0`; present iff nilpotent.
    pub index: Option<usize>,
    pub method: Method,
    pub elapsed: Duration,
}

impl CurvatureReport {
    /// Everything but the timing.
    pub fn outcome(&self) -> (u64, &PrimeStatus, bool, Option<usize>, Method) {
        (
            self.prime,
            &self.status,
            self.nilpotent,
            self.index,
            self.method,
        )
    }

    pub fn is_good(&self) -> bool {
        self.status == PrimeStatus::Good
    }
}

fn index_of(reduced: &ReducedSystem, method: Method) -> Option<usize> {
    match method {
        // C_p = P_p / Q^p has the nilpotency index of P_p
        Method::Recursive => curvature_step(&reduced.system, reduced.prime as usize)
            .numerator
            .nilpotency_index(),
        Method::Okubo => {
            let okubo = reduced.system.as_okubo().expect("checked before reduction");
            curvature_okubo(&okubo, reduced.prime).nilpotency_index()
        }
    }
}

/// Reduces `f` mod `p` and tests its p-curvature for nilpotence.
pub fn nilpotence_report(
    f: &FuchsianSystem<Rationals>,
    p: u64,
    method: Method,
) -> Result<CurvatureReport, CurvatureError> {
    report_with_mu(f, None, p, method)
}

fn report_with_mu(
    f: &FuchsianSystem<Rationals>,
    mu: Option<&Rational>,
    p: u64,
    method: Method,
) -> Result<CurvatureReport, CurvatureError> {
    if !crate::algebra::is_prime(p) || p >= 1 << 32 {
        return Err(CurvatureError::NotPrime(p));
    }
    if method == Method::Okubo && f.as_okubo().is_none() {
        return Err(CurvatureError::NotOkubo);
    }
    let start = Instant::now();
    let (status, index) = match reduce_system_mod_p(f, mu, p) {
        Ok(reduced) => (PrimeStatus::Good, index_of(&reduced, method)),
        Err(bad) => (PrimeStatus::Bad(bad), None),
    };
    Ok(CurvatureReport {
        prime: p,
        status,
        nilpotent: index.is_some(),
        index,
        method,
        elapsed: start.elapsed(),
    })
}

/// Per-prime reports over an inclusive range.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub lo: u64,
    pub hi: u64,
    /// One record per prime, in increasing order.
    pub records: Vec<CurvatureReport>,
}

impl ScanReport {
    /// True when the p-curvature is nilpotent at every good prime.
    pub fn verdict(&self) -> bool {
        self.records
            .iter()
            .filter(|r| r.is_good())
            .all(|r| r.nilpotent)
    }

    /// The bad primes with their reasons.
    pub fn bad_primes(&self) -> Vec<(u64, &BadPrime)> {
        self.records
            .iter()
            .filter_map(|r| match &r.status {
                PrimeStatus::Bad(b) => Some((r.prime, b)),
                PrimeStatus::Good => None,
            })
            .collect()
    }

    pub fn good(&self) -> impl Iterator<Item = &CurvatureReport> {
        self.records.iter().filter(|r| r.is_good())
    }

    /// Records without timings, for comparing runs.
    pub fn outcomes(&self) -> Vec<(u64, &PrimeStatus, bool, Option<usize>, Method)> {
        self.records.iter().map(|r| r.outcome()).collect()
    }
}

/// Options for [`scan_primes`].
#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub lo: u64,
    pub hi: u64,
    /// When set, the scan runs on `mc_mu(F)` and `mu` takes part in the
    /// bad-prime test.
    pub mu: Option<Rational>,
    pub method: Method,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
}

impl ScanOptions {
    pub fn new(lo: u64, hi: u64) -> Self {
        ScanOptions {
            lo,
            hi,
            mu: None,
            method: Method::Recursive,
            jobs: 0,
        }
    }
}

/// Nilpotence reports for every prime in `[lo, hi]`.
pub fn scan_primes(
    f: &FuchsianSystem<Rationals>,
    options: &ScanOptions,
) -> Result<ScanReport, CurvatureError> {
    let target = match &options.mu {
        Some(mu) => f.middle_convolution(mu)?.middle,
        None => f.clone(),
    };
    if options.method == Method::Okubo && target.as_okubo().is_none() {
        return Err(CurvatureError::NotOkubo);
    }
    let primes = primes_in(options.lo, options.hi);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .expect("thread pool");
    let records = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| report_with_mu(&target, options.mu.as_ref(), p, options.method))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(ScanReport {
        lo: options.lo,
        hi: options.hi,
        records,
    })
}

/// One row of [`rank_shift_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankShiftRow {
    pub prime: u64,
    /// Nilpotency index for `F`.
    pub k: Option<usize>,
    /// Nilpotency index for `mc_mu(F)`.
    pub r: Option<usize>,
    pub pass: bool,
}

/// Compares nilpotency indices of `F` and `mc_mu(F)` at the good primes in
/// `[lo, hi]`; `mc_mu(F)` is computed once over `Q`. A prime is good when
/// both systems and `mu` reduce.
pub fn rank_shift_check(
    f: &FuchsianSystem<Rationals>,
    mu: &Rational,
    lo: u64,
    hi: u64,
) -> Result<Vec<RankShiftRow>, CurvatureError> {
    let mc = f.middle_convolution(mu)?.middle;
    let rows = primes_in(lo, hi)
        .into_par_iter()
        .filter_map(|p| {
            let a = reduce_system_mod_p(f, Some(mu), p).ok()?;
            let b = reduce_system_mod_p(&mc, Some(mu), p).ok()?;
            let k = index_of(&a, Method::Recursive);
            let r = index_of(&b, Method::Recursive);
            let pass = match (k, r) {
                (Some(k), Some(r)) => r + 1 >= k && r <= k + 1,
                _ => false,
            };
            Some(RankShiftRow {
                prime: p,
                k,
                r,
                pass,
            })
        })
        .collect();
    Ok(rows)
}

/// `Y' = [[0,1],[1,1]] / t * Y`, whose p-curvature is `(B^p - B) / t^p`.
pub fn fibonacci_system() -> FuchsianSystem<Rationals> {
    FuchsianSystem::new(
        Rationals,
        vec![crate::algebra::rat(0, 1)],
        vec![Matrix::from_ints(Rationals, &[&[0, 1], &[1, 1]])],
    )
    .expect("well formed")
}
