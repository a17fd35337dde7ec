//! End-to-end reproductions of the explicit systems and tuples.

use clap::ValueEnum;
use midconv::algebra::{
    is_integral, rat, simultaneous_conjugacy, ConjugacySearch, Field, Matrix, Rationals,
};
use midconv::fuchsian::{build_g_sequence, krammer_k, target_g, target_h, FuchsianSystem};
use midconv::pcurvature::{rank_shift_check, scan_primes, ScanOptions};
use midconv::tuples::{build_g2_tuple, g2_display_pair, verify_krammer_monodromy};
use serde_json::json;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Name {
    KrammerH,
    KrammerHScan,
    G2System,
    G2Monodromy,
    KrammerMonodromy,
    RankShift,
}

impl Name {
    fn label(self) -> &'static str {
        match self {
            Name::KrammerH => "krammer-h",
            Name::KrammerHScan => "krammer-h-scan",
            Name::G2System => "g2-system",
            Name::G2Monodromy => "g2-monodromy",
            Name::KrammerMonodromy => "krammer-monodromy",
            Name::RankShift => "rank-shift",
        }
    }
}

pub struct Check {
    name: String,
    passed: bool,
    detail: String,
}

pub struct Report {
    name: &'static str,
    checks: Vec<Check>,
}

impl Report {
    fn new(name: Name) -> Self {
        Report {
            name: name.label(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The report document; the human summary goes to stderr.
    pub fn emit(&self) -> String {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            eprintln!("{mark} {}: {}", c.name, c.detail);
        }
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        let doc = json!({"name": self.name, "passed": self.passed(), "checks": checks});
        format!("{doc}\n")
    }
}

fn conjugacy_detail<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>]) -> (bool, String) {
    match simultaneous_conjugacy(a, b, ConjugacySearch::default()) {
        Ok(Some(_)) => (true, "conjugating matrix found and verified".into()),
        Ok(None) => (false, "not conjugate".into()),
        Err(e) => (false, e.to_string()),
    }
}

fn charpolys_agree(a: &FuchsianSystem<Rationals>, b: &FuchsianSystem<Rationals>) -> bool {
    a.size() == b.size()
        && a.residues()
            .iter()
            .zip(b.residues())
            .all(|(x, y)| x.charpoly() == y.charpoly())
}

fn scan_check(
    report: &mut Report,
    label: &str,
    f: &FuchsianSystem<Rationals>,
    lo: u64,
    hi: u64,
    max_index: Option<usize>,
    jobs: usize,
) {
    let mut options = ScanOptions::new(lo, hi);
    options.jobs = jobs;
    match scan_primes(f, &options) {
        Ok(s) => {
            let good: Vec<_> = s.good().collect();
            let within = good
                .iter()
                .all(|r| max_index.is_none_or(|m| r.index.is_some_and(|k| k <= m)));
            let indices: Vec<String> = good
                .iter()
                .map(|r| {
                    format!(
                        "{}:{}",
                        r.prime,
                        r.index.map_or("-".into(), |k| k.to_string())
                    )
                })
                .collect();
            let bad: Vec<String> = s.bad_primes().iter().map(|(p, _)| p.to_string()).collect();
            report.check(
                format!("{label} nilpotent on [{lo}, {hi}]"),
                s.verdict() && within && !good.is_empty(),
                format!(
                    "indices {}; bad primes {}",
                    indices.join(" "),
                    bad.join(" ")
                ),
            );
        }
        Err(e) => report.check(format!("{label} scan"), false, e.to_string()),
    }
}

pub fn run(name: Name, jobs: usize) -> Report {
    let mut report = Report::new(name);
    match name {
        Name::KrammerH => {
            let k = krammer_k();
            let h = target_h();
            match k.middle_convolution(&rat(1, 6)) {
                Ok(data) => {
                    let mc = data.middle;
                    report.check(
                        "dimension",
                        mc.size() == 2,
                        format!("mc has size {}", mc.size()),
                    );
                    report.check(
                        "characteristic polynomials",
                        charpolys_agree(&mc, &h),
                        "residues at 0, 1, 81",
                    );
                    let (ok, detail) = conjugacy_detail(mc.residues(), h.residues());
                    report.check("conjugacy", ok, detail);
                }
                Err(e) => report.check("middle convolution", false, e.to_string()),
            }
        }
        Name::KrammerHScan => {
            scan_check(&mut report, "K", &krammer_k(), 7, 47, Some(2), jobs);
            scan_check(&mut report, "H", &target_h(), 7, 47, Some(2), jobs);
        }
        Name::G2System => match build_g_sequence() {
            Ok(g) => {
                report.check(
                    "dimensions",
                    g.dimensions == [1, 2, 3, 4, 5, 6, 7],
                    format!("{:?}", g.dimensions),
                );
                let target = target_g();
                let (ok, detail) = if g.system.points() == target.points() {
                    conjugacy_detail(g.system.residues(), target.residues())
                } else {
                    (false, "points differ".into())
                };
                report.check("conjugacy", ok, detail);
                scan_check(&mut report, "G", &target, 5, 13, None, jobs);
            }
            Err(e) => report.check("construction", false, e.to_string()),
        },
        Name::G2Monodromy => match build_g2_tuple() {
            Ok(g) => {
                report.check(
                    "dimensions",
                    g.dimensions == [1, 2, 3, 4, 5, 6, 7],
                    format!("{:?}", g.dimensions),
                );
                let integral = g.tuple.matrices().iter().all(|m| {
                    let d = m.det();
                    m.entries().iter().all(is_integral) && (d == rat(1, 1) || d == rat(-1, 1))
                });
                report.check("integrality", integral, "integer entries, determinants +-1");
                let display = g2_display_pair();
                let (ok, detail) = conjugacy_detail(g.tuple.matrices(), display.matrices());
                report.check("conjugacy", ok, detail);
            }
            Err(e) => report.check("construction", false, e.to_string()),
        },
        Name::KrammerMonodromy => match verify_krammer_monodromy(ConjugacySearch::default()) {
            Ok(r) => {
                for c in r.checks.iter().filter(|c| c.required) {
                    report.check(c.name, c.passed, c.detail.clone());
                }
            }
            Err(e) => report.check("convolution", false, e.to_string()),
        },
        Name::RankShift => match rank_shift_check(&krammer_k(), &rat(1, 6), 7, 31) {
            Ok(rows) => {
                let table: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let s = |x: Option<usize>| x.map_or("-".into(), |k: usize| k.to_string());
                        format!("{}:k={},r={}", r.prime, s(r.k), s(r.r))
                    })
                    .collect();
                report.check(
                    "r in {k-1, k, k+1}",
                    !rows.is_empty() && rows.iter().all(|r| r.pass),
                    table.join(" "),
                );
            }
            Err(e) => report.check("rank shift", false, e.to_string()),
        },
    }
    report
}
