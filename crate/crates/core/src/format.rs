//! JSON documents for systems, tuples, matrices and curvature reports.
//!
//! Rationals are `"p/q"` strings (`"p"` for integers); cyclotomic scalars are
//! lists of such strings, one per power of `zeta_n` below `phi(n)`. Emitted
//! documents are compact, key order is fixed, and end in a newline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_rational, CyclotomicField, Field, Matrix, Rational, Rationals};
use crate::fuchsian::{FuchsianSystem, OkuboSystem};
use crate::pcurvature::{CurvatureReport, PrimeStatus, ScanReport};
use crate::tuples::MatrixTuple;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDoc {
    Named(String),
    Cyclotomic { cyclotomic: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Rational(String),
    Coefficients(Vec<String>),
}

/// Fields with a document encoding.
pub trait Codec: Field {
    fn field_doc(&self) -> FieldDoc;
    fn encode(&self, x: &Self::Elem) -> ScalarDoc;
    fn decode(&self, doc: &ScalarDoc) -> Result<Self::Elem, FormatError>;
}

fn rational_string(q: &Rational) -> String {
    q.to_string()
}

fn parse_q(s: &str) -> Result<Rational, FormatError> {
    parse_rational(s).map_err(|_| invalid(format!("not a rational: {s:?}")))
}

impl Codec for Rationals {
    fn field_doc(&self) -> FieldDoc {
        FieldDoc::Named("Q".into())
    }

    fn encode(&self, x: &Rational) -> ScalarDoc {
        ScalarDoc::Rational(rational_string(x))
    }

    fn decode(&self, doc: &ScalarDoc) -> Result<Rational, FormatError> {
        match doc {
            ScalarDoc::Rational(s) => parse_q(s),
            ScalarDoc::Coefficients(_) => Err(invalid("expected a rational string")),
        }
    }
}

impl Codec for CyclotomicField {
    fn field_doc(&self) -> FieldDoc {
        FieldDoc::Cyclotomic {
            cyclotomic: self.conductor(),
        }
    }

    fn encode(&self, x: &Vec<Rational>) -> ScalarDoc {
        ScalarDoc::Coefficients(x.iter().map(rational_string).collect())
    }

    fn decode(&self, doc: &ScalarDoc) -> Result<Vec<Rational>, FormatError> {
        match doc {
            ScalarDoc::Coefficients(cs) if cs.len() == self.degree() => {
                cs.iter().map(|s| parse_q(s)).collect()
            }
            ScalarDoc::Coefficients(cs) => Err(invalid(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                cs.len()
            ))),
            ScalarDoc::Rational(s) => Ok(self.rational(parse_q(s)?)),
        }
    }
}

/// A field named by a document.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyField {
    Q,
    Cyclotomic(CyclotomicField),
}

impl AnyField {
    pub fn from_doc(doc: &FieldDoc) -> Result<Self, FormatError> {
        match doc {
            FieldDoc::Named(s) if s == "Q" => Ok(AnyField::Q),
            FieldDoc::Named(s) => Err(invalid(format!("unknown field {s:?}"))),
            FieldDoc::Cyclotomic { cyclotomic: 0 } => Err(invalid("cyclotomic conductor 0")),
            FieldDoc::Cyclotomic { cyclotomic } => {
                Ok(AnyField::Cyclotomic(CyclotomicField::new(*cyclotomic)))
            }
        }
    }
}

type MatrixDoc = Vec<Vec<ScalarDoc>>;

pub fn encode_matrix<F: Codec>(m: &Matrix<F>) -> MatrixDoc {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| m.ring().encode(x)).collect())
        .collect()
}

fn decode_matrix<F: Codec>(field: &F, n: usize, doc: &MatrixDoc) -> Result<Matrix<F>, FormatError> {
    if doc.len() != n || doc.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("expected a {n}x{n} matrix")));
    }
    let rows = doc
        .iter()
        .map(|r| r.iter().map(|x| field.decode(x)).collect())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field.clone(), rows))
}

fn to_line<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    field: FieldDoc,
    size: usize,
    points: Vec<ScalarDoc>,
    residues: Vec<MatrixDoc>,
}

pub fn emit_system<F: Codec>(f: &FuchsianSystem<F>) -> String {
    let k = f.field();
    to_line(&SystemDoc {
        field: k.field_doc(),
        size: f.size(),
        points: f.points().iter().map(|t| k.encode(t)).collect(),
        residues: f.residues().iter().map(encode_matrix).collect(),
    })
}

/// A parsed system over whichever field its document names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySystem {
    Q(FuchsianSystem<Rationals>),
    Cyclotomic(FuchsianSystem<CyclotomicField>),
}

impl AnySystem {
    pub fn emit(&self) -> String {
        match self {
            AnySystem::Q(f) => emit_system(f),
            AnySystem::Cyclotomic(f) => emit_system(f),
        }
    }
}

fn build_system<F: Codec>(field: F, doc: &SystemDoc) -> Result<FuchsianSystem<F>, FormatError> {
    let points = doc
        .points
        .iter()
        .map(|t| field.decode(t))
        .collect::<Result<Vec<_>, _>>()?;
    let residues = doc
        .residues
        .iter()
        .map(|m| decode_matrix(&field, doc.size, m))
        .collect::<Result<Vec<_>, _>>()?;
    FuchsianSystem::new(field, points, residues).map_err(|e| invalid(e.to_string()))
}

pub fn parse_system(text: &str) -> Result<AnySystem, FormatError> {
    let doc: SystemDoc = from_json(text)?;
    if doc.size == 0 {
        return Err(invalid("size must be positive"));
    }
    Ok(match AnyField::from_doc(&doc.field)? {
        AnyField::Q => AnySystem::Q(build_system(Rationals, &doc)?),
        AnyField::Cyclotomic(k) => AnySystem::Cyclotomic(build_system(k, &doc)?),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OkuboDoc {
    field: FieldDoc,
    size: usize,
    tdiag: Vec<ScalarDoc>,
    b: MatrixDoc,
}

pub fn emit_okubo<F: Codec>(o: &OkuboSystem<F>) -> String {
    let k = o.field();
    to_line(&OkuboDoc {
        field: k.field_doc(),
        size: o.size(),
        tdiag: o.tdiag().iter().map(|t| k.encode(t)).collect(),
        b: encode_matrix(o.b()),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleDoc {
    field: FieldDoc,
    size: usize,
    length: usize,
    matrices: Vec<MatrixDoc>,
}

pub fn emit_tuple<F: Codec>(t: &MatrixTuple<F>) -> String {
    to_line(&TupleDoc {
        field: t.field().field_doc(),
        size: t.size(),
        length: t.len(),
        matrices: t.matrices().iter().map(encode_matrix).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyTuple {
    Q(MatrixTuple<Rationals>),
    Cyclotomic(MatrixTuple<CyclotomicField>),
}

impl AnyTuple {
    pub fn emit(&self) -> String {
        match self {
            AnyTuple::Q(t) => emit_tuple(t),
            AnyTuple::Cyclotomic(t) => emit_tuple(t),
        }
    }
}

fn build_tuple<F: Codec>(field: F, doc: &TupleDoc) -> Result<MatrixTuple<F>, FormatError> {
    if doc.length != doc.matrices.len() {
        return Err(invalid(format!(
            "length {} but {} matrices",
            doc.length,
            doc.matrices.len()
        )));
    }
    let ms = doc
        .matrices
        .iter()
        .map(|m| decode_matrix(&field, doc.size, m))
        .collect::<Result<Vec<_>, _>>()?;
    MatrixTuple::new(field, ms).map_err(|e| invalid(e.to_string()))
}

pub fn parse_tuple(text: &str) -> Result<AnyTuple, FormatError> {
    let doc: TupleDoc = from_json(text)?;
    Ok(match AnyField::from_doc(&doc.field)? {
        AnyField::Q => AnyTuple::Q(build_tuple(Rationals, &doc)?),
        AnyField::Cyclotomic(k) => AnyTuple::Cyclotomic(build_tuple(k, &doc)?),
    })
}

#[derive(Debug, Clone, Serialize)]
struct ConjugacyDoc {
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
}

/// `{"result":"conjugate","matrix":...}`.
pub fn emit_conjugator<F: Codec>(x: &Matrix<F>) -> String {
    to_line(&ConjugacyDoc {
        result: "conjugate",
        matrix: Some(encode_matrix(x)),
        dimension: None,
    })
}

/// `{"result":"none"}`.
pub fn emit_not_conjugate() -> String {
    to_line(&ConjugacyDoc {
        result: "none",
        matrix: None,
        dimension: None,
    })
}

/// `{"result":"exhausted","dimension":d}` where `d` is the dimension of the
/// intertwiner space.
pub fn emit_exhausted(dimension: usize) -> String {
    to_line(&ConjugacyDoc {
        result: "exhausted",
        matrix: None,
        dimension: Some(dimension),
    })
}

#[derive(Debug, Clone, Serialize)]
struct ReportDoc {
    prime: u64,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    nilpotent: bool,
    index: Option<usize>,
    method: String,
    milliseconds: f64,
}

fn report_doc(r: &CurvatureReport, timings: bool) -> ReportDoc {
    let (status, reason) = match &r.status {
        PrimeStatus::Good => ("good".to_string(), None),
        PrimeStatus::Bad(b) => ("bad".to_string(), Some(b.to_string())),
    };
    ReportDoc {
        prime: r.prime,
        status,
        reason,
        nilpotent: r.nilpotent,
        index: r.index,
        method: r.method.to_string(),
        milliseconds: if timings {
            (r.elapsed.as_secs_f64() * 1e6).round() / 1e3
        } else {
            0.0
        },
    }
}

/// One report as a document; with `timings` off the milliseconds field is
/// zero, which makes output reproducible.
pub fn emit_report(r: &CurvatureReport, timings: bool) -> String {
    to_line(&report_doc(r, timings))
}

#[derive(Debug, Clone, Serialize)]
struct BadPrimeDoc {
    prime: u64,
    reason: String,
}

#[derive(Debug, Clone, Serialize)]
struct ScanDoc {
    range: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    verdict: bool,
    records: Vec<ReportDoc>,
    bad_primes: Vec<BadPrimeDoc>,
}

pub fn emit_scan(s: &ScanReport, mu: Option<&Rational>, timings: bool) -> String {
    to_line(&ScanDoc {
        range: [s.lo, s.hi],
        mu: mu.map(rational_string),
        verdict: s.verdict(),
        records: s.records.iter().map(|r| report_doc(r, timings)).collect(),
        bad_primes: s
            .bad_primes()
            .into_iter()
            .map(|(prime, b)| BadPrimeDoc {
                prime,
                reason: b.to_string(),
            })
            .collect(),
    })
}

/// Aligned human-readable table of per-prime records.
pub fn report_table(records: &[CurvatureReport]) -> String {
    let mut out = format!(
        "{:>7}  {:<6}  {:<9}  {:>5}  {:<9}  {:>10}\n",
        "prime", "status", "nilpotent", "index", "method", "ms"
    );
    for r in records {
        let status = if r.is_good() { "good" } else { "bad" };
        let index = r.index.map_or("-".to_string(), |k| k.to_string());
        out.push_str(&format!(
            "{:>7}  {:<6}  {:<9}  {:>5}  {:<9}  {:>10.3}",
            r.prime,
            status,
            r.nilpotent,
            index,
            r.method,
            r.elapsed.as_secs_f64() * 1e3
        ));
        if let PrimeStatus::Bad(b) = &r.status {
            out.push_str(&format!("  {b}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Ring};
    use crate::fuchsian::{krammer_k, rank_one, target_g};
    use crate::pcurvature::{scan_primes, ScanOptions};
    use crate::tuples::{g2_display_pair, krammer_monodromy, Twist};

    #[test]
    fn system_round_trip() {
        for f in [krammer_k(), rank_one(0), target_g()] {
            let text = emit_system(&f);
            assert!(text.ends_with('\n'));
            assert_eq!(parse_system(&text).unwrap(), AnySystem::Q(f.clone()));
            assert_eq!(parse_system(&text).unwrap().emit(), text);
        }
    }

    #[test]
    fn system_text_is_canonical() {
        let text = emit_system(&rank_one(1));
        assert_eq!(
            text,
            "{\"field\":\"Q\",\"size\":1,\"points\":[\"0\",\"1\"],\"residues\":[[[\"0\"]],[[\"1/2\"]]]}\n"
        );
        let loose = "{ \"field\": \"Q\", \"size\": 1, \"points\": [\"0\", \"2/2\"],\n \"residues\": [[[\"0/3\"]], [[\"2/4\"]]] }";
        assert_eq!(parse_system(loose).unwrap().emit(), text);
    }

    #[test]
    fn cyclotomic_round_trip() {
        let k = CyclotomicField::new(12);
        let f = FuchsianSystem::new(
            k.clone(),
            vec![k.zero(), k.zeta()],
            vec![
                Matrix::scalar(k.clone(), 1, k.zeta_pow(3)),
                Matrix::zeros(k.clone(), 1, 1),
            ],
        )
        .unwrap();
        let text = emit_system(&f);
        assert_eq!(parse_system(&text).unwrap(), AnySystem::Cyclotomic(f));
    }

    #[test]
    fn malformed_systems_are_rejected() {
        assert!(matches!(parse_system("{"), Err(FormatError::Json(_))));
        let dup = "{\"field\":\"Q\",\"size\":1,\"points\":[\"1\",\"1\"],\"residues\":[[[\"0\"]],[[\"0\"]]]}";
        assert!(matches!(parse_system(dup), Err(FormatError::Invalid(_))));
        let shape = "{\"field\":\"Q\",\"size\":2,\"points\":[\"1\"],\"residues\":[[[\"0\"]]]}";
        assert!(matches!(parse_system(shape), Err(FormatError::Invalid(_))));
        let field = "{\"field\":\"R\",\"size\":1,\"points\":[\"1\"],\"residues\":[[[\"0\"]]]}";
        assert!(matches!(parse_system(field), Err(FormatError::Invalid(_))));
        let scalar = "{\"field\":\"Q\",\"size\":1,\"points\":[\"1/0\"],\"residues\":[[[\"0\"]]]}";
        assert!(matches!(parse_system(scalar), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn tuple_round_trip() {
        let t = g2_display_pair();
        let text = emit_tuple(&t);
        assert_eq!(parse_tuple(&text).unwrap(), AnyTuple::Q(t));
        let a = krammer_monodromy(Twist::default());
        let text = emit_tuple(&a);
        assert_eq!(parse_tuple(&text).unwrap(), AnyTuple::Cyclotomic(a));
    }

    #[test]
    fn scan_documents() {
        let mut options = ScanOptions::new(2, 11);
        options.mu = Some(rat(1, 6));
        let s = scan_primes(&krammer_k(), &options).unwrap();
        let text = emit_scan(&s, options.mu.as_ref(), false);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["verdict"], true);
        assert_eq!(value["records"].as_array().unwrap().len(), 5);
        assert_eq!(value["records"][0]["status"], "bad");
        assert_eq!(value["mu"], "1/6");
        let table = report_table(&s.records);
        assert_eq!(table.lines().count(), 6);
    }
}
