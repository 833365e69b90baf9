//! Exhaustive survey of class 2 pentanomials over ranges of `(n, s)`.
//!
//! Shapes are enumerated in ascending `(n, s)` order, classified on a worker
//! pool that owns whole `n`-columns, and emitted in input order.

mod io;
mod stats;

pub use io::{prepare_resume, read_records, Format, RecordWriter, ResumeState};
pub use stats::{stats, SurveyStats, BASELINE_FREQUENCY};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2poly::{is_irreducible, pent_poly, smallest_factor_degree, PentShape};
use crate::swan::{reducibility_certificate, Certificate};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n_lo = {0} is below the minimum degree 7")]
    RangeTooLow(usize),
    #[error("({n}, {s}) is irreducible with s even and n = {r} mod 8; the reducibility certificate is contradicted", r = n % 8)]
    CertificateContradiction { n: usize, s: usize },
    #[error("cannot start worker pool: {0}")]
    ThreadPool(String),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SParity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NFilter {
    OddOnly,
    All,
}

impl FromStr for SParity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(SParity::Even),
            "odd" => Ok(SParity::Odd),
            _ => Err(format!("expected even or odd, got {s:?}")),
        }
    }
}

impl FromStr for NFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "odd" => Ok(NFilter::OddOnly),
            "all" => Ok(NFilter::All),
            _ => Err(format!("expected odd or all, got {s:?}")),
        }
    }
}

/// Every valid shape with `n_lo <= n < n_hi`, `s` of the requested parity
/// and `n` passing the filter, ascending by `n` then `s`.
pub fn enumerate(
    n_lo: usize,
    n_hi: usize,
    s_parity: SParity,
    n_filter: NFilter,
) -> Result<impl Iterator<Item = PentShape>, SearchError> {
    if n_lo < PentShape::MIN_DEGREE {
        return Err(SearchError::RangeTooLow(n_lo));
    }
    let s_start = match s_parity {
        SParity::Even => 2,
        SParity::Odd => 1,
    };
    Ok((n_lo..n_hi.max(n_lo))
        .filter(move |n| n_filter == NFilter::All || n % 2 == 1)
        .flat_map(move |n| {
            (s_start..)
                .step_by(2)
                .take_while(move |s| 3 * s < n)
                .map(move |s| PentShape::new(n, s).expect("enumerated shapes are valid"))
        }))
}

/// Result of classifying one shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "irr")]
    Irreducible,
    /// Even `s` and `n = ±3 (mod 8)`: reducible with no polynomial work.
    #[serde(rename = "red_cert")]
    ReducibleCertified,
    /// `n` and `s` both even.
    #[serde(rename = "red_square")]
    ReducibleSquare,
    /// A factor of degree at most the prefilter depth was found.
    #[serde(rename = "red_smallfac")]
    ReducibleSmallFactor,
    /// Rejected by the full irreducibility test.
    #[serde(rename = "red_full")]
    ReducibleFull,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::Irreducible,
        Outcome::ReducibleCertified,
        Outcome::ReducibleSquare,
        Outcome::ReducibleSmallFactor,
        Outcome::ReducibleFull,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Outcome::Irreducible => "irr",
            Outcome::ReducibleCertified => "red_cert",
            Outcome::ReducibleSquare => "red_square",
            Outcome::ReducibleSmallFactor => "red_smallfac",
            Outcome::ReducibleFull => "red_full",
        }
    }

    pub fn is_irreducible(self) -> bool {
        self == Outcome::Irreducible
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One row of survey output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    pub s: usize,
    pub outcome: Outcome,
    pub elapsed_us: u64,
    /// Degree of the smallest factor found by the prefilter. Not serialized.
    #[serde(skip)]
    pub smallest_factor_degree: Option<u32>,
}

impl SearchRecord {
    pub fn shape(&self) -> Result<PentShape, crate::Gf2Error> {
        PentShape::new(self.n, self.s)
    }

    /// The `(n, s, outcome)` triple, ignoring timing.
    pub fn key(&self) -> (usize, usize, Outcome) {
        (self.n, self.s, self.outcome)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurveyConfig {
    /// Skip shapes certified reducible by `n mod 8` before any arithmetic.
    pub prune: bool,
    /// Largest factor degree sought before the full test; 0 disables.
    pub prefilter_depth: usize,
    /// Worker threads; 0 lets the pool pick.
    pub jobs: usize,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            prune: true,
            prefilter_depth: 13,
            jobs: 0,
        }
    }
}

/// Classifies one shape. Cheap checks first: the square case, then the
/// `n mod 8` certificate when pruning, then the small-factor prefilter, and
/// the full test last.
pub fn classify(shape: PentShape, config: &SurveyConfig) -> SearchRecord {
    let start = Instant::now();
    let (n, s) = (shape.n(), shape.s());
    let mut smallest = None;
    let outcome = if n % 2 == 0 && s % 2 == 0 {
        Outcome::ReducibleSquare
    } else if config.prune
        && matches!(
            reducibility_certificate(shape),
            Ok(Some(Certificate::EvenFactorCount { .. }))
        )
    {
        Outcome::ReducibleCertified
    } else {
        let f = pent_poly(shape);
        // Any reducible f has a factor of degree at most n/2.
        let depth = config.prefilter_depth.min(n / 2);
        if depth > 0 {
            smallest = smallest_factor_degree(&f, depth).expect("depth is below the degree");
        }
        match smallest {
            Some(_) => Outcome::ReducibleSmallFactor,
            None if is_irreducible(&f).expect("pentanomials are nonzero") => Outcome::Irreducible,
            None => Outcome::ReducibleFull,
        }
    };
    SearchRecord {
        n,
        s,
        outcome,
        elapsed_us: start.elapsed().as_micros() as u64,
        smallest_factor_degree: smallest.map(|d| d as u32),
    }
}

/// Fails on an even-gap irreducible with `n != ±1 (mod 8)`.
pub fn check_record(record: &SearchRecord) -> Result<(), SearchError> {
    let (n, s) = (record.n, record.s);
    if record.outcome.is_irreducible() && s % 2 == 0 && !matches!(n % 8, 1 | 7) {
        return Err(SearchError::CertificateContradiction { n, s });
    }
    Ok(())
}

/// Columns handed to the pool per round, per worker.
const COLUMNS_PER_WORKER: usize = 4;

/// Classifies `shapes` and passes each record to `emit` in input order.
/// Consecutive shapes with equal `n` form a column and are handled by one
/// worker. Every record is checked with [`check_record`] before emission.
pub fn survey_each<I, F>(shapes: I, config: &SurveyConfig, mut emit: F) -> Result<(), SearchError>
where
    I: IntoIterator<Item = PentShape>,
    F: FnMut(SearchRecord) -> Result<(), SearchError>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let batch = pool.current_num_threads() * COLUMNS_PER_WORKER;

    let mut columns: Vec<Vec<PentShape>> = Vec::with_capacity(batch);
    let mut flush = |columns: &mut Vec<Vec<PentShape>>| -> Result<(), SearchError> {
        let done: Vec<Vec<SearchRecord>> = pool.install(|| {
            columns
                .par_iter()
                .map(|col| col.iter().map(|&sh| classify(sh, config)).collect())
                .collect()
        });
        columns.clear();
        for record in done.into_iter().flatten() {
            check_record(&record)?;
            emit(record)?;
        }
        Ok(())
    };

    for shape in shapes {
        match columns.last_mut() {
            Some(col) if col[0].n() == shape.n() => col.push(shape),
            _ => {
                if columns.len() == batch {
                    flush(&mut columns)?;
                }
                columns.push(vec![shape]);
            }
        }
    }
    flush(&mut columns)
}

/// Collecting form of [`survey_each`].
pub fn survey<I>(shapes: I, config: &SurveyConfig) -> Result<Vec<SearchRecord>, SearchError>
where
    I: IntoIterator<Item = PentShape>,
{
    let mut out = Vec::new();
    survey_each(shapes, config, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

/// Irreducible shapes grouped by `n`, ascending.
pub fn irreducible_table(records: &[SearchRecord]) -> Vec<(usize, Vec<usize>)> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for r in records.iter().filter(|r| r.outcome.is_irreducible()) {
        match out.last_mut() {
            Some((n, ss)) if *n == r.n => ss.push(r.s),
            _ => out.push((r.n, vec![r.s])),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub candidates: usize,
    pub sampled: usize,
    /// Shapes the prefilter rejected but the full test calls irreducible.
    pub failures: Vec<PentShape>,
}

/// Re-runs the full irreducibility test on a random `rate` fraction of the
/// prefilter rejections (at least one when any exist).
pub fn audit_prefilter(records: &[SearchRecord], rate: f64, seed: u64) -> AuditReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let candidates: Vec<&SearchRecord> = records
        .iter()
        .filter(|r| r.outcome == Outcome::ReducibleSmallFactor)
        .collect();
    let mut sample: Vec<&SearchRecord> = candidates
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(rate.clamp(0.0, 1.0)))
        .collect();
    if sample.is_empty() && !candidates.is_empty() {
        sample.push(candidates[rng.gen_range(0..candidates.len())]);
    }
    let failures = sample
        .par_iter()
        .filter_map(|r| {
            let shape = r.shape().ok()?;
            is_irreducible(&pent_poly(shape)).ok()?.then_some(shape)
        })
        .collect();
    AuditReport {
        candidates: candidates.len(),
        sampled: sample.len(),
        failures,
    }
}
