use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Outcome, SearchRecord};

/// Reported share of irreducibles among arbitrary binary polynomials of
/// comparable degree, kept for comparison only.
pub const BASELINE_FREQUENCY: f64 = 0.0013;

/// Aggregates over a survey. Histograms cover irreducible records only and
/// always carry all eight residues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyStats {
    pub total_checked: usize,
    pub total_irreducible: usize,
    pub n_mod8: BTreeMap<u8, usize>,
    pub s_mod8: BTreeMap<u8, usize>,
    pub distinct_n_with_irr: usize,
    /// `total_irreducible / total_checked`, 0 when nothing was checked.
    pub frequency: f64,
    pub baseline_frequency: f64,
    pub by_outcome: BTreeMap<String, usize>,
}

pub fn stats<'a, I>(records: I) -> SurveyStats
where
    I: IntoIterator<Item = &'a SearchRecord>,
{
    let empty_hist = || (0..8u8).map(|r| (r, 0)).collect::<BTreeMap<_, _>>();
    let mut n_mod8 = empty_hist();
    let mut s_mod8 = empty_hist();
    let mut by_outcome: BTreeMap<String, usize> = Outcome::ALL
        .iter()
        .map(|o| (o.code().to_string(), 0))
        .collect();
    let mut distinct = BTreeSet::new();
    let (mut total, mut irr) = (0usize, 0usize);
    for r in records {
        total += 1;
        *by_outcome.entry(r.outcome.code().to_string()).or_default() += 1;
        if r.outcome.is_irreducible() {
            irr += 1;
            *n_mod8.get_mut(&((r.n % 8) as u8)).unwrap() += 1;
            *s_mod8.get_mut(&((r.s % 8) as u8)).unwrap() += 1;
            distinct.insert(r.n);
        }
    }
    SurveyStats {
        total_checked: total,
        total_irreducible: irr,
        n_mod8,
        s_mod8,
        distinct_n_with_irr: distinct.len(),
        frequency: if total == 0 {
            0.0
        } else {
            irr as f64 / total as f64
        },
        baseline_frequency: BASELINE_FREQUENCY,
        by_outcome,
    }
}
