//! Exhaustive search over pairs of bipermutive rules.
//!
//! Each unordered pair of distinct rules goes through three gates: both rules
//! of nonlinearity zero (skipped), non-orthogonal (skipped), and otherwise the
//! analysis of the two S-boxes `F || G` and `G || F`. Rule nonlinearities
//! and Latin squares are computed once per rule up front and shared read-only
//! by the workers.

use std::collections::BTreeMap;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::boolfun::LocalRule;
use crate::ca::{check_same_diameter, latin_square, superposition_is_injective};
use crate::codes::{classify_code, CodeClassification};
use crate::error::{Error, Result};
use crate::lcs::{affine_masks, span_basis};
use crate::poly::BinaryPolynomial;
use crate::sbox::SBox;

pub const MIN_DIAMETER: usize = 3;
pub const MAX_DIAMETER: usize = 6;

/// Analysis of the S-box `F || G` of an orthogonal pair with at least one
/// nonlinear rule. Each unordered pair yields two records, one per order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub diameter: usize,
    pub rule_f: u64,
    pub rule_g: u64,
    /// Nonlinearity of `rule_f`.
    pub nl_f: u32,
    /// Nonlinearity of `rule_g`.
    pub nl_g: u32,
    pub sbox_nl: u32,
    pub sbox_degree: usize,
    pub lcs_dim: usize,
    /// Canonical basis of the linear components space, as packed masks.
    pub lcs_basis: Vec<u64>,
    pub classification: CodeClassification,
}

impl PairRecord {
    /// Unordered nonlinearity bucket `(min, max)`.
    pub fn nl_bucket(&self) -> (u32, u32) {
        (self.nl_f.min(self.nl_g), self.nl_f.max(self.nl_g))
    }
}

/// One row of the aggregate, keyed by bucket, LCS dimension and generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub nl_bucket: (u32, u32),
    pub lcs_dim: usize,
    pub generator: Option<BinaryPolynomial>,
    pub is_cyclic: bool,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub diameter: usize,
    pub pairs_enumerated: u64,
    pub pairs_both_linear: u64,
    pub pairs_not_orthogonal: u64,
    pub records: Vec<PairRecord>,
    pub aggregation: Vec<AggregateRow>,
}

/// All rules `x_1 ^ g(x_2, ..., x_{d-1}) ^ x_d`, by increasing rule number.
pub fn enumerate_bipermutive(diameter: usize) -> Result<Vec<LocalRule>> {
    if !(MIN_DIAMETER..=MAX_DIAMETER).contains(&diameter) {
        return Err(Error::UnsupportedDiameter(diameter));
    }
    let inner = diameter - 2;
    let inner_len = 1usize << inner;
    let mut rules: Vec<LocalRule> = (0..1u64 << inner_len)
        .map(|g| {
            LocalRule::from_fn(diameter, |k| {
                let first = k >> (diameter - 1) & 1 == 1;
                let last = k & 1 == 1;
                let middle = (k >> 1) & (inner_len - 1);
                first ^ (g >> middle & 1 == 1) ^ last
            })
            .expect("diameter within table bounds")
        })
        .collect();
    rules.sort_by_key(|r| r.rule_number());
    Ok(rules)
}

/// Number of unordered pairs of distinct bipermutive rules of `diameter`.
pub fn pair_count(diameter: usize) -> u64 {
    let m = 1u64 << (1u64 << (diameter - 2));
    m * (m - 1) / 2
}

struct RuleEntry {
    number: u64,
    nonlinearity: u32,
    square: Vec<u16>,
}

impl RuleEntry {
    fn new(rule: &LocalRule) -> Result<Self> {
        let number = rule
            .rule_number()
            .and_then(|n| u64::try_from(n).ok())
            .ok_or_else(|| {
                Error::PairPrecondition(format!("diameter {} exceeds 6", rule.n_vars()))
            })?;
        Ok(RuleEntry {
            number,
            nonlinearity: rule.nonlinearity(),
            square: latin_square(rule)?.entries().to_vec(),
        })
    }
}

enum Outcome {
    BothLinear,
    NotOrthogonal,
    /// One record per S-box orientation: `F || G` and `G || F`.
    Records(Box<[PairRecord; 2]>),
}

fn evaluate(diameter: usize, f: &RuleEntry, g: &RuleEntry) -> Outcome {
    // nonlinearity zero, i.e. affine rules such as complements count as linear
    if f.nonlinearity == 0 && g.nonlinearity == 0 {
        return Outcome::BothLinear;
    }
    if !superposition_is_injective(&f.square, &g.square, 1 << (diameter - 1)) {
        return Outcome::NotOrthogonal;
    }
    Outcome::Records(Box::new([
        analyze_sbox(diameter, f, g),
        analyze_sbox(diameter, g, f),
    ]))
}

fn analyze_sbox(diameter: usize, left: &RuleEntry, right: &RuleEntry) -> PairRecord {
    let b = diameter - 1;
    let table = left
        .square
        .iter()
        .zip(&right.square)
        .map(|(&hi, &lo)| (hi as u32) << b | lo as u32)
        .collect();
    let sbox = SBox::new(2 * b, table).expect("CA outputs fit in b bits");
    let profile = sbox.component_nonlinearities();
    let code = span_basis(2 * b, &affine_masks(&profile)).expect("masks fit in n bits");
    PairRecord {
        diameter,
        rule_f: left.number,
        rule_g: right.number,
        nl_f: left.nonlinearity,
        nl_g: right.nonlinearity,
        sbox_nl: profile.iter().copied().min().unwrap_or(0),
        sbox_degree: sbox.degree(),
        lcs_dim: code.dimension(),
        lcs_basis: code.basis().to_vec(),
        classification: classify_code(&code),
    }
}

/// Full pipeline for the S-box `F || G` of a single pair, in the given
/// order. Returns `None` when both rules have nonlinearity zero or the pair
/// is not orthogonal.
pub fn analyze_pair(f: &LocalRule, g: &LocalRule) -> Result<Option<PairRecord>> {
    check_same_diameter(f, g)?;
    if f == g {
        return Err(Error::PairPrecondition("rules must be distinct".into()));
    }
    for rule in [f, g] {
        if !rule.is_bipermutive() {
            return Err(Error::NotBipermutive(rule.describe()));
        }
    }
    let (first, second) = (RuleEntry::new(f)?, RuleEntry::new(g)?);
    Ok(match evaluate(f.n_vars(), &first, &second) {
        Outcome::Records(records) => {
            let [record, _] = *records;
            Some(record)
        }
        _ => None,
    })
}

#[derive(Default)]
struct Partial {
    both_linear: u64,
    not_orthogonal: u64,
    records: Vec<PairRecord>,
}

/// Exhaustive search at `diameter` using `workers` threads.
///
/// Visits every unordered pair of distinct rules once; a surviving pair
/// contributes the records of both S-boxes `F || G` and `G || F`. The pair
/// triangle is split into `workers` contiguous index ranges, so the report is
/// identical for every worker count.
pub fn run_search(diameter: usize, workers: usize) -> Result<SearchReport> {
    if workers == 0 {
        return Err(Error::NoWorkers);
    }
    let rules = enumerate_bipermutive(diameter)?;
    let entries = rules
        .iter()
        .map(RuleEntry::new)
        .collect::<Result<Vec<_>>>()?;
    let total = pair_count(diameter);
    let chunk = total.div_ceil(workers as u64).max(1);

    let partials: Vec<Partial> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
            .filter(|range| !range.is_empty())
            .map(|range| {
                let entries = &entries;
                scope.spawn(move || scan_range(diameter, entries, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut report = SearchReport {
        diameter,
        pairs_enumerated: total,
        pairs_both_linear: 0,
        pairs_not_orthogonal: 0,
        records: Vec::new(),
        aggregation: Vec::new(),
    };
    for partial in partials {
        report.pairs_both_linear += partial.both_linear;
        report.pairs_not_orthogonal += partial.not_orthogonal;
        report.records.extend(partial.records);
    }
    report.records.sort_by_key(|r| (r.rule_f, r.rule_g));
    report.aggregation = aggregate(&report.records);
    Ok(report)
}

fn scan_range(diameter: usize, entries: &[RuleEntry], range: std::ops::Range<u64>) -> Partial {
    let m = entries.len();
    let mut partial = Partial::default();
    let (mut i, mut j) = pair_at(range.start, m);
    for _ in range {
        match evaluate(diameter, &entries[i], &entries[j]) {
            Outcome::BothLinear => partial.both_linear += 1,
            Outcome::NotOrthogonal => partial.not_orthogonal += 1,
            Outcome::Records(records) => partial.records.extend(*records),
        }
        j += 1;
        if j == m {
            i += 1;
            j = i + 1;
        }
    }
    partial
}

/// Position `(i, j)`, `i < j`, of the `index`-th pair in row-major order.
fn pair_at(mut index: u64, m: usize) -> (usize, usize) {
    let mut i = 0;
    while i + 1 < m {
        let row = (m - 1 - i) as u64;
        if index < row {
            return (i, i + 1 + index as usize);
        }
        index -= row;
        i += 1;
    }
    (i, i + 1)
}

/// Counts records by `(bucket, lcs_dim, generator)`; ordered by bucket, then
/// decreasing dimension, then generator.
pub fn aggregate(records: &[PairRecord]) -> Vec<AggregateRow> {
    type Key = (
        (u32, u32),
        std::cmp::Reverse<usize>,
        Option<BinaryPolynomial>,
    );
    let mut counts: BTreeMap<Key, (bool, usize)> = BTreeMap::new();
    for record in records {
        let key = (
            record.nl_bucket(),
            std::cmp::Reverse(record.lcs_dim),
            record.classification.generator.clone(),
        );
        let slot = counts
            .entry(key)
            .or_insert((record.classification.is_cyclic, 0));
        slot.1 += 1;
    }
    counts
        .into_iter()
        .map(
            |((nl_bucket, dim, generator), (is_cyclic, count))| AggregateRow {
                nl_bucket,
                lcs_dim: dim.0,
                generator,
                is_cyclic,
                count,
            },
        )
        .collect()
}

/// Records per generator polynomial (`None` for non-polynomial codes).
pub fn generator_histogram(records: &[PairRecord]) -> BTreeMap<Option<BinaryPolynomial>, usize> {
    let mut hist = BTreeMap::new();
    for record in records {
        *hist
            .entry(record.classification.generator.clone())
            .or_insert(0) += 1;
    }
    hist
}

/// Default worker count: `OCA_WORKERS` if set and positive, else the number
/// of available cores.
pub fn default_workers() -> usize {
    std::env::var("OCA_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w: &usize| w > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}
