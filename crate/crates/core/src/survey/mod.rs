//! Frobenius-class frequencies of ordinary elliptic curves over `F_{p^e}`.
//!
//! Curves are enumerated as coefficient pairs `(A, B)`, not up to
//! isomorphism; the extra automorphisms at `j = 0, 1728` only move `O(1)`
//! curves per field.

pub mod genus1;
pub mod genus2;
pub mod report;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{guard, Error, Result};
use crate::par::Execution;
use crate::scalar::{unit_root, FieldTables};

pub use genus1::{point_count, point_count_in, CurveFamily, CurveRecord};
pub use report::{
    decay_fit, write_plot_data, write_report_csv, write_summary_csv, DecayFit, FrequencyReport,
};

/// Largest field surveyed exhaustively.
pub const EXHAUSTIVE_Q_LIMIT: u128 = 2000;
/// Samples drawn per chunk in sampled mode.
const SAMPLE_CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurveyMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub p: u64,
    pub degrees: Vec<u32>,
    pub n: u32,
    pub mode: SurveyMode,
}

impl SurveyConfig {
    pub fn exhaustive(p: u64, degrees: Vec<u32>, n: u32) -> Self {
        SurveyConfig {
            p,
            degrees,
            n,
            mode: SurveyMode::Exhaustive,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !crate::arith::is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        CurveFamily::for_prime(self.p)?;
        if !(1..=3).contains(&self.n) {
            return Err(Error::InvalidParameter(
                "torsion level must be 1, 2 or 3".into(),
            ));
        }
        if self.degrees.is_empty() || self.degrees.contains(&0) {
            return Err(Error::InvalidParameter(
                "degrees must be a nonempty list of positive integers".into(),
            ));
        }
        for &e in &self.degrees {
            let q = (self.p as u128).checked_pow(e).unwrap_or(u128::MAX);
            guard(
                "table field size",
                q,
                crate::scalar::tables::TABLE_FIELD_LIMIT,
            )?;
            if self.mode == SurveyMode::Exhaustive {
                guard("exhaustive survey field size", q, EXHAUSTIVE_Q_LIMIT)?;
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Result<CurveFamily> {
        CurveFamily::for_prime(self.p)
    }
}

/// The class of Frobenius on the étale `p^n`-torsion: the unit root of
/// `x² - a x + q` modulo `p^n`.
pub fn frobenius_class(a: i64, q: u64, p: u64, n: u32) -> Result<u64> {
    unit_root(a, q, p, n)
}

/// Per-chunk tallies: counts indexed by residue mod `p^n`, then supersingular.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tally {
    residues: Vec<u64>,
    supersingular: u64,
}

impl Tally {
    fn new(pn: usize) -> Self {
        Tally {
            residues: vec![0; pn],
            supersingular: 0,
        }
    }

    fn merge(&mut self, other: &Tally) {
        for (a, b) in self.residues.iter_mut().zip(&other.residues) {
            *a += b;
        }
        self.supersingular += other.supersingular;
    }
}

/// Frobenius class for every admissible trace, indexed by `trace + bound`.
struct ClassTable {
    bound: i64,
    class: Vec<Option<u32>>,
}

impl ClassTable {
    fn new(p: u64, q: u64, n: u32) -> Result<Self> {
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64 + 1;
        let class = (-bound..=bound)
            .map(|a| {
                if a.rem_euclid(p as i64) == 0 {
                    Ok(None)
                } else {
                    frobenius_class(a, q, p, n).map(|c| Some(c as u32))
                }
            })
            .collect::<Result<_>>()?;
        Ok(ClassTable { bound, class })
    }

    #[inline]
    fn get(&self, trace: i64) -> Option<u32> {
        self.class[(trace + self.bound) as usize]
    }
}

fn tally_fixed_a(
    t: &FieldTables,
    family: CurveFamily,
    classes: &ClassTable,
    a: usize,
    tally: &mut Tally,
) -> Result<()> {
    let g = family.partial_cubic(t, a);
    for b in 0..t.q() {
        if !family.is_nonsingular(t, a, b) {
            continue;
        }
        record(t, classes, -genus1::character_sum(t, &g, b), tally)?;
    }
    Ok(())
}

#[inline]
fn record(t: &FieldTables, classes: &ClassTable, trace: i64, tally: &mut Tally) -> Result<()> {
    genus1::check_weil(trace, t.q() as u64)?;
    match classes.get(trace) {
        Some(c) => tally.residues[c as usize] += 1,
        None => tally.supersingular += 1,
    }
    Ok(())
}

/// One report for `F_{p^e}`.
pub fn survey_field(config: &SurveyConfig, e: u32, exec: &Execution) -> Result<FrequencyReport> {
    let p = config.p;
    let family = config.family()?;
    let t = FieldTables::new(p, e as usize)?;
    let q = t.q() as u64;
    let pn = p.pow(config.n) as usize;
    let classes = ClassTable::new(p, q, config.n)?;
    let tallies: Vec<Result<Tally>> = match config.mode {
        SurveyMode::Exhaustive => exec.map_chunks(t.q(), |a| {
            let mut tally = Tally::new(pn);
            tally_fixed_a(&t, family, &classes, a, &mut tally)?;
            Ok(tally)
        })?,
        SurveyMode::Sampled { count, seed } => {
            let chunks = count.div_ceil(SAMPLE_CHUNK);
            exec.map_chunks(chunks as usize, |c| {
                let mut tally = Tally::new(pn);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ e as u64);
                rng.set_stream(c as u64);
                let draws = SAMPLE_CHUNK.min(count - c as u64 * SAMPLE_CHUNK);
                for _ in 0..draws {
                    let a = rng.random_range(0..t.q());
                    let b = rng.random_range(0..t.q());
                    if !family.is_nonsingular(&t, a, b) {
                        continue;
                    }
                    let g = family.partial_cubic(&t, a);
                    record(&t, &classes, -genus1::character_sum(&t, &g, b), &mut tally)?;
                }
                Ok(tally)
            })?
        }
    };
    let mut total = Tally::new(pn);
    for tally in tallies {
        total.merge(&tally?);
    }
    let report = FrequencyReport::from_counts(p, e, config.n, &total.residues, total.supersingular);
    if config.mode == SurveyMode::Exhaustive {
        let expected = match family {
            CurveFamily::ShortWeierstrass => q * q - q,
            CurveFamily::QuadraticTerm => (q - 1) * (q - 1),
        };
        if report.total() != expected {
            return Err(Error::Internal(format!(
                "{} nonsingular curves, expected {expected}",
                report.total()
            )));
        }
    }
    Ok(report)
}

/// One report per configured degree, in configuration order.
pub fn run_survey(config: &SurveyConfig, exec: &Execution) -> Result<Vec<FrequencyReport>> {
    config.validate()?;
    config
        .degrees
        .iter()
        .map(|&e| survey_field(config, e, exec))
        .collect()
}

/// Notes carried in the plot-data header.
pub fn survey_notes(config: &SurveyConfig) -> Result<String> {
    Ok(format!(
        "family: {}\nenumerated by coefficient pairs (A, B), not up to isomorphism\np = {}, n = {}",
        config.family()?.name(),
        config.p,
        config.n
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_by_hand() {
        let cfg = SurveyConfig::exhaustive(3, vec![1], 1);
        let r = survey_field(&cfg, 1, &Execution::sequential()).unwrap();
        assert_eq!(r.classes, vec![1, 2]);
        assert_eq!(r.total(), 4);
        // y² = x³ + A x² + B over F_3, A, B ∈ {1, 2}: every curve is ordinary
        assert_eq!(r.counts, vec![2, 2]);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let cfg = SurveyConfig::exhaustive(5, vec![2], 2);
        let a = survey_field(&cfg, 2, &Execution::sequential()).unwrap();
        let b = survey_field(&cfg, 2, &Execution::with_threads(3)).unwrap();
        assert_eq!(a, b);
        let s = SurveyConfig {
            mode: SurveyMode::Sampled {
                count: 40_000,
                seed: 7,
            },
            ..cfg
        };
        let c = survey_field(&s, 2, &Execution::sequential()).unwrap();
        let d = survey_field(&s, 2, &Execution::with_threads(4)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn rejects_p2_and_large_fields() {
        assert!(SurveyConfig::exhaustive(2, vec![3], 1).validate().is_err());
        assert!(SurveyConfig::exhaustive(3, vec![7], 1).validate().is_err());
        assert!(SurveyConfig::exhaustive(3, vec![6], 4).validate().is_err());
    }
}
