//! Batch verification suites, the machine-checkable counterpart of the
//! structural claims: engine agreement, the antipode axiom, the stability
//! filter structure, the size-3 parking-function pattern table, and
//! enumeration counts against independent oracles.
//!
//! Reports are deterministic: instances are scanned in enumeration order and
//! failures keep that order regardless of the worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::pattern_coefficient;
use crate::antipode::{
    antipode_axiom_holds, antipode_interlacing, antipode_takeuchi, enumerate_qss, is_stable,
    minimal_stable_composition, stability_set, AntipodeMethod,
};
use crate::combinatorics::Composition;
use crate::species::{PackedWord, ParkingFunction, Permutation, Species, SpeciesTag};
use crate::Error;

/// A named verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `antipode_takeuchi == antipode_interlacing` on every class up to the
    /// size bound (permutations and packed words only).
    Agreement,
    /// `Σ S(pat_b)·pat_c = ε(pat_a)·pat_∅` on every class up to the bound.
    AntipodeAxiom,
    /// Stability sets are upward-closed filters containing the all-ones
    /// composition; for permutations and packed words they are intervals
    /// with the predicted minimum and the alternating-sum identity holds.
    Filter,
    /// The 48 values of pat_11, pat_12, pat_21 on the sixteen size-3
    /// parking functions.
    TablePf3,
    /// Enumeration counts against closed-form oracles.
    Counts,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Agreement => "agreement",
            Check::AntipodeAxiom => "antipode-axiom",
            Check::Filter => "filter",
            Check::TablePf3 => "table-pf3",
            Check::Counts => "counts",
        }
    }
}

/// Outcome of one suite: how many instances ran and which failed.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub instances: u64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Default size bound per suite and species; chosen so every suite finishes
/// comfortably on a laptop.
pub fn default_max_size(check: Check, species: SpeciesTag) -> usize {
    match (check, species) {
        (Check::Agreement, _) => 4,
        (Check::AntipodeAxiom, SpeciesTag::Permutations) => 4,
        (Check::AntipodeAxiom, _) => 3,
        (Check::Filter, SpeciesTag::ParkingFunctions) => 3,
        (Check::Filter, _) => 4,
        (Check::TablePf3, _) => 3,
        (Check::Counts, _) => 5,
    }
}

/// Runs one suite.  `max_size` falls back to [`default_max_size`].
/// `Agreement` refuses parking functions, mirroring the interlacing engine.
pub fn run_check(
    species: SpeciesTag,
    check: Check,
    max_size: Option<usize>,
) -> Result<VerifyReport, Error> {
    let max = max_size.unwrap_or_else(|| default_max_size(check, species));
    match check {
        Check::Agreement => match species {
            SpeciesTag::Permutations => Ok(agreement::<Permutation>(max)),
            SpeciesTag::PackedWords => Ok(agreement::<PackedWord>(max)),
            SpeciesTag::ParkingFunctions => Err(Error::UnprovenForSpecies("pf")),
        },
        Check::AntipodeAxiom => Ok(match species {
            SpeciesTag::Permutations => {
                antipode_axiom::<Permutation>(max, AntipodeMethod::Interlacing)
            }
            SpeciesTag::PackedWords => antipode_axiom::<PackedWord>(max, AntipodeMethod::Interlacing),
            SpeciesTag::ParkingFunctions => {
                antipode_axiom::<ParkingFunction>(max, AntipodeMethod::Takeuchi)
            }
        }),
        Check::Filter => Ok(match species {
            SpeciesTag::Permutations => filter::<Permutation>(max, true),
            SpeciesTag::PackedWords => filter::<PackedWord>(max, true),
            SpeciesTag::ParkingFunctions => filter::<ParkingFunction>(max, false),
        }),
        Check::TablePf3 => {
            if species != SpeciesTag::ParkingFunctions {
                return Err(Error::SpeciesMismatch {
                    expected: "pf",
                    got: species.code().to_string(),
                });
            }
            Ok(table_pf3())
        }
        Check::Counts => Ok(match species {
            SpeciesTag::Permutations => counts::<Permutation>(max),
            SpeciesTag::PackedWords => counts::<PackedWord>(max),
            SpeciesTag::ParkingFunctions => counts::<ParkingFunction>(max),
        }),
    }
}

fn classes_up_to<S: Species>(max: usize) -> Vec<S> {
    (0..=max).flat_map(S::enumerate).collect()
}

fn agreement<S: Species>(max: usize) -> VerifyReport {
    let classes = classes_up_to::<S>(max);
    let failures: Vec<String> = classes
        .par_iter()
        .filter_map(|a| {
            let takeuchi = antipode_takeuchi(a);
            let interlacing = antipode_interlacing(a).expect("species admits the engine");
            (takeuchi != interlacing).then(|| {
                format!(
                    "{}: takeuchi {} vs interlacing {}",
                    a, takeuchi, interlacing
                )
            })
        })
        .collect();
    VerifyReport {
        check: Check::Agreement.name().into(),
        instances: classes.len() as u64,
        failures,
    }
}

fn antipode_axiom<S: Species>(max: usize, method: AntipodeMethod) -> VerifyReport {
    let classes = classes_up_to::<S>(max);
    let failures: Vec<String> = classes
        .par_iter()
        .filter_map(|a| {
            let holds = antipode_axiom_holds(a, method).expect("method valid for species");
            (!holds).then(|| format!("{a}: antipode axiom fails"))
        })
        .collect();
    VerifyReport {
        check: Check::AntipodeAxiom.name().into(),
        instances: classes.len() as u64,
        failures,
    }
}

/// Filter-structure sweep.  For every class `a` up to the bound, every
/// candidate target `y`, and every signature of `y` from the
/// `⊕`-factorization of `a`, the stability set must be upward closed and
/// contain the all-ones composition.  When `interval_laws` is set (proven
/// for permutations and packed words) it must moreover equal the interval
/// above the predicted minimum, satisfy the alternating-sum identity, and
/// match the pairwise-order characterization of single-merge stability.
fn filter<S: Species>(max: usize, interval_laws: bool) -> VerifyReport {
    let sources: Vec<S> = (1..=max).flat_map(S::enumerate).collect();
    let outcomes: Vec<(u64, Vec<String>)> = sources
        .par_iter()
        .map(|a| {
            let factors = a.decompose();
            let n = factors.len();
            let lo = factors.iter().map(Species::size).max().unwrap_or(0);
            let mut instances = 0u64;
            let mut failures = Vec::new();
            for size in lo..=a.size() {
                for y in S::enumerate(size) {
                    for sig in enumerate_qss(&y, &factors) {
                        instances += 1;
                        let set = stability_set(&y, &sig, &factors).expect("valid signature");
                        if !set.contains(&Composition::ones(n)) {
                            failures.push(format!("{a} -> {y} {sig}: all-ones not stable"));
                            continue;
                        }
                        if !set.is_upward_closed() {
                            failures.push(format!("{a} -> {y} {sig}: set not upward closed"));
                            continue;
                        }
                        if !interval_laws {
                            continue;
                        }
                        let min = minimal_stable_composition(&y, &sig, &factors)
                            .expect("species admits the formula");
                        if set.minimum() != Some(&min) || !set.is_interval() {
                            failures.push(format!(
                                "{a} -> {y} {sig}: not the interval above {min}"
                            ));
                            continue;
                        }
                        if !crate::antipode::verify_alternating_sum(&y, &sig, &factors)
                            .expect("species admits the identity")
                        {
                            failures.push(format!("{a} -> {y} {sig}: alternating sum off"));
                            continue;
                        }
                        for i in 1..n {
                            let mu = Composition::merge_at(n, i).expect("1 <= i < n");
                            let stable = is_stable(&y, &sig, &factors, &mu).expect("shapes agree");
                            let separated = sig.block(i - 1).strictly_precedes(sig.block(i))
                                && y.values_strictly_below(sig.block(i - 1), sig.block(i));
                            if stable != separated {
                                failures.push(format!(
                                    "{a} -> {y} {sig}: single-merge stability at {i} disagrees"
                                ));
                            }
                        }
                    }
                }
            }
            (instances, failures)
        })
        .collect();
    let instances = outcomes.iter().map(|(c, _)| c).sum();
    let failures = outcomes.into_iter().flat_map(|(_, f)| f).collect();
    VerifyReport {
        check: Check::Filter.name().into(),
        instances,
        failures,
    }
}

/// The sixteen size-3 parking functions with their pat_11, pat_12, pat_21
/// values.
pub const PF3_TABLE: [(&str, i64, i64, i64); 16] = [
    ("111", 3, 0, 0),
    ("112", 2, 1, 0),
    ("121", 2, 0, 1),
    ("211", 2, 0, 1),
    ("113", 1, 2, 0),
    ("131", 1, 1, 1),
    ("311", 1, 0, 2),
    ("122", 1, 2, 0),
    ("212", 1, 1, 1),
    ("221", 1, 0, 2),
    ("123", 0, 3, 0),
    ("132", 0, 2, 1),
    ("213", 0, 2, 1),
    ("312", 0, 1, 2),
    ("231", 0, 1, 2),
    ("321", 0, 0, 3),
];

fn table_pf3() -> VerifyReport {
    let pats: [(ParkingFunction, usize); 3] = [
        ("11".parse().expect("valid word"), 1),
        ("12".parse().expect("valid word"), 2),
        ("21".parse().expect("valid word"), 3),
    ];
    let mut failures = Vec::new();
    let mut instances = 0u64;
    for (word, v11, v12, v21) in PF3_TABLE {
        let target: ParkingFunction = word.parse().expect("valid word");
        for ((pat, _), want) in pats.iter().zip([v11, v12, v21]) {
            instances += 1;
            let got = pattern_coefficient(&target, pat);
            if got != want {
                failures.push(format!("pat_{pat}({word}) = {got}, table says {want}"));
            }
        }
    }
    VerifyReport {
        check: Check::TablePf3.name().into(),
        instances,
        failures,
    }
}

fn factorial(n: usize) -> u64 {
    (2..=n as u64).product::<u64>().max(1)
}

/// Surjections from an n-set onto an m-set by inclusion–exclusion; summing
/// over m gives the ordered Bell numbers, the packed-word counting oracle.
fn surjections(n: usize, m: usize) -> i128 {
    if m == 0 {
        return i128::from(n == 0);
    }
    let mut binom: i128 = 1;
    let mut total: i128 = 0;
    for k in 0..=m {
        if k > 0 {
            binom = binom * (m as i128 - k as i128 + 1) / k as i128;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        total += sign * binom * ((m - k) as i128).pow(n as u32);
    }
    total
}

fn expected_count(tag: SpeciesTag, n: usize) -> u64 {
    match tag {
        SpeciesTag::Permutations => factorial(n),
        SpeciesTag::PackedWords => (0..=n).map(|m| surjections(n, m)).sum::<i128>() as u64,
        SpeciesTag::ParkingFunctions => {
            if n == 0 {
                1
            } else {
                ((n + 1) as u64).pow(n as u32 - 1)
            }
        }
    }
}

fn counts<S: Species>(max: usize) -> VerifyReport {
    let mut failures = Vec::new();
    for n in 0..=max {
        let classes = S::enumerate(n);
        let want = expected_count(S::TAG, n);
        if classes.len() as u64 != want {
            failures.push(format!(
                "size {n}: enumerated {} classes, oracle says {want}",
                classes.len()
            ));
        }
        let mut dedup = classes.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != classes.len() {
            failures.push(format!("size {n}: enumeration repeats a class"));
        }
        if classes.iter().any(|c| c.size() != n) {
            failures.push(format!("size {n}: enumeration emits a wrong-size class"));
        }
    }
    VerifyReport {
        check: Check::Counts.name().into(),
        instances: (max + 1) as u64,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_oracles() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(surjections(3, 2), 6);
        assert_eq!(surjections(4, 4), 24);
        let bell: Vec<u64> = (0..=5)
            .map(|n| expected_count(SpeciesTag::PackedWords, n))
            .collect();
        assert_eq!(bell, vec![1, 1, 3, 13, 75, 541]);
        let parking: Vec<u64> = (0..=5)
            .map(|n| expected_count(SpeciesTag::ParkingFunctions, n))
            .collect();
        assert_eq!(parking, vec![1, 1, 3, 16, 125, 1296]);
    }

    #[test]
    fn counts_pass_for_all_species() {
        for tag in [
            SpeciesTag::Permutations,
            SpeciesTag::PackedWords,
            SpeciesTag::ParkingFunctions,
        ] {
            let report = run_check(tag, Check::Counts, Some(5)).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
            assert_eq!(report.instances, 6);
        }
    }

    #[test]
    fn table_pf3_passes() {
        let report = run_check(SpeciesTag::ParkingFunctions, Check::TablePf3, None).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.instances, 48);
        assert!(matches!(
            run_check(SpeciesTag::Permutations, Check::TablePf3, None),
            Err(Error::SpeciesMismatch { .. })
        ));
    }

    #[test]
    fn agreement_small() {
        let report = run_check(SpeciesTag::Permutations, Check::Agreement, Some(3)).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.instances, 10);
        assert!(run_check(SpeciesTag::ParkingFunctions, Check::Agreement, Some(2)).is_err());
    }

    #[test]
    fn axiom_small() {
        for tag in [
            SpeciesTag::Permutations,
            SpeciesTag::PackedWords,
            SpeciesTag::ParkingFunctions,
        ] {
            let report = run_check(tag, Check::AntipodeAxiom, Some(2)).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
        }
    }

    #[test]
    fn filter_small() {
        let report = run_check(SpeciesTag::PackedWords, Check::Filter, Some(3)).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let report = run_check(SpeciesTag::ParkingFunctions, Check::Filter, Some(2)).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }
}
