//! The two antipode engines and the stability machinery that connects them.
//!
//! The composition-sum engine ([`antipode_takeuchi`]) expands
//! `S(pat_x) = Σ_{α⊨n} (−1)^{ℓ(α)} pat_{x^α_1} ⋯ pat_{x^α_ℓ}` over the
//! `2^(n−1)` compositions of the `⊕`-factor sequence `x = x_1⊕…⊕x_n`.  It is
//! valid for every species here, but it leaves cancellations to be made.
//!
//! The interlacing engine ([`antipode_interlacing`]) is cancellation-free:
//! the coefficient of `pat_y` is `(−1)^n` times the number of interlacing
//! quasi-shuffle signatures of `y` from `x_1, …, x_n`.  A signature is
//! non-interlacing when some consecutive block pair is strictly separated in
//! both the position order and the value order.  This engine is proven for
//! permutations and packed words and is refused for parking functions
//! (an exploratory variant computes it anyway, asserting nothing).
//!
//! The bridge between the two is the stability filter: for each signature,
//! the compositions under which it stays a signature of the merged factors
//! form an upward-closed set whose alternating length-sum is `(−1)^n`
//! exactly on interlacing signatures and `0` otherwise.  [`stability_set`],
//! [`minimal_stable_composition`], and [`verify_alternating_sum`] make that
//! argument checkable instance by instance.

use std::collections::BTreeSet;

use crate::algebra::{coproduct, mul_coeff, quasi_shuffles, PatternExpr};
use crate::combinatorics::{compositions, Composition, Cover, PositionSet};
use crate::species::{Species, SpeciesTag};
use crate::Error;

pub use crate::algebra::qss_coefficient;

/// Which antipode engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntipodeMethod {
    Takeuchi,
    Interlacing,
}

impl AntipodeMethod {
    pub fn name(self) -> &'static str {
        match self {
            AntipodeMethod::Takeuchi => "takeuchi",
            AntipodeMethod::Interlacing => "interlacing",
        }
    }
}

fn supports_interlacing(tag: SpeciesTag) -> bool {
    matches!(tag, SpeciesTag::Permutations | SpeciesTag::PackedWords)
}

/// `(−1)^k`.
fn parity_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Enumerates the quasi-shuffle signatures of `target` from `factors`.
pub fn enumerate_qss<'a, S: Species>(
    target: &'a S,
    factors: &'a [S],
) -> impl Iterator<Item = Cover> + 'a {
    quasi_shuffles(target, factors)
}

/// Whether a signature of `target` is interlacing: no consecutive block pair
/// `(I_i, I_{i+1})` with `I_i` strictly below `I_{i+1}` in both the position
/// order and the value order.
///
/// For parking functions the value order used here is the exploratory
/// column order; see [`interlacing_coefficient_experimental`].
pub fn is_interlacing<S: Species>(target: &S, signature: &Cover) -> Result<bool, Error> {
    if signature.ambient() != target.size() {
        return Err(Error::NotAQuasiShuffle(format!(
            "cover of {{1..{}}} against an object of size {}",
            signature.ambient(),
            target.size()
        )));
    }
    for pair in signature.blocks().windows(2) {
        if pair[0].strictly_precedes(&pair[1]) && target.values_strictly_below(&pair[0], &pair[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn interlacing_count<S: Species>(target: &S, factors: &[S]) -> i64 {
    let mut count = 0i64;
    for signature in quasi_shuffles(target, factors) {
        if is_interlacing(target, &signature).expect("signature over the right ground set") {
            count = count.checked_add(1).expect("integer overflow in pattern coefficient");
        }
    }
    count
}

/// The bracket `[target; factors]`: the number of interlacing quasi-shuffle
/// signatures.  Only proven meaningful for permutations and packed words;
/// parking functions are refused.
pub fn interlacing_coefficient<S: Species>(target: &S, factors: &[S]) -> Result<i64, Error> {
    if !supports_interlacing(S::TAG) {
        return Err(Error::UnprovenForSpecies(S::TAG.code()));
    }
    Ok(interlacing_count(target, factors))
}

/// Exploratory interlacing count for any species, including parking
/// functions.  Nothing is asserted about its relation to the antipode
/// outside permutations and packed words.
pub fn interlacing_coefficient_experimental<S: Species>(target: &S, factors: &[S]) -> i64 {
    interlacing_count(target, factors)
}

fn check_signature_shape<S: Species>(
    target: &S,
    signature: &Cover,
    factors: &[S],
) -> Result<(), Error> {
    if signature.len() != factors.len() {
        return Err(Error::LengthMismatch(format!(
            "{} blocks against {} factors",
            signature.len(),
            factors.len()
        )));
    }
    if signature.ambient() != target.size() {
        return Err(Error::NotAQuasiShuffle(format!(
            "cover of {{1..{}}} against an object of size {}",
            signature.ambient(),
            target.size()
        )));
    }
    Ok(())
}

/// Whether a signature stays valid after merging factors along `alpha`:
/// every merged block must restrict to the corresponding merged factor, and
/// every pair of merged indices with isomorphic factors must be strictly
/// ordered by position.
pub fn is_stable<S: Species>(
    target: &S,
    signature: &Cover,
    factors: &[S],
    alpha: &Composition,
) -> Result<bool, Error> {
    check_signature_shape(target, signature, factors)?;
    if alpha.total() != factors.len() {
        return Err(Error::LengthMismatch(format!(
            "composition of {} against {} factors",
            alpha.total(),
            factors.len()
        )));
    }
    for range in alpha.part_ranges() {
        let merged_block = signature.blocks()[range.clone()]
            .iter()
            .fold(PositionSet::empty(target.size()), |acc, b| acc.union(b));
        let merged_factor = S::direct_sum_all(&factors[range.clone()]);
        if target.restrict(&merged_block)? != merged_factor {
            return Ok(false);
        }
        for i in range.clone() {
            for j in i + 1..range.end {
                if factors[i] == factors[j]
                    && !signature.block(i).strictly_precedes(signature.block(j))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The set of compositions under which one signature is stable.  For the
/// species here it is upward closed and contains the all-ones composition;
/// for permutations and packed words it is the interval from
/// [`minimal_stable_composition`] up to all-ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilitySet {
    factor_count: usize,
    members: BTreeSet<Composition>,
}

impl StabilitySet {
    pub fn factor_count(&self) -> usize {
        self.factor_count
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = &Composition> {
        self.members.iter()
    }

    pub fn contains(&self, alpha: &Composition) -> bool {
        self.members.contains(alpha)
    }

    /// `Σ (−1)^{ℓ(α)}` over the members.
    pub fn alternating_sum(&self) -> i64 {
        self.members
            .iter()
            .map(|a| parity_sign(a.len()))
            .sum()
    }

    /// The poset minimum, when one exists (an element ≤ every member).
    pub fn minimum(&self) -> Option<&Composition> {
        let candidate = self.members.iter().min_by_key(|a| a.len())?;
        for other in &self.members {
            if !candidate.leq(other).expect("members share one n") {
                return None;
            }
        }
        Some(candidate)
    }

    pub fn is_upward_closed(&self) -> bool {
        self.members.iter().all(|alpha| {
            compositions(self.factor_count)
                .iter()
                .filter(|beta| alpha.leq(beta).expect("same n"))
                .all(|beta| self.members.contains(beta))
        })
    }

    /// Whether the set is exactly the interval from its minimum to all-ones.
    pub fn is_interval(&self) -> bool {
        match self.minimum() {
            None => false,
            Some(min) => compositions(self.factor_count)
                .iter()
                .all(|beta| self.members.contains(beta) == min.leq(beta).expect("same n")),
        }
    }
}

/// All compositions under which `signature` is stable.
pub fn stability_set<S: Species>(
    target: &S,
    signature: &Cover,
    factors: &[S],
) -> Result<StabilitySet, Error> {
    check_signature_shape(target, signature, factors)?;
    let n = factors.len();
    let mut members = BTreeSet::new();
    for alpha in compositions(n) {
        if is_stable(target, signature, factors, &alpha)? {
            members.insert(alpha);
        }
    }
    Ok(StabilitySet {
        factor_count: n,
        members,
    })
}

/// The minimum of the stability set, computed directly for permutations and
/// packed words: merge exactly the consecutive pairs that are strictly
/// separated in both orders, i.e. split everywhere else.
pub fn minimal_stable_composition<S: Species>(
    target: &S,
    signature: &Cover,
    factors: &[S],
) -> Result<Composition, Error> {
    if !supports_interlacing(S::TAG) {
        return Err(Error::UnprovenForSpecies(S::TAG.code()));
    }
    check_signature_shape(target, signature, factors)?;
    let n = factors.len();
    if n == 0 {
        return Ok(Composition::empty());
    }
    let merged: Vec<usize> = (1..n)
        .filter(|&i| {
            let a = signature.block(i - 1);
            let b = signature.block(i);
            a.strictly_precedes(b) && target.values_strictly_below(a, b)
        })
        .collect();
    let merged_set = PositionSet::new(merged, n - 1).expect("indices lie in 1..n-1");
    Composition::from_splits(&merged_set.complement(), n)
}

/// Checks the alternating-sum identity for one signature: the sum over its
/// stability set is `(−1)^n` when the signature is interlacing and `0`
/// otherwise.  Proven for permutations and packed words.
pub fn verify_alternating_sum<S: Species>(
    target: &S,
    signature: &Cover,
    factors: &[S],
) -> Result<bool, Error> {
    if !supports_interlacing(S::TAG) {
        return Err(Error::UnprovenForSpecies(S::TAG.code()));
    }
    let set = stability_set(target, signature, factors)?;
    let n = factors.len();
    let expected = if is_interlacing(target, signature)? {
        parity_sign(n)
    } else {
        0
    };
    Ok(set.alternating_sum() == expected)
}

/// Composition-sum antipode: factorize `a`, then sum the signed iterated
/// products of the merged-factor pattern functions over all compositions of
/// the factor sequence.  `S(pat_∅) = pat_∅`; an indecomposable `a` gives
/// `−pat_a`.
pub fn antipode_takeuchi<S: Species>(a: &S) -> PatternExpr<S> {
    let factors = a.decompose();
    let mut out = PatternExpr::zero();
    for alpha in compositions(factors.len()) {
        let sign = parity_sign(alpha.len());
        let mut term = PatternExpr::unit();
        for range in alpha.part_ranges() {
            let merged = S::direct_sum_all(&factors[range]);
            term = term.product(&PatternExpr::pattern(merged));
        }
        out += term.scaled(sign);
    }
    out
}

/// Cancellation-free antipode for permutations and packed words: the
/// coefficient of every candidate class is `(−1)^n` times its interlacing
/// count, so no subtraction ever occurs.  Candidate sizes run from the
/// largest factor to `|a|`; outside that window no signature exists.
pub fn antipode_interlacing<S: Species>(a: &S) -> Result<PatternExpr<S>, Error> {
    if !supports_interlacing(S::TAG) {
        return Err(Error::UnprovenForSpecies(S::TAG.code()));
    }
    let factors = a.decompose();
    let n = factors.len();
    let sign = parity_sign(n);
    let lo = factors.iter().map(Species::size).max().unwrap_or(0);
    let hi = a.size();
    let mut out = PatternExpr::zero();
    for size in lo..=hi {
        for candidate in S::enumerate(size) {
            let count = interlacing_count(&candidate, &factors);
            if count != 0 {
                out.add_term(candidate, mul_coeff(sign, count));
            }
        }
    }
    Ok(out)
}

/// Runs the selected engine.
pub fn antipode<S: Species>(a: &S, method: AntipodeMethod) -> Result<PatternExpr<S>, Error> {
    match method {
        AntipodeMethod::Takeuchi => Ok(antipode_takeuchi(a)),
        AntipodeMethod::Interlacing => antipode_interlacing(a),
    }
}

/// Checks `Σ S(pat_b)·pat_c = ε(pat_a)·pat_∅` over the deconcatenations
/// `(b, c)` of `a` — the defining antipode identity.
pub fn antipode_axiom_holds<S: Species>(a: &S, method: AntipodeMethod) -> Result<bool, Error> {
    let mut sum = PatternExpr::zero();
    for (b, c) in coproduct(a) {
        let s_b = antipode(&b, method)?;
        sum += s_b.product(&PatternExpr::pattern(c));
    }
    let expected = if a.size() == 0 {
        PatternExpr::unit()
    } else {
        PatternExpr::zero()
    };
    Ok(sum == expected)
}
