//! The three species with restrictions — permutations, packed words, and
//! parking functions — behind one trait.
//!
//! Objects are stored as canonical isomorphism-class representatives on the
//! ground set `{1..n}` (integer words), so class equality is plain `==`.
//! Every species supports position-subset restriction, the diagonal sum
//! (shifted concatenation) `⊕`, and the unique decomposition into
//! `⊕`-indecomposables that drives the coproduct and both antipode engines.

mod packed_word;
mod parking;
mod permutation;

pub use packed_word::PackedWord;
pub use parking::{DyckPath, LabelledDyckPath, ParkingFunction, Step};
pub use permutation::Permutation;

use crate::combinatorics::PositionSet;
use crate::Error;

/// Tags identifying a species in serialized output and at CLI boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpeciesTag {
    Permutations,
    PackedWords,
    ParkingFunctions,
}

impl SpeciesTag {
    pub fn code(self) -> &'static str {
        match self {
            SpeciesTag::Permutations => "per",
            SpeciesTag::PackedWords => "pw",
            SpeciesTag::ParkingFunctions => "pf",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "per" => Some(SpeciesTag::Permutations),
            "pw" => Some(SpeciesTag::PackedWords),
            "pf" => Some(SpeciesTag::ParkingFunctions),
            _ => None,
        }
    }
}

impl std::fmt::Display for SpeciesTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// A canonical object of one species with restrictions.
///
/// The `Ord` implementation orders classes by size first and then by word,
/// which fixes the term order in every serialized expression.
pub trait Species:
    Clone
    + Eq
    + Ord
    + std::hash::Hash
    + std::fmt::Debug
    + std::fmt::Display
    + std::str::FromStr<Err = Error>
    + Send
    + Sync
    + Sized
{
    const TAG: SpeciesTag;

    /// Number of positions of the ground set.
    fn size(&self) -> usize;

    /// The unique size-0 object.
    fn empty() -> Self;

    /// Restriction to a position subset, renormalized to the canonical
    /// representative on `{1..|subset|}`.
    fn restrict(&self, subset: &PositionSet) -> Result<Self, Error>;

    /// Diagonal sum (shifted concatenation); associative with `empty` as
    /// unit.
    fn direct_sum(&self, other: &Self) -> Self;

    /// The unique factorization into `⊕`-indecomposables; empty for the
    /// empty object.
    fn decompose(&self) -> Vec<Self>;

    /// All canonical objects of the given size, in a deterministic
    /// (lexicographic) order.
    fn enumerate(n: usize) -> Vec<Self>;

    /// Whether block `left` sits strictly below block `right` in the value
    /// order of this object: disjoint, and every value over `left` strictly
    /// below every value over `right` (equal values are incomparable).
    /// Vacuously true when either block is empty.
    fn values_strictly_below(&self, left: &PositionSet, right: &PositionSet) -> bool;

    fn is_indecomposable(&self) -> bool {
        self.decompose().len() == 1
    }

    fn direct_sum_all<'a, I>(parts: I) -> Self
    where
        Self: 'a,
        I: IntoIterator<Item = &'a Self>,
    {
        parts
            .into_iter()
            .fold(Self::empty(), |acc, p| acc.direct_sum(p))
    }
}

pub(crate) fn check_subset(subset: &PositionSet, n: usize) -> Result<(), Error> {
    if subset.ambient() != n {
        return Err(Error::InvalidSubset(format!(
            "subset of {{1..{}}} applied to an object of size {}",
            subset.ambient(),
            n
        )));
    }
    Ok(())
}

/// Dense 1-based ranks: each letter maps to 1 + the number of distinct
/// smaller letters present.  Equal letters stay equal; distinct letters stay
/// distinct.  This is the repacking step shared by every restriction.
pub(crate) fn repack(letters: &[usize]) -> Vec<usize> {
    let mut distinct: Vec<usize> = letters.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    letters
        .iter()
        .map(|v| distinct.binary_search(v).expect("letter present") + 1)
        .collect()
}

/// Text notation shared by all word species: a digit string for words of
/// length at most 9 (all letters are single digits then), comma-separated
/// values otherwise.  The empty word renders as the empty string.
pub(crate) fn format_word(word: &[usize]) -> String {
    if word.len() <= 9 {
        word.iter().map(|v| v.to_string()).collect()
    } else {
        word.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses either notation; surrounding brackets (the CLI's factor-list form)
/// are accepted and ignored.
pub(crate) fn parse_word(text: &str) -> Result<Vec<usize>, Error> {
    let t = text.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .unwrap_or(t);
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if t.contains(',') {
        t.split(',')
            .map(|piece| {
                piece
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidNotation(format!("bad letter {piece:?} in {text:?}")))
            })
            .collect()
    } else {
        t.chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidNotation(format!("bad digit {c:?} in {text:?}")))
            })
            .collect()
    }
}

/// Compares two words by (length, lexicographic word).
pub(crate) fn word_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
