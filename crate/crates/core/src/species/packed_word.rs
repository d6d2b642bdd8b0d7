use std::cmp::Ordering;

use super::{check_subset, format_word, parse_word, repack, word_order, Permutation, Species, SpeciesTag};
use crate::combinatorics::PositionSet;
use crate::Error;

/// A packed word: a word over `{1..m}` in which every letter of `{1..m}`
/// occurs at least once (`m` is the rank, the largest letter).
///
/// Permutations are exactly the packed words without repeated letters, and
/// the inclusion preserves restriction, diagonal sum, and decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedWord {
    word: Vec<usize>,
    rank: usize,
}

impl PackedWord {
    pub fn new(word: Vec<usize>) -> Result<Self, Error> {
        let rank = word.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; rank + 1];
        for &v in &word {
            if v == 0 {
                return Err(Error::NotPacked(format_word(&word)));
            }
            seen[v] = true;
        }
        if seen.iter().skip(1).any(|&s| !s) {
            return Err(Error::NotPacked(format_word(&word)));
        }
        Ok(Self { word, rank })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The largest letter `m`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True iff no letter repeats, i.e. the word is a permutation verbatim.
    pub fn is_permutation(&self) -> bool {
        self.rank == self.word.len()
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.is_permutation() {
            Some(Permutation::new(self.word.clone()).expect("distinct packed letters"))
        } else {
            None
        }
    }
}

impl From<&Permutation> for PackedWord {
    fn from(p: &Permutation) -> Self {
        Self {
            word: p.word().to_vec(),
            rank: p.size(),
        }
    }
}

impl Species for PackedWord {
    const TAG: SpeciesTag = SpeciesTag::PackedWords;

    fn size(&self) -> usize {
        self.word.len()
    }

    fn empty() -> Self {
        Self {
            word: Vec::new(),
            rank: 0,
        }
    }

    /// Subsequence at `subset`, repacked: letters are replaced by their rank
    /// among the distinct letters present (equal letters stay equal).
    fn restrict(&self, subset: &PositionSet) -> Result<Self, Error> {
        check_subset(subset, self.size())?;
        let picked: Vec<usize> = subset.iter().map(|p| self.word[p - 1]).collect();
        let word = repack(&picked);
        let rank = word.iter().copied().max().unwrap_or(0);
        Ok(Self { word, rank })
    }

    fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.rank;
        let word: Vec<usize> = self
            .word
            .iter()
            .copied()
            .chain(other.word.iter().map(|v| v + shift))
            .collect();
        Self {
            word,
            rank: self.rank + other.rank,
        }
    }

    /// Splits after position k whenever the prefix uses exactly the letters
    /// `{1..j}` and every later letter exceeds j.
    fn decompose(&self) -> Vec<Self> {
        let n = self.word.len();
        // suffix_min[i] = min of word[i..]
        let mut suffix_min = vec![usize::MAX; n + 1];
        for i in (0..n).rev() {
            suffix_min[i] = suffix_min[i + 1].min(self.word[i]);
        }
        let mut out = Vec::new();
        let mut start = 0;
        let mut prefix_max = 0;
        let mut distinct = 0;
        let mut seen = vec![false; self.rank + 1];
        let mut base = 0;
        for (i, &v) in self.word.iter().enumerate() {
            prefix_max = prefix_max.max(v);
            if !seen[v] {
                seen[v] = true;
                distinct += 1;
            }
            // prefix letters form {1..prefix_max} iff the distinct count
            // equals the max; the suffix must then sit strictly above.
            if distinct == prefix_max && suffix_min[i + 1] > prefix_max {
                let word: Vec<usize> = self.word[start..=i].iter().map(|v| v - base).collect();
                let rank = prefix_max - base;
                out.push(Self { word, rank });
                start = i + 1;
                base = prefix_max;
            }
        }
        out
    }

    fn enumerate(n: usize) -> Vec<Self> {
        fn rec(
            n: usize,
            word: &mut Vec<usize>,
            seen: &mut Vec<bool>,
            max: usize,
            distinct: usize,
            out: &mut Vec<PackedWord>,
        ) {
            if word.len() == n {
                debug_assert_eq!(max, distinct);
                out.push(PackedWord {
                    word: word.clone(),
                    rank: max,
                });
                return;
            }
            let remaining = n - word.len() - 1;
            for v in 1..=n {
                let new_max = max.max(v);
                let new_distinct = distinct + usize::from(!seen[v]);
                // every missing letter below the running max needs one of the
                // remaining positions
                if new_max - new_distinct > remaining {
                    continue;
                }
                let was_seen = seen[v];
                seen[v] = true;
                word.push(v);
                rec(n, word, seen, new_max, new_distinct, out);
                word.pop();
                seen[v] = was_seen;
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], 0, 0, &mut out);
        out
    }

    fn values_strictly_below(&self, left: &PositionSet, right: &PositionSet) -> bool {
        let max_left = left.iter().map(|p| self.word[p - 1]).max();
        let min_right = right.iter().map(|p| self.word[p - 1]).min();
        match (max_left, min_right) {
            // equal letters are incomparable, so "strictly below" demands a
            // strict gap between the extremes
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }
}

impl PartialOrd for PackedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PackedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        word_order(&self.word, &other.word)
    }
}

impl std::fmt::Display for PackedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

impl std::str::FromStr for PackedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::new(parse_word(s)?)
    }
}
