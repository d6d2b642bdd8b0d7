use std::cmp::Ordering;

use super::{check_subset, format_word, parse_word, repack, word_order, Species, SpeciesTag};
use crate::combinatorics::PositionSet;
use crate::Error;

/// A permutation in one-line notation: `word[i-1]` is the value at position
/// `i`, and the values are exactly `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, Error> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(format_word(&word)));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }
}

impl Species for Permutation {
    const TAG: SpeciesTag = SpeciesTag::Permutations;

    fn size(&self) -> usize {
        self.word.len()
    }

    fn empty() -> Self {
        Self { word: Vec::new() }
    }

    /// Standardization of the subsequence at `subset`: the unique permutation
    /// of `{1..|subset|}` order-isomorphic to the selected points in both
    /// position and value.
    fn restrict(&self, subset: &PositionSet) -> Result<Self, Error> {
        check_subset(subset, self.size())?;
        let picked: Vec<usize> = subset.iter().map(|p| self.word[p - 1]).collect();
        Ok(Self {
            word: repack(&picked),
        })
    }

    fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.word.len();
        let word = self
            .word
            .iter()
            .copied()
            .chain(other.word.iter().map(|v| v + shift))
            .collect();
        Self { word }
    }

    /// Splits after every prefix `{1..k}` that maps onto itself, i.e. after
    /// every k with `max(word[..k]) = k`.
    fn decompose(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (i, &v) in self.word.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                let word = self.word[start..=i].iter().map(|v| v - start).collect();
                out.push(Self { word });
                start = i + 1;
            }
        }
        out
    }

    fn enumerate(n: usize) -> Vec<Self> {
        fn rec(n: usize, used: &mut Vec<bool>, word: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if word.len() == n {
                out.push(Permutation { word: word.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    word.push(v);
                    rec(n, used, word, out);
                    word.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
        out
    }

    fn values_strictly_below(&self, left: &PositionSet, right: &PositionSet) -> bool {
        let max_left = left.iter().map(|p| self.word[p - 1]).max();
        let min_right = right.iter().map(|p| self.word[p - 1]).min();
        match (max_left, min_right) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        word_order(&self.word, &other.word)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::new(parse_word(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction_rejects_non_bijections() {
        assert!(matches!("121".parse::<Permutation>(), Err(Error::NotAPermutation(_))));
        assert!("13".parse::<Permutation>().is_err());
        assert_eq!(p("").size(), 0);
    }

    #[test]
    fn restriction_examples() {
        let sigma = p("2314");
        let s = PositionSet::new(vec![2, 3], 4).unwrap();
        assert_eq!(sigma.restrict(&s).unwrap(), p("21"));
        assert_eq!(sigma.restrict(&PositionSet::full(4)).unwrap(), sigma);
        assert_eq!(
            sigma.restrict(&PositionSet::empty(4)).unwrap(),
            Permutation::empty()
        );
        let bad = PositionSet::new(vec![1], 3).unwrap();
        assert!(matches!(sigma.restrict(&bad), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p("1").direct_sum(&p("21")), p("132"));
        assert_eq!(Permutation::empty().direct_sum(&p("312")), p("312"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(p("132").decompose(), vec![p("1"), p("21")]);
        assert_eq!(p("321").decompose(), vec![p("321")]);
        assert_eq!(p("123").decompose(), vec![p("1"), p("1"), p("1")]);
        assert!(Permutation::empty().decompose().is_empty());
    }

    #[test]
    fn enumerate_counts() {
        let sizes: Vec<usize> = (0..=5).map(|n| Permutation::enumerate(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 6, 24, 120]);
        assert_eq!(Permutation::enumerate(0), vec![Permutation::empty()]);
    }

    #[test]
    fn value_comparison() {
        let sigma = p("2314");
        let a = PositionSet::new(vec![1, 3], 4).unwrap();
        let b = PositionSet::new(vec![4], 4).unwrap();
        assert!(sigma.values_strictly_below(&a, &b));
        assert!(!sigma.values_strictly_below(&b, &a));
        assert!(sigma.values_strictly_below(&PositionSet::empty(4), &a));
    }
}
