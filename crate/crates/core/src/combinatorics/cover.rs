use std::collections::HashMap;
use std::sync::Arc;

use super::{subsets_of_size, PositionSet};

/// An ordered tuple of position subsets whose union is the full ground set
/// `{1..n}`.  Blocks may overlap and may repeat.
///
/// Covers whose blocks restrict to prescribed patterns are the quasi-shuffle
/// signatures counted by the product and antipode coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    ambient: usize,
    blocks: Vec<PositionSet>,
}

impl Cover {
    /// Validates that the blocks share one ground set and cover it.
    pub fn new(blocks: Vec<PositionSet>, ambient: usize) -> Result<Self, crate::Error> {
        let mut mask = 0u64;
        for b in &blocks {
            if b.ambient() != ambient {
                return Err(crate::Error::InvalidSubset(format!(
                    "block over ground set {} inside cover of {}",
                    b.ambient(),
                    ambient
                )));
            }
            mask |= b.bitmask();
        }
        let full = if ambient == 0 { 0 } else { u64::MAX >> (64 - ambient) };
        if mask != full {
            return Err(crate::Error::InvalidSubset(
                "blocks do not cover the ground set".into(),
            ));
        }
        Ok(Self { ambient, blocks })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[PositionSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &PositionSet {
        &self.blocks[i]
    }
}

impl std::fmt::Display for Cover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Lazily enumerates every tuple `(I_1, …, I_k)` with `|I_i| = sizes[i]` and
/// `⋃ I_i = {1..n}`, each exactly once, in lexicographic order of the
/// concatenated characteristic vectors.
///
/// The number of covers grows like `Π_i C(n, sizes[i])`, so the stream never
/// materializes them; only the per-size candidate subsets are stored.
pub fn covers(n: usize, sizes: &[usize]) -> Covers {
    assert!(n <= 64, "ground set too large to enumerate covers");
    let mut by_size: HashMap<usize, Arc<Vec<u64>>> = HashMap::new();
    let levels: Vec<Arc<Vec<u64>>> = sizes
        .iter()
        .map(|&s| {
            Arc::clone(by_size.entry(s).or_insert_with(|| {
                Arc::new(
                    subsets_of_size(n, s)
                        .iter()
                        .map(PositionSet::bitmask)
                        .collect(),
                )
            }))
        })
        .collect();
    // remaining_capacity[d] = total size of blocks d.. ; used for pruning.
    let mut remaining_capacity = vec![0usize; sizes.len() + 1];
    for d in (0..sizes.len()).rev() {
        remaining_capacity[d] = remaining_capacity[d + 1] + sizes[d];
    }
    Covers {
        n,
        levels,
        remaining_capacity,
        path: Vec::new(),
        next_candidate: 0,
        done: false,
        emitted_empty_case: false,
    }
}

/// Iterator state for [`covers`]: a depth-first walk over per-level candidate
/// subsets with a coverage-feasibility prune.
pub struct Covers {
    n: usize,
    levels: Vec<Arc<Vec<u64>>>,
    remaining_capacity: Vec<usize>,
    /// One frame per chosen level: (candidate index, union mask so far).
    path: Vec<(usize, u64)>,
    next_candidate: usize,
    done: bool,
    emitted_empty_case: bool,
}

impl Covers {
    fn build(&self) -> Cover {
        let blocks = self
            .path
            .iter()
            .enumerate()
            .map(|(d, &(idx, _))| PositionSet::from_bitmask(self.levels[d][idx], self.n))
            .collect();
        Cover {
            ambient: self.n,
            blocks,
        }
    }
}

impl Iterator for Covers {
    type Item = Cover;

    fn next(&mut self) -> Option<Cover> {
        if self.done {
            return None;
        }
        let k = self.levels.len();
        if k == 0 {
            self.done = true;
            if self.n == 0 && !self.emitted_empty_case {
                self.emitted_empty_case = true;
                return Some(Cover {
                    ambient: 0,
                    blocks: Vec::new(),
                });
            }
            return None;
        }
        loop {
            let depth = self.path.len();
            let union_before = self.path.last().map_or(0, |&(_, m)| m);
            let candidates = &self.levels[depth];
            let mut advanced = false;
            for idx in self.next_candidate..candidates.len() {
                let union_after = union_before | candidates[idx];
                let uncovered = self.n - (union_after.count_ones() as usize);
                if uncovered <= self.remaining_capacity[depth + 1] {
                    self.path.push((idx, union_after));
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if self.path.len() == k {
                    // remaining capacity past the last level is 0, so the
                    // prune already forced a full cover here.
                    let cover = self.build();
                    let (idx, _) = self.path.pop().expect("frame just pushed");
                    self.next_candidate = idx + 1;
                    return Some(cover);
                }
                self.next_candidate = 0;
            } else {
                match self.path.pop() {
                    Some((idx, _)) => self.next_candidate = idx + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::subsets;

    /// Brute-force oracle: filter all tuples of subsets by the covering
    /// condition.
    fn brute_covers(n: usize, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let mut tuples: Vec<Vec<PositionSet>> = vec![Vec::new()];
        for &s in sizes {
            let choices: Vec<PositionSet> = subsets(n).into_iter().filter(|x| x.len() == s).collect();
            let mut next = Vec::new();
            for t in &tuples {
                for c in &choices {
                    let mut t2 = t.clone();
                    t2.push(c.clone());
                    next.push(t2);
                }
            }
            tuples = next;
        }
        tuples
            .into_iter()
            .filter(|t| {
                let mut mask = 0u64;
                for b in t {
                    mask |= b.bitmask();
                }
                mask.count_ones() as usize == n
            })
            .map(|t| t.iter().map(|b| b.members().to_vec()).collect())
            .collect()
    }

    #[test]
    fn forced_single_cover() {
        let got: Vec<Cover> = covers(1, &[1, 1]).collect();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].block(0).members(), &[1]);
        assert_eq!(got[0].block(1).members(), &[1]);
    }

    #[test]
    fn three_covers_of_three_by_one_two() {
        assert_eq!(covers(3, &[1, 2]).count(), 3);
    }

    #[test]
    fn impossible_cover_is_empty() {
        assert_eq!(covers(2, &[1]).count(), 0);
    }

    #[test]
    fn zero_blocks() {
        assert_eq!(covers(0, &[]).count(), 1);
        assert_eq!(covers(1, &[]).count(), 0);
    }

    #[test]
    fn matches_brute_force_and_has_no_duplicates() {
        let cases: &[(usize, &[usize])] = &[
            (0, &[]),
            (0, &[0, 0]),
            (1, &[1, 1]),
            (2, &[1, 1]),
            (3, &[1, 2]),
            (3, &[2, 2]),
            (4, &[1, 2, 1]),
            (4, &[2, 2, 2]),
            (5, &[1, 2, 2]),
            (5, &[3, 3]),
            (4, &[1, 1, 1, 1]),
        ];
        for &(n, sizes) in cases {
            let got: Vec<Vec<Vec<usize>>> = covers(n, sizes)
                .map(|c| c.blocks().iter().map(|b| b.members().to_vec()).collect())
                .collect();
            let mut dedup = got.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len(), "duplicates for n={n} sizes={sizes:?}");
            let mut expected = brute_covers(n, sizes);
            let mut sorted_got = got.clone();
            sorted_got.sort();
            expected.sort();
            assert_eq!(sorted_got, expected, "wrong covers for n={n} sizes={sizes:?}");
            for c in covers(n, sizes) {
                let mut mask = 0u64;
                for b in c.blocks() {
                    mask |= b.bitmask();
                }
                assert_eq!(mask.count_ones() as usize, n);
            }
        }
    }

    #[test]
    fn cover_constructor_validates() {
        let b1 = PositionSet::new(vec![1], 2).unwrap();
        assert!(Cover::new(vec![b1.clone()], 2).is_err());
        let b2 = PositionSet::new(vec![2], 2).unwrap();
        assert!(Cover::new(vec![b1, b2], 2).is_ok());
    }
}
