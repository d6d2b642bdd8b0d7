use std::cmp::Ordering;

use super::PositionSet;
use crate::Error;

/// A composition of `n`: an ordered list of positive parts summing to `n`.
/// The empty composition is the unique composition of 0.
///
/// Compositions of `n` are in bijection with subsets of `{1..n-1}` via their
/// cumulative sums, which induces the boolean-lattice partial order used by
/// the stability machinery: `α ≤ β` iff `α` arises from `β` by merging
/// consecutive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart);
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-part composition `(n)`, for `n ≥ 1`.
    pub fn single(n: usize) -> Result<Self, Error> {
        Self::new(vec![n])
    }

    /// The finest composition `(1,…,1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Self {
            parts: vec![1; n],
        }
    }

    /// `μ_i`: all parts 1 except a single 2 merging indices `i` and `i+1`
    /// (1-based, `1 ≤ i ≤ n-1`).
    pub fn merge_at(n: usize, i: usize) -> Result<Self, Error> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        let mut parts = vec![1; n - 1];
        parts[i - 1] = 2;
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `ℓ`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being composed.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Cumulative sums `{f_1, …, f_{ℓ-1}}` as a subset of `{1..n-1}`.
    /// Undefined for the empty composition.
    pub fn cumulative_sums(&self) -> Result<PositionSet, Error> {
        if self.parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let n = self.total();
        let mut sum = 0;
        let members: Vec<usize> = self.parts[..self.parts.len() - 1]
            .iter()
            .map(|&p| {
                sum += p;
                sum
            })
            .collect();
        PositionSet::new(members, n - 1)
    }

    /// Inverse of [`Composition::cumulative_sums`]: rebuilds the composition
    /// of `n` whose cumulative-sum set is `splits`.
    pub fn from_splits(splits: &PositionSet, n: usize) -> Result<Self, Error> {
        for p in splits.iter() {
            if n == 0 || p > n - 1 {
                return Err(Error::InvalidSplitPoint {
                    point: p,
                    max: n.saturating_sub(1),
                });
            }
        }
        if n == 0 {
            return Ok(Self::empty());
        }
        let mut parts = Vec::with_capacity(splits.len() + 1);
        let mut prev = 0;
        for f in splits.iter() {
            parts.push(f - prev);
            prev = f;
        }
        parts.push(n - prev);
        Ok(Self { parts })
    }

    /// Partial order: `self ≤ other` iff `self` is obtained from `other` by
    /// merging consecutive parts, i.e. `CS(self) ⊆ CS(other)`.
    pub fn leq(&self, other: &Self) -> Result<bool, Error> {
        let (n, m) = (self.total(), other.total());
        if n != m {
            return Err(Error::IncomparableSizes(n, m));
        }
        if n == 0 {
            return Ok(true);
        }
        let a = self.cumulative_sums()?;
        let b = other.cumulative_sums()?;
        let contained = a.iter().all(|p| b.contains(p));
        Ok(contained)
    }

    /// Whether indices `i < j` land in the same part of the composition.
    pub fn merges(&self, i: usize, j: usize) -> Result<bool, Error> {
        if i >= j {
            return Err(Error::IndicesNotOrdered { i, j });
        }
        let n = self.total();
        if i == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                index: if i == 0 { i } else { j },
                max: n,
            });
        }
        let mut lo = 0;
        for &p in &self.parts {
            let hi = lo + p;
            if lo < i && j <= hi {
                return Ok(true);
            }
            lo = hi;
        }
        Ok(false)
    }

    /// 0-based index ranges covered by each part, in order.
    pub fn part_ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        let mut start = 0;
        self.parts.iter().map(move |&p| {
            let r = start..start + p;
            start += p;
            r
        })
    }

    fn order_key(&self) -> (usize, Vec<bool>) {
        let n = self.total();
        let mut chi = vec![false; n.saturating_sub(1)];
        let mut sum = 0;
        for &p in self.parts.iter().take(self.parts.len().saturating_sub(1)) {
            sum += p;
            chi[sum - 1] = true;
        }
        (n, chi)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    /// Deterministic total order: by `n`, then by characteristic vector of
    /// the cumulative-sum set.  Matches the enumeration order of
    /// [`compositions`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All `2^(n-1)` compositions of `n` (exactly one, empty, for `n = 0`), in
/// lexicographic order of the characteristic vector of their cumulative-sum
/// sets.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    assert!(n - 1 < 64, "too many compositions to enumerate");
    let mut out = Vec::with_capacity(1 << (n - 1));
    for code in 0u64..1 << (n - 1) {
        let members: Vec<usize> = (1..n).filter(|&i| code >> (n - 1 - i) & 1 == 1).collect();
        let splits = PositionSet::new(members, n - 1).expect("splits lie in 1..n-1");
        out.push(Composition::from_splits(&splits, n).expect("valid splits"));
    }
    out
}
