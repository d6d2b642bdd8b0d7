//! Ground-set, subset, composition, and cover machinery shared by every
//! species and by both antipode engines.
//!
//! Canonical ground sets are always `{1..n}`.  Subsets carry their ambient
//! `n`, so complements and characteristic vectors are well defined.  All
//! enumerations are emitted in lexicographic order of characteristic vectors
//! `(χ(1), …, χ(n))`, which keeps output diffable and byte-deterministic.

mod composition;
mod cover;

pub use composition::{compositions, Composition};
pub use cover::{covers, Cover, Covers};

use crate::Error;

/// A subset of the canonical ground set `{1..n}`, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSet {
    ambient: usize,
    members: Vec<usize>,
}

impl PositionSet {
    /// Builds a subset of `{1..ambient}`; the members may come in any order
    /// but duplicates and out-of-range positions are rejected.
    pub fn new(mut members: Vec<usize>, ambient: usize) -> Result<Self, Error> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidSubset(format!(
                    "duplicate position {}",
                    pair[0]
                )));
            }
        }
        for &p in &members {
            if p == 0 || p > ambient {
                return Err(Error::InvalidSubset(format!(
                    "position {p} not in 1..={ambient}"
                )));
            }
        }
        Ok(Self { ambient, members })
    }

    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            members: Vec::new(),
        }
    }

    /// The full ground set `{1..ambient}`.
    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            members: (1..=ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.members.binary_search(&position).is_ok()
    }

    /// Characteristic bitmask with bit `p - 1` set for each member `p`.
    /// Ground sets are capped at 64 positions, far beyond any size whose
    /// covers could be enumerated anyway.
    pub fn bitmask(&self) -> u64 {
        assert!(self.ambient <= 64, "ground set too large for bitmask");
        self.members.iter().fold(0u64, |m, &p| m | 1 << (p - 1))
    }

    pub fn from_bitmask(mask: u64, ambient: usize) -> Self {
        assert!(ambient <= 64, "ground set too large for bitmask");
        let members = (1..=ambient).filter(|&p| mask >> (p - 1) & 1 == 1).collect();
        Self { ambient, members }
    }

    /// Union of two subsets of the same ground set.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "mismatched ground sets");
        let mut members: Vec<usize> = self
            .members
            .iter()
            .chain(other.members.iter())
            .copied()
            .collect();
        members.sort_unstable();
        members.dedup();
        Self {
            ambient: self.ambient,
            members,
        }
    }

    pub fn complement(&self) -> Self {
        let members = (1..=self.ambient).filter(|p| !self.contains(*p)).collect();
        Self {
            ambient: self.ambient,
            members,
        }
    }

    /// Whether every position of `self` lies strictly before every position
    /// of `other` (which forces disjointness).  Vacuously true when either
    /// side is empty.
    pub fn strictly_precedes(&self, other: &Self) -> bool {
        match (self.members.last(), other.members.first()) {
            (Some(&a), Some(&b)) => a < b,
            _ => true,
        }
    }
}

impl std::fmt::Display for PositionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// All size-`k` subsets of `{1..n}` in characteristic-vector order: subsets
/// avoiding position 1 come first, then those containing it, recursively.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<PositionSet> {
    fn rec(lo: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<PositionSet>) {
        if k == 0 {
            let mut members = prefix.clone();
            members.sort_unstable();
            out.push(PositionSet {
                ambient: n,
                members,
            });
            return;
        }
        if lo > n || n - lo + 1 < k {
            return;
        }
        rec(lo + 1, n, k, prefix, out);
        prefix.push(lo);
        rec(lo + 1, n, k - 1, prefix, out);
        prefix.pop();
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// All subsets of `{1..n}`, grouped by size, each size block in
/// characteristic-vector order.
pub fn subsets(n: usize) -> Vec<PositionSet> {
    (0..=n).flat_map(|k| subsets_of_size(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_set_rejects_bad_members() {
        assert!(PositionSet::new(vec![1, 1], 3).is_err());
        assert!(PositionSet::new(vec![0], 3).is_err());
        assert!(PositionSet::new(vec![4], 3).is_err());
        let s = PositionSet::new(vec![3, 1], 3).unwrap();
        assert_eq!(s.members(), &[1, 3]);
    }

    #[test]
    fn bitmask_round_trip() {
        for n in 0..=6 {
            for s in subsets(n) {
                assert_eq!(PositionSet::from_bitmask(s.bitmask(), n), s);
            }
        }
    }

    #[test]
    fn strictly_precedes_is_vacuous_on_empty() {
        let e = PositionSet::empty(4);
        let s = PositionSet::new(vec![2, 3], 4).unwrap();
        assert!(e.strictly_precedes(&s));
        assert!(s.strictly_precedes(&e));
        assert!(!s.strictly_precedes(&s));
        let t = PositionSet::new(vec![4], 4).unwrap();
        assert!(s.strictly_precedes(&t));
        assert!(!t.strictly_precedes(&s));
    }

    #[test]
    fn subsets_counts_and_order() {
        assert_eq!(subsets(4).len(), 16);
        // Characteristic-vector order on the 2-subsets of {1,2,3}.
        let got: Vec<Vec<usize>> = subsets_of_size(3, 2)
            .into_iter()
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(got, vec![vec![2, 3], vec![1, 3], vec![1, 2]]);
    }

    #[test]
    fn complement_and_union() {
        let s = PositionSet::new(vec![1, 3], 4).unwrap();
        assert_eq!(s.complement().members(), &[2, 4]);
        let t = PositionSet::new(vec![2, 3], 4).unwrap();
        assert_eq!(s.union(&t).members(), &[1, 2, 3]);
    }
}
