use std::cmp::Ordering;

use super::{check_subset, format_word, parse_word, Species, SpeciesTag};
use crate::combinatorics::PositionSet;
use crate::Error;

/// One step of a Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

/// A Dyck path of semilength `n`: `2n` steps with as many `U` as `D`, every
/// prefix having at least as many `U` as `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, Error> {
        let mut height: i64 = 0;
        for &s in &steps {
            height += if s == Step::Up { 1 } else { -1 };
            if height < 0 {
                return Err(Error::NotADyckPath("prefix dips below the diagonal".into()));
            }
        }
        if height != 0 {
            return Err(Error::NotADyckPath("unbalanced step counts".into()));
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Semilength: the number of up-steps.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Matches every up-step with the first down-step that returns the path
    /// to the up-step's starting height (its tunnel).  Returns `(up, down)`
    /// index pairs in up-step order.
    pub fn tunnels(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.semilength());
        let mut open: Vec<usize> = Vec::new();
        for (i, &s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => {
                    open.push(out.len());
                    out.push((i, usize::MAX));
                }
                Step::Down => {
                    let k = open.pop().expect("valid Dyck path");
                    out[k].1 = i;
                }
            }
        }
        out
    }
}

impl std::fmt::Display for DyckPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.steps {
            f.write_str(if s == Step::Up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// A Dyck path whose up-steps carry the labels `{1..n}`, increasing within
/// each maximal run of consecutive up-steps.  `labels[i]` is the label of the
/// `i`-th up-step in path order.
///
/// Together with the natural order on `{1..n}` this is the species-level
/// representative of a parking function: grouping labels by the vertical
/// line of their up-step and reading each label's group index gives the
/// parking word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledDyckPath {
    path: DyckPath,
    labels: Vec<usize>,
}

impl LabelledDyckPath {
    pub fn new(path: DyckPath, labels: Vec<usize>) -> Result<Self, Error> {
        let n = path.semilength();
        if labels.len() != n {
            return Err(Error::LengthMismatch(format!(
                "{} labels for {} up-steps",
                labels.len(),
                n
            )));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || seen[l] {
                return Err(Error::IncreasingRunViolation(format!(
                    "labels are not a bijection onto {{1..{n}}}"
                )));
            }
            seen[l] = true;
        }
        // labels must increase along each maximal run of up-steps
        let mut up_index = 0;
        let mut prev_was_up = false;
        for &s in path.steps() {
            if s == Step::Up {
                if prev_was_up && labels[up_index - 1] >= labels[up_index] {
                    return Err(Error::IncreasingRunViolation(format!(
                        "labels {} and {} out of order in an up-run",
                        labels[up_index - 1],
                        labels[up_index]
                    )));
                }
                up_index += 1;
                prev_was_up = true;
            } else {
                prev_was_up = false;
            }
        }
        Ok(Self { path, labels })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.path.semilength()
    }

    /// Canonical labelled path of a parking word: column `i` receives the
    /// up-steps labelled `{j : word[j] = i}` in increasing order.
    pub fn from_parking(p: &ParkingFunction) -> Self {
        let n = p.word().len();
        let mut columns: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (car, &col) in p.word().iter().enumerate() {
            columns[col].push(car + 1);
        }
        let mut steps = Vec::with_capacity(2 * n);
        let mut labels = Vec::with_capacity(n);
        for column in columns.iter().skip(1) {
            for &label in column {
                steps.push(Step::Up);
                labels.push(label);
            }
            steps.push(Step::Down);
        }
        let path = DyckPath::new(steps).expect("parking words build valid paths");
        Self { path, labels }
    }

    /// Reads off the parking word: each label's letter is the 1-based index
    /// of the vertical line its up-step sits on.
    pub fn to_parking(&self) -> ParkingFunction {
        let n = self.size();
        let mut word = vec![0usize; n];
        let mut column = 1;
        let mut up_index = 0;
        for &s in self.path.steps() {
            match s {
                Step::Up => {
                    word[self.labels[up_index] - 1] = column;
                    up_index += 1;
                }
                Step::Down => column += 1,
            }
        }
        ParkingFunction::new(word).expect("labelled Dyck paths read off to parking words")
    }

    /// Restriction: keep the tunnels whose up-step label lies in `keep`,
    /// reorder the kept labels increasingly within each merged up-run, and
    /// standardize them to `{1..|keep|}`.
    pub fn restrict_labels(&self, keep: &PositionSet) -> Result<Self, Error> {
        check_subset(keep, self.size())?;
        let tunnels = self.path.tunnels();
        let mut kept_step = vec![true; self.path.steps().len()];
        for (up_ord, &(u, d)) in tunnels.iter().enumerate() {
            if !keep.contains(self.labels[up_ord]) {
                kept_step[u] = false;
                kept_step[d] = false;
            }
        }
        let mut steps = Vec::with_capacity(2 * keep.len());
        let mut labels = Vec::with_capacity(keep.len());
        let mut up_ord = 0;
        for (i, &s) in self.path.steps().iter().enumerate() {
            if s == Step::Up {
                if kept_step[i] {
                    steps.push(Step::Up);
                    labels.push(self.labels[up_ord]);
                }
                up_ord += 1;
            } else if kept_step[i] {
                steps.push(Step::Down);
            }
        }
        // sort retained labels within each merged up-run, then standardize;
        // the parking word is unaffected by within-run order, so this is the
        // unique canonical choice
        let mut i = 0;
        while i < steps.len() {
            if steps[i] == Step::Up {
                let run_start = labels_index_of_up(&steps, i);
                let mut j = i;
                while j < steps.len() && steps[j] == Step::Up {
                    j += 1;
                }
                let run_len = j - i;
                labels[run_start..run_start + run_len].sort_unstable();
                i = j;
            } else {
                i += 1;
            }
        }
        let mut sorted: Vec<usize> = labels.clone();
        sorted.sort_unstable();
        for l in labels.iter_mut() {
            *l = sorted.binary_search(l).expect("label retained") + 1;
        }
        let path = DyckPath::new(steps)?;
        Self::new(path, labels)
    }
}

/// Number of up-steps strictly before step index `i`.
fn labels_index_of_up(steps: &[Step], i: usize) -> usize {
    steps[..i].iter().filter(|&&s| s == Step::Up).count()
}

impl std::fmt::Display for LabelledDyckPath {
    /// Debug notation `UUDDUD|2,1,3`: the step string, a bar, then the
    /// labels of the up-steps in path order.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|", self.path)?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LabelledDyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (steps_text, labels_text) = s.split_once('|').unwrap_or((s, ""));
        let steps: Vec<Step> = steps_text
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(Error::InvalidNotation(format!("bad step {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let labels = parse_word(labels_text)?;
        Self::new(DyckPath::new(steps)?, labels)
    }
}

/// A parking function: a word over `{1..n}` whose sorted letters satisfy
/// `a₍ᵢ₎ ≤ i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParkingFunction {
    word: Vec<usize>,
}

impl ParkingFunction {
    pub fn new(word: Vec<usize>) -> Result<Self, Error> {
        let mut sorted = word.clone();
        sorted.sort_unstable();
        for (i, &a) in sorted.iter().enumerate() {
            if a == 0 || a > i + 1 {
                return Err(Error::NotAParkingFunction(format_word(&word)));
            }
        }
        Ok(Self { word })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn to_labelled(&self) -> LabelledDyckPath {
        LabelledDyckPath::from_parking(self)
    }
}

impl Species for ParkingFunction {
    const TAG: SpeciesTag = SpeciesTag::ParkingFunctions;

    fn size(&self) -> usize {
        self.word.len()
    }

    fn empty() -> Self {
        Self { word: Vec::new() }
    }

    /// Tunnel restriction: delete the up/down pairs whose label is not kept
    /// from the canonical labelled Dyck path, then read off the word.
    fn restrict(&self, subset: &PositionSet) -> Result<Self, Error> {
        check_subset(subset, self.size())?;
        Ok(self.to_labelled().restrict_labels(subset)?.to_parking())
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

    /// Splits at every k where `{j : word[j] ≤ k} = {1..k}`: the cars in the
    /// first k columns are exactly the first k cars, so the path returns to
    /// the diagonal and the labels form an initial segment.
    fn decompose(&self) -> Vec<Self> {
        let n = self.word.len();
        let mut suffix_min = vec![usize::MAX; n + 1];
        for i in (0..n).rev() {
            suffix_min[i] = suffix_min[i + 1].min(self.word[i]);
        }
        let mut out = Vec::new();
        let mut start = 0;
        let mut prefix_max = 0;
        for (i, &v) in self.word.iter().enumerate() {
            prefix_max = prefix_max.max(v);
            if prefix_max <= i + 1 && suffix_min[i + 1] > i + 1 {
                let word = self.word[start..=i].iter().map(|v| v - start).collect();
                out.push(Self { word });
                start = i + 1;
            }
        }
        out
    }

    fn enumerate(n: usize) -> Vec<Self> {
        // A word is a parking function iff #{j : word[j] ≤ k} ≥ k for all k;
        // prune prefixes that cannot recover even if every remaining letter
        // is as small as possible.
        fn rec(n: usize, word: &mut Vec<usize>, count_leq: &mut Vec<usize>, out: &mut Vec<ParkingFunction>) {
            if word.len() == n {
                out.push(ParkingFunction { word: word.clone() });
                return;
            }
            for v in 1..=n {
                for c in count_leq.iter_mut().skip(v) {
                    *c += 1;
                }
                word.push(v);
                let slack = n - word.len();
                if (1..=n).all(|k| count_leq[k] + slack >= k) {
                    rec(n, word, count_leq, out);
                }
                word.pop();
                for c in count_leq.iter_mut().skip(v) {
                    *c -= 1;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![0; n + 1], &mut out);
        out
    }

    /// Column order on cars, with equal columns incomparable.  The
    /// cancellation-free antipode is unproven for parking functions; this
    /// comparison only feeds the exploratory interlacing routines.
    fn values_strictly_below(&self, left: &PositionSet, right: &PositionSet) -> bool {
        let max_left = left.iter().map(|p| self.word[p - 1]).max();
        let min_right = right.iter().map(|p| self.word[p - 1]).min();
        match (max_left, min_right) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }
}

impl PartialOrd for ParkingFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParkingFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        super::word_order(&self.word, &other.word)
    }
}

impl std::fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

impl std::str::FromStr for ParkingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::new(parse_word(s)?)
    }
}
