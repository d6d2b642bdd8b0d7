//! The pattern algebra of a species: the span of the pattern-counting
//! functions `pat_a`, with exact integer coefficients.
//!
//! `pat_a(b)` counts the position subsets of `b` whose restriction is `a`.
//! Pointwise products expand back into the `pat` basis with quasi-shuffle
//! coefficients: `pat_a · pat_b = Σ_c qss(c; a, b) pat_c`, where `qss`
//! counts the covers of `c`'s ground set whose two blocks restrict to `a`
//! and `b`.  The coproduct deconcatenates the `⊕`-factorization, the counit
//! evaluates at the empty object, and the whole structure is a filtered Hopf
//! algebra.
//!
//! Coefficients are overflow-checked `i64`; growth in these algebras is
//! super-exponential, so a silent wraparound would corrupt results and is
//! turned into a hard failure instead.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::combinatorics::{covers, subsets_of_size, Cover};
use crate::species::{PackedWord, Permutation, Species};
use crate::Error;

pub(crate) fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in pattern coefficient")
}

pub(crate) fn mul_coeff(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in pattern coefficient")
}

/// Number of position subsets of `target` whose restriction is `pattern`;
/// evaluates the pattern function `pat_pattern` at `target`.
pub fn pattern_coefficient<S: Species>(target: &S, pattern: &S) -> i64 {
    let (n, k) = (target.size(), pattern.size());
    if k > n {
        return 0;
    }
    let mut count = 0i64;
    for subset in subsets_of_size(n, k) {
        if &target.restrict(&subset).expect("subset of the ground set") == pattern {
            count = add_coeff(count, 1);
        }
    }
    count
}

/// Streams the quasi-shuffle signatures of `target` from `factors`: the
/// covers `(I_1, …, I_k)` of `target`'s ground set with
/// `target|_{I_i} = factors[i]`.  Block sizes are forced to `|factors[i]|`.
pub fn quasi_shuffles<'a, S: Species>(target: &'a S, factors: &'a [S]) -> QuasiShuffles<'a, S> {
    let sizes: Vec<usize> = factors.iter().map(Species::size).collect();
    QuasiShuffles {
        target,
        factors,
        covers: covers(target.size(), &sizes),
        restricted: HashMap::new(),
    }
}

/// Iterator over quasi-shuffle signatures; restrictions are memoized per
/// block since covers reuse the same subsets heavily.
pub struct QuasiShuffles<'a, S: Species> {
    target: &'a S,
    factors: &'a [S],
    covers: crate::combinatorics::Covers,
    restricted: HashMap<u64, S>,
}

impl<S: Species> QuasiShuffles<'_, S> {
    fn matches(&mut self, cover: &Cover) -> bool {
        let target = self.target;
        for (block, factor) in cover.blocks().iter().zip(self.factors) {
            let class = self
                .restricted
                .entry(block.bitmask())
                .or_insert_with(|| target.restrict(block).expect("cover blocks are valid subsets"));
            if class != factor {
                return false;
            }
        }
        true
    }
}

impl<S: Species> Iterator for QuasiShuffles<'_, S> {
    type Item = Cover;

    fn next(&mut self) -> Option<Cover> {
        loop {
            let cover = self.covers.next()?;
            if self.matches(&cover) {
                return Some(cover);
            }
        }
    }
}

/// `qss(target; factors)`: the number of quasi-shuffle signatures, i.e. the
/// structure constant of the iterated product in the `pat` basis.
pub fn qss_coefficient<S: Species>(target: &S, factors: &[S]) -> i64 {
    i64::try_from(quasi_shuffles(target, factors).count())
        .expect("integer overflow in pattern coefficient")
}

/// A finite integer-linear combination of pattern functions of one species.
///
/// Zero coefficients are never stored; the empty combination is the zero of
/// the algebra and `pat_∅` (the constant function 1) is the unit.  Terms are
/// kept ordered by (size, word), which fixes the serialization order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternExpr<S: Species> {
    terms: BTreeMap<S, i64>,
}

impl<S: Species> PatternExpr<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// `pat_∅`, the unit of the algebra.
    pub fn unit() -> Self {
        Self::pattern(S::empty())
    }

    /// The basis element `pat_class`.
    pub fn pattern(class: S) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(class, 1);
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (S, i64)>>(items: I) -> Self {
        let mut out = Self::zero();
        for (c, w) in items {
            out.add_term(c, w);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&S, i64)> {
        self.terms.iter().map(|(c, &w)| (c, w))
    }

    pub fn coefficient(&self, class: &S) -> i64 {
        self.terms.get(class).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, class: S, weight: i64) {
        if weight == 0 {
            return;
        }
        let entry = self.terms.entry(class);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(weight);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let w = add_coeff(*o.get(), weight);
                if w == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = w;
                }
            }
        }
    }

    pub fn scaled(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, &w)| (c.clone(), mul_coeff(w, factor)))
                .collect(),
        }
    }

    /// Pointwise product, expanded in the `pat` basis via quasi-shuffle
    /// coefficients.  Candidate classes run over sizes
    /// `max(|a|,|b|) ..= |a|+|b|`; outside that window no cover exists.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, wa) in self.terms() {
            for (b, wb) in other.terms() {
                let w = mul_coeff(wa, wb);
                let factors = [a.clone(), b.clone()];
                let lo = a.size().max(b.size());
                let hi = a.size() + b.size();
                for size in lo..=hi {
                    for c in S::enumerate(size) {
                        let k = qss_coefficient(&c, &factors);
                        if k != 0 {
                            out.add_term(c, mul_coeff(w, k));
                        }
                    }
                }
            }
        }
        out
    }

    /// The coefficient of `pat_∅`; equivalently, evaluation at the empty
    /// object.
    pub fn counit(&self) -> i64 {
        self.coefficient(&S::empty())
    }

    /// Pointwise evaluation of the function at a class.
    pub fn evaluate(&self, at: &S) -> i64 {
        self.terms().fold(0, |acc, (c, w)| {
            add_coeff(acc, mul_coeff(w, pattern_coefficient(at, c)))
        })
    }

    /// JSON form `{"species":…,"terms":[{"object":…,"coeff":…},…]}` with
    /// terms sorted by (size, lexicographic object).
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(c, w)| json!({"object": c.to_string(), "coeff": w}))
            .collect();
        json!({"species": S::TAG.code(), "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Self, Error> {
        let species = value
            .get("species")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidNotation("missing species tag".into()))?;
        if species != S::TAG.code() {
            return Err(Error::SpeciesMismatch {
                expected: S::TAG.code(),
                got: species.to_string(),
            });
        }
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidNotation("missing terms array".into()))?;
        let mut out = Self::zero();
        for t in terms {
            let object = t
                .get("object")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidNotation("term without object".into()))?;
            let coeff = t
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::InvalidNotation("term without integer coeff".into()))?;
            out.add_term(object.parse::<S>()?, coeff);
        }
        Ok(out)
    }
}

impl<S: Species> std::ops::Add for PatternExpr<S> {
    type Output = PatternExpr<S>;

    fn add(mut self, rhs: PatternExpr<S>) -> PatternExpr<S> {
        for (c, w) in rhs.terms {
            self.add_term(c, w);
        }
        self
    }
}

impl<S: Species> std::ops::AddAssign for PatternExpr<S> {
    fn add_assign(&mut self, rhs: PatternExpr<S>) {
        for (c, w) in rhs.terms {
            self.add_term(c, w);
        }
    }
}

impl<S: Species> std::ops::Neg for PatternExpr<S> {
    type Output = PatternExpr<S>;

    fn neg(self) -> PatternExpr<S> {
        self.scaled(-1)
    }
}

impl<S: Species> std::ops::Sub for PatternExpr<S> {
    type Output = PatternExpr<S>;

    fn sub(mut self, rhs: PatternExpr<S>) -> PatternExpr<S> {
        for (c, w) in rhs.terms {
            self.add_term(c, -w);
        }
        self
    }
}

impl<S: Species> std::ops::Mul for &PatternExpr<S> {
    type Output = PatternExpr<S>;

    fn mul(self, rhs: &PatternExpr<S>) -> PatternExpr<S> {
        self.product(rhs)
    }
}

impl<S: Species> std::fmt::Display for PatternExpr<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms().enumerate() {
            if i == 0 {
                if w < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if w < 0 { " - " } else { " + " })?;
            }
            let a = w.abs();
            if a != 1 {
                write!(f, "{a}·")?;
            }
            write!(f, "pat({c})")?;
        }
        Ok(())
    }
}

/// All deconcatenations `(a_1⊕…⊕a_j, a_{j+1}⊕…⊕a_k)` of the
/// `⊕`-factorization of `a`, including the two trivial pairs with the empty
/// object.  This is the coproduct of `pat_a` read off termwise.
pub fn coproduct<S: Species>(a: &S) -> Vec<(S, S)> {
    let factors = a.decompose();
    (0..=factors.len())
        .map(|j| {
            (
                S::direct_sum_all(&factors[..j]),
                S::direct_sum_all(&factors[j..]),
            )
        })
        .collect()
}

/// The algebra-and-coalgebra morphism induced by viewing permutations as the
/// packed words without repeated letters: packed-word terms with a repeated
/// letter are dropped, the rest are retagged as permutations.
pub fn project_to_permutations(expr: &PatternExpr<PackedWord>) -> PatternExpr<Permutation> {
    let mut out = PatternExpr::zero();
    for (c, w) in expr.terms() {
        if let Some(p) = c.to_permutation() {
            out.add_term(p, w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::ParkingFunction;

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn per(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pw(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_coefficient_examples() {
        assert_eq!(pattern_coefficient(&pf("111"), &pf("11")), 3);
        assert_eq!(pattern_coefficient(&pf("321"), &pf("21")), 3);
        assert_eq!(pattern_coefficient(&pf("321"), &ParkingFunction::empty()), 1);
        assert_eq!(pattern_coefficient(&pf("1"), &pf("11")), 0);
    }

    #[test]
    fn qss_coefficient_examples() {
        let factors = [per("1"), per("21"), per("1"), per("1")];
        assert_eq!(qss_coefficient(&per("2314"), &factors), 36);
        assert_eq!(qss_coefficient(&per("1"), &[per("1"), per("1")]), 1);
        assert_eq!(qss_coefficient(&Permutation::empty(), &[]), 1);
        assert_eq!(qss_coefficient(&per("1"), &[]), 0);
    }

    #[test]
    fn product_of_singletons_in_parking() {
        let pat1 = PatternExpr::pattern(pf("1"));
        let got = pat1.product(&pat1);
        let want = PatternExpr::from_terms([
            (pf("1"), 1),
            (pf("11"), 2),
            (pf("12"), 2),
            (pf("21"), 2),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn unit_is_neutral() {
        let x = PatternExpr::from_terms([(per("21"), 3), (per("132"), -2)]);
        assert_eq!(PatternExpr::unit().product(&x), x);
        assert_eq!(x.product(&PatternExpr::unit()), x);
    }

    #[test]
    fn product_example_from_brute_force() {
        // pat_1 · pat_21 over permutations; the expected coefficients come
        // from the direct subset-pair count below.
        let got = PatternExpr::pattern(per("1")).product(&PatternExpr::pattern(per("21")));
        let mut expected = PatternExpr::zero();
        for size in 2..=3 {
            let full = u64::MAX >> (64 - size);
            for c in Permutation::enumerate(size) {
                let mut count = 0;
                for i in crate::combinatorics::subsets(size) {
                    for j in crate::combinatorics::subsets(size) {
                        if i.bitmask() | j.bitmask() != full {
                            continue;
                        }
                        if c.restrict(&i).unwrap() == per("1") && c.restrict(&j).unwrap() == per("21")
                        {
                            count += 1;
                        }
                    }
                }
                expected.add_term(c, count);
            }
        }
        assert_eq!(got, expected);
        let want = PatternExpr::from_terms([
            (per("132"), 1),
            (per("213"), 1),
            (per("21"), 2),
            (per("231"), 2),
            (per("312"), 2),
            (per("321"), 3),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn coproduct_examples() {
        let pairs = coproduct(&per("132"));
        assert_eq!(
            pairs,
            vec![
                (Permutation::empty(), per("132")),
                (per("1"), per("21")),
                (per("132"), Permutation::empty()),
            ]
        );
        assert_eq!(
            coproduct(&Permutation::empty()),
            vec![(Permutation::empty(), Permutation::empty())]
        );
        assert_eq!(
            coproduct(&per("21")),
            vec![
                (Permutation::empty(), per("21")),
                (per("21"), Permutation::empty()),
            ]
        );
    }

    #[test]
    fn counit_examples() {
        assert_eq!(PatternExpr::<Permutation>::unit().counit(), 1);
        assert_eq!(PatternExpr::pattern(per("21")).counit(), 0);
        let mixed = PatternExpr::from_terms([
            (Permutation::empty(), 3),
            (per("1"), -2),
        ]);
        assert_eq!(mixed.counit(), 3);
    }

    #[test]
    fn projection_to_permutations() {
        assert!(project_to_permutations(&PatternExpr::pattern(pw("11"))).is_zero());
        assert_eq!(
            project_to_permutations(&PatternExpr::pattern(pw("21"))),
            PatternExpr::pattern(per("21"))
        );
        let mixed = PatternExpr::from_terms([(pw("21"), 1), (pw("11"), 2)]);
        assert_eq!(
            project_to_permutations(&mixed),
            PatternExpr::pattern(per("21"))
        );
    }

    #[test]
    fn json_round_trip_and_order() {
        let x = PatternExpr::from_terms([(per("321"), 3), (per("21"), 2), (per("213"), 1)]);
        let v = x.to_json();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"species":"per","terms":[{"object":"21","coeff":2},{"object":"213","coeff":1},{"object":"321","coeff":3}]}"#
        );
        assert_eq!(PatternExpr::<Permutation>::from_json(&v).unwrap(), x);
        assert!(matches!(
            PatternExpr::<PackedWord>::from_json(&v),
            Err(Error::SpeciesMismatch { .. })
        ));
    }

    #[test]
    fn expression_arithmetic_drops_zeros() {
        let x = PatternExpr::pattern(per("21"));
        let y = x.clone() - x.clone();
        assert!(y.is_zero());
        let z = x.clone() + PatternExpr::pattern(per("12")).scaled(0);
        assert_eq!(z, x);
    }
}
