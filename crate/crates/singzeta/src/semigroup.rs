//! Value semigroups of curve singularities with d branches.
//!
//! A semigroup is stored by its small elements S ∩ [0, c] together with the
//! conductor c; membership beyond the box is decided by truncation,
//! n ∈ S iff n ∧ c ∈ small. The dimension function h is computed by the
//! fiber-condition path algorithm and memoized over the box [0, c+1].

use std::collections::BTreeSet;
use std::fmt;

/// Vector in N^d with the componentwise partial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueVec(Vec<u64>);

impl ValueVec {
    pub fn new(components: Vec<u64>) -> Self {
        assert!(!components.is_empty(), "d must be at least 1");
        ValueVec(components)
    }

    pub fn zero(d: usize) -> Self {
        ValueVec::new(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn norm(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn meet(&self, other: &ValueVec) -> ValueVec {
        assert_eq!(self.dim(), other.dim());
        ValueVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &ValueVec) -> ValueVec {
        assert_eq!(self.dim(), other.dim());
        ValueVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn add(&self, other: &ValueVec) -> ValueVec {
        assert_eq!(self.dim(), other.dim());
        ValueVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All components less-or-equal.
    pub fn le(&self, other: &ValueVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All components strictly less.
    pub fn lt_strict(&self, other: &ValueVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    /// Add 1 on the coordinates selected by the bitmask.
    pub fn plus_indicator(&self, mask: u32) -> ValueVec {
        ValueVec(
            self.0
                .iter()
                .enumerate()
                .map(|(i, a)| a + u64::from(mask >> i & 1))
                .collect(),
        )
    }
}

impl fmt::Display for ValueVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A failed good-semigroup axiom, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroMissing,
    ConductorMissing { conductor: ValueVec },
    WrongDimension { element: ValueVec, expected: usize },
    AboveConductor { element: ValueVec, conductor: ValueVec },
    MinNotClosed { a: ValueVec, b: ValueVec, meet: ValueVec },
    SumNotClosed { a: ValueVec, b: ValueVec, truncated_sum: ValueVec },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroMissing => write!(f, "0 is not among the small elements"),
            Violation::ConductorMissing { conductor } => {
                write!(f, "conductor {conductor} is not among the small elements")
            }
            Violation::WrongDimension { element, expected } => {
                write!(f, "element {element} does not have {expected} components")
            }
            Violation::AboveConductor { element, conductor } => {
                write!(f, "element {element} exceeds the conductor {conductor}")
            }
            Violation::MinNotClosed { a, b, meet } => {
                write!(f, "min({a}, {b}) = {meet} is missing")
            }
            Violation::SumNotClosed { a, b, truncated_sum } => {
                write!(f, "({a} + {b}) ∧ c = {truncated_sum} is missing")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("generators must be coprime (gcd = {gcd})")]
    NotCoprime { gcd: u64 },
    #[error("not a good semigroup: {}", format_violations(.violations))]
    InvalidSemigroup { violations: Vec<Violation> },
    #[error("dimension mismatch: semigroup has {expected} branches, vector has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("symmetry is defined for one branch only (d = {d})")]
    NotUnibranch { d: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Value semigroup given by conductor and small elements, with the h table
/// precomputed over [0, c+1]. Immutable after construction; concurrent reads
/// are safe.
#[derive(Debug, Clone)]
pub struct GoodSemigroup {
    d: usize,
    conductor: ValueVec,
    small: BTreeSet<ValueVec>,
    delta: u64,
    h_box: Vec<u64>,
    box_dims: Vec<u64>,
}

impl PartialEq for GoodSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.conductor == other.conductor && self.small == other.small
    }
}

impl Eq for GoodSemigroup {}

impl GoodSemigroup {
    /// Numerical semigroup generated by coprime positive integers.
    pub fn numerical_from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NotCoprime { gcd: 0 });
        }
        if gens.iter().any(|&g| g == 0) {
            return Err(SemigroupError::Invalid("generators must be positive".to_string()));
        }
        let max = *gens.iter().max().unwrap();
        if max > 4096 {
            return Err(SemigroupError::Invalid(format!(
                "generator {max} too large for the sieve"
            )));
        }
        let gcd = gens.iter().fold(0u64, |acc, &g| num_integer::gcd(acc, g));
        if gcd != 1 {
            return Err(SemigroupError::NotCoprime { gcd });
        }
        let bound = (2 * max * max + 2) as usize;
        let mut member = vec![false; bound];
        member[0] = true;
        for m in 0..bound {
            if member[m] {
                for &g in gens {
                    let next = m + g as usize;
                    if next < bound {
                        member[next] = true;
                    }
                }
            }
        }
        let conductor = match (0..bound).rev().find(|&m| !member[m]) {
            Some(last_gap) => (last_gap + 1) as u64,
            None => 0,
        };
        let small: BTreeSet<ValueVec> = (0..=conductor)
            .filter(|&m| member[m as usize])
            .map(|m| ValueVec::new(vec![m]))
            .collect();
        GoodSemigroup::build(1, ValueVec::new(vec![conductor]), small)
    }

    /// Semigroup of the singular point of a modulus curve: O = k + C gives
    /// S = {0} ∪ {n ≥ m}.
    pub fn from_modulus(multiplicities: &[u64]) -> Result<Self, SemigroupError> {
        if multiplicities.is_empty() {
            return Err(SemigroupError::Invalid("at least one multiplicity required".to_string()));
        }
        if multiplicities.iter().any(|&m| m == 0) {
            return Err(SemigroupError::Invalid("multiplicities must be positive".to_string()));
        }
        let d = multiplicities.len();
        let conductor = ValueVec::new(multiplicities.to_vec());
        let mut small = BTreeSet::new();
        small.insert(ValueVec::zero(d));
        small.insert(conductor.clone());
        GoodSemigroup::build(d, conductor, small)
    }

    /// Validate an explicit small-element set.
    pub fn from_small_elements<I>(
        d: usize,
        conductor: ValueVec,
        small: I,
    ) -> Result<Self, SemigroupError>
    where
        I: IntoIterator<Item = ValueVec>,
    {
        GoodSemigroup::build(d, conductor, small.into_iter().collect())
    }

    fn build(
        d: usize,
        conductor: ValueVec,
        small: BTreeSet<ValueVec>,
    ) -> Result<Self, SemigroupError> {
        let mut violations = Vec::new();
        if conductor.dim() != d {
            return Err(SemigroupError::DimensionMismatch {
                expected: d,
                got: conductor.dim(),
            });
        }
        for s in &small {
            if s.dim() != d {
                violations.push(Violation::WrongDimension { element: s.clone(), expected: d });
            }
        }
        if !violations.is_empty() {
            return Err(SemigroupError::InvalidSemigroup { violations });
        }
        if !small.contains(&ValueVec::zero(d)) {
            violations.push(Violation::ZeroMissing);
        }
        if !small.contains(&conductor) {
            violations.push(Violation::ConductorMissing { conductor: conductor.clone() });
        }
        for s in &small {
            if !s.le(&conductor) {
                violations.push(Violation::AboveConductor {
                    element: s.clone(),
                    conductor: conductor.clone(),
                });
            }
        }
        if violations.is_empty() {
            for a in &small {
                for b in &small {
                    if a >= b {
                        continue;
                    }
                    let meet = a.meet(b);
                    if !small.contains(&meet) {
                        violations.push(Violation::MinNotClosed {
                            a: a.clone(),
                            b: b.clone(),
                            meet,
                        });
                    }
                }
            }
            for a in &small {
                for b in &small {
                    if a > b {
                        continue;
                    }
                    let sum = a.add(b).meet(&conductor);
                    if !small.contains(&sum) {
                        violations.push(Violation::SumNotClosed {
                            a: a.clone(),
                            b: b.clone(),
                            truncated_sum: sum,
                        });
                    }
                }
            }
        }
        if !violations.is_empty() {
            violations.dedup();
            return Err(SemigroupError::InvalidSemigroup { violations });
        }
        let mut sg = GoodSemigroup {
            d,
            conductor,
            small,
            delta: 0,
            h_box: Vec::new(),
            box_dims: Vec::new(),
        };
        sg.fill_h_box();
        sg.delta = sg.conductor.norm() - sg.h_dim(&sg.conductor.clone());
        Ok(sg)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn conductor(&self) -> &ValueVec {
        &self.conductor
    }

    pub fn small(&self) -> &BTreeSet<ValueVec> {
        &self.small
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Membership by truncation: n ∈ S iff n ∧ c ∈ small.
    pub fn contains(&self, n: &ValueVec) -> Result<bool, SemigroupError> {
        if n.dim() != self.d {
            return Err(SemigroupError::DimensionMismatch { expected: self.d, got: n.dim() });
        }
        Ok(self.contains_unchecked(n))
    }

    fn contains_unchecked(&self, n: &ValueVec) -> bool {
        debug_assert_eq!(n.dim(), self.d);
        self.small.contains(&n.meet(&self.conductor))
    }

    /// The fiber condition: a step from m in direction i increments h exactly
    /// when some s ∈ S has s_i = m_i and s_j ≥ m_j elsewhere. The search is
    /// confined to the finite box [m, m ∨ c], which suffices under the
    /// truncation semantics.
    pub(crate) fn fiber_step(&self, m: &ValueVec, i: usize) -> bool {
        debug_assert!(i < self.d);
        let top = m.join(&self.conductor);
        let mut probe: Vec<u64> = m.as_slice().to_vec();
        self.fiber_search(m, &top, i, 0, &mut probe)
    }

    fn fiber_search(
        &self,
        m: &ValueVec,
        top: &ValueVec,
        i: usize,
        j: usize,
        probe: &mut Vec<u64>,
    ) -> bool {
        if j == self.d {
            return self.contains_unchecked(&ValueVec::new(probe.clone()));
        }
        if j == i {
            return self.fiber_search(m, top, i, j + 1, probe);
        }
        for v in m.get(j)..=top.get(j) {
            probe[j] = v;
            if self.fiber_search(m, top, i, j + 1, probe) {
                probe[j] = m.get(j);
                return true;
            }
        }
        probe[j] = m.get(j);
        false
    }

    fn box_index(&self, n: &[u64]) -> usize {
        let mut idx = 0;
        for (i, &v) in n.iter().enumerate() {
            idx = idx * self.box_dims[i] as usize + v as usize;
        }
        idx
    }

    fn fill_h_box(&mut self) {
        self.box_dims = self.conductor.as_slice().iter().map(|&c| c + 2).collect();
        let volume: usize = self.box_dims.iter().product::<u64>() as usize;
        let mut h_box = vec![0u64; volume];
        let mut n = vec![0u64; self.d];
        for idx in 1..volume {
            let mut carry = idx;
            for i in (0..self.d).rev() {
                n[i] = (carry % self.box_dims[i] as usize) as u64;
                carry /= self.box_dims[i] as usize;
            }
            let i = (0..self.d).find(|&i| n[i] > 0).unwrap();
            n[i] -= 1;
            let below = self.box_index(&n);
            let step = self.fiber_step(&ValueVec::new(n.clone()), i);
            n[i] += 1;
            h_box[idx] = h_box[below] + u64::from(step);
        }
        self.h_box = h_box;
    }

    /// h(n) = dim of O modulo the elements with valuation ≥ n. Values beyond
    /// the memo box [0, c+1] reduce to it: every step past the conductor
    /// increments.
    pub fn h_dim(&self, n: &ValueVec) -> u64 {
        assert_eq!(n.dim(), self.d, "dimension mismatch");
        let mut clamped = Vec::with_capacity(self.d);
        let mut overflow = 0u64;
        for (i, &v) in n.as_slice().iter().enumerate() {
            let limit = self.conductor.get(i) + 1;
            if v > limit {
                overflow += v - limit;
                clamped.push(limit);
            } else {
                clamped.push(v);
            }
        }
        self.h_box[self.box_index(&clamped)] + overflow
    }

    /// h recomputed without the memo, walking one explicit monotone path
    /// (a sequence of coordinate directions) from 0.
    pub fn h_dim_along(&self, path: &[usize]) -> u64 {
        let mut m = ValueVec::zero(self.d);
        let mut h = 0;
        for &i in path {
            assert!(i < self.d, "path direction out of range");
            if self.fiber_step(&m, i) {
                h += 1;
            }
            let mut next = m.as_slice().to_vec();
            next[i] += 1;
            m = ValueVec::new(next);
        }
        h
    }

    /// Gorenstein symmetry test, d = 1 only.
    pub fn is_symmetric(&self) -> Result<bool, SemigroupError> {
        if self.d != 1 {
            return Err(SemigroupError::NotUnibranch { d: self.d });
        }
        let c = self.conductor.get(0);
        for s in 0..c {
            let member = self.contains_unchecked(&ValueVec::new(vec![s]));
            let mirror = self.contains_unchecked(&ValueVec::new(vec![c - 1 - s]));
            if member == mirror {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for GoodSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.small.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "d = {}, conductor = {}, delta = {}, small = {{{}}}",
            self.d,
            self.conductor,
            self.delta,
            elems.join(", ")
        )
    }
}
