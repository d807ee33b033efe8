//! Brute-force ground truth over small prime fields.
//!
//! A local ring is modeled by truncated power-series vectors: the algebra
//! closure of the generators is row-reduced inside prod_i F_p[t]/(t^B_i),
//! the value semigroup is read off the finite quotient by the conductor
//! ideal, h comes from ranks of coordinate projections, and principal
//! ideals are counted by exhaustive coset enumeration. Nothing here uses
//! the zeta-function formulas, so agreement is evidence, not tautology.

use std::collections::BTreeSet;

use crate::semigroup::{GoodSemigroup, SemigroupError, ValueVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("work limit exceeded: the computation needs {needed} steps, the limit is {limit}")]
    WorkLimitExceeded { needed: u64, limit: u64 },
    #[error("truncation too small: the computation needs {needed}, the model stores {truncation}")]
    TruncationTooSmall { needed: ValueVec, truncation: ValueVec },
    #[error("bad ring model: {0}")]
    BadModel(String),
    #[error(transparent)]
    InvalidSemigroup(#[from] SemigroupError),
}

/// Arithmetic in F_p for a prime p <= 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, OracleError> {
        if ![2, 3, 5, 7, 11, 13].contains(&p) {
            return Err(OracleError::BadModel(format!("p = {p} is not a prime at most 13")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        (1..self.p).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    pub fn reduce_i64(&self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.p)) as u32
    }
}

/// Element of prod_i F_p[t]/(t^B_i): one little-endian coefficient array
/// per branch, array i of length B_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncVec {
    branches: Vec<Vec<u32>>,
}

impl TruncVec {
    pub fn zero(truncation: &[usize]) -> Self {
        TruncVec { branches: truncation.iter().map(|&b| vec![0; b]).collect() }
    }

    pub fn one(truncation: &[usize]) -> Self {
        let mut z = TruncVec::zero(truncation);
        for branch in &mut z.branches {
            branch[0] = 1;
        }
        z
    }

    /// Build from signed integer coefficients, reduced mod p and padded to
    /// the truncation lengths.
    pub fn from_int_coeffs(
        field: &PrimeField,
        coeffs: &[Vec<i64>],
        truncation: &[usize],
    ) -> Result<Self, OracleError> {
        if coeffs.len() != truncation.len() {
            return Err(OracleError::BadModel(format!(
                "element has {} branches, model has {}",
                coeffs.len(),
                truncation.len()
            )));
        }
        let mut branches = Vec::with_capacity(coeffs.len());
        for (cs, &b) in coeffs.iter().zip(truncation) {
            if cs.len() > b {
                return Err(OracleError::BadModel(format!(
                    "coefficient array of length {} exceeds truncation {b}",
                    cs.len()
                )));
            }
            let mut branch = vec![0u32; b];
            for (k, &c) in cs.iter().enumerate() {
                branch[k] = field.reduce_i64(c);
            }
            branches.push(branch);
        }
        Ok(TruncVec { branches })
    }

    pub fn branches(&self) -> &[Vec<u32>] {
        &self.branches
    }

    /// Componentwise least nonzero index; None when some branch vanishes
    /// identically up to its truncation (zero divisor or masked valuation).
    pub fn valuation(&self) -> Option<ValueVec> {
        let mut v = Vec::with_capacity(self.branches.len());
        for branch in &self.branches {
            let e = branch.iter().position(|&c| c != 0)?;
            v.push(e as u64);
        }
        Some(ValueVec::new(v))
    }
}

/// Column layout for row reduction: positions (exponent, branch) in
/// exponent-major order, flattened across all branches.
#[derive(Debug, Clone)]
struct Layout {
    truncation: Vec<usize>,
    positions: Vec<(usize, usize)>,
}

impl Layout {
    fn new(truncation: &[usize]) -> Self {
        let max_b = truncation.iter().copied().max().unwrap_or(0);
        let mut positions = Vec::new();
        for e in 0..max_b {
            for (i, &b) in truncation.iter().enumerate() {
                if e < b {
                    positions.push((e, i));
                }
            }
        }
        Layout { truncation: truncation.to_vec(), positions }
    }

    fn width(&self) -> usize {
        self.positions.len()
    }

    fn flatten(&self, z: &TruncVec) -> Vec<u32> {
        self.positions.iter().map(|&(e, i)| z.branches[i][e]).collect()
    }

    fn unflatten(&self, row: &[u32]) -> TruncVec {
        let mut z = TruncVec::zero(&self.truncation);
        for (k, &(e, i)) in self.positions.iter().enumerate() {
            z.branches[i][e] = row[k];
        }
        z
    }

    /// Column indices whose exponent is below the given per-branch bound.
    fn columns_below(&self, bound: &[u64]) -> Vec<usize> {
        self.positions
            .iter()
            .enumerate()
            .filter(|&(_, &(e, i))| (e as u64) < bound[i])
            .map(|(k, _)| k)
            .collect()
    }
}

/// Reduced row echelon form over F_p, maintained incrementally.
#[derive(Debug, Clone)]
struct Rref {
    field: PrimeField,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Rref {
    fn new(field: PrimeField) -> Self {
        Rref { field, rows: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of a row after elimination against the current basis.
    fn reduce(&self, row: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = row.to_vec();
        for (r, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = out[pivot];
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(r) {
                    *o = f.sub(*o, f.mul(c, x));
                }
            }
        }
        out
    }

    fn contains(&self, row: &[u32]) -> bool {
        self.reduce(row).iter().all(|&c| c == 0)
    }

    /// Insert a row unless dependent; keeps the basis fully reduced and
    /// ordered by pivot column. Returns true when the rank grew.
    fn absorb(&mut self, row: &[u32]) -> bool {
        let f = self.field;
        let mut row = self.reduce(row);
        let Some(pivot) = row.iter().position(|&c| c != 0) else {
            return false;
        };
        let scale = f.inv(row[pivot]);
        for c in &mut row {
            *c = f.mul(*c, scale);
        }
        for r in &mut self.rows {
            let c = r[pivot];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(&row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, row);
        self.pivots.insert(at, pivot);
        true
    }
}

fn rref_of(field: PrimeField, rows: impl IntoIterator<Item = Vec<u32>>) -> Rref {
    let mut r = Rref::new(field);
    for row in rows {
        r.absorb(&row);
    }
    r
}

/// Echelonized basis of the image of the modeled ring in the truncated
/// product of power-series rings.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    layout: Layout,
    basis: Rref,
}

impl AlgebraBasis {
    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    /// Pivot positions as (exponent, branch) pairs, in echelon order.
    pub fn pivot_positions(&self) -> Vec<(usize, usize)> {
        self.basis.pivots.iter().map(|&k| self.layout.positions[k]).collect()
    }

    pub fn contains(&self, z: &TruncVec) -> bool {
        self.basis.contains(&self.layout.flatten(z))
    }

    fn rows_as_elements(&self) -> Vec<TruncVec> {
        self.basis.rows.iter().map(|r| self.layout.unflatten(r)).collect()
    }
}

/// A local ring presented by truncated power-series generators over F_p.
/// The unit is implicit; the declared conductor is validated a posteriori
/// by the semigroup extraction.
#[derive(Debug, Clone)]
pub struct RingModel {
    field: PrimeField,
    truncation: Vec<usize>,
    conductor: ValueVec,
    generators: Vec<TruncVec>,
    work_limit: u64,
}

pub const DEFAULT_WORK_LIMIT: u64 = 10_000_000;

impl RingModel {
    pub fn new(
        p: u32,
        truncation: Vec<usize>,
        conductor: ValueVec,
        generators: Vec<TruncVec>,
    ) -> Result<Self, OracleError> {
        let field = PrimeField::new(p)?;
        let d = truncation.len();
        if d == 0 {
            return Err(OracleError::BadModel("at least one branch required".to_string()));
        }
        if conductor.dim() != d {
            return Err(OracleError::BadModel(format!(
                "conductor has {} components, model has {d} branches",
                conductor.dim()
            )));
        }
        for (i, &b) in truncation.iter().enumerate() {
            let needed = 2 * conductor.get(i) + 1;
            if (b as u64) < needed {
                return Err(OracleError::BadModel(format!(
                    "truncation {b} on branch {} is below 2c+1 = {needed}",
                    i + 1
                )));
            }
        }
        for g in &generators {
            if g.branches.len() != d
                || g.branches.iter().zip(&truncation).any(|(br, &b)| br.len() != b)
            {
                return Err(OracleError::BadModel(
                    "generator does not match the model truncation".to_string(),
                ));
            }
            if g.branches.iter().flatten().any(|&c| c >= p) {
                return Err(OracleError::BadModel("generator coefficient out of range".to_string()));
            }
        }
        Ok(RingModel { field, truncation, conductor, generators, work_limit: DEFAULT_WORK_LIMIT })
    }

    /// Convenience constructor from signed little-endian coefficient arrays.
    pub fn from_int_generators(
        p: u32,
        truncation: Vec<usize>,
        conductor: ValueVec,
        generators: &[Vec<Vec<i64>>],
    ) -> Result<Self, OracleError> {
        let field = PrimeField::new(p)?;
        let gens = generators
            .iter()
            .map(|g| TruncVec::from_int_coeffs(&field, g, &truncation))
            .collect::<Result<Vec<_>, _>>()?;
        RingModel::new(p, truncation, conductor, gens)
    }

    pub fn with_work_limit(mut self, limit: u64) -> Self {
        self.work_limit = limit;
        self
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.truncation.len()
    }

    pub fn truncation(&self) -> &[usize] {
        &self.truncation
    }

    pub fn conductor(&self) -> &ValueVec {
        &self.conductor
    }

    pub fn work_limit(&self) -> u64 {
        self.work_limit
    }

    fn truncation_vec(&self) -> ValueVec {
        ValueVec::new(self.truncation.iter().map(|&b| b as u64).collect())
    }

    fn mul(&self, a: &TruncVec, b: &TruncVec) -> TruncVec {
        let f = &self.field;
        let mut out = TruncVec::zero(&self.truncation);
        for ((oa, ob), oc) in a.branches.iter().zip(&b.branches).zip(&mut out.branches) {
            let n = oc.len();
            for (i, &ca) in oa.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (j, &cb) in ob.iter().take(n - i).enumerate() {
                    oc[i + j] = f.add(oc[i + j], f.mul(ca, cb));
                }
            }
        }
        out
    }
}

fn pow_saturating(base: u64, exp: usize) -> u64 {
    let mut out = 1u64;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    out
}

/// Close {1} and the generators under multiplication and row-reduce.
pub fn algebra_closure_basis(model: &RingModel) -> Result<AlgebraBasis, OracleError> {
    let volume: u64 = model.truncation.iter().map(|&b| b as u64).product();
    if volume > model.work_limit {
        return Err(OracleError::WorkLimitExceeded { needed: volume, limit: model.work_limit });
    }
    let layout = Layout::new(&model.truncation);
    let mut basis = Rref::new(model.field);
    basis.absorb(&layout.flatten(&TruncVec::one(&model.truncation)));
    for g in &model.generators {
        basis.absorb(&layout.flatten(g));
    }
    loop {
        let snapshot: Vec<TruncVec> = basis.rows.iter().map(|r| layout.unflatten(r)).collect();
        let mut grew = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i..] {
                let prod = model.mul(a, b);
                if basis.absorb(&layout.flatten(&prod)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(AlgebraBasis { layout, basis });
        }
    }
}

/// Valuation vector of an element; None flags a masked or zero component.
pub fn value_vector(z: &TruncVec) -> Option<ValueVec> {
    z.valuation()
}

/// Enumerate combinations of the given rows by an odometer, applying one
/// row addition per digit moved.
fn enumerate_span(
    field: &PrimeField,
    rows: &[Vec<u32>],
    width: usize,
    mut visit: impl FnMut(&[u32]),
) {
    let k = rows.len();
    let mut digits = vec![0u32; k];
    let mut current = vec![0u32; width];
    loop {
        visit(&current);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            for (c, &x) in current.iter_mut().zip(&rows[pos]) {
                *c = field.add(*c, x);
            }
            digits[pos] += 1;
            if digits[pos] < field.p() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The raw set of truncated valuations v(z) meet c over the ring, read off
/// the finite quotient by the conductor ideal shifted one past c. Errors if
/// the conductor ideal is not inside the algebra.
pub fn collect_small_values(model: &RingModel) -> Result<BTreeSet<ValueVec>, OracleError> {
    let algebra = algebra_closure_basis(model)?;
    let c = &model.conductor;
    for (k, &(e, i)) in algebra.layout.positions.iter().enumerate() {
        if (e as u64) < c.get(i) {
            continue;
        }
        let mut unit = vec![0u32; algebra.layout.width()];
        unit[k] = 1;
        if !algebra.basis.contains(&unit) {
            return Err(OracleError::BadModel(format!(
                "declared conductor {c} is wrong: t^{e} on branch {} is not in the algebra",
                i + 1
            )));
        }
    }
    let bound: Vec<u64> = (0..model.d()).map(|i| c.get(i) + 1).collect();
    let cols = algebra.layout.columns_below(&bound);
    let projected = rref_of(
        model.field,
        algebra.basis.rows.iter().map(|r| cols.iter().map(|&k| r[k]).collect::<Vec<u32>>()),
    );
    let k = projected.rank();
    let needed = pow_saturating(u64::from(model.field.p()), k);
    if needed > model.work_limit {
        return Err(OracleError::WorkLimitExceeded { needed, limit: model.work_limit });
    }
    let positions: Vec<(usize, usize)> = cols.iter().map(|&k| algebra.layout.positions[k]).collect();
    let mut out = BTreeSet::new();
    enumerate_span(&model.field, &projected.rows, cols.len(), |w| {
        let mut n: Vec<u64> = (0..model.d()).map(|i| c.get(i)).collect();
        for (k, &(e, i)) in positions.iter().enumerate() {
            if w[k] != 0 && (e as u64) < n[i] {
                n[i] = e as u64;
            }
        }
        out.insert(ValueVec::new(n));
    });
    Ok(out)
}

/// Extract the value semigroup of the model and validate it.
pub fn semigroup_from_model(model: &RingModel) -> Result<GoodSemigroup, OracleError> {
    let small = collect_small_values(model)?;
    Ok(GoodSemigroup::from_small_elements(model.d(), model.conductor.clone(), small)?)
}

/// dim of the ring modulo the elements of valuation at least n, as the rank
/// of the coordinate projection below n.
pub fn h_dim_oracle(model: &RingModel, n: &ValueVec) -> Result<u64, OracleError> {
    assert_eq!(n.dim(), model.d(), "dimension mismatch");
    let needed = n.add(&model.conductor);
    if !needed.le(&model.truncation_vec()) {
        return Err(OracleError::TruncationTooSmall {
            needed,
            truncation: model.truncation_vec(),
        });
    }
    let algebra = algebra_closure_basis(model)?;
    let bound: Vec<u64> = n.as_slice().to_vec();
    let cols = algebra.layout.columns_below(&bound);
    let projected = rref_of(
        model.field,
        algebra.basis.rows.iter().map(|r| cols.iter().map(|&k| r[k]).collect::<Vec<u32>>()),
    );
    Ok(projected.rank() as u64)
}

/// Count the distinct principal ideals zO with v(z) = n by enumerating the
/// finite quotient modulo J(M), M = n + max(c, 1), and canonicalizing each
/// surviving ideal as the echelonized span of {z*b}. Panics if the first
/// survivor's ideal does not contain J(M), which would mean the declared
/// conductor is wrong.
pub fn count_principal_ideals(model: &RingModel, n: &ValueVec) -> Result<u64, OracleError> {
    assert_eq!(n.dim(), model.d(), "dimension mismatch");
    let d = model.d();
    let modulus = ValueVec::new(
        (0..d).map(|i| n.get(i) + model.conductor.get(i).max(1)).collect(),
    );
    if !modulus.le(&model.truncation_vec()) {
        return Err(OracleError::TruncationTooSmall {
            needed: modulus,
            truncation: model.truncation_vec(),
        });
    }
    let algebra = algebra_closure_basis(model)?;
    let layout = &algebra.layout;
    let bound: Vec<u64> = modulus.as_slice().to_vec();
    let below = layout.columns_below(&bound);
    let mut order = below.clone();
    order.extend((0..layout.width()).filter(|k| !below.contains(k)));

    let reordered = rref_of(
        model.field,
        algebra.basis.rows.iter().map(|r| order.iter().map(|&k| r[k]).collect::<Vec<u32>>()),
    );
    let mut lifts = Vec::new();
    for (row, &pivot) in reordered.rows.iter().zip(&reordered.pivots) {
        if pivot < below.len() {
            let mut full = vec![0u32; layout.width()];
            for (&col, &x) in order.iter().zip(row) {
                full[col] = x;
            }
            lifts.push(full);
        }
    }
    let needed = pow_saturating(u64::from(model.field.p()), lifts.len());
    if needed > model.work_limit {
        return Err(OracleError::WorkLimitExceeded { needed, limit: model.work_limit });
    }

    let basis_elements = algebra.rows_as_elements();
    let mut ideals: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut containment_checked = false;
    enumerate_span(&model.field, &lifts, layout.width(), |row| {
        let z = layout.unflatten(row);
        if z.valuation().as_ref() != Some(n) {
            return;
        }
        let products = rref_of(
            model.field,
            basis_elements.iter().map(|b| layout.flatten(&model.mul(&z, b))),
        );
        if !containment_checked {
            containment_checked = true;
            for (k, &(e, i)) in layout.positions.iter().enumerate() {
                if (e as u64) < modulus.get(i) {
                    continue;
                }
                let mut unit = vec![0u32; layout.width()];
                unit[k] = 1;
                assert!(
                    products.contains(&unit),
                    "ideal of value {n} misses t^{e} on branch {}: declared conductor is wrong",
                    i + 1
                );
            }
        }
        let canonical = rref_of(
            model.field,
            products.rows.iter().map(|r| below.iter().map(|&k| r[k]).collect::<Vec<u32>>()),
        );
        ideals.insert(canonical.rows);
    });
    Ok(ideals.len() as u64)
}
