//! Multivariate polynomials over the integers in U, T1, ..., Td.
//!
//! Exponent vectors have length d+1, U-exponent first. Zero coefficients are
//! never stored, so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatFunError;

/// A linear factor from the closed denominator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    U,
    UMinusOne,
    /// U - Ti with a zero-based branch index.
    UMinusT(usize),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::U => write!(f, "U"),
            Factor::UMinusOne => write!(f, "U-1"),
            Factor::UMinusT(i) => write!(f, "U-T{}", i + 1),
        }
    }
}

/// Polynomial in Z[U, T1, ..., Td] with d the branch count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    d: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(d: usize) -> Self {
        MultiPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: BigInt) -> Self {
        let mut p = MultiPoly::zero(d);
        p.insert_term(vec![0; d + 1], c);
        p
    }

    pub fn one(d: usize) -> Self {
        MultiPoly::constant(d, BigInt::one())
    }

    /// The monomial coeff * U^e_u * T1^e_t[0] * ... * Td^e_t[d-1].
    pub fn monomial(d: usize, coeff: BigInt, e_u: u32, e_t: &[u32]) -> Self {
        assert_eq!(e_t.len(), d, "T-exponent vector must have length d");
        let mut key = Vec::with_capacity(d + 1);
        key.push(e_u);
        key.extend_from_slice(e_t);
        let mut p = MultiPoly::zero(d);
        p.insert_term(key, coeff);
        p
    }

    pub fn var_u(d: usize) -> Self {
        MultiPoly::monomial(d, BigInt::one(), 1, &vec![0; d])
    }

    pub fn var_t(d: usize, i: usize) -> Self {
        assert!(i < d, "branch index out of range");
        let mut e_t = vec![0; d];
        e_t[i] = 1;
        MultiPoly::monomial(d, BigInt::one(), 0, &e_t)
    }

    /// The expanded factor as a polynomial.
    pub fn from_factor(d: usize, factor: Factor) -> Self {
        match factor {
            Factor::U => MultiPoly::var_u(d),
            Factor::UMinusOne => &MultiPoly::var_u(d) - &MultiPoly::one(d),
            Factor::UMinusT(i) => &MultiPoly::var_u(d) - &MultiPoly::var_t(d, i),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, key: Vec<u32>, coeff: BigInt) {
        debug_assert_eq!(key.len(), self.d + 1);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Accumulate a single term in place.
    pub fn add_term(&mut self, e_u: u32, e_t: &[u32], coeff: BigInt) {
        assert_eq!(e_t.len(), self.d);
        let mut key = Vec::with_capacity(self.d + 1);
        key.push(e_u);
        key.extend_from_slice(e_t);
        self.insert_term(key, coeff);
    }

    /// Exact evaluation at a rational point (u, t1, ..., td).
    pub fn eval(&self, u: &BigRational, ts: &[BigRational]) -> BigRational {
        assert_eq!(ts.len(), self.d);
        let mut acc = BigRational::zero();
        for (key, coeff) in &self.terms {
            let mut term = BigRational::from_integer(coeff.clone());
            term *= rat_pow(u, key[0]);
            for (i, t) in ts.iter().enumerate() {
                term *= rat_pow(t, key[1 + i]);
            }
            acc += term;
        }
        acc
    }

    /// Substitute U = 1, keeping the T variables.
    pub fn subst_u_one(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.d);
        for (key, coeff) in &self.terms {
            let mut k = key.clone();
            k[0] = 0;
            out.insert_term(k, coeff.clone());
        }
        out
    }

    /// Substitute U = Ti. Zero output means (U - Ti) divides self.
    pub fn subst_u_t(&self, i: usize) -> MultiPoly {
        assert!(i < self.d);
        let mut out = MultiPoly::zero(self.d);
        for (key, coeff) in &self.terms {
            let mut k = key.clone();
            k[1 + i] += k[0];
            k[0] = 0;
            out.insert_term(k, coeff.clone());
        }
        out
    }

    /// Merge all T variables into a single T, producing a d = 1 polynomial.
    pub fn collapse_t(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(1);
        for (key, coeff) in &self.terms {
            let total: u32 = key[1..].iter().sum();
            out.insert_term(vec![key[0], total], coeff.clone());
        }
        out
    }

    /// Multiply by the monomial U^e_u * T^e_t.
    pub fn shift(&self, e_u: u32, e_t: &[u32]) -> MultiPoly {
        assert_eq!(e_t.len(), self.d);
        let mut out = MultiPoly::zero(self.d);
        for (key, coeff) in &self.terms {
            let mut k = key.clone();
            k[0] += e_u;
            for (i, e) in e_t.iter().enumerate() {
                k[1 + i] += e;
            }
            out.insert_term(k, coeff.clone());
        }
        out
    }

    /// Quotient by a factor, or None when the division leaves a remainder.
    pub(crate) fn try_divide(&self, factor: Factor) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match factor {
            Factor::U => {
                if self.terms.keys().any(|k| k[0] == 0) {
                    return None;
                }
                let mut out = MultiPoly::zero(self.d);
                for (key, coeff) in &self.terms {
                    let mut k = key.clone();
                    k[0] -= 1;
                    out.insert_term(k, coeff.clone());
                }
                Some(out)
            }
            Factor::UMinusOne => self.synthetic_divide(None),
            Factor::UMinusT(i) => {
                assert!(i < self.d);
                self.synthetic_divide(Some(i))
            }
        }
    }

    /// Exact quotient by a factor.
    pub fn divide_exact(&self, factor: Factor) -> Result<MultiPoly, RatFunError> {
        self.try_divide(factor).ok_or(RatFunError::NotDivisible { factor: factor.to_string() })
    }

    /// Synthetic division by (U - r), where r is 1 (root = None) or Ti.
    ///
    /// Writing self = sum_k a_k(T) U^k, the quotient b satisfies
    /// b_{k-1} = a_k + r*b_k descending from b_{n-1} = a_n, and the division
    /// is exact iff a_0 + r*b_0 = 0.
    fn synthetic_divide(&self, root: Option<usize>) -> Option<MultiPoly> {
        let mut by_udeg: BTreeMap<u32, BTreeMap<Vec<u32>, BigInt>> = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let mut tkey = key.clone();
            let u = tkey[0];
            tkey[0] = 0;
            let group = by_udeg.entry(u).or_default();
            group.insert(tkey, coeff.clone());
        }
        let n = *by_udeg.keys().next_back().expect("nonzero polynomial");
        if n == 0 {
            return None;
        }
        let mul_root = |m: &BTreeMap<Vec<u32>, BigInt>| -> BTreeMap<Vec<u32>, BigInt> {
            match root {
                None => m.clone(),
                Some(i) => m
                    .iter()
                    .map(|(k, c)| {
                        let mut k = k.clone();
                        k[1 + i] += 1;
                        (k, c.clone())
                    })
                    .collect(),
            }
        };
        let add_into = |acc: &mut BTreeMap<Vec<u32>, BigInt>, m: BTreeMap<Vec<u32>, BigInt>| {
            for (k, c) in m {
                let entry = acc.entry(k).or_insert_with(BigInt::zero);
                *entry += c;
            }
            acc.retain(|_, c| !c.is_zero());
        };
        let mut quotient = MultiPoly::zero(self.d);
        let mut carry = by_udeg.remove(&n).unwrap_or_default();
        for k in (1..=n).rev() {
            for (tkey, coeff) in &carry {
                let mut key = tkey.clone();
                key[0] = k - 1;
                quotient.insert_term(key, coeff.clone());
            }
            carry = mul_root(&carry);
            if k >= 2 {
                if let Some(a) = by_udeg.remove(&(k - 1)) {
                    add_into(&mut carry, a);
                }
            }
        }
        let mut remainder = carry;
        if let Some(a0) = by_udeg.remove(&0) {
            add_into(&mut remainder, a0);
        }
        if remainder.is_empty() {
            Some(quotient)
        } else {
            None
        }
    }

    fn add_assign_ref(&mut self, rhs: &MultiPoly) {
        assert_eq!(self.d, rhs.d, "mixed branch counts");
        for (key, coeff) in &rhs.terms {
            self.insert_term(key.clone(), coeff.clone());
        }
    }

    fn mul_ref(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.d, rhs.d, "mixed branch counts");
        let mut out = MultiPoly::zero(self.d);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.insert_term(key, ca * cb);
            }
        }
        out
    }

    /// n-th power by repeated multiplication.
    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.d);
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }
}

fn rat_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.d);
        for (key, coeff) in &self.terms {
            out.insert_term(key.clone(), -coeff);
        }
        out
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_ref(rhs)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $ty:ty) => {
        impl std::ops::$trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, MultiPoly);
forward_binop!(Sub, sub, MultiPoly);
forward_binop!(Mul, mul, MultiPoly);

pub(crate) use forward_binop;

impl fmt::Display for MultiPoly {
    /// Canonical term order: ascending total degree, ties broken
    /// lexicographically on (e_U, e_T1, ..., e_Td).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by_key(|(key, _)| (key.iter().sum::<u32>(), (*key).clone()));
        let mut parts = Vec::with_capacity(ordered.len());
        for (key, coeff) in ordered {
            let mut s = coeff.to_string();
            for (pos, e) in key.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let var = if pos == 0 { "U".to_string() } else { format!("T{pos}") };
                s.push('*');
                s.push_str(&var);
                if *e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(big(n))
    }

    // ---- construction and arithmetic ----

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = MultiPoly::var_u(2);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn multiplication_expands_binomials() {
        let d = 1;
        let u = MultiPoly::var_u(d);
        let one = MultiPoly::one(d);
        let sq = (&u - &one).pow(2);
        let expected = &(&u * &u) - &(&MultiPoly::constant(d, big(2)) * &u) + &one;
        assert_eq!(sq, expected);
    }

    #[test]
    fn eval_matches_hand_expansion() {
        let d = 2;
        let p = &(&MultiPoly::var_u(d) * &MultiPoly::var_t(d, 0)) - &MultiPoly::var_t(d, 1);
        let v = p.eval(&rat(3), &[rat(5), rat(7)]);
        assert_eq!(v, rat(8));
    }

    // ---- exact division ----

    #[test]
    fn divide_u_squared_minus_two_u_plus_one_by_u_minus_one() {
        let d = 0;
        let u = MultiPoly::var_u(d);
        let p = (&u - &MultiPoly::one(d)).pow(2);
        let q = p.divide_exact(Factor::UMinusOne).unwrap();
        assert_eq!(q, &u - &MultiPoly::one(d));
    }

    #[test]
    fn divide_ut_minus_t_by_u_minus_one() {
        let d = 1;
        let p = &(&MultiPoly::var_u(d) * &MultiPoly::var_t(d, 0)) - &MultiPoly::var_t(d, 0);
        let q = p.divide_exact(Factor::UMinusOne).unwrap();
        assert_eq!(q, MultiPoly::var_t(d, 0));
    }

    #[test]
    fn u_is_not_divisible_by_u_minus_one() {
        let p = MultiPoly::var_u(0);
        assert_eq!(
            p.divide_exact(Factor::UMinusOne),
            Err(RatFunError::NotDivisible { factor: "U-1".to_string() })
        );
    }

    #[test]
    fn divide_by_u_strips_one_power() {
        let d = 1;
        let p = MultiPoly::monomial(d, big(3), 2, &[1]);
        let q = p.divide_exact(Factor::U).unwrap();
        assert_eq!(q, MultiPoly::monomial(d, big(3), 1, &[1]));
        assert!(MultiPoly::one(d).divide_exact(Factor::U).is_err());
    }

    #[test]
    fn divide_by_u_minus_t_round_trip() {
        let d = 2;
        let p = &(&MultiPoly::var_u(d) + &MultiPoly::var_t(d, 1)).pow(2)
            - &MultiPoly::constant(d, big(4));
        let f = MultiPoly::from_factor(d, Factor::UMinusT(0));
        let prod = &p * &f;
        assert_eq!(prod.divide_exact(Factor::UMinusT(0)).unwrap(), p);
        assert!(p.divide_exact(Factor::UMinusT(0)).is_err());
    }

    // ---- substitutions ----

    #[test]
    fn subst_u_t_detects_divisibility() {
        let d = 1;
        let f = MultiPoly::from_factor(d, Factor::UMinusT(0));
        let p = &f * &(&MultiPoly::var_u(d) + &MultiPoly::one(d));
        assert!(p.subst_u_t(0).is_zero());
        let q = &MultiPoly::var_u(d) + &MultiPoly::one(d);
        assert!(!q.subst_u_t(0).is_zero());
    }

    #[test]
    fn collapse_t_merges_exponents() {
        let d = 3;
        let p = MultiPoly::monomial(d, big(2), 1, &[1, 0, 2]);
        let c = p.collapse_t();
        assert_eq!(c, MultiPoly::monomial(1, big(2), 1, &[3]));
    }

    // ---- display ----

    #[test]
    fn display_orders_by_degree_then_lex() {
        let d = 2;
        let mut p = MultiPoly::zero(d);
        p.add_term(2, &[1, 0], big(-2));
        p.add_term(0, &[0, 0], big(1));
        p.add_term(0, &[0, 1], big(3));
        p.add_term(1, &[0, 0], big(1));
        assert_eq!(p.to_string(), "1 + 3*T2 + 1*U + -2*U^2*T1");
    }

    #[test]
    fn display_zero_and_powers() {
        assert_eq!(MultiPoly::zero(1).to_string(), "0");
        let p = MultiPoly::monomial(1, big(1), 0, &[2]);
        assert_eq!(p.to_string(), "1*T1^2");
    }
}
