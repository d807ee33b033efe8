//! The universal zeta function of a good semigroup and its specializations.
//!
//! The assembly has three parts: a Laurent-polynomial sum over the small
//! region n < c, boundary sums over proper nonempty axis sets J (conductor
//! values on the J-coordinates), and a tail supported at the conductor. The
//! monodromy (U = 1), counting (U = q), and motivic (symbolic U) forms are
//! exact substitutions of one rational function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ratfun::{MultiPoly, RatFunError, UniRatFun, ZetaRatFun};
use crate::semigroup::{GoodSemigroup, ValueVec};

/// Laurent polynomial in U with integer coefficients: coeffs[k] * U^(low+k).
/// Canonical: first and last coefficients nonzero; zero has empty coeffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ULaurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl ULaurent {
    pub fn zero() -> Self {
        ULaurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ULaurent { low: 0, coeffs: vec![BigInt::one()] }
    }

    fn from_map(map: BTreeMap<i64, BigInt>) -> Self {
        let mut map = map;
        map.retain(|_, c| !c.is_zero());
        let Some((&low, _)) = map.iter().next() else {
            return ULaurent::zero();
        };
        let (&high, _) = map.iter().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in map {
            coeffs[(k - low) as usize] = c;
        }
        ULaurent { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when no negative U-power occurs.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().map(|(k, c)| (self.low + k as i64, c))
    }

    /// Exact value at U = q; q must be nonzero when negative powers occur.
    pub fn eval_q(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mut term = BigRational::from_integer(c.clone());
            if k >= 0 {
                for _ in 0..k {
                    term *= q;
                }
            } else {
                assert!(!q.is_zero(), "negative U-power at q = 0");
                let r = q.recip();
                for _ in 0..(-k) {
                    term *= &r;
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact value at U = 1.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn mul_u_minus_one(&self) -> ULaurent {
        let mut map = BTreeMap::new();
        for (k, c) in self.terms() {
            *map.entry(k + 1).or_insert_with(BigInt::zero) += c;
            *map.entry(k).or_insert_with(BigInt::zero) -= c;
        }
        ULaurent::from_map(map)
    }

    fn divide_u_minus_one(&self) -> Result<ULaurent, RatFunError> {
        if self.is_zero() {
            return Ok(ULaurent::zero());
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Err(RatFunError::NotDivisible { factor: "U-1".to_string() });
        }
        let mut quotient = vec![BigInt::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for k in (1..n).rev() {
            quotient[k - 1] = carry.clone();
            if k >= 2 {
                carry += &self.coeffs[k - 1];
            }
        }
        if &carry + &self.coeffs[0] != BigInt::zero() {
            return Err(RatFunError::NotDivisible { factor: "U-1".to_string() });
        }
        let mut map = BTreeMap::new();
        for (k, c) in quotient.into_iter().enumerate() {
            map.insert(self.low + k as i64, c);
        }
        Ok(ULaurent::from_map(map))
    }
}

/// The assembled universal zeta function of a semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalZeta {
    semigroup: GoodSemigroup,
    value: ZetaRatFun,
}

impl UniversalZeta {
    pub fn semigroup(&self) -> &GoodSemigroup {
        &self.semigroup
    }

    pub fn value(&self) -> &ZetaRatFun {
        &self.value
    }
}

/// The class polynomial of principal ideals of value n: at U = q it counts
/// the principal ideals with valuation vector n over F_q.
pub fn ideal_class_poly(s: &GoodSemigroup, n: &ValueVec) -> Result<ULaurent, RatFunError> {
    let d = s.d();
    assert_eq!(n.dim(), d, "dimension mismatch");
    assert!(d <= 16, "branch count too large for subset enumeration");
    let k = (n.norm() + 1) as i64;
    let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
    for mask in 0u32..(1 << d) {
        let h = s.h_dim(&n.plus_indicator(mask)) as i64;
        let sign = if mask.count_ones() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        *map.entry(k - h).or_insert_with(BigInt::zero) += sign;
    }
    ULaurent::from_map(map).divide_u_minus_one()
}

fn axes_mask(d: usize, axes: &[usize]) -> u32 {
    assert!(!axes.is_empty(), "axis set must be nonempty");
    let mut mask = 0u32;
    for &j in axes {
        assert!(j < d, "axis out of range");
        assert_eq!(mask >> j & 1, 0, "duplicate axis");
        mask |= 1 << j;
    }
    assert!(mask != (1u32 << d) - 1, "axis set must be proper");
    mask
}

/// The full vector with conductor values on the given axes and the partial
/// vector m on the remaining coordinates, in ascending coordinate order.
pub fn boundary_anchor(s: &GoodSemigroup, axes: &[usize], m: &ValueVec) -> ValueVec {
    let d = s.d();
    let mask = axes_mask(d, axes);
    assert_eq!(m.dim() + axes.len(), d, "partial vector has wrong dimension");
    let mut out = Vec::with_capacity(d);
    let mut pos = 0;
    for i in 0..d {
        if mask >> i & 1 == 1 {
            out.push(s.conductor().get(i));
        } else {
            out.push(m.get(pos));
            pos += 1;
        }
    }
    ValueVec::new(out)
}

/// Members m (indexed by the complement of the axis set, ascending) whose
/// anchor lies in S; the coordinates off the axes run below the conductor.
pub fn boundary_members(s: &GoodSemigroup, axes: &[usize]) -> Vec<ValueVec> {
    let d = s.d();
    let mask = axes_mask(d, axes);
    let free: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 0).collect();
    if free.iter().any(|&j| s.conductor().get(j) == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut m = vec![0u64; free.len()];
    loop {
        let partial = ValueVec::new(m.clone());
        let anchor = boundary_anchor(s, axes, &partial);
        if s.contains(&anchor).unwrap() {
            out.push(partial);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            m[pos] += 1;
            if m[pos] < s.conductor().get(free[pos]) {
                break;
            }
            m[pos] = 0;
        }
    }
}

/// Accumulates Laurent-in-U terms against T-monomials, then builds one
/// ZetaRatFun with the common U-power cleared into the denominator.
struct LaurentAccum {
    d: usize,
    terms: BTreeMap<(i64, Vec<u32>), BigInt>,
}

impl LaurentAccum {
    fn new(d: usize) -> Self {
        LaurentAccum { d, terms: BTreeMap::new() }
    }

    fn add_laurent(&mut self, l: &ULaurent, u_shift: i64, t_key: &[u32]) {
        assert_eq!(t_key.len(), self.d);
        for (k, c) in l.terms() {
            if c.is_zero() {
                continue;
            }
            let key = (k + u_shift, t_key.to_vec());
            let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
            *entry += c;
        }
    }

    fn into_zeta(mut self, den_u1: u32, den_t: Vec<u32>) -> ZetaRatFun {
        self.terms.retain(|_, c| !c.is_zero());
        let min_u = self.terms.keys().map(|(k, _)| *k).min().unwrap_or(0);
        let shift = (-min_u).max(0) as u32;
        let mut num = MultiPoly::zero(self.d);
        for ((k, t_key), c) in self.terms {
            num.add_term((k + i64::from(shift)) as u32, &t_key, c);
        }
        ZetaRatFun::new(num, shift, den_u1, den_t)
    }
}

fn t_key_of(n: &ValueVec) -> Vec<u32> {
    n.as_slice().iter().map(|&v| u32::try_from(v).expect("exponent fits in u32")).collect()
}

/// Assemble the universal zeta function of S: the sum of the terms
/// I_n(U) U^-norm(n) T^n over all n in S, in closed rational form. Each
/// boundary family continues one anchor geometrically in its axis
/// directions, where the class polynomial is constant.
pub fn assemble_universal(s: &GoodSemigroup) -> Result<UniversalZeta, RatFunError> {
    let d = s.d();
    assert!(d <= 16, "branch count too large for subset enumeration");
    let c = s.conductor();
    let delta = s.delta() as i64;
    let c_norm = c.norm() as i64;

    let mut small_acc = LaurentAccum::new(d);
    if (0..d).all(|i| c.get(i) > 0) {
        let mut n = vec![0u64; d];
        'small: loop {
            let v = ValueVec::new(n.clone());
            if s.contains(&v).unwrap() {
                let class_poly = ideal_class_poly(s, &v)?;
                small_acc.add_laurent(&class_poly, -(v.norm() as i64), &t_key_of(&v));
            }
            let mut pos = d;
            loop {
                if pos == 0 {
                    break 'small;
                }
                pos -= 1;
                n[pos] += 1;
                if n[pos] < c.get(pos) {
                    break;
                }
                n[pos] = 0;
            }
        }
    }
    let mut total = small_acc.into_zeta(0, vec![0; d]);

    for axes_bits in 1..(1u32 << d) - 1 {
        let axes: Vec<usize> = (0..d).filter(|i| axes_bits >> i & 1 == 1).collect();
        let members = boundary_members(s, &axes);
        if members.is_empty() {
            continue;
        }
        let r = axes.len() as i64;
        let mut acc = LaurentAccum::new(d);
        for m in members {
            let anchor = boundary_anchor(s, &axes, &m);
            let class_poly = ideal_class_poly(s, &anchor)?;
            let u_shift = r - anchor.norm() as i64;
            acc.add_laurent(&class_poly, u_shift, &t_key_of(&anchor));
        }
        let mut den_t = vec![0u32; d];
        for &j in &axes {
            den_t[j] = 1;
        }
        total = &total + &acc.into_zeta(0, den_t);
    }

    let mut tail_poly = ULaurent::one();
    for _ in 1..d {
        tail_poly = tail_poly.mul_u_minus_one();
    }
    let mut tail_acc = LaurentAccum::new(d);
    tail_acc.add_laurent(&tail_poly, delta + 1 - c_norm, &t_key_of(c));
    total = &total + &tail_acc.into_zeta(0, vec![1; d]);

    debug_assert_eq!(total.den_u1(), 0, "a (U-1) factor survived assembly");
    Ok(UniversalZeta { semigroup: s.clone(), value: total })
}

/// The generalized Poincaré series U^-(delta+1) * zeta, delivered
/// symbolically; the identity assumes a large enough residue field.
pub fn generalized_poincare(s: &GoodSemigroup) -> Result<ZetaRatFun, RatFunError> {
    let z = assemble_universal(s)?;
    let shift = s.delta() as i64 + 1;
    Ok(z.value().mul_laurent_u(-shift))
}

/// Monodromy zeta function: collapse the T variables, then U = 1 by exact
/// cancellation.
pub fn specialize_monodromy(z: &UniversalZeta) -> Result<UniRatFun, RatFunError> {
    z.value().collapse_t().eval_u_one()
}

/// Counting specialization at U = q: the series coefficients are the
/// q^-norm-weighted principal-ideal counts.
pub fn specialize_counting(z: &UniversalZeta, q: u64) -> Result<UniRatFun, RatFunError> {
    assert!(q >= 2, "counting specialization needs q >= 2");
    z.value().collapse_t().eval_u(&BigRational::from_integer(BigInt::from(q)))
}

/// Generating series of principal ideals by codimension: the counting
/// specialization followed by T -> qT.
pub fn counting_ca(z: &UniversalZeta, q: u64) -> Result<UniRatFun, RatFunError> {
    let f = specialize_counting(z, q)?;
    Ok(f.scale_arg(&BigRational::from_integer(BigInt::from(q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::{Factor, UniPoly};
    use num_traits::Signed;

    fn vv(components: &[u64]) -> ValueVec {
        ValueVec::new(components.to_vec())
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn line() -> GoodSemigroup {
        GoodSemigroup::numerical_from_generators(&[1]).unwrap()
    }

    fn cusp() -> GoodSemigroup {
        GoodSemigroup::numerical_from_generators(&[2, 3]).unwrap()
    }

    fn cusp25() -> GoodSemigroup {
        GoodSemigroup::numerical_from_generators(&[2, 5]).unwrap()
    }

    fn node() -> GoodSemigroup {
        GoodSemigroup::from_modulus(&[1, 1]).unwrap()
    }

    fn tacnode() -> GoodSemigroup {
        GoodSemigroup::from_small_elements(
            2,
            vv(&[2, 2]),
            [vv(&[0, 0]), vv(&[1, 1]), vv(&[2, 2])],
        )
        .unwrap()
    }

    fn triple_point() -> GoodSemigroup {
        GoodSemigroup::from_small_elements(
            3,
            vv(&[2, 2, 2]),
            [
                vv(&[0, 0, 0]),
                vv(&[1, 1, 1]),
                vv(&[1, 1, 2]),
                vv(&[1, 2, 1]),
                vv(&[2, 1, 1]),
                vv(&[2, 2, 2]),
            ],
        )
        .unwrap()
    }

    fn all_fixtures() -> Vec<GoodSemigroup> {
        vec![line(), cusp(), cusp25(), node(), tacnode(), triple_point()]
    }

    fn laurent_u(coeffs: &[(i64, i64)]) -> ULaurent {
        let map: BTreeMap<i64, BigInt> =
            coeffs.iter().map(|&(k, c)| (k, BigInt::from(c))).collect();
        ULaurent::from_map(map)
    }

    // ---- ideal class polynomials ----

    #[test]
    fn class_poly_at_zero_is_one_everywhere() {
        for s in all_fixtures() {
            let p = ideal_class_poly(&s, &ValueVec::zero(s.d())).unwrap();
            assert_eq!(p, ULaurent::one());
        }
    }

    #[test]
    fn class_poly_of_cusp_elements_is_u() {
        let s = cusp();
        assert_eq!(ideal_class_poly(&s, &vv(&[2])).unwrap(), laurent_u(&[(1, 1)]));
        assert_eq!(ideal_class_poly(&s, &vv(&[3])).unwrap(), laurent_u(&[(1, 1)]));
    }

    #[test]
    fn class_poly_of_triple_point_interior() {
        let s = triple_point();
        // Alternating h-sums reduce to U(U-2) and U(U-1) after the division.
        assert_eq!(
            ideal_class_poly(&s, &vv(&[1, 1, 1])).unwrap(),
            laurent_u(&[(2, 1), (1, -2)])
        );
        assert_eq!(
            ideal_class_poly(&s, &vv(&[1, 1, 2])).unwrap(),
            laurent_u(&[(2, 1), (1, -1)])
        );
    }

    #[test]
    fn class_poly_evaluations_are_nonnegative_integers() {
        for s in all_fixtures() {
            let c = s.conductor().clone();
            let mut n = vec![0u64; s.d()];
            'outer: loop {
                let v = ValueVec::new(n.clone());
                if s.contains(&v).unwrap() {
                    let p = ideal_class_poly(&s, &v).unwrap();
                    for q in 2..=5u64 {
                        let val = p.eval_q(&rat(q as i64));
                        assert!(val.is_integer(), "I_{v}({q}) not an integer for {s}");
                        assert!(!val.is_negative(), "I_{v}({q}) negative for {s}");
                    }
                }
                let mut pos = s.d();
                loop {
                    if pos == 0 {
                        break 'outer;
                    }
                    pos -= 1;
                    n[pos] += 1;
                    if n[pos] <= c.get(pos) + 1 {
                        break;
                    }
                    n[pos] = 0;
                }
            }
        }
    }

    // ---- boundary families ----

    #[test]
    fn node_and_tacnode_have_empty_boundaries() {
        for s in [node(), tacnode()] {
            assert!(boundary_members(&s, &[0]).is_empty());
            assert!(boundary_members(&s, &[1]).is_empty());
        }
    }

    #[test]
    fn triple_point_boundary_members() {
        let s = triple_point();
        assert_eq!(boundary_members(&s, &[2]), vec![vv(&[1, 1])]);
        assert_eq!(boundary_members(&s, &[0]), vec![vv(&[1, 1])]);
        assert!(boundary_members(&s, &[1, 2]).is_empty());
        let anchor = boundary_anchor(&s, &[2], &vv(&[1, 1]));
        assert_eq!(anchor, vv(&[1, 1, 2]));
    }

    // ---- assembly ----

    fn t_monomial(d: usize, exps: &[u32]) -> MultiPoly {
        MultiPoly::monomial(d, BigInt::one(), 0, exps)
    }

    #[test]
    fn line_zeta_is_u_over_u_minus_t() {
        let z = assemble_universal(&line()).unwrap();
        let expected = ZetaRatFun::new(MultiPoly::var_u(1), 0, 0, vec![1]);
        assert_eq!(z.value(), &expected);
    }

    #[test]
    fn cusp_zeta_closed_form() {
        let z = assemble_universal(&cusp()).unwrap();
        let expected = &ZetaRatFun::one(1) + &ZetaRatFun::new(t_monomial(1, &[2]), 0, 0, vec![1]);
        assert_eq!(z.value(), &expected);
    }

    #[test]
    fn node_zeta_closed_form() {
        let z = assemble_universal(&node()).unwrap();
        let u_minus_one = MultiPoly::from_factor(2, Factor::UMinusOne);
        let middle = ZetaRatFun::new(&u_minus_one * &t_monomial(2, &[1, 1]), 0, 0, vec![1, 1]);
        let expected = &ZetaRatFun::one(2) + &middle;
        assert_eq!(z.value(), &expected);
    }

    #[test]
    fn triple_point_zeta_matches_term_by_term_assembly() {
        let s = triple_point();
        let z = assemble_universal(&s).unwrap();
        let d = 3;
        let u = MultiPoly::var_u(d);
        let two = MultiPoly::constant(d, BigInt::from(2));
        let interior = ZetaRatFun::new(
            &(&u * &u) - &(&two * &u),
            3,
            0,
            vec![0, 0, 0],
        );
        let u_minus_one = MultiPoly::from_factor(d, Factor::UMinusOne);
        let sq = u_minus_one.pow(2);
        let mut expected = &ZetaRatFun::one(d) + &interior.mul_poly(&t_monomial(d, &[1, 1, 1]));
        for i in 0..3 {
            let mut exps = [1u32, 1, 1];
            exps[i] = 2;
            let mut den_t = vec![0u32; d];
            den_t[i] = 1;
            let term = ZetaRatFun::new(&u_minus_one * &t_monomial(d, &exps), 2, 0, den_t);
            expected = &expected + &term;
        }
        let tail = ZetaRatFun::new(&sq * &t_monomial(d, &[2, 2, 2]), 2, 0, vec![1, 1, 1]);
        expected = &expected + &tail;
        assert_eq!(z.value(), &expected);
    }

    #[test]
    fn assembly_never_keeps_u_minus_one_downstairs() {
        for s in all_fixtures() {
            let z = assemble_universal(&s).unwrap();
            assert_eq!(z.value().den_u1(), 0);
        }
    }

    #[test]
    fn poincare_is_a_u_shift_of_the_zeta() {
        let s = cusp();
        let z = assemble_universal(&s).unwrap();
        let p = generalized_poincare(&s).unwrap();
        assert_eq!(p, z.value().mul_laurent_u(-2));
        assert_eq!(p.mul_laurent_u(2), *z.value());
    }

    // ---- monodromy ----

    fn monodromy_of(s: &GoodSemigroup) -> UniRatFun {
        specialize_monodromy(&assemble_universal(s).unwrap()).unwrap()
    }

    #[test]
    fn monodromy_closed_forms() {
        assert_eq!(
            monodromy_of(&cusp()),
            UniRatFun::new(UniPoly::from_integers(&[1, -1, 1]), UniPoly::from_integers(&[1, -1]))
        );
        assert_eq!(
            monodromy_of(&cusp25()),
            UniRatFun::new(
                UniPoly::from_integers(&[1, -1, 1, -1, 1]),
                UniPoly::from_integers(&[1, -1])
            )
        );
        assert_eq!(monodromy_of(&node()), UniRatFun::one());
        assert_eq!(monodromy_of(&tacnode()), UniRatFun::from_poly(UniPoly::from_integers(&[1, 0, 1])));
        assert_eq!(
            monodromy_of(&triple_point()),
            UniRatFun::from_poly(UniPoly::from_integers(&[1, 0, 0, -1]))
        );
    }

    /// Independent route: at U = 1 the boundary and tail terms vanish for
    /// d >= 2, and each class polynomial contributes its coefficient sum.
    fn monodromy_via_alternating_h(s: &GoodSemigroup) -> UniRatFun {
        let d = s.d();
        let c = s.conductor().clone();
        let mut num = UniPoly::zero();
        let mut n = vec![0u64; d];
        if (0..d).all(|i| c.get(i) > 0) {
            'outer: loop {
                let v = ValueVec::new(n.clone());
                if s.contains(&v).unwrap() {
                    let mut value = BigInt::zero();
                    for mask in 0u32..(1 << d) {
                        let h = s.h_dim(&v.plus_indicator(mask));
                        let sign =
                            if mask.count_ones() % 2 == 0 { -BigInt::one() } else { BigInt::one() };
                        value += sign * BigInt::from(h);
                    }
                    num = &num
                        + &UniPoly::monomial(
                            BigRational::from_integer(value),
                            v.norm() as usize,
                        );
                }
                let mut pos = d;
                loop {
                    if pos == 0 {
                        break 'outer;
                    }
                    pos -= 1;
                    n[pos] += 1;
                    if n[pos] < c.get(pos) {
                        break;
                    }
                    n[pos] = 0;
                }
            }
        }
        let mut out = UniRatFun::from_poly(num);
        if d == 1 {
            let tail = UniRatFun::new(
                UniPoly::monomial(BigRational::one(), c.norm() as usize),
                UniPoly::from_integers(&[1, -1]),
            );
            out = &out + &tail;
        }
        out
    }

    #[test]
    fn monodromy_agrees_with_alternating_h_route() {
        for s in all_fixtures() {
            assert_eq!(monodromy_of(&s), monodromy_via_alternating_h(&s), "fixture {s}");
        }
    }

    // ---- counting ----

    #[test]
    fn counting_specialization_closed_forms() {
        let z = assemble_universal(&cusp()).unwrap();
        let f = specialize_counting(&z, 2).unwrap();
        let expected = UniRatFun::new(
            UniPoly::from_coeffs(vec![rat(1), rat(-1) / rat(2), rat(1) / rat(2)]),
            UniPoly::from_coeffs(vec![rat(1), rat(-1) / rat(2)]),
        );
        assert_eq!(f, expected);

        let zn = assemble_universal(&node()).unwrap();
        let g = specialize_counting(&zn, 3).unwrap();
        let third = rat(1) / rat(3);
        let den = UniPoly::from_coeffs(vec![rat(1), -third.clone()]);
        let expected_node = &UniRatFun::one()
            + &UniRatFun::new(
                UniPoly::monomial(rat(2) / rat(9), 2),
                &den * &den,
            );
        assert_eq!(g, expected_node);

        let zl = assemble_universal(&line()).unwrap();
        let h = specialize_counting(&zl, 5).unwrap();
        assert_eq!(
            h,
            UniRatFun::new(UniPoly::one(), UniPoly::from_coeffs(vec![rat(1), rat(-1) / rat(5)]))
        );
    }

    #[test]
    fn counting_ca_series_count_ideals_by_codimension() {
        let z = assemble_universal(&cusp()).unwrap();
        for q in [2u64, 3, 5] {
            let f = counting_ca(&z, q).unwrap();
            let s = f.series_expand(6).unwrap();
            let qq = rat(q as i64);
            assert_eq!(s[0], rat(1));
            assert_eq!(s[1], rat(0));
            for c in &s[2..] {
                assert_eq!(c, &qq);
            }
        }
        let zn = assemble_universal(&node()).unwrap();
        for q in [2u64, 3] {
            let f = counting_ca(&zn, q).unwrap();
            let s = f.series_expand(6).unwrap();
            for (m, c) in s.iter().enumerate() {
                let expected = match m {
                    0 => rat(1),
                    1 => rat(0),
                    _ => rat((m as i64 - 1) * (q as i64 - 1)),
                };
                assert_eq!(c, &expected, "q={q}, m={m}");
            }
        }
        let zl = assemble_universal(&line()).unwrap();
        let f = counting_ca(&zl, 3).unwrap();
        assert_eq!(
            f,
            UniRatFun::new(UniPoly::one(), UniPoly::from_integers(&[1, -1]))
        );
    }

    #[test]
    fn counting_series_are_nonnegative_integers() {
        for s in all_fixtures() {
            let z = assemble_universal(&s).unwrap();
            for q in [2u64, 3] {
                let f = counting_ca(&z, q).unwrap();
                for c in f.series_expand(8).unwrap() {
                    assert!(c.is_integer() && !c.is_negative(), "fixture {s}, q={q}");
                }
            }
        }
    }

    #[test]
    fn u_to_one_limit_matches_monodromy() {
        for s in all_fixtures() {
            let z = assemble_universal(&s).unwrap();
            let counting_form = z.value().collapse_t();
            let at_one = counting_form.eval_u_one().unwrap();
            assert_eq!(at_one, monodromy_of(&s), "fixture {s}");
        }
    }

    #[test]
    fn tacnode_counting_totals_match_direct_class_counts() {
        let s = tacnode();
        let z = assemble_universal(&s).unwrap();
        let f = counting_ca(&z, 2).unwrap();
        let series = f.series_expand(4).unwrap();
        // Codimension 4 admits (2,2) as the only value: I_{(2,2)} = U(U-1).
        assert_eq!(series[4], rat(2));
        assert_eq!(
            ideal_class_poly(&s, &vv(&[2, 2])).unwrap(),
            laurent_u(&[(2, 1), (1, -1)])
        );
    }
}
