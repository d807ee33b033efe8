//! Rational functions num / (U^a (U-1)^b prod_i (U-Ti)^{e_i}), kept reduced.
//!
//! The denominator never leaves the closed factor set, which is exactly what
//! the zeta assembly produces through the identity (1 - U^{-1}Ti) = (U-Ti)/U.
//! Values are always in canonical form: the numerator shares no factor with
//! an active denominator factor, so derived equality is semantic equality.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::multipoly::{Factor, MultiPoly};
use super::unirat::{UniPoly, UniRatFun};
use super::RatFunError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaRatFun {
    num: MultiPoly,
    den_u: u32,
    den_u1: u32,
    den_t: Vec<u32>,
}

impl ZetaRatFun {
    /// Build num / (U^den_u (U-1)^den_u1 prod (U-Ti)^den_t[i]) and reduce.
    pub fn new(num: MultiPoly, den_u: u32, den_u1: u32, den_t: Vec<u32>) -> Self {
        assert_eq!(den_t.len(), num.d(), "denominator exponents must match branch count");
        let mut f = ZetaRatFun { num, den_u, den_u1, den_t };
        f.reduce();
        f
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let d = num.d();
        ZetaRatFun::new(num, 0, 0, vec![0; d])
    }

    pub fn zero(d: usize) -> Self {
        ZetaRatFun::from_poly(MultiPoly::zero(d))
    }

    pub fn one(d: usize) -> Self {
        ZetaRatFun::from_poly(MultiPoly::one(d))
    }

    pub fn d(&self) -> usize {
        self.num.d()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_u(&self) -> u32 {
        self.den_u
    }

    pub fn den_u1(&self) -> u32 {
        self.den_u1
    }

    pub fn den_t(&self) -> &[u32] {
        &self.den_t
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den_u = 0;
            self.den_u1 = 0;
            self.den_t.iter_mut().for_each(|e| *e = 0);
            return;
        }
        loop {
            let mut progressed = false;
            if self.den_u > 0 {
                if let Some(q) = self.num.try_divide(Factor::U) {
                    self.num = q;
                    self.den_u -= 1;
                    progressed = true;
                }
            }
            if self.den_u1 > 0 {
                if let Some(q) = self.num.try_divide(Factor::UMinusOne) {
                    self.num = q;
                    self.den_u1 -= 1;
                    progressed = true;
                }
            }
            for i in 0..self.den_t.len() {
                if self.den_t[i] > 0 {
                    if let Some(q) = self.num.try_divide(Factor::UMinusT(i)) {
                        self.num = q;
                        self.den_t[i] -= 1;
                        progressed = true;
                    }
                }
            }
            if !progressed {
                return;
            }
        }
    }

    /// Numerator after multiplying in the given extra denominator factors.
    fn raise(&self, du: u32, du1: u32, dt: &[u32]) -> MultiPoly {
        let d = self.d();
        let mut out = self.num.shift(du, &vec![0; d]);
        for _ in 0..du1 {
            out = &out * &MultiPoly::from_factor(d, Factor::UMinusOne);
        }
        for (i, e) in dt.iter().enumerate() {
            for _ in 0..*e {
                out = &out * &MultiPoly::from_factor(d, Factor::UMinusT(i));
            }
        }
        out
    }

    /// Multiply by U^k with k of either sign.
    pub fn mul_laurent_u(&self, k: i64) -> ZetaRatFun {
        let d = self.d();
        if k >= 0 {
            ZetaRatFun::new(
                self.num.shift(k as u32, &vec![0; d]),
                self.den_u,
                self.den_u1,
                self.den_t.clone(),
            )
        } else {
            ZetaRatFun::new(
                self.num.clone(),
                self.den_u + (-k) as u32,
                self.den_u1,
                self.den_t.clone(),
            )
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> ZetaRatFun {
        ZetaRatFun::new(&self.num * p, self.den_u, self.den_u1, self.den_t.clone())
    }

    /// Merge the T variables into one, producing a bivariate function in U, T.
    pub fn collapse_t(&self) -> ZetaRatFun {
        let den_t = vec![self.den_t.iter().sum()];
        ZetaRatFun::new(self.num.collapse_t(), self.den_u, self.den_u1, den_t)
    }

    /// Substitute U by an exact rational; requires a collapsed (d = 1) value.
    pub fn eval_u(&self, q: &BigRational) -> Result<UniRatFun, RatFunError> {
        assert_eq!(self.d(), 1, "collapse to a single T before substituting U");
        if q.is_zero() && self.den_u > 0 {
            return Err(RatFunError::DivisionByZero);
        }
        if q.is_one() && self.den_u1 > 0 {
            return Err(RatFunError::PoleAtOne);
        }
        let mut num = UniPoly::zero();
        for (key, coeff) in self.num.terms() {
            let c = BigRational::from_integer(coeff.clone()) * pow_rat(q, key[0]);
            num = &num + &UniPoly::monomial(c, key[1] as usize);
        }
        let unit = pow_rat(q, self.den_u)
            * pow_rat(&(q - BigRational::one()), self.den_u1);
        let mut den = UniPoly::constant(unit);
        let linear = UniPoly::from_coeffs(vec![q.clone(), -BigRational::one()]);
        for _ in 0..self.den_t[0] {
            den = &den * &linear;
        }
        Ok(UniRatFun::new(num, den))
    }

    /// Substitute U = 1 by exact cancellation.
    pub fn eval_u_one(&self) -> Result<UniRatFun, RatFunError> {
        self.eval_u(&BigRational::one())
    }

    /// Exact evaluation; None when the point hits a denominator zero.
    pub fn eval_point(&self, u: &BigRational, ts: &[BigRational]) -> Option<BigRational> {
        assert_eq!(ts.len(), self.d());
        let mut den = pow_rat(u, self.den_u) * pow_rat(&(u - BigRational::one()), self.den_u1);
        for (i, e) in self.den_t.iter().enumerate() {
            den *= pow_rat(&(u - &ts[i]), *e);
        }
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(u, ts) / den)
    }
}

fn pow_rat(base: &BigRational, exp: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

impl std::ops::Neg for &ZetaRatFun {
    type Output = ZetaRatFun;
    fn neg(self) -> ZetaRatFun {
        ZetaRatFun {
            num: -&self.num,
            den_u: self.den_u,
            den_u1: self.den_u1,
            den_t: self.den_t.clone(),
        }
    }
}

impl std::ops::Neg for ZetaRatFun {
    type Output = ZetaRatFun;
    fn neg(self) -> ZetaRatFun {
        -&self
    }
}

impl std::ops::Add for &ZetaRatFun {
    type Output = ZetaRatFun;
    fn add(self, rhs: &ZetaRatFun) -> ZetaRatFun {
        assert_eq!(self.d(), rhs.d(), "mixed branch counts");
        let du = self.den_u.max(rhs.den_u);
        let du1 = self.den_u1.max(rhs.den_u1);
        let dt: Vec<u32> =
            self.den_t.iter().zip(&rhs.den_t).map(|(a, b)| *a.max(b)).collect();
        let lift_l = self.raise(
            du - self.den_u,
            du1 - self.den_u1,
            &dt.iter().zip(&self.den_t).map(|(m, e)| m - e).collect::<Vec<_>>(),
        );
        let lift_r = rhs.raise(
            du - rhs.den_u,
            du1 - rhs.den_u1,
            &dt.iter().zip(&rhs.den_t).map(|(m, e)| m - e).collect::<Vec<_>>(),
        );
        ZetaRatFun::new(&lift_l + &lift_r, du, du1, dt)
    }
}

impl std::ops::Sub for &ZetaRatFun {
    type Output = ZetaRatFun;
    fn sub(self, rhs: &ZetaRatFun) -> ZetaRatFun {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &ZetaRatFun {
    type Output = ZetaRatFun;
    fn mul(self, rhs: &ZetaRatFun) -> ZetaRatFun {
        assert_eq!(self.d(), rhs.d(), "mixed branch counts");
        let dt: Vec<u32> = self.den_t.iter().zip(&rhs.den_t).map(|(a, b)| a + b).collect();
        ZetaRatFun::new(
            &self.num * &rhs.num,
            self.den_u + rhs.den_u,
            self.den_u1 + rhs.den_u1,
            dt,
        )
    }
}

super::multipoly::forward_binop!(Add, add, ZetaRatFun);
super::multipoly::forward_binop!(Sub, sub, ZetaRatFun);
super::multipoly::forward_binop!(Mul, mul, ZetaRatFun);

impl fmt::Display for ZetaRatFun {
    /// Canonical format: `(num) / (den factors)` with the factors
    /// `U^a * (U-1)^b * (U-T1)^e1 * ...`, omitting exponent-0 factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.den_u > 0 {
            factors.push(pow_str("U", self.den_u));
        }
        if self.den_u1 > 0 {
            factors.push(pow_str("(U-1)", self.den_u1));
        }
        for (i, e) in self.den_t.iter().enumerate() {
            if *e > 0 {
                factors.push(pow_str(&format!("(U-T{})", i + 1), *e));
            }
        }
        if factors.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, factors.join(" * "))
        }
    }
}

fn pow_str(base: &str, exp: u32) -> String {
    if exp == 1 {
        base.to_string()
    } else {
        format!("{base}^{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn u(d: usize) -> MultiPoly {
        MultiPoly::var_u(d)
    }

    fn t(d: usize, i: usize) -> MultiPoly {
        MultiPoly::var_t(d, i)
    }

    // ---- reduction to canonical form ----

    #[test]
    fn u_squared_minus_u_over_u_minus_one_is_u() {
        let d = 1;
        let num = &(&u(d) * &u(d)) - &u(d);
        let f = ZetaRatFun::new(num, 0, 1, vec![0]);
        assert_eq!(f, ZetaRatFun::from_poly(u(d)));
        assert_eq!(f.den_u1(), 0);
    }

    #[test]
    fn factor_over_itself_is_one() {
        let d = 1;
        let num = &u(d) - &t(d, 0);
        let f = ZetaRatFun::new(num, 0, 0, vec![1]);
        assert_eq!(f, ZetaRatFun::one(d));
    }

    #[test]
    fn partial_cancellation_keeps_one_u_minus_one() {
        let d = 1;
        let num = &MultiPoly::from_factor(d, Factor::UMinusOne)
            * &MultiPoly::from_factor(d, Factor::UMinusT(0));
        let f = ZetaRatFun::new(num, 0, 2, vec![0]);
        let expected = ZetaRatFun::new(&u(d) - &t(d, 0), 0, 1, vec![0]);
        assert_eq!(f, expected);
    }

    #[test]
    fn zero_normalizes_denominators() {
        let f = ZetaRatFun::new(MultiPoly::zero(2), 3, 1, vec![2, 0]);
        assert_eq!(f, ZetaRatFun::zero(2));
        assert_eq!(f.den_u(), 0);
    }

    // ---- arithmetic ----

    #[test]
    fn cusp_sum_has_closed_form() {
        let d = 1;
        let tail = ZetaRatFun::new(MultiPoly::monomial(d, BigInt::one(), 0, &[2]), 0, 0, vec![1]);
        let f = &ZetaRatFun::one(d) + &tail;
        let num = &(&u(d) - &t(d, 0)) + &MultiPoly::monomial(d, BigInt::one(), 0, &[2]);
        assert_eq!(f, ZetaRatFun::new(num, 0, 0, vec![1]));
    }

    #[test]
    fn product_cancels_across_factors() {
        let d = 1;
        let a = ZetaRatFun::new(u(d), 0, 1, vec![0]);
        let b = ZetaRatFun::new(MultiPoly::from_factor(d, Factor::UMinusOne), 1, 0, vec![0]);
        assert_eq!(&a * &b, ZetaRatFun::one(d));
    }

    #[test]
    fn addition_matches_pointwise_evaluation() {
        let d = 2;
        let a = ZetaRatFun::new(&u(d) + &t(d, 1), 1, 0, vec![1, 0]);
        let b = ZetaRatFun::new(&t(d, 0) * &t(d, 1), 0, 1, vec![0, 2]);
        let sum = &a + &b;
        let pt_u = rat(5);
        let pt_t = [rat(2), rat(3)];
        let lhs = sum.eval_point(&pt_u, &pt_t).unwrap();
        let rhs = a.eval_point(&pt_u, &pt_t).unwrap() + b.eval_point(&pt_u, &pt_t).unwrap();
        assert_eq!(lhs, rhs);
    }

    // ---- substitution ----

    #[test]
    fn eval_u_at_two() {
        let d = 1;
        let f = ZetaRatFun::new(&u(d) - &t(d, 0), 1, 0, vec![0]);
        let g = f.eval_u(&rat(2)).unwrap();
        let expected = UniRatFun::new(
            UniPoly::from_integers(&[2, -1]),
            UniPoly::from_integers(&[2]),
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn eval_u_one_reports_surviving_pole() {
        let d = 1;
        let f = ZetaRatFun::new(u(d), 0, 1, vec![0]);
        assert_eq!(f.eval_u_one(), Err(RatFunError::PoleAtOne));
    }

    #[test]
    fn eval_u_zero_reports_division_by_zero() {
        let d = 1;
        let f = ZetaRatFun::new(&u(d) + &MultiPoly::one(d), 1, 0, vec![0]);
        assert_eq!(f.eval_u(&rat(0)), Err(RatFunError::DivisionByZero));
    }

    #[test]
    fn cusp_monodromy_via_collapse_and_u_one() {
        let d = 1;
        let tail = ZetaRatFun::new(MultiPoly::monomial(d, BigInt::one(), 0, &[2]), 0, 0, vec![1]);
        let f = &ZetaRatFun::one(d) + &tail;
        let m = f.collapse_t().eval_u_one().unwrap();
        let expected = UniRatFun::new(
            UniPoly::from_integers(&[1, -1, 1]),
            UniPoly::from_integers(&[1, -1]),
        );
        assert_eq!(m, expected);
        let series = m.series_expand(10).unwrap();
        let want: Vec<BigRational> =
            [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1].iter().map(|&n| rat(n)).collect();
        assert_eq!(series, want);
    }

    #[test]
    fn laurent_u_multiplication() {
        let d = 1;
        let f = ZetaRatFun::from_poly(u(d).shift(2, &[0]));
        let g = f.mul_laurent_u(-2);
        assert_eq!(g, ZetaRatFun::from_poly(u(d)));
        let h = ZetaRatFun::one(d).mul_laurent_u(-3);
        assert_eq!(h.den_u(), 3);
    }

    // ---- display ----

    #[test]
    fn display_canonical_forms() {
        let d = 2;
        let num = &(&u(d) * &u(d)) + &(&MultiPoly::constant(d, BigInt::from(-1)) * &(&t(d, 0) * &t(d, 1)));
        let f = ZetaRatFun::new(num, 1, 0, vec![2, 1]);
        assert_eq!(
            f.to_string(),
            "(-1*T1*T2 + 1*U^2) / U * (U-T1)^2 * (U-T2)"
        );
        assert_eq!(ZetaRatFun::one(1).to_string(), "1");
        assert_eq!(ZetaRatFun::zero(1).to_string(), "0");
    }
}
