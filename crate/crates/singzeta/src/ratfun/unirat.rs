//! Univariate polynomials and rational functions over the exact rationals,
//! in the single collapsed variable T.
//!
//! UniRatFun keeps a canonical form: numerator and denominator are coprime
//! and the denominator is normalized to constant term 1 (or monic when the
//! constant term vanishes), so structural equality is semantic equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::multipoly::forward_binop;
use super::RatFunError;

/// Polynomial in Q[T], coefficients ascending, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, s: &BigRational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Substitute T -> s*T.
    pub fn scale_arg(&self, s: &BigRational) -> UniPoly {
        let mut pow = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &pow;
                pow *= s;
                out
            })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: self = q*den + r with deg r < deg den.
    pub fn divrem(&self, den: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let dd = den.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd + 1];
        let lead = den.leading();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in den.coeffs.iter().enumerate() {
                let sub = dc * &c;
                rem[k + j] -= sub;
            }
            quot[k] = c;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&lead.recip())
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

forward_binop!(Add, add, UniPoly);
forward_binop!(Sub, sub, UniPoly);
forward_binop!(Mul, mul, UniPoly);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_needed = k == 0 || !mag.is_one();
            if coeff_needed {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if coeff_needed {
                    write!(f, "*")?;
                }
                write!(f, "T")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Rational function in Q(T), always in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniRatFun {
    num: UniPoly,
    den: UniPoly,
}

impl UniRatFun {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return UniRatFun { num: UniPoly::zero(), den: UniPoly::one() };
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, rn) = num.divrem(&g);
        let (den, rd) = den.divrem(&g);
        debug_assert!(rn.is_zero() && rd.is_zero());
        let unit = if den.coeff(0).is_zero() { den.leading() } else { den.coeff(0) };
        UniRatFun { num: num.scale(&unit.recip()), den: den.scale(&unit.recip()) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRatFun { num: p, den: UniPoly::one() }
    }

    pub fn zero() -> Self {
        UniRatFun::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        UniRatFun::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// None when t is a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / d)
    }

    /// Substitute T -> s*T.
    pub fn scale_arg(&self, s: &BigRational) -> UniRatFun {
        UniRatFun::new(self.num.scale_arg(s), self.den.scale_arg(s))
    }

    /// Exact power-series coefficients of T^0..T^n.
    pub fn series_expand(&self, n: usize) -> Result<Vec<BigRational>, RatFunError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(RatFunError::NotExpandable);
        }
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.num.coeff(k);
            for j in 1..=k {
                c -= self.den.coeff(j) * &out[k - j];
            }
            out.push(c / &d0);
        }
        Ok(out)
    }
}

impl std::ops::Neg for &UniRatFun {
    type Output = UniRatFun;
    fn neg(self) -> UniRatFun {
        UniRatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Neg for UniRatFun {
    type Output = UniRatFun;
    fn neg(self) -> UniRatFun {
        -&self
    }
}

impl std::ops::Add for &UniRatFun {
    type Output = UniRatFun;
    fn add(self, rhs: &UniRatFun) -> UniRatFun {
        UniRatFun::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl std::ops::Sub for &UniRatFun {
    type Output = UniRatFun;
    fn sub(self, rhs: &UniRatFun) -> UniRatFun {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &UniRatFun {
    type Output = UniRatFun;
    fn mul(self, rhs: &UniRatFun) -> UniRatFun {
        UniRatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_binop!(Add, add, UniRatFun);
forward_binop!(Sub, sub, UniRatFun);
forward_binop!(Mul, mul, UniRatFun);

impl fmt::Display for UniRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
