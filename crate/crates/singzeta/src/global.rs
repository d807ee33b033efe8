//! Global zeta functions of singular rational curves over finite fields.
//!
//! The zeta function of a singular curve factors as the zeta function of
//! its normalization times one correction factor per singular point, and
//! that factor is the counting specialization of the local universal zeta.
//! An independent divisor-counting oracle expands the Euler product over
//! closed points directly, so the factorization can be checked
//! coefficient by coefficient.

use num_traits::{Signed, ToPrimitive};

use crate::ratfun::{RatFunError, UniPoly, UniRatFun};
use crate::semigroup::GoodSemigroup;
use crate::universal::{assemble_universal, counting_ca};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlobalError {
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("bad curve model: {0}")]
    BadModel(String),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|f| f * f <= q).all(|f| q % f != 0)
}

/// Counting zeta function of a smooth projective curve over F_q,
/// Z(T) = P(T)/((1-T)(1-qT)).
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothCurveZeta {
    q: u64,
    numerator: UniPoly,
}

impl SmoothCurveZeta {
    /// The projective line: P = 1.
    pub fn p1(q: u64) -> Result<Self, GlobalError> {
        SmoothCurveZeta::with_numerator(q, UniPoly::one())
    }

    pub fn with_numerator(q: u64, numerator: UniPoly) -> Result<Self, GlobalError> {
        if !is_prime(q) {
            return Err(GlobalError::BadModel(format!("q = {q} is not prime")));
        }
        if numerator.coeff(0) != num_rational::BigRational::from_integer(1.into()) {
            return Err(GlobalError::BadModel("numerator must have constant term 1".to_string()));
        }
        Ok(SmoothCurveZeta { q, numerator })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_p1(&self) -> bool {
        self.numerator == UniPoly::one()
    }

    pub fn zeta(&self) -> UniRatFun {
        let den = &UniPoly::from_integers(&[1, -1]) * &UniPoly::from_integers(&[1, -(self.q as i64)]);
        UniRatFun::new(self.numerator.clone(), den)
    }
}

/// A totally rational singular point, carried by its value semigroup.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    semigroup: GoodSemigroup,
}

impl SingularPoint {
    pub fn new(semigroup: GoodSemigroup, branches: usize) -> Result<Self, GlobalError> {
        if branches != semigroup.d() {
            return Err(GlobalError::BadModel(format!(
                "point declares {branches} branches but its semigroup has dimension {}",
                semigroup.d()
            )));
        }
        Ok(SingularPoint { semigroup })
    }

    pub fn semigroup(&self) -> &GoodSemigroup {
        &self.semigroup
    }

    pub fn branches(&self) -> usize {
        self.semigroup.d()
    }
}

/// A singular rational curve: a normalization plus its singular points.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularCurveModel {
    smooth: SmoothCurveZeta,
    points: Vec<SingularPoint>,
    modulus_flag: bool,
}

impl SingularCurveModel {
    /// modulus_flag marks curves obtained from a modulus on the projective
    /// line; only those admit the divisor-counting oracle.
    pub fn new(
        smooth: SmoothCurveZeta,
        points: Vec<SingularPoint>,
        modulus_flag: bool,
    ) -> Result<Self, GlobalError> {
        if modulus_flag && !smooth.is_p1() {
            return Err(GlobalError::BadModel(
                "modulus curves must have the projective line as normalization".to_string(),
            ));
        }
        Ok(SingularCurveModel { smooth, points, modulus_flag })
    }

    pub fn smooth(&self) -> &SmoothCurveZeta {
        &self.smooth
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn modulus_flag(&self) -> bool {
        self.modulus_flag
    }

    /// Number of normalization points lying over singular points.
    pub fn support_size(&self) -> u64 {
        self.points.iter().map(|p| p.branches() as u64).sum()
    }
}

/// Counts of closed points of the projective line by degree, 1..=e_max.
pub fn p1_closed_point_counts(q: u64, e_max: usize) -> Vec<u64> {
    assert!(is_prime(q), "q must be prime");
    assert!(e_max <= 12, "degree bound is 12");
    let mut counts = Vec::with_capacity(e_max);
    for e in 1..=e_max as u64 {
        if e == 1 {
            counts.push(q + 1);
            continue;
        }
        let mut total: i64 = 0;
        for f in 1..=e {
            if e % f != 0 {
                continue;
            }
            total += moebius(f) * q.pow((e / f) as u32) as i64;
        }
        assert!(total >= 0 && total % e as i64 == 0, "necklace count must divide");
        counts.push(total as u64 / e);
    }
    counts
}

fn moebius(f: u64) -> i64 {
    let mut rest = f;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if rest > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Zeta function of the singular curve: the smooth factor times
/// (1-T)^{d_P} times the local counting zeta, over all singular points.
pub fn assemble_global(model: &SingularCurveModel) -> Result<UniRatFun, GlobalError> {
    let q = model.smooth.q();
    let mut z = model.smooth.zeta();
    let one_minus_t = UniPoly::from_integers(&[1, -1]);
    for point in &model.points {
        let universal = assemble_universal(point.semigroup())?;
        let local = counting_ca(&universal, q)?;
        let mut factor = UniPoly::one();
        for _ in 0..point.branches() {
            factor = &factor * &one_minus_t;
        }
        z = &(&z * &UniRatFun::from_poly(factor)) * &local;
    }
    Ok(z)
}

/// Count effective divisors of degree 0..=n_max by expanding the Euler
/// product over closed points directly: smooth points of the projective
/// line away from the modulus support, then one counting factor per
/// singular point. Independent of assemble_global's rational-function
/// algebra.
pub fn divisor_series_oracle(
    model: &SingularCurveModel,
    n_max: usize,
) -> Result<Vec<u64>, GlobalError> {
    assert!(n_max <= 10, "expansion bound is 10");
    if !model.modulus_flag {
        return Err(GlobalError::UnsupportedModel(
            "divisor counting needs a modulus curve over the projective line".to_string(),
        ));
    }
    let q = model.smooth.q();
    let counts = p1_closed_point_counts(q, n_max.max(1));
    let support = model.support_size();
    if support > counts[0] {
        return Err(GlobalError::BadModel(format!(
            "modulus support of size {support} exceeds the {} rational points",
            counts[0]
        )));
    }
    let mut series = vec![0u64; n_max + 1];
    series[0] = 1;
    for e in 1..=n_max {
        let a_e = if e == 1 { counts[0] - support } else { counts[e - 1] };
        for _ in 0..a_e {
            for k in e..=n_max {
                series[k] += series[k - e];
            }
        }
    }
    for point in &model.points {
        let universal = assemble_universal(point.semigroup())?;
        let local = counting_ca(&universal, q)?.series_expand(n_max)?;
        let local: Vec<u64> = local
            .iter()
            .map(|c| {
                assert!(c.is_integer() && !c.is_negative(), "local counts must be in N");
                c.to_integer().to_u64().expect("local count fits u64")
            })
            .collect();
        let mut next = vec![0u64; n_max + 1];
        for (i, &a) in series.iter().enumerate() {
            for (j, &b) in local.iter().take(n_max + 1 - i).enumerate() {
                next[i + j] += a * b;
            }
        }
        series = next;
    }
    Ok(series)
}
