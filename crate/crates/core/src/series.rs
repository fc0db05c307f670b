//! Truncated univariate power series over `Q`.
//!
//! A [`RationalSeries`] of order `N` stores the coefficients of
//! `x^0, ..., x^N`; everything above `N` is unknown. Binary operations demand
//! equal orders and no operation ever reports more coefficients than its
//! inputs determine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{self, central_binomial, lambda_val};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{op} needs constant term {expected}, found {found}")]
    BadConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: BigRational,
    },
    #[error("series of order 0 has no coefficient left after {0}")]
    OrderExhausted(&'static str),
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl RationalSeries {
    /// Series with the given leading coefficients, padded with zeros or cut to
    /// `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        RationalSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        RationalSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    /// `c · x^k`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Highest degree with a known coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        Ok(RationalSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        Ok(RationalSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(RationalSeries { coeffs: out })
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "inverse",
                expected: "nonzero",
                found: c0.clone(),
            });
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(BigRational::zero(), |acc, i| acc + &self.coeffs[i] * &out[k - i]);
            out.push(-s * &inv0);
        }
        Ok(RationalSeries { coeffs: out })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Square root with constant term 1, by the convolution recurrence
    /// `2 g_k = f_k - Σ_{0<i<k} g_i g_{k-i}`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.expect_constant_one("sqrt")?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut g: Vec<BigRational> = vec![BigRational::one()];
        for k in 1..self.coeffs.len() {
            let cross = (1..k).fold(BigRational::zero(), |acc, i| acc + &g[i] * &g[k - i]);
            g.push((&self.coeffs[k] - cross) * &half);
        }
        Ok(RationalSeries { coeffs: g })
    }

    /// `log f = ∫ f'/f` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.expect_constant_one("log")?;
        let ratio = self.derivative_same_order().checked_div(self)?;
        Ok(ratio.integral_same_order())
    }

    /// `exp f` for `f(0) = 0`, from `k g_k = Σ_{i=1..k} i f_i g_{k-i}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "exp",
                expected: "0",
                found: self.coeffs[0].clone(),
            });
        }
        let mut g: Vec<BigRational> = vec![BigRational::one()];
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(BigRational::zero(), |acc, i| {
                acc + &self.coeffs[i] * int(i as u64) * &g[k - i]
            });
            g.push(s / int(k as u64));
        }
        Ok(RationalSeries { coeffs: g })
    }

    fn expect_constant_one(&self, op: &'static str) -> Result<(), SeriesError> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(SeriesError::BadConstantTerm {
                op,
                expected: "1",
                found: self.coeffs[0].clone(),
            })
        }
    }

    // f' truncated to the same order: its top coefficient is unknown, so it
    // is zeroed and the result is only used under a following integral.
    fn derivative_same_order(&self) -> Self {
        let n = self.order();
        Self::from_fn(n, |k| {
            if k < n {
                &self.coeffs[k + 1] * int(k as u64 + 1)
            } else {
                BigRational::zero()
            }
        })
    }

    fn integral_same_order(&self) -> Self {
        Self::from_fn(self.order(), |k| {
            if k == 0 {
                BigRational::zero()
            } else {
                &self.coeffs[k - 1] / int(k as u64)
            }
        })
    }

    /// `f / x`, one order lower; requires `f(0) = 0`.
    pub fn shift_down(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "shift_down",
                expected: "0",
                found: self.coeffs[0].clone(),
            });
        }
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted("shift_down"));
        }
        Ok(RationalSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `f(c x^k)`; known up to degree `k(N + 1) - 1`.
    pub fn compose_monomial(&self, c: &BigRational, k: usize) -> Self {
        assert!(k >= 1, "compose_monomial: k must be positive");
        let order = k * (self.order() + 1) - 1;
        let mut out = vec![BigRational::zero(); order + 1];
        let mut power = BigRational::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a * &power;
            power *= c;
        }
        RationalSeries { coeffs: out }
    }

    /// Forget coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot extend a series");
        RationalSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Lowest degree where the two series differ, comparing up to the smaller
    /// order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `∏_{d ≥ 1} (1 - x^d)^{-e_d}` up to degree `order`; missing exponents are
/// zero and negative exponents are allowed. Expanded through
/// `exp(Σ_d e_d Σ_k x^{dk}/k)`.
pub fn product_form(exponents: &BTreeMap<u64, BigInt>, order: usize) -> RationalSeries {
    let mut log = vec![BigRational::zero(); order + 1];
    for (&d, e) in exponents.range(1..=order as u64) {
        if e.is_zero() {
            continue;
        }
        let d = d as usize;
        let mut k = 1;
        while d * k <= order {
            log[d * k] += BigRational::new(e.clone(), BigInt::from(k));
            k += 1;
        }
    }
    RationalSeries::new(log, order)
        .exp()
        .expect("logarithm has zero constant term")
}

fn exponent_map<E>(
    upto: u64,
    f: impl Fn(u64) -> Result<BigInt, E>,
) -> Result<BTreeMap<u64, BigInt>, E> {
    (1..=upto).map(|d| Ok((d, f(d)?))).collect()
}

fn x(order: usize) -> RationalSeries {
    RationalSeries::monomial(BigRational::one(), 1, order)
}

/// `1 + c x^k` truncated to `order`.
fn binomial_poly(c: i64, k: usize, order: usize) -> RationalSeries {
    RationalSeries::one(order)
        .checked_add(&RationalSeries::monomial(int(c), k, order))
        .expect("equal orders")
}

/// `F_a = ∏ (1 - x^n)^{-a_n}`.
pub fn fa_product(order: usize) -> Result<RationalSeries, SeriesError> {
    Ok(product_form(&exponent_map(order as u64, arith::a_val)?, order))
}

/// `F_b = ∏ (1 - x^n)^{-b_n}`.
pub fn fb_product(order: usize) -> Result<RationalSeries, SeriesError> {
    Ok(product_form(&exponent_map(order as u64, arith::b_val)?, order))
}

/// `(1 - √(1 - 4x)) / (2x)`, the Catalan generating function.
pub fn fa_closed(order: usize) -> RationalSeries {
    let n = order + 1;
    let root = binomial_poly(-4, 1, n).sqrt().expect("constant term 1");
    RationalSeries::one(n)
        .checked_sub(&root)
        .and_then(|s| s.shift_down())
        .expect("numerator vanishes at 0")
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// `(-1 + 2x + √(1 + 4x²)) / (2x)`.
pub fn fb_closed(order: usize) -> RationalSeries {
    let n = order + 1;
    let root = binomial_poly(4, 2, n).sqrt().expect("constant term 1");
    let num = x(n)
        .scale(&int(2))
        .checked_add(&root)
        .and_then(|s| s.checked_sub(&RationalSeries::one(n)))
        .expect("equal orders");
    num.shift_down()
        .expect("numerator vanishes at 0")
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// The six Taylor expansions the sequence identities rest on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaylorIdentity {
    /// `Σ binom(2n,n) x^n = 1/√(1-4x)`
    CentralBinomial,
    /// `Σ_{n≥1} binom(2n-2,n-1)/n x^n = (1-√(1-4x))/2`
    Catalan,
    /// `Σ_{n≥1} binom(2n,n)/(2n) x^n = -log((1+√(1-4x))/2)`
    LogCatalan,
    /// `Σ_{n≥0} (-1)^{n+1} binom(2n,n)/(n+1) x^{2n+1} = (1-√(1+4x²))/(2x)`
    AlternatingCatalan,
    /// `Σ λ(n) x^n = x/√(1+4x²) - (1 - 1/√(1+4x²))/2`
    Lambda,
    /// `Σ λ(n)/n x^n = -log((1-2x+√(1+4x²))/2)`
    LogLambda,
}

impl TaylorIdentity {
    pub const ALL: [TaylorIdentity; 6] = [
        TaylorIdentity::CentralBinomial,
        TaylorIdentity::Catalan,
        TaylorIdentity::LogCatalan,
        TaylorIdentity::AlternatingCatalan,
        TaylorIdentity::Lambda,
        TaylorIdentity::LogLambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaylorIdentity::CentralBinomial => "central-binomial",
            TaylorIdentity::Catalan => "catalan",
            TaylorIdentity::LogCatalan => "log-catalan",
            TaylorIdentity::AlternatingCatalan => "alternating-catalan",
            TaylorIdentity::Lambda => "lambda",
            TaylorIdentity::LogLambda => "log-lambda",
        }
    }

    /// Left side, coefficient by coefficient from the closed sum.
    pub fn coefficient_side(self, order: usize) -> RationalSeries {
        RationalSeries::from_fn(order, |n| {
            let n64 = n as u64;
            match self {
                TaylorIdentity::CentralBinomial => int(central_binomial(n64)),
                TaylorIdentity::Catalan if n >= 1 => {
                    BigRational::new(central_binomial(n64 - 1), BigInt::from(n64))
                }
                TaylorIdentity::LogCatalan if n >= 1 => {
                    BigRational::new(central_binomial(n64), BigInt::from(2 * n64))
                }
                TaylorIdentity::AlternatingCatalan if n % 2 == 1 => {
                    let m = n64 / 2;
                    let sign = if m.is_multiple_of(2) { -1 } else { 1 };
                    BigRational::new(central_binomial(m) * sign, BigInt::from(m + 1))
                }
                TaylorIdentity::Lambda if n >= 1 => int(lambda_val(n64)),
                TaylorIdentity::LogLambda if n >= 1 => {
                    BigRational::new(lambda_val(n64), BigInt::from(n64))
                }
                _ => BigRational::zero(),
            }
        })
    }

    /// Right side, from square roots, quotients and logarithms.
    pub fn closed_side(self, order: usize) -> Result<RationalSeries, SeriesError> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let one = RationalSeries::one(order);
        match self {
            TaylorIdentity::CentralBinomial => binomial_poly(-4, 1, order).sqrt()?.inverse(),
            TaylorIdentity::Catalan => {
                let root = binomial_poly(-4, 1, order).sqrt()?;
                Ok(one.checked_sub(&root)?.scale(&half))
            }
            TaylorIdentity::LogCatalan => {
                let root = binomial_poly(-4, 1, order).sqrt()?;
                Ok(one.checked_add(&root)?.scale(&half).log()?.neg())
            }
            TaylorIdentity::AlternatingCatalan => {
                let n = order + 1;
                let root = binomial_poly(4, 2, n).sqrt()?;
                Ok(RationalSeries::one(n)
                    .checked_sub(&root)?
                    .shift_down()?
                    .scale(&half))
            }
            TaylorIdentity::Lambda => {
                let inv_root = binomial_poly(4, 2, order).sqrt()?.inverse()?;
                let first = x(order).checked_mul(&inv_root)?;
                let second = one.checked_sub(&inv_root)?.scale(&half);
                first.checked_sub(&second)
            }
            TaylorIdentity::LogLambda => {
                let root = binomial_poly(4, 2, order).sqrt()?;
                let inner = one
                    .checked_sub(&x(order).scale(&int(2)))?
                    .checked_add(&root)?
                    .scale(&half);
                Ok(inner.log()?.neg())
            }
        }
    }
}

impl fmt::Display for TaylorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of comparing two expansions up to `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    pub label: String,
    pub order: usize,
    /// Lowest degree where the two sides disagree, with both coefficients.
    pub mismatch: Option<(usize, BigRational, BigRational)>,
}

impl SeriesCheck {
    fn compare(label: impl Into<String>, left: &RationalSeries, right: &RationalSeries) -> Self {
        let order = left.order().min(right.order());
        SeriesCheck {
            label: label.into(),
            order,
            mismatch: left
                .first_mismatch(right)
                .map(|k| (k, left.coeff(k).clone(), right.coeff(k).clone())),
        }
    }

    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn taylor_check(identity: TaylorIdentity, order: usize) -> Result<SeriesCheck, SeriesError> {
    let left = identity.coefficient_side(order);
    let right = identity.closed_side(order)?;
    Ok(SeriesCheck::compare(identity.name(), &left, &right))
}

/// The product identities on the `a` and `b` sequences up to `order`:
///
/// * `∏(1-x^n)^{-a_n} = (1-√(1-4x))/(2x)`,
/// * `∏(1-x^n)^{-b_n} = (-1+2x+√(1+4x²))/(2x)`,
/// * `F_a(-z²) = F_b(z) F_b(-z)`,
/// * `F_a` equals the product regrouped by residue of `n` mod 4 with exponents
///   built from `b` alone.
pub fn generating_function_checks(order: usize) -> Result<Vec<SeriesCheck>, SeriesError> {
    let fa = fa_product(order)?;
    let fb = fb_product(order)?;
    let mut out = vec![
        SeriesCheck::compare("fa-product", &fa, &fa_closed(order)),
        SeriesCheck::compare("fb-product", &fb, &fb_closed(order)),
    ];
    out.extend(verify_fa_fb_relation(order)?);
    Ok(out)
}

/// `F_a(-z²) = F_b(z) F_b(-z)` and the mod-4 regrouping of the `F_a` product.
pub fn verify_fa_fb_relation(order: usize) -> Result<Vec<SeriesCheck>, SeriesError> {
    let minus_one = int(-1);
    let fa_half = fa_product(order / 2)?;
    let left = fa_half.compose_monomial(&minus_one, 2).truncate(order);
    let fb = fb_product(order)?;
    let right = fb.checked_mul(&fb.compose_monomial(&minus_one, 1))?;

    let regrouped = exponent_map(order as u64, |n| -> Result<BigInt, arith::ArithError> {
        let b2n = arith::b_val(2 * n)?;
        Ok(match n % 4 {
            0 => b2n * 2u32,
            2 => b2n * 2u32 + arith::b_val(n)? * 2u32 + arith::b_val(n / 2)?,
            _ => -(b2n * 2u32) - arith::b_val(n)?,
        })
    })?;
    Ok(vec![
        SeriesCheck::compare("fa-fb-relation", &left, &right),
        SeriesCheck::compare(
            "mod4-product",
            &fa_product(order)?,
            &product_form(&regrouped, order),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_of_one_minus_four_x() {
        // binomial series (1+u)^{1/2}, u = -4x: coefficients binom(1/2,k)(-4)^k
        let mut coeff = BigRational::one();
        let mut expect = vec![coeff.clone()];
        for k in 1..=8i64 {
            coeff = coeff * (q(1, 2) - q(k - 1, 1)) / q(k, 1) * q(-4, 1);
            expect.push(coeff.clone());
        }
        let got = binomial_poly(-4, 1, 8).sqrt().unwrap();
        assert_eq!(got.coeffs(), &expect[..]);
        assert_eq!(
            got.truncate(4),
            RationalSeries::from_ints(&[1, -2, -2, -4, -10], 4)
        );
    }

    #[test]
    fn log_of_geometric() {
        let geo = RationalSeries::from_ints(&[1, -1], 6).inverse().unwrap();
        let got = geo.log().unwrap();
        let expect = RationalSeries::from_fn(6, |k| if k == 0 { q(0, 1) } else { q(1, k as i64) });
        assert_eq!(got, expect);
    }

    #[test]
    fn inverse_round_trip() {
        let f = RationalSeries::from_ints(&[1, -1], 5);
        let prod = f.checked_mul(&f.inverse().unwrap()).unwrap();
        assert_eq!(prod, RationalSeries::one(5));
    }

    #[test]
    fn constant_term_errors() {
        let f = RationalSeries::from_ints(&[2, 1], 3);
        assert!(matches!(f.sqrt(), Err(SeriesError::BadConstantTerm { op: "sqrt", .. })));
        assert!(matches!(f.log(), Err(SeriesError::BadConstantTerm { op: "log", .. })));
        assert!(f.exp().is_err());
        assert!(RationalSeries::zero(3).inverse().is_err());
        assert!(matches!(
            f.checked_add(&RationalSeries::zero(4)),
            Err(SeriesError::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn product_form_examples() {
        let fa = fa_product(5).unwrap();
        assert_eq!(fa, RationalSeries::from_ints(&[1, 1, 2, 5, 14, 42], 5));
        assert_eq!(fb_product(3).unwrap(), fb_closed(3));
        assert_eq!(product_form(&BTreeMap::new(), 7), RationalSeries::one(7));
        // (1 - x)^{+1}: exponent -1
        let m = BTreeMap::from([(1u64, BigInt::from(-1))]);
        assert_eq!(product_form(&m, 4), RationalSeries::from_ints(&[1, -1], 4));
    }

    #[test]
    fn taylor_low_coefficients() {
        assert!(taylor_check(TaylorIdentity::CentralBinomial, 5).unwrap().holds());
        let a3 = TaylorIdentity::LogCatalan.closed_side(3).unwrap();
        assert_eq!(a3.coeff(1), &q(1, 1));
        let a6 = TaylorIdentity::LogLambda.closed_side(3).unwrap();
        assert_eq!(a6.coeff(1), &q(1, 1));
    }

    #[test]
    fn relation_coefficients() {
        let checks = verify_fa_fb_relation(10).unwrap();
        assert!(checks.iter().all(SeriesCheck::holds));
        let fa = fa_product(1).unwrap().compose_monomial(&q(-1, 1), 2);
        assert_eq!(fa.coeff(2), &q(-1, 1));
        let edge = verify_fa_fb_relation(1).unwrap();
        assert!(edge.iter().all(SeriesCheck::holds));
    }

    #[test]
    fn compose_and_shift_orders() {
        let f = RationalSeries::from_ints(&[1, 2, 3], 2);
        let g = f.compose_monomial(&q(-1, 1), 2);
        assert_eq!(g.order(), 5);
        assert_eq!(g, RationalSeries::from_ints(&[1, 0, -2, 0, 3, 0], 5));
        let h = RationalSeries::from_ints(&[0, 1, 2], 2).shift_down().unwrap();
        assert_eq!(h, RationalSeries::from_ints(&[1, 2], 1));
        assert!(RationalSeries::zero(0).shift_down().is_err());
    }
}
