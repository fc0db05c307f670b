//! Symmetric functions in the power-sum basis.
//!
//! A [`PowerSumPoly`] is a finite sum `Σ c_λ p_λ` with rational coefficients,
//! truncated at an explicit degree. Plethysm is computed through the
//! substitution homomorphism `p_k ∘ g = g(p_d ↦ p_{kd})`, which is the only
//! route into plethysm here: Schur functions appear solely as the output of
//! [`PowerSumPoly::to_schur`].

mod partition;
mod schur;

pub use partition::Partition;
pub use schur::{mn_character, SchurExpansion, SchurSign};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{catalan, central_binomial, divisors, euler_phi, lambda_val, mobius};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("plethysm requires an inner series without constant term")]
    ConstantTermError,
    #[error("degree {degree} exceeds the Schur expansion bound {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree {degree} is above the truncation degree {truncation}")]
    AboveTruncation { degree: usize, truncation: usize },
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Graded symmetric function `Σ c_λ p_λ`, all terms of weight at most
/// `truncation`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumPoly {
    coeffs: BTreeMap<Partition, BigRational>,
    truncation: usize,
}

impl PowerSumPoly {
    pub fn zero(truncation: usize) -> Self {
        PowerSumPoly {
            coeffs: BTreeMap::new(),
            truncation,
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(Partition::empty(), BigRational::one(), truncation)
    }

    /// `p_k`.
    pub fn p(k: u32, truncation: usize) -> Self {
        Self::monomial(Partition::new(vec![k]), BigRational::one(), truncation)
    }

    /// `c · p_λ`, or zero if `λ` is heavier than the truncation.
    pub fn monomial(lambda: Partition, c: BigRational, truncation: usize) -> Self {
        let mut f = Self::zero(truncation);
        f.add_term(lambda, c);
        f
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Partition, BigRational)>,
        truncation: usize,
    ) -> Self {
        let mut f = Self::zero(truncation);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    fn add_term(&mut self, lambda: Partition, c: BigRational) {
        if c.is_zero() || lambda.weight() > self.truncation {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Partition::empty())
    }

    fn same_truncation(&self, other: &Self) -> Result<(), SymError> {
        if self.truncation == other.truncation {
            Ok(())
        } else {
            Err(SymError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SymError> {
        self.same_truncation(other)?;
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SymError> {
        self.checked_add(&other.neg())
    }

    /// Product; partitions concatenate, terms above the truncation vanish.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SymError> {
        self.same_truncation(other)?;
        let mut out = Self::zero(self.truncation);
        for (l1, c1) in self.terms() {
            let w1 = l1.weight();
            for (l2, c2) in other.terms() {
                if w1 + l2.weight() <= self.truncation {
                    out.add_term(l1.union(l2), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        PowerSumPoly {
            coeffs: self.coeffs.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn neg(&self) -> Self {
        PowerSumPoly {
            coeffs: self.coeffs.iter().map(|(l, v)| (l.clone(), -v)).collect(),
            truncation: self.truncation,
        }
    }

    /// Homogeneous component of degree `n`, keeping the truncation.
    pub fn component(&self, n: usize) -> Self {
        PowerSumPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.weight() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Same terms under a different truncation degree (terms above it drop).
    pub fn retruncate(&self, truncation: usize) -> Self {
        Self::from_terms(
            self.coeffs.iter().map(|(l, c)| (l.clone(), c.clone())),
            truncation,
        )
    }

    /// `p_k ∘ self`: every `p_d` replaced by `p_{kd}`.
    pub fn adams(&self, k: u32) -> Self {
        Self::from_terms(
            self.coeffs.iter().map(|(l, c)| (l.scaled(k), c.clone())),
            self.truncation,
        )
    }

    /// Plethysm `self ∘ g`. The coefficients of `self` are constants and pass
    /// through unchanged; `g` must have no constant term.
    pub fn plethysm(&self, g: &Self) -> Result<Self, SymError> {
        self.same_truncation(g)?;
        if !g.constant_term().is_zero() {
            return Err(SymError::ConstantTermError);
        }
        let n = self.truncation;
        let images: Vec<Self> = (0..=n as u32)
            .map(|k| if k == 0 { Self::zero(n) } else { g.adams(k) })
            .collect();
        let mut memo: HashMap<Partition, Self> = HashMap::new();
        memo.insert(Partition::empty(), Self::one(n));
        let mut out = Self::zero(n);
        for (lambda, c) in self.terms() {
            let prod = pleth_monomial(lambda, &images, &mut memo);
            for (l, v) in prod.terms() {
                out.add_term(l.clone(), v * c);
            }
        }
        Ok(out)
    }

    /// Degree-`n` component evaluated at `p_d = 1` for every `d`: the
    /// dimension of the invariants of the corresponding module.
    pub fn invariants_dim(&self, n: usize) -> Result<BigRational, SymError> {
        if n > self.truncation {
            return Err(SymError::AboveTruncation {
                degree: n,
                truncation: self.truncation,
            });
        }
        Ok(self
            .terms()
            .filter(|(l, _)| l.weight() == n)
            .fold(BigRational::zero(), |acc, (_, c)| acc + c))
    }

    /// First partition (in map order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Partition, BigRational, BigRational)> {
        let keys: std::collections::BTreeSet<&Partition> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().find_map(|l| {
            let (a, b) = (self.coeff(l), other.coeff(l));
            (a != b).then(|| (l.clone(), a, b))
        })
    }
}

fn pleth_monomial(
    lambda: &Partition,
    images: &[PowerSumPoly],
    memo: &mut HashMap<Partition, PowerSumPoly>,
) -> PowerSumPoly {
    if let Some(hit) = memo.get(lambda) {
        return hit.clone();
    }
    let (rest, last) = lambda
        .without_last()
        .expect("empty partition is always memoized");
    let head = pleth_monomial(&rest, images, memo);
    let value = head
        .checked_mul(&images[last as usize])
        .expect("images share the truncation");
    memo.insert(lambda.clone(), value.clone());
    value
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})p{l}")?;
        }
        Ok(())
    }
}

/// `Lie = Σ_n (1/n) Σ_{d|n} μ(d) p_d^{n/d}`.
pub fn lie_series(truncation: usize) -> PowerSumPoly {
    let mut f = PowerSumPoly::zero(truncation);
    for n in 1..=truncation as u64 {
        for d in divisors(n) {
            f.add_term(
                Partition::rectangle(d as u32, (n / d) as usize),
                rat(mobius(d), n),
            );
        }
    }
    f
}

/// `Brace = Σ_n (1/n) binom(2n-2, n-1) p_1^n = (1 - √(1 - 4p_1))/2`.
pub fn brace_series(truncation: usize) -> PowerSumPoly {
    PowerSumPoly::from_terms(
        (1..=truncation as u64).map(|n| {
            (
                Partition::rectangle(1, n as usize),
                rat(central_binomial(n - 1), n),
            )
        }),
        truncation,
    )
}

/// `Z = p_1 + Σ_{n≥0} ((-1)^{n+1}/(n+1)) binom(2n, n) p_1^{2n+2}`.
pub fn z_series(truncation: usize) -> PowerSumPoly {
    let mut f = PowerSumPoly::p(1, truncation);
    let mut n = 0u64;
    while 2 * n + 2 <= truncation as u64 {
        let sign = if n.is_multiple_of(2) { -1 } else { 1 };
        f.add_term(
            Partition::rectangle(1, (2 * n + 2) as usize),
            rat(central_binomial(n) * sign, n + 1),
        );
        n += 1;
    }
    f
}

/// `Com = Σ_{n≥1} h_n`, `h_n = Σ_{λ⊢n} p_λ / z_λ`.
pub fn com_series(truncation: usize) -> PowerSumPoly {
    PowerSumPoly::from_terms(
        (1..=truncation).flat_map(|n| {
            Partition::all(n).into_iter().map(|l| {
                let z = l.z();
                (l, BigRational::new(BigInt::one(), z))
            })
        }),
        truncation,
    )
}

/// `Σ_{n≥0} p_1^n = 1/(1 - p_1)`.
pub fn geometric_series(truncation: usize) -> PowerSumPoly {
    PowerSumPoly::from_terms(
        (0..=truncation).map(|n| (Partition::rectangle(1, n), BigRational::one())),
        truncation,
    )
}

/// Closed form of `Lie ∘ Brace`:
/// `Σ_n (1/2n) Σ_{d|n} μ(d) binom(2n/d, n/d) p_d^{n/d}`.
pub fn lie_brace_closed(truncation: usize) -> PowerSumPoly {
    let mut f = PowerSumPoly::zero(truncation);
    for n in 1..=truncation as u64 {
        for d in divisors(n) {
            f.add_term(
                Partition::rectangle(d as u32, (n / d) as usize),
                rat(central_binomial(n / d) * mobius(d), 2 * n),
            );
        }
    }
    f
}

/// Closed form of `Lie ∘ Z`: `Σ_n (1/n) Σ_{d|n} μ(d) λ(n/d) p_d^{n/d}`.
pub fn lie_z_closed(truncation: usize) -> PowerSumPoly {
    let mut f = PowerSumPoly::zero(truncation);
    for n in 1..=truncation as u64 {
        for d in divisors(n) {
            f.add_term(
                Partition::rectangle(d as u32, (n / d) as usize),
                rat(lambda_val(n / d) * mobius(d), n),
            );
        }
    }
    f
}

/// Character of the symmetric group module induced from the cyclic action
/// on planar binary trees with `n - 1` internal nodes:
/// `2 c_{n-1} p_1^n - (1/2n) Σ_{d|n} φ(d) binom(2n/d, n/d) p_d^{n/d}`.
pub fn dend_character(n: usize) -> PowerSumPoly {
    assert!(n >= 1, "dend_character: n must be positive");
    let n64 = n as u64;
    let mut f = PowerSumPoly::monomial(
        Partition::rectangle(1, n),
        BigRational::from_integer(catalan(n64 - 1) * 2),
        n,
    );
    for d in divisors(n64) {
        f.add_term(
            Partition::rectangle(d as u32, (n64 / d) as usize),
            -rat(central_binomial(n64 / d) * euler_phi(d), 2 * n64),
        );
    }
    f
}

/// Outcome of comparing a plethysm with its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethysmCheck {
    pub label: &'static str,
    pub degree: usize,
    /// First power-sum monomial where the sides differ, with both coefficients.
    pub mismatch: Option<(Partition, BigRational, BigRational)>,
}

impl PlethysmCheck {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `Lie ∘ Brace`, `Lie ∘ Z` and `(1 + Com) ∘ Lie` against their closed forms,
/// through `degree`.
pub fn plethysm_checks(degree: usize) -> Result<Vec<PlethysmCheck>, SymError> {
    let lie = lie_series(degree);
    let check = |label, left: PowerSumPoly, right: PowerSumPoly| PlethysmCheck {
        label,
        degree,
        mismatch: left.first_difference(&right),
    };
    let one_com = PowerSumPoly::one(degree).checked_add(&com_series(degree))?;
    Ok(vec![
        check("lie-brace", lie.plethysm(&brace_series(degree))?, lie_brace_closed(degree)),
        check("lie-z", lie.plethysm(&z_series(degree))?, lie_z_closed(degree)),
        check("com-lie", one_com.plethysm(&lie)?, geometric_series(degree)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(xs: &[u32]) -> Partition {
        Partition::new(xs.to_vec())
    }

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn products() {
        let p1 = PowerSumPoly::p(1, 4);
        assert_eq!(
            p1.checked_mul(&p1).unwrap(),
            PowerSumPoly::monomial(part(&[1, 1]), q(1, 1), 4)
        );
        let p2 = PowerSumPoly::p(2, 5);
        let p21 = PowerSumPoly::monomial(part(&[2, 1]), q(1, 1), 5);
        assert_eq!(
            p2.checked_mul(&p21).unwrap(),
            PowerSumPoly::monomial(part(&[2, 2, 1]), q(1, 1), 5)
        );
        let s = PowerSumPoly::p(1, 5).checked_add(&p2).unwrap();
        assert!(s.checked_mul(&PowerSumPoly::zero(5)).unwrap().is_zero());
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let err = PowerSumPoly::p(1, 3)
            .checked_add(&PowerSumPoly::p(1, 4))
            .unwrap_err();
        assert_eq!(err, SymError::TruncationMismatch { left: 3, right: 4 });
    }

    #[test]
    fn terms_above_truncation_vanish() {
        let p2 = PowerSumPoly::p(2, 3);
        assert!(p2.checked_mul(&p2).unwrap().is_zero());
    }

    #[test]
    fn plethysm_definitional_cases() {
        let p2 = PowerSumPoly::p(2, 6);
        assert_eq!(p2.plethysm(&PowerSumPoly::p(3, 6)).unwrap(), PowerSumPoly::p(6, 6));
        let g = PowerSumPoly::p(1, 6).checked_add(&PowerSumPoly::p(2, 6)).unwrap();
        let expect = PowerSumPoly::p(2, 6).checked_add(&PowerSumPoly::p(4, 6)).unwrap();
        assert_eq!(p2.plethysm(&g).unwrap(), expect);
        assert_eq!(
            p2.plethysm(&PowerSumPoly::one(6)).unwrap_err(),
            SymError::ConstantTermError
        );
    }

    #[test]
    fn lie_brace_degree_two() {
        let expect = PowerSumPoly::from_terms([(part(&[1, 1]), q(3, 2)), (part(&[2]), q(-1, 2))], 2);
        let direct = lie_series(2).plethysm(&brace_series(2)).unwrap();
        assert_eq!(direct.component(2), expect);
        assert_eq!(lie_brace_closed(2).component(2), expect);
        assert_eq!(lie_brace_closed(1), PowerSumPoly::p(1, 1));
        assert_eq!(lie_z_closed(1), PowerSumPoly::p(1, 1));
    }

    #[test]
    fn named_series_low_degrees() {
        assert_eq!(
            lie_series(2).component(2),
            PowerSumPoly::from_terms([(part(&[1, 1]), q(1, 2)), (part(&[2]), q(-1, 2))], 2)
        );
        assert_eq!(
            brace_series(3).component(3),
            PowerSumPoly::monomial(part(&[1, 1, 1]), q(2, 1), 3)
        );
        assert_eq!(
            z_series(2).component(2),
            PowerSumPoly::monomial(part(&[1, 1]), q(-1, 1), 2)
        );
    }

    #[test]
    fn invariant_dimensions() {
        let lb = lie_brace_closed(4);
        assert_eq!(lb.invariants_dim(4).unwrap(), q(8, 1));
        assert_eq!(lie_z_closed(7).invariants_dim(7).unwrap(), q(-3, 1));
        let com = com_series(6);
        for n in 1..=6 {
            assert_eq!(com.invariants_dim(n).unwrap(), q(1, 1));
        }
        assert!(com.invariants_dim(7).is_err());
    }

    #[test]
    fn dend_character_small() {
        assert_eq!(dend_character(1), PowerSumPoly::p(1, 1));
        assert_eq!(
            dend_character(2),
            PowerSumPoly::from_terms([(part(&[1, 1]), q(1, 2)), (part(&[2]), q(-1, 2))], 2)
        );
        // τ on two trees has eigenvalues ω, ω², so no invariants
        assert_eq!(dend_character(3).invariants_dim(3).unwrap(), q(0, 1));
        // multiplicity of eigenvalue 1: 2 c_4 - a_1 - a_5 = 28 - 26
        assert_eq!(dend_character(5).invariants_dim(5).unwrap(), q(2, 1));
    }

    #[test]
    fn first_difference_reports_mismatch() {
        let f = lie_series(3);
        let g = f.checked_add(&PowerSumPoly::p(3, 3)).unwrap();
        let (l, a, b) = f.first_difference(&g).unwrap();
        assert_eq!(l, part(&[3]));
        assert_eq!(b - a, q(1, 1));
        assert!(f.first_difference(&f).is_none());
    }
}
