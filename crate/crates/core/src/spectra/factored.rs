//! Formal products `∏_d (t^d - 1)^{e_d}` with integer exponents.
//!
//! Since `t^d - 1 = ∏_{k|d} Φ_k`, the exponent map of a rational function of
//! this shape is unique, so two normalized forms denote the same function
//! exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{IntPolynomial, SpectraError};
use crate::arith::{self, catalan, divisors, mobius, ArithError};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactoredForm {
    exponents: BTreeMap<u64, BigInt>,
}

impl FactoredForm {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<E: Into<BigInt>>(pairs: impl IntoIterator<Item = (u64, E)>) -> Self {
        let mut f = Self::one();
        for (d, e) in pairs {
            f.add(d, e.into());
        }
        f
    }

    /// Multiply by `(t^d - 1)^e`.
    pub fn add(&mut self, d: u64, e: BigInt) {
        assert!(d >= 1, "factor index must be positive");
        if e.is_zero() {
            return;
        }
        let slot = self.exponents.entry(d).or_default();
        *slot += e;
        if slot.is_zero() {
            self.exponents.remove(&d);
        }
    }

    pub fn exponent(&self, d: u64) -> BigInt {
        self.exponents.get(&d).cloned().unwrap_or_default()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigInt> {
        &self.exponents
    }

    /// `Σ d · e_d`.
    pub fn degree(&self) -> BigInt {
        self.exponents.iter().map(|(&d, e)| e * d).sum()
    }

    /// `∏ Φ_d^{m_d}` rewritten through `Φ_d = ∏_{k|d} (t^k - 1)^{μ(d/k)}`.
    pub fn from_cyclotomic(multiplicities: &BTreeMap<u64, BigInt>) -> Self {
        let mut f = Self::one();
        for (&d, m) in multiplicities {
            for k in divisors(d) {
                let mu = mobius(d / k);
                if mu != 0 {
                    f.add(k, m * mu);
                }
            }
        }
        f
    }

    /// Characteristic polynomial of `M²` from that of `M`, `M` of finite
    /// order: `(t^d - 1)` stays for odd `d` and becomes `(t^{d/2} - 1)²` for
    /// even `d`.
    pub fn substitute_square(&self) -> Self {
        let mut out = Self::one();
        for (&d, e) in &self.exponents {
            if d % 2 == 1 {
                out.add(d, e.clone());
            } else {
                out.add(d / 2, e * 2u32);
            }
        }
        out
    }

    /// Characteristic polynomial of `-M` from that of `M`, `M` of finite
    /// order: `(t^d - 1)` becomes `(t^{2d} - 1)/(t^d - 1)` for odd `d` and
    /// stays for even `d`.
    pub fn substitute_negate(&self) -> Self {
        let mut out = Self::one();
        for (&d, e) in &self.exponents {
            if d % 2 == 1 {
                out.add(2 * d, e.clone());
                out.add(d, -e);
            } else {
                out.add(d, e.clone());
            }
        }
        out
    }

    /// Multiply out the positive factors, then divide by the negative ones;
    /// fails unless every division is exact.
    pub fn expand(&self) -> Result<IntPolynomial, SpectraError> {
        let mut p = IntPolynomial::one();
        let too_big = |d: u64, e: &BigInt| SpectraError::ExponentTooLarge { d, e: e.clone() };
        for (&d, e) in self.exponents.iter().filter(|(_, e)| e.is_positive()) {
            let times = e.to_u64().ok_or_else(|| too_big(d, e))?;
            for _ in 0..times {
                p.mul_t_pow_minus_one(d as usize);
            }
        }
        for (&d, e) in self.exponents.iter().filter(|(_, e)| e.is_negative()) {
            let times = (-e).to_u64().ok_or_else(|| too_big(d, e))?;
            for _ in 0..times {
                p = p
                    .div_t_pow_minus_one(d as usize)
                    .ok_or_else(|| SpectraError::NotAPolynomial(self.to_string()))?;
            }
        }
        Ok(p)
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(d, e)| format!("(t^{d}-1)^{e}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `(t^n - 1)^{2 c_{n-1}} / ∏_{d|n} (t^d - 1)^{a_d}`: the characteristic
/// polynomial of the order-`n` generator `τ` on trees with `n` leaves.
pub fn theorem_form(n: u64) -> Result<FactoredForm, ArithError> {
    assert!(n >= 2, "theorem_form: n must be at least 2");
    let mut f = FactoredForm::one();
    f.add(n, catalan(n - 1) * 2u32);
    for d in divisors(n) {
        f.add(d, -arith::a_val(d)?);
    }
    Ok(f)
}

/// `(t^{2n} - 1)^{c_{n-1}} / ∏_{d|2n} (t^d - 1)^{β_d}` with `β = b` for even
/// `n` and `β = b'` for odd `n`: the conjectured characteristic polynomial of
/// the Coxeter transformation of the Tamari lattice on `n` leaves.
pub fn conjecture_form(n: u64) -> Result<FactoredForm, ArithError> {
    assert!(n >= 2, "conjecture_form: n must be at least 2");
    let mut f = FactoredForm::one();
    f.add(2 * n, catalan(n - 1));
    for d in divisors(2 * n) {
        let beta = if n.is_multiple_of(2) {
            arith::b_val(d)?
        } else {
            arith::bprime_val(d)?
        };
        f.add(d, -beta);
    }
    Ok(f)
}

/// Squares the conjectured `θ` form (negating for even `n`, where
/// `τ = -θ²`) and compares with the `τ` form. Returns both maps.
pub fn square_consistency(n: u64) -> Result<(FactoredForm, FactoredForm), ArithError> {
    let squared = conjecture_form(n)?.substitute_square();
    let image = if n.is_multiple_of(2) {
        squared.substitute_negate()
    } else {
        squared
    };
    Ok((image, theorem_form(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(pairs: &[(u64, i64)]) -> FactoredForm {
        FactoredForm::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            form(&[(3, 1), (1, -1)]).expand().unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1])
        );
        assert_eq!(
            form(&[(4, 2), (1, -1), (2, -1)]).expand().unwrap(),
            IntPolynomial::from_i64(&[1, 1, 2, 2, 1, 1])
        );
        assert!(matches!(
            form(&[(1, -1)]).expand(),
            Err(SpectraError::NotAPolynomial(_))
        ));
        assert_eq!(FactoredForm::one().expand().unwrap(), IntPolynomial::one());
    }

    #[test]
    fn substitution_rules() {
        assert_eq!(form(&[(2, 1)]).substitute_square(), form(&[(1, 2)]));
        assert_eq!(form(&[(1, 1)]).substitute_negate(), form(&[(2, 1), (1, -1)]));
        assert_eq!(form(&[(4, 3)]).substitute_negate(), form(&[(4, 3)]));
    }

    #[test]
    fn small_forms() {
        let t3 = theorem_form(3).unwrap();
        assert_eq!(t3, form(&[(3, 1), (1, -1)]));
        assert_eq!(t3.expand().unwrap(), IntPolynomial::from_i64(&[1, 1, 1]));
        let t4 = theorem_form(4).unwrap();
        assert_eq!(t4, form(&[(4, 2), (1, -1), (2, -1)]));

        let c3 = conjecture_form(3).unwrap();
        assert_eq!(c3.expand().unwrap(), IntPolynomial::from_i64(&[1, 1, 1]));
        let c2 = conjecture_form(2).unwrap();
        assert_eq!(c2.expand().unwrap(), IntPolynomial::from_i64(&[1, 1]));
    }

    #[test]
    fn square_maps_conjecture_to_theorem_small() {
        for n in [2, 3, 4] {
            let (image, target) = square_consistency(n).unwrap();
            assert_eq!(image, target, "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_rewrite() {
        // Φ_6 = (t^6-1)(t-1)/((t^2-1)(t^3-1)) = t^2 - t + 1
        let m = BTreeMap::from([(6u64, BigInt::from(1))]);
        let f = FactoredForm::from_cyclotomic(&m);
        assert_eq!(f, form(&[(6, 1), (1, 1), (2, -1), (3, -1)]));
        assert_eq!(f.expand().unwrap(), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(f.degree(), BigInt::from(2));
    }
}
