use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in `t`, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^d - 1`.
    pub fn t_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] += 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// In-place multiplication by `t^d - 1`.
    pub fn mul_t_pow_minus_one(&mut self, d: usize) {
        if self.is_zero() {
            return;
        }
        let n = self.coeffs.len();
        self.coeffs.resize(n + d, BigInt::zero());
        for k in (0..n + d).rev() {
            let shifted = if k >= d { self.coeffs[k - d].clone() } else { BigInt::zero() };
            let own = if k < n { self.coeffs[k].clone() } else { BigInt::zero() };
            self.coeffs[k] = shifted - own;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Self::new(trimmed);
    }

    /// Exact quotient by `t^d - 1`, or `None` if the division leaves a
    /// remainder.
    pub fn div_t_pow_minus_one(&self, d: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        if n <= d {
            return None;
        }
        // p = (t^d - 1) q  ⇒  q_k = p_{k+d} + q_{k+d}, from the top down
        let mut q = vec![BigInt::zero(); n - d];
        for k in (0..n - d).rev() {
            let above = if k + d < n - d { q[k + d].clone() } else { BigInt::zero() };
            q[k] = &self.coeffs[k + d] + above;
        }
        // the low d coefficients must match -q_k
        for k in 0..d {
            let expect = if k < q.len() { -&q[k] } else { BigInt::zero() };
            if self.coeffs[k] != expect {
                return None;
            }
        }
        Some(Self::new(q))
    }

    /// Exact quotient by a monic divisor.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().expect("monic implies nonzero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Index of the lowest coefficient where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&k| self.coeff(k) != other.coeff(k))
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending sparse form, e.g. `1 + t - 2t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
