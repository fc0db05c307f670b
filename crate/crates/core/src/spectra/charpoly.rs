//! Characteristic polynomials `det(tI - M)`.
//!
//! * [`charpoly_direct`]: Berkowitz's division-free algorithm, `O(dim^4)`.
//! * [`charpoly_finite_order`]: for `M^k = I`, the traces of `M^0..M^{k-1}`
//!   determine the multiplicity of every cyclotomic factor `Φ_d`, `d | k`,
//!   through `tr(M^j) = Σ_d m_d c_d(j)` with `c_d` the Ramanujan sum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{matvec_kernel, Scalar};
use super::{ExactMatrix, FactoredForm, IntPolynomial, SpectraError};
use crate::arith::{divisors, mobius};
use crate::Exec;

/// `det(tI - M)` by Berkowitz's algorithm over the integers.
pub fn charpoly_direct(m: &ExactMatrix, exec: Exec) -> Result<IntPolynomial, SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if let Some(a) = m.small_entries() {
        if let Some(desc) = berkowitz(a, n, exec) {
            return Ok(ascending(desc.into_iter().map(BigInt::from).collect()));
        }
    }
    let desc = berkowitz(&m.big_entries(), n, exec).expect("bigint arithmetic cannot overflow");
    Ok(ascending(desc))
}

fn ascending(mut desc: Vec<BigInt>) -> IntPolynomial {
    desc.reverse();
    IntPolynomial::new(desc)
}

/// Coefficients of `det(tI - M)` from degree `n` down to 0, or `None` on
/// overflow.
fn berkowitz<T: Scalar>(a: &[T], n: usize, exec: Exec) -> Option<Vec<T>> {
    let mut p = vec![T::one()];
    for k in 0..n {
        // leading block A = a[0..k, 0..k], column C = a[0..k, k], row R = a[k, 0..k]
        let mut t = Vec::with_capacity(k + 2);
        t.push(T::one());
        t.push(a[k * n + k].neg()?);
        let row = &a[k * n..k * n + k];
        let mut v: Vec<T> = (0..k).map(|i| a[i * n + k].clone()).collect();
        for i in 0..k {
            if i > 0 {
                v = matvec_kernel(a, n, k, &v, exec)?;
            }
            let mut dot = T::zero();
            for (x, y) in row.iter().zip(&v) {
                if !x.is_zero() && !y.is_zero() {
                    T::mul_acc(&mut dot, x, y)?;
                }
            }
            t.push(dot.neg()?);
        }
        let mut next = vec![T::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in i.saturating_sub(k + 1)..=i.min(k) {
                if !t[i - j].is_zero() && !p[j].is_zero() {
                    T::mul_acc(slot, &t[i - j], &p[j])?;
                }
            }
        }
        p = next;
    }
    Some(p)
}

/// `c_d(j) = Σ_{e | gcd(d, j)} μ(d/e) e`, the sum of the `j`-th powers of the
/// primitive `d`-th roots of unity. `gcd(d, 0) = d`.
pub fn ramanujan_sum(d: u64, j: u64) -> i64 {
    let g = d.gcd(&j);
    divisors(g)
        .into_iter()
        .map(|e| i64::from(mobius(d / e)) * e as i64)
        .sum()
}

/// Output of the trace method.
#[derive(Clone, Debug)]
pub struct FiniteOrderCharpoly {
    pub poly: IntPolynomial,
    /// Multiplicity of `Φ_d` for each `d` dividing the bound, zeros omitted.
    pub multiplicities: BTreeMap<u64, BigInt>,
    /// Least `k ≥ 1` with `M^k = I`.
    pub order: u64,
    /// `tr(M^j)` for `j = 0..bound`.
    pub traces: Vec<BigInt>,
}

/// Characteristic polynomial of a matrix with `M^bound = I`, from the traces
/// of its powers. The identity is checked, not assumed.
pub fn charpoly_finite_order(
    m: &ExactMatrix,
    bound: u64,
    exec: Exec,
) -> Result<FiniteOrderCharpoly, SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare(m.rows(), m.cols()));
    }
    assert!(bound >= 1, "order bound must be positive");
    let mut traces = Vec::with_capacity(bound as usize);
    let mut power = ExactMatrix::identity(m.rows());
    let mut order = None;
    for j in 0..bound {
        traces.push(power.trace());
        power = power.mul(m, exec)?;
        if order.is_none() && power.is_identity() {
            order = Some(j + 1);
        }
    }
    if !power.is_identity() {
        return Err(SpectraError::NotFiniteOrder { bound });
    }
    let order = order.expect("M^bound = I was just checked");
    let multiplicities = solve_multiplicities(&traces, bound)?;
    let poly = FactoredForm::from_cyclotomic(&multiplicities).expand()?;
    Ok(FiniteOrderCharpoly {
        poly,
        multiplicities,
        order,
        traces,
    })
}

/// Exact Gaussian elimination on `tr(M^j) = Σ_{d|k} m_d c_d(j)`, `j < k`.
/// The system is overdetermined; every row must be satisfied.
fn solve_multiplicities(
    traces: &[BigInt],
    bound: u64,
) -> Result<BTreeMap<u64, BigInt>, SpectraError> {
    let ds = divisors(bound);
    let cols = ds.len();
    let mut rows: Vec<Vec<BigRational>> = traces
        .iter()
        .enumerate()
        .map(|(j, tr)| {
            let mut row: Vec<BigRational> = ds
                .iter()
                .map(|&d| BigRational::from_integer(ramanujan_sum(d, j as u64).into()))
                .collect();
            row.push(BigRational::from_integer(tr.clone()));
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(SpectraError::InconsistentTraces);
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return Err(SpectraError::InconsistentTraces);
    }

    let mut out = BTreeMap::new();
    for (i, &d) in ds.iter().enumerate() {
        let v = &rows[i][cols];
        if !v.is_integer() {
            return Err(SpectraError::NonIntegerMultiplicity {
                d,
                value: v.to_string(),
            });
        }
        let v = v.to_integer();
        if v.is_negative() {
            return Err(SpectraError::NegativeMultiplicity { d, value: v });
        }
        if !Zero::is_zero(&v) {
            out.insert(d, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn ramanujan_values() {
        // c_d(0) = φ(d), c_d(1) = μ(d), c_4(2) = -2, c_6(3) = -2 (sum of cubes
        // of the two primitive 6th roots)
        assert_eq!(ramanujan_sum(6, 0), 2);
        assert_eq!(ramanujan_sum(12, 1), 0);
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum(6, 3), -2);
        assert_eq!(ramanujan_sum(1, 5), 1);
    }

    #[test]
    fn direct_small() {
        let theta3 = m(&[&[0, -1], &[1, -1]]);
        assert_eq!(
            charpoly_direct(&theta3, Exec::Sequential).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1])
        );
        assert_eq!(
            charpoly_direct(&ExactMatrix::identity(3), Exec::Sequential).unwrap(),
            IntPolynomial::from_i64(&[-1, 3, -3, 1])
        );
        assert_eq!(
            charpoly_direct(&m(&[&[-1]]), Exec::Sequential).unwrap(),
            IntPolynomial::from_i64(&[1, 1])
        );
        assert_eq!(
            charpoly_direct(&ExactMatrix::zeros(0, 0), Exec::Sequential).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn direct_matches_trace_and_det() {
        let a = m(&[&[2, 1, 0], &[-1, 3, 4], &[5, 0, -2]]);
        let p = charpoly_direct(&a, Exec::Sequential).unwrap();
        assert_eq!(p.coeff(2), -a.trace());
        assert_eq!(p.coeff(0), -a.determinant().unwrap());
        assert!(p.is_monic());
    }

    #[test]
    fn direct_promotes_on_overflow() {
        let big = 1i64 << 62;
        let a = m(&[&[big, big], &[big, -big]]);
        let p = charpoly_direct(&a, Exec::Sequential).unwrap();
        let b = BigInt::from(big);
        assert_eq!(p.coeff(0), -(&b * &b) * 2);
    }

    #[test]
    fn finite_order_small() {
        let theta3 = m(&[&[0, -1], &[1, -1]]);
        let r = charpoly_finite_order(&theta3, 6, Exec::Sequential).unwrap();
        assert_eq!(r.poly, IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(r.order, 3);
        assert_eq!(r.multiplicities, BTreeMap::from([(3, BigInt::from(1))]));

        let id = charpoly_finite_order(&ExactMatrix::identity(4), 1, Exec::Sequential).unwrap();
        assert_eq!(id.poly, IntPolynomial::from_i64(&[1, -4, 6, -4, 1]));

        let err = charpoly_finite_order(&m(&[&[1, 1], &[0, 1]]), 4, Exec::Sequential);
        assert!(matches!(err, Err(SpectraError::NotFiniteOrder { bound: 4 })));
    }
}
