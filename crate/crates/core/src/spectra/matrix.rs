//! Dense exact integer matrices.
//!
//! Entries live in `i128` while every intermediate result fits and are
//! promoted to `BigInt` the first time a checked operation overflows. The
//! kernels are written once over [`Scalar`] and run on whichever
//! representation the operands currently have.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::SpectraError;
use crate::Exec;

pub(crate) trait Scalar: Clone + Send + Sync + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `acc += a * b`.
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc = acc.add(&a.mul(b)?)?;
        Some(())
    }
    /// Quotient when `other` divides `self` exactly.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (*other != 0 && self % other == 0).then(|| self / other)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc += a * b;
        Some(())
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

#[derive(Clone, Debug)]
enum Entries {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

fn demote(big: Vec<BigInt>) -> Entries {
    let small: Option<Vec<i128>> = big.iter().map(|x| x.to_i128()).collect();
    match small {
        Some(v) => Entries::Small(v),
        None => Entries::Big(big),
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: Entries::Small(vec![0; rows * cols]),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut v = vec![0i128; n * n];
        for i in 0..n {
            v[i * n + i] = 1;
        }
        ExactMatrix {
            rows: n,
            cols: n,
            entries: Entries::Small(v),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut big = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                big.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries: demote(big),
        }
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into())
    }

    pub(crate) fn from_small(rows: usize, cols: usize, v: Vec<i128>) -> Self {
        debug_assert_eq!(v.len(), rows * cols);
        ExactMatrix {
            rows,
            cols,
            entries: Entries::Small(v),
        }
    }

    fn from_big(rows: usize, cols: usize, v: Vec<BigInt>) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: demote(v),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True while every entry is held in machine integers.
    pub fn is_small(&self) -> bool {
        matches!(self.entries, Entries::Small(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Small(v) => BigInt::from(v[k]),
            Entries::Big(v) => v[k].clone(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub(crate) fn big_entries(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(v) => v.clone(),
        }
    }

    pub(crate) fn small_entries(&self) -> Option<&[i128]> {
        match &self.entries {
            Entries::Small(v) => Some(v),
            Entries::Big(_) => None,
        }
    }

    pub fn count_nonzero(&self) -> usize {
        match &self.entries {
            Entries::Small(v) => v.iter().filter(|x| **x != 0).count(),
            Entries::Big(v) => v.iter().filter(|x| !Zero::is_zero(*x)).count(),
        }
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        match &self.entries {
            Entries::Small(v) => {
                Self::from_small(c, r, (0..r * c).map(|k| v[(k % r) * c + k / r]).collect())
            }
            Entries::Big(v) => ExactMatrix {
                rows: c,
                cols: r,
                entries: Entries::Big((0..r * c).map(|k| v[(k % r) * c + k / r].clone()).collect()),
            },
        }
    }

    pub fn neg(&self) -> Self {
        match &self.entries {
            Entries::Small(v) => match v.iter().map(|x| x.checked_neg()).collect() {
                Some(n) => Self::from_small(self.rows, self.cols, n),
                None => Self::from_big(self.rows, self.cols, self.big_entries().into_iter().map(|x| -x).collect()),
            },
            Entries::Big(v) => Self::from_big(self.rows, self.cols, v.iter().map(|x| -x).collect()),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        match &self.entries {
            Entries::Small(v) => v
                .iter()
                .enumerate()
                .all(|(k, &x)| x == i128::from(k / n == k % n)),
            Entries::Big(v) => v.iter().enumerate().all(|(k, x)| {
                if k / n == k % n {
                    x.is_one()
                } else {
                    Zero::is_zero(x)
                }
            }),
        }
    }

    /// Unit upper triangular: ones on the diagonal, zeros below.
    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (0..i).all(|j| Zero::is_zero(&self.get(i, j)))
            })
    }

    pub fn mul(&self, other: &Self, exec: Exec) -> Result<Self, SpectraError> {
        if self.cols != other.rows {
            return Err(SpectraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            if let Some(v) = matmul_kernel(a, b, n, k, m, exec) {
                return Ok(Self::from_small(n, m, v));
            }
        }
        let (a, b) = (self.big_entries(), other.big_entries());
        let v = matmul_kernel(&a, &b, n, k, m, exec).expect("bigint arithmetic cannot overflow");
        Ok(Self::from_big(n, m, v))
    }

    pub fn pow(&self, e: u64, exec: Exec) -> Result<Self, SpectraError> {
        if !self.is_square() {
            return Err(SpectraError::NotSquare(self.rows, self.cols));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, exec)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, exec)?;
            }
        }
        Ok(result)
    }

    /// Inverse of a unit upper triangular matrix by back substitution, one
    /// column per task.
    pub fn unit_upper_inverse(&self, exec: Exec) -> Result<Self, SpectraError> {
        if !self.is_unit_upper_triangular() {
            return Err(SpectraError::NotUnitTriangular);
        }
        let n = self.rows;
        if let Entries::Small(u) = &self.entries {
            if let Some(v) = unit_upper_inverse_kernel(u, n, exec) {
                return Ok(Self::from_small(n, n, v));
            }
        }
        let u = self.big_entries();
        let v = unit_upper_inverse_kernel(&u, n, exec).expect("bigint arithmetic cannot overflow");
        Ok(Self::from_big(n, n, v))
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, SpectraError> {
        if !self.is_square() {
            return Err(SpectraError::NotSquare(self.rows, self.cols));
        }
        if let Entries::Small(v) = &self.entries {
            if let Some(d) = bareiss(v.clone(), self.rows) {
                return Ok(BigInt::from(d));
            }
        }
        Ok(bareiss(self.big_entries(), self.rows).expect("bigint arithmetic cannot overflow"))
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        match (&self.entries, &other.entries) {
            (Entries::Small(a), Entries::Small(b)) => a == b,
            _ => self.big_entries() == other.big_entries(),
        }
    }
}

impl Eq for ExactMatrix {}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn matmul_kernel<T: Scalar>(
    a: &[T],
    b: &[T],
    n: usize,
    k: usize,
    m: usize,
    exec: Exec,
) -> Option<Vec<T>> {
    let rows: Vec<Option<Vec<T>>> = exec.map_range(0..n, |i| {
        let mut out = vec![T::zero(); m];
        for l in 0..k {
            let x = &a[i * k + l];
            if x.is_zero() {
                continue;
            }
            let brow = &b[l * m..(l + 1) * m];
            for (acc, y) in out.iter_mut().zip(brow) {
                if !y.is_zero() {
                    T::mul_acc(acc, x, y)?;
                }
            }
        }
        Some(out)
    });
    let mut flat = Vec::with_capacity(n * m);
    for r in rows {
        flat.extend(r?);
    }
    Some(flat)
}

/// `A v` for the leading `size × size` block of the `stride`-wide matrix `a`.
pub(crate) fn matvec_kernel<T: Scalar>(
    a: &[T],
    stride: usize,
    size: usize,
    v: &[T],
    exec: Exec,
) -> Option<Vec<T>> {
    let row = |i: usize| -> Option<T> {
        let mut acc = T::zero();
        for (x, y) in a[i * stride..i * stride + size].iter().zip(v) {
            if !x.is_zero() && !y.is_zero() {
                T::mul_acc(&mut acc, x, y)?;
            }
        }
        Some(acc)
    };
    // tiny blocks are not worth a fork
    let exec = if size < 64 { Exec::Sequential } else { exec };
    exec.map_range(0..size, row).into_iter().collect()
}

fn unit_upper_inverse_kernel<T: Scalar>(u: &[T], n: usize, exec: Exec) -> Option<Vec<T>> {
    let columns: Vec<Option<Vec<T>>> = exec.map_range(0..n, |j| {
        let mut x = vec![T::zero(); n];
        x[j] = T::one();
        for i in (0..j).rev() {
            let mut s = T::zero();
            for l in i + 1..=j {
                if !x[l].is_zero() && !u[i * n + l].is_zero() {
                    T::mul_acc(&mut s, &u[i * n + l], &x[l])?;
                }
            }
            x[i] = s.neg()?;
        }
        Some(x)
    });
    let mut out = vec![T::zero(); n * n];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col?.into_iter().enumerate() {
            out[i * n + j] = v;
        }
    }
    Some(out)
}

fn bareiss<T: Scalar>(mut a: Vec<T>, n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::one());
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r * n + k].is_zero());
            match swap {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign_flip = !sign_flip;
                }
                None => return Some(T::zero()),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i * n + j].mul(&pivot)?;
                let rhs = a[i * n + k].mul(&a[k * n + j])?;
                a[i * n + j] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        Some(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn multiply_and_power() {
        let theta = m(&[&[0, -1], &[1, -1]]);
        let sq = theta.mul(&theta, Exec::Sequential).unwrap();
        assert_eq!(sq, m(&[&[-1, 1], &[-1, 0]]));
        assert!(theta.pow(3, Exec::Parallel).unwrap().is_identity());
        assert!(!theta.pow(2, Exec::Parallel).unwrap().is_identity());
        assert_eq!(theta.trace(), BigInt::from(-1));
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = i128::MAX / 2 + 1;
        let a = ExactMatrix::from_small(1, 1, vec![big]);
        let sq = a.mul(&a, Exec::Sequential).unwrap();
        assert!(!sq.is_small());
        assert_eq!(sq.get(0, 0), BigInt::from(big) * BigInt::from(big));
        // and results that fit drop back to machine integers
        let back = ExactMatrix::from_fn(1, 1, |_, _| BigInt::from(7));
        assert!(back.is_small());
    }

    #[test]
    fn triangular_inverse() {
        let c = m(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        let inv = c.unit_upper_inverse(Exec::Sequential).unwrap();
        assert_eq!(inv, m(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]));
        assert!(c.mul(&inv, Exec::Sequential).unwrap().is_identity());
        assert!(matches!(
            m(&[&[1, 0], &[1, 1]]).unit_upper_inverse(Exec::Sequential),
            Err(SpectraError::NotUnitTriangular)
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant().unwrap(), BigInt::from(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), BigInt::from(-1));
        assert_eq!(
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).determinant().unwrap(),
            BigInt::from(0)
        );
        assert_eq!(ExactMatrix::identity(5).determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn dimension_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(
            a.mul(&a, Exec::Sequential),
            Err(SpectraError::DimensionMismatch { .. })
        ));
        assert!(matches!(a.pow(2, Exec::Sequential), Err(SpectraError::NotSquare(2, 3))));
        assert_eq!(a.transpose().rows(), 3);
    }
}
