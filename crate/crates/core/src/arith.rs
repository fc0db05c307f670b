//! Number-theoretic primitives and the integer sequences built on them.
//!
//! * `c_n = binom(2n, n) / (n + 1)`, the Catalan numbers;
//! * `λ(n) = (-1)^{binom(n,2)} binom(n - 1, ⌈(n - 1)/2⌉)`;
//! * `a_n = (1/2n) Σ_{d|n} μ(n/d) binom(2d, d)`;
//! * `b_n = (1/n) Σ_{d|n} μ(d) λ(n/d)`;
//! * `b'_n = b_n` for odd `n`, `-b_n - b_{n/2}` for even `n`.
//!
//! The divisions in `a_n` and `b_n` are carried out exactly; a nonzero
//! remainder is reported as [`ArithError::NonIntegerResult`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{sequence}({n}) is not an integer: {numerator}/{denominator}")]
    NonIntegerResult {
        sequence: SequenceKind,
        n: u64,
        numerator: BigInt,
        denominator: BigInt,
    },
    #[error("{sequence}({n}) = {value} violates positivity")]
    NotPositive {
        sequence: SequenceKind,
        n: u64,
        value: BigInt,
    },
    #[error("{0}(0) is undefined; indices start at 1")]
    ZeroIndex(SequenceKind),
    #[error("unknown sequence kind `{0}`")]
    UnknownKind(String),
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k.min(n - k)))
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

pub fn catalan(n: u64) -> BigInt {
    central_binomial(n) / BigInt::from(n + 1)
}

pub fn lambda_val(n: u64) -> BigInt {
    assert!(n >= 1, "lambda_val: n must be positive");
    let m = n - 1;
    // binom(n, 2) mod 2
    let negative = (n * (n - 1) / 2) % 2 == 1;
    let magnitude = binomial(m, m.div_ceil(2));
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

fn exact_quotient(
    sequence: SequenceKind,
    n: u64,
    numerator: BigInt,
    denominator: BigInt,
) -> Result<BigInt, ArithError> {
    let (q, r) = numerator.div_rem(&denominator);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(ArithError::NonIntegerResult {
            sequence,
            n,
            numerator,
            denominator,
        })
    }
}

pub fn a_val(n: u64) -> Result<BigInt, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroIndex(SequenceKind::A));
    }
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|d| central_binomial(d) * mobius(n / d))
        .sum();
    let value = exact_quotient(SequenceKind::A, n, sum, BigInt::from(2 * n))?;
    if !value.is_positive() {
        return Err(ArithError::NotPositive {
            sequence: SequenceKind::A,
            n,
            value,
        });
    }
    Ok(value)
}

pub fn b_val(n: u64) -> Result<BigInt, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroIndex(SequenceKind::B));
    }
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|d| lambda_val(n / d) * mobius(d))
        .sum();
    exact_quotient(SequenceKind::B, n, sum, BigInt::from(n))
}

pub fn bprime_val(n: u64) -> Result<BigInt, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroIndex(SequenceKind::BPrime));
    }
    if n % 2 == 1 {
        b_val(n)
    } else {
        Ok(-b_val(n)? - b_val(n / 2)?)
    }
}

/// The relation between `a_d` and the `b` sequence that makes the two
/// conjectured `θ` polynomials square to the `τ` polynomial:
///
/// * `a_d = -2 b_{2d} - b_d` for odd `d`,
/// * `a_d = 2 b_{2d}` for `d ≡ 0 (mod 4)`,
/// * `a_d = 2 b_{2d} + 2 b_d + b_{d/2}` for `d ≡ 2 (mod 4)`.
pub fn check_crux(d: u64) -> Result<bool, ArithError> {
    if d == 0 {
        return Err(ArithError::ZeroIndex(SequenceKind::A));
    }
    let a = a_val(d)?;
    let b2d = b_val(2 * d)?;
    let rhs = match d % 4 {
        1 | 3 => -(b2d * 2u32) - b_val(d)?,
        0 => b2d * 2u32,
        _ => b2d * 2u32 + b_val(d)? * 2u32 + b_val(d / 2)?,
    };
    Ok(a == rhs)
}

/// Which sequence a [`SequenceTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Catalan,
    A,
    B,
    BPrime,
    Lambda,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 5] = [
        SequenceKind::Catalan,
        SequenceKind::A,
        SequenceKind::B,
        SequenceKind::BPrime,
        SequenceKind::Lambda,
    ];

    /// Catalan numbers start at `c_0`; every other sequence at index 1.
    pub fn first_index(self) -> u64 {
        match self {
            SequenceKind::Catalan => 0,
            _ => 1,
        }
    }

    pub fn value(self, n: u64) -> Result<BigInt, ArithError> {
        match self {
            SequenceKind::Catalan => Ok(catalan(n)),
            SequenceKind::A => a_val(n),
            SequenceKind::B => b_val(n),
            SequenceKind::BPrime => bprime_val(n),
            SequenceKind::Lambda => {
                if n == 0 {
                    Err(ArithError::ZeroIndex(self))
                } else {
                    Ok(lambda_val(n))
                }
            }
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::Catalan => "catalan",
            SequenceKind::A => "a",
            SequenceKind::B => "b",
            SequenceKind::BPrime => "bprime",
            SequenceKind::Lambda => "lambda",
        })
    }
}

impl FromStr for SequenceKind {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "catalan" | "c" => Ok(SequenceKind::Catalan),
            "a" => Ok(SequenceKind::A),
            "b" => Ok(SequenceKind::B),
            "bprime" | "b'" => Ok(SequenceKind::BPrime),
            "lambda" => Ok(SequenceKind::Lambda),
            other => Err(ArithError::UnknownKind(other.to_string())),
        }
    }
}

/// Append-only table of sequence values, indexed from
/// [`SequenceKind::first_index`]. Once built it is only read, so it can be
/// shared freely between threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceTable {
            kind,
            values: Vec::new(),
        }
    }

    /// Table holding every index from the first one up to `upto` inclusive.
    pub fn compute(kind: SequenceKind, upto: u64) -> Result<Self, ArithError> {
        let mut table = SequenceTable::new(kind);
        table.extend_to(upto)?;
        Ok(table)
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Largest index stored, if any.
    pub fn upto(&self) -> Option<u64> {
        (!self.values.is_empty()).then(|| self.kind.first_index() + self.values.len() as u64 - 1)
    }

    pub fn extend_to(&mut self, upto: u64) -> Result<(), ArithError> {
        let mut next = self.kind.first_index() + self.values.len() as u64;
        while next <= upto {
            self.values.push(self.kind.value(next)?);
            next += 1;
        }
        Ok(())
    }

    pub fn get(&self, n: u64) -> Option<&BigInt> {
        n.checked_sub(self.kind.first_index())
            .and_then(|i| self.values.get(i as usize))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `(index, value)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        let first = self.kind.first_index();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (first + i as u64, v))
    }
}

/// The sign of `b_n` compared against the sign of `λ(n)`; `None` when they
/// agree over the whole range, otherwise the first index where they differ.
pub fn first_sign_mismatch(range: std::ops::RangeInclusive<u64>) -> Result<Option<u64>, ArithError> {
    for n in range {
        if b_val(n)?.signum() != lambda_val(n).signum() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    fn brute_mobius(n: u64) -> i32 {
        // squarefree test and prime count by naive scanning
        let mut m = n;
        let mut count = 0;
        for p in 2..=n {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                count += 1;
            }
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(9), BigInt::from(4862));
    }

    #[test]
    fn mobius_and_phi_against_brute_force() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
        for n in 1..=300 {
            assert_eq!(mobius(n), brute_mobius(n), "mu({n})");
            assert_eq!(euler_phi(n), brute_phi(n), "phi({n})");
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_val(1), BigInt::from(1));
        assert_eq!(lambda_val(3), BigInt::from(-2));
        assert_eq!(lambda_val(4), BigInt::from(3));
    }

    #[test]
    fn a_sequence_matches_published_terms() {
        let got: Vec<_> = (1..=10).map(|n| a_val(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 1, 3, 8, 25, 75, 245, 800, 2700, 9225]));
    }

    #[test]
    fn b_sequences_match_published_terms() {
        let b: Vec<_> = (1..=14).map(|n| b_val(n).unwrap()).collect();
        assert_eq!(
            b,
            ints(&[1, -1, -1, 1, 1, -1, -3, 4, 8, -13, -23, 39, 71, -121])
        );
        let bp: Vec<_> = (1..=14).map(|n| bprime_val(n).unwrap()).collect();
        assert_eq!(
            bp,
            ints(&[1, 0, -1, 0, 1, 2, -3, -5, 8, 12, -23, -38, 71, 124])
        );
    }

    #[test]
    fn crux_examples() {
        assert!(check_crux(2).unwrap());
        assert!(check_crux(3).unwrap());
        assert!(check_crux(4).unwrap());
    }

    #[test]
    fn zero_index_is_rejected() {
        assert!(matches!(a_val(0), Err(ArithError::ZeroIndex(_))));
        assert!(matches!(b_val(0), Err(ArithError::ZeroIndex(_))));
        assert!(SequenceKind::Lambda.value(0).is_err());
    }

    #[test]
    fn exact_quotient_flags_remainder() {
        let err = exact_quotient(SequenceKind::A, 5, BigInt::from(7), BigInt::from(2)).unwrap_err();
        assert!(matches!(err, ArithError::NonIntegerResult { n: 5, .. }));
    }

    #[test]
    fn binomial_beyond_u64() {
        // binom(68, 34) does not fit in 64 bits
        let big = central_binomial(34);
        assert!(big > BigInt::from(u64::MAX));
        assert_eq!(catalan(34) * BigInt::from(35), big);
    }

    #[test]
    fn table_is_append_only_and_indexed() {
        let mut t = SequenceTable::compute(SequenceKind::Catalan, 4).unwrap();
        assert_eq!(t.values(), &ints(&[1, 1, 2, 5, 14])[..]);
        let before = t.values().to_vec();
        t.extend_to(6).unwrap();
        assert_eq!(&t.values()[..5], &before[..]);
        assert_eq!(t.get(6), Some(&BigInt::from(132)));
        assert_eq!(t.upto(), Some(6));
        let a = SequenceTable::compute(SequenceKind::A, 3).unwrap();
        assert_eq!(a.get(0), None);
        assert_eq!(a.get(3), Some(&BigInt::from(3)));
        assert_eq!("bprime".parse::<SequenceKind>().unwrap(), SequenceKind::BPrime);
        assert!("zeta".parse::<SequenceKind>().is_err());
    }
}
