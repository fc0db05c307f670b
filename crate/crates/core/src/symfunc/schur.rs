//! Power-sum to Schur transition via the Murnaghan–Nakayama rule.
//!
//! `p_μ = Σ_λ χ^λ(μ) s_λ`, so the Schur coefficient of `s_λ` in `Σ c_μ p_μ`
//! is `Σ_μ c_μ χ^λ(μ)`. Characters are computed by removing border strips of
//! length `μ_1, μ_2, ...` in turn; on the beta-set of `λ` a border strip of
//! length `r` is a bead moved from `b` to an empty `b - r`, with sign
//! `(-1)^{beads strictly between}`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Partition, PowerSumPoly, SymError};
use crate::Exec;

/// Memo for a fixed cycle type `μ`: the remaining strip lengths are
/// determined by the weight of the remaining shape, so `λ` alone is the key.
struct StripMemo<'a> {
    mu: &'a [u32],
    memo: HashMap<Partition, i64>,
}

impl<'a> StripMemo<'a> {
    fn new(mu: &'a Partition) -> Self {
        StripMemo {
            mu: mu.parts(),
            memo: HashMap::new(),
        }
    }

    fn chi(&mut self, lambda: &Partition, depth: usize) -> i64 {
        if depth == self.mu.len() {
            return i64::from(lambda.is_empty());
        }
        if let Some(&v) = self.memo.get(lambda) {
            return v;
        }
        let r = self.mu[depth];
        let len = lambda.len() as u32;
        let beta: Vec<u32> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| p + (len - 1 - i as u32))
            .collect();
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let shape = Partition::new(
                moved
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| x - (len - 1 - j as u32))
                    .collect(),
            );
            let v = self.chi(&shape, depth + 1);
            total += if crossed % 2 == 0 { v } else { -v };
        }
        self.memo.insert(lambda.clone(), total);
        total
    }
}

/// The irreducible character `χ^λ` of the symmetric group evaluated on the
/// class of cycle type `μ`. Zero when the weights differ.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.weight() != mu.weight() {
        return 0;
    }
    StripMemo::new(mu).chi(lambda, 0)
}

/// Sign classification of a Schur expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurSign {
    Zero,
    Positive,
    Negative,
    Mixed,
}

/// `Σ c_λ s_λ` in a single degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpansion {
    degree: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SchurExpansion {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Integral and nonnegative: the character of a genuine module.
    pub fn is_module_character(&self) -> bool {
        self.is_integral() && self.is_nonnegative()
    }

    pub fn sign(&self) -> SchurSign {
        let pos = self.coeffs.values().any(|c| c.is_positive());
        let neg = self.coeffs.values().any(|c| c.is_negative());
        match (pos, neg) {
            (false, false) => SchurSign::Zero,
            (true, false) => SchurSign::Positive,
            (false, true) => SchurSign::Negative,
            (true, true) => SchurSign::Mixed,
        }
    }

    /// Dimension of the (virtual) module: `Σ c_λ f^λ`.
    pub fn dimension(&self) -> BigRational {
        let ones = Partition::rectangle(1, self.degree);
        self.coeffs.iter().fold(BigRational::zero(), |acc, (l, c)| {
            acc + c * BigRational::from_integer(BigInt::from(mn_character(l, &ones)))
        })
    }
}

impl PowerSumPoly {
    /// Schur expansion of the degree-`n` component. Each cycle type in the
    /// support gets its own memo table, and those run in parallel under
    /// `exec`.
    pub fn to_schur(
        &self,
        n: usize,
        max_degree: usize,
        exec: Exec,
    ) -> Result<SchurExpansion, SymError> {
        if n > max_degree {
            return Err(SymError::DegreeTooLarge {
                degree: n,
                max: max_degree,
            });
        }
        if n > self.truncation() {
            return Err(SymError::AboveTruncation {
                degree: n,
                truncation: self.truncation(),
            });
        }
        let shapes = Partition::all(n);
        let support: Vec<(Partition, BigRational)> = self
            .terms()
            .filter(|(l, _)| l.weight() == n)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        let columns: Vec<Vec<i64>> = exec.map_slice(&support, |(mu, _)| {
            let mut memo = StripMemo::new(mu);
            shapes.iter().map(|l| memo.chi(l, 0)).collect()
        });
        let mut coeffs = BTreeMap::new();
        for (i, lambda) in shapes.iter().enumerate() {
            let c = support
                .iter()
                .zip(&columns)
                .fold(BigRational::zero(), |acc, ((_, c), col)| {
                    acc + c * BigRational::from_integer(BigInt::from(col[i]))
                });
            if !c.is_zero() {
                coeffs.insert(lambda.clone(), c);
            }
        }
        Ok(SchurExpansion { degree: n, coeffs })
    }
}
