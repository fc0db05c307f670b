//! Characters of the cyclic modules `M_{n,d} = Q[t]/(t^d - 1)` of `C_n` and
//! their induction to the symmetric group `S_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{a_val, catalan, central_binomial, divisors, euler_phi, ArithError};
use crate::spectra::{tau_traces, SpectraError};
use crate::symfunc::{Partition, PowerSumPoly, SchurExpansion, SymError};
use crate::{Exec, Limits};

#[derive(Debug, Error)]
pub enum CharacterError {
    #[error("{d} does not divide {n}")]
    NotADivisor { n: u64, d: u64 },
    #[error("the cyclic group order must be positive")]
    ZeroOrder,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Symfunc(#[from] SymError),
}

/// A class function on `C_n = <t>`: `values[k] = χ(t^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCharacter {
    n: u64,
    values: Vec<BigInt>,
}

impl CyclicCharacter {
    pub fn zero(n: u64) -> Self {
        CyclicCharacter {
            n,
            values: vec![BigInt::zero(); n as usize],
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn dimension(&self) -> &BigInt {
        &self.values[0]
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &BigInt, other: &CyclicCharacter) {
        assert_eq!(self.n, other.n, "characters of different groups");
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            *x += c * y;
        }
    }
}

fn check_divisor(n: u64, d: u64) -> Result<(), CharacterError> {
    if n == 0 {
        return Err(CharacterError::ZeroOrder);
    }
    if d == 0 || !n.is_multiple_of(d) {
        return Err(CharacterError::NotADivisor { n, d });
    }
    Ok(())
}

/// `χ_{n,d}(t^k) = d` if `d | k`, else 0.
pub fn m_nd_character(n: u64, d: u64) -> Result<CyclicCharacter, CharacterError> {
    check_divisor(n, d)?;
    let values = (0..n)
        .map(|k| if k % d == 0 { BigInt::from(d) } else { BigInt::zero() })
        .collect();
    Ok(CyclicCharacter { n, values })
}

/// `χ'_{n,d} = (d/n) Σ_{ℓ | n/d} φ(ℓ) p_ℓ^{n/ℓ}`.
pub fn induce_to_symmetric(n: u64, d: u64) -> Result<PowerSumPoly, CharacterError> {
    check_divisor(n, d)?;
    let terms = divisors(n / d).into_iter().map(|l| {
        let c = BigRational::new(BigInt::from(d * euler_phi(l)), BigInt::from(n));
        (Partition::rectangle(l as u32, (n / l) as usize), c)
    });
    Ok(PowerSumPoly::from_terms(terms, n as usize))
}

/// Linear independence of `χ'_{n,d}`, `d | n`. With rows `d` and columns
/// `e = n/ℓ` (the monomial `p_ℓ^{n/ℓ}`), both in increasing order, the
/// coefficient matrix must be upper triangular with a nonzero diagonal. Its
/// rank is also computed by elimination as a cross-check.
pub fn injectivity_check(n: u64) -> bool {
    let ds = divisors(n);
    let matrix: Vec<Vec<BigRational>> = ds
        .iter()
        .map(|&d| {
            let chi = induce_to_symmetric(n, d).expect("d divides n");
            ds.iter()
                .map(|&e| chi.coeff(&Partition::rectangle((n / e) as u32, e as usize)))
                .collect()
        })
        .collect();
    let k = ds.len();
    let triangular = (0..k).all(|i| {
        !matrix[i][i].is_zero() && (0..i).all(|j| matrix[i][j].is_zero())
    });
    triangular && rank(matrix) == k
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Both sides of `Σ_{d|n} a_d χ'_{n,d} = (1/2n) Σ_{d|n} φ(d) binom(2n/d, n/d) p_d^{n/d}`.
pub fn module_identity_sides(n: u64) -> Result<(PowerSumPoly, PowerSumPoly), CharacterError> {
    if n == 0 {
        return Err(CharacterError::ZeroOrder);
    }
    let trunc = n as usize;
    let mut left = PowerSumPoly::zero(trunc);
    for d in divisors(n) {
        let chi = induce_to_symmetric(n, d)?;
        left = left.checked_add(&chi.scale(&BigRational::from_integer(a_val(d)?)))?;
    }
    let right = PowerSumPoly::from_terms(
        divisors(n).into_iter().map(|d| {
            let c = BigRational::new(central_binomial(n / d) * euler_phi(d), BigInt::from(2 * n));
            (Partition::rectangle(d as u32, (n / d) as usize), c)
        }),
        trunc,
    );
    Ok((left, right))
}

pub fn verify_module_identity(n: u64) -> Result<bool, CharacterError> {
    let (left, right) = module_identity_sides(n)?;
    Ok(left == right)
}

/// `2 c_{n-1} χ_{n,n} - Σ_{d|n} a_d χ_{n,d}`, the character of the cyclic
/// action on trees with `n - 1` internal nodes.
pub fn dend_cyclic_character(n: u64) -> Result<CyclicCharacter, CharacterError> {
    if n == 0 {
        return Err(CharacterError::ZeroOrder);
    }
    let mut chi = CyclicCharacter::zero(n);
    chi.add_scaled(&(catalan(n - 1) * 2u32), &m_nd_character(n, n)?);
    for d in divisors(n) {
        chi.add_scaled(&-a_val(d)?, &m_nd_character(n, d)?);
    }
    Ok(chi)
}

/// Result of reconciling the cyclic character with the matrix `τ`.
#[derive(Clone, Debug)]
pub struct DendConsistency {
    pub n: u64,
    pub character: CyclicCharacter,
    /// `tr(τ^k)`, present when the lattice fits within the limits.
    pub traces: Option<Vec<BigInt>>,
}

impl DendConsistency {
    pub fn dimension_matches(&self) -> bool {
        *self.character.dimension() == catalan(self.n - 1)
    }

    pub fn traces_match(&self) -> Option<bool> {
        self.traces.as_ref().map(|t| t == self.character.values())
    }

    pub fn holds(&self) -> bool {
        self.dimension_matches() && self.traces_match().unwrap_or(true)
    }
}

/// Character values are integers by construction; checks the dimension and,
/// for `n ≥ 2` within `limits`, the traces of the powers of `τ`.
pub fn dend_consistency(n: u64, limits: &Limits, exec: Exec) -> Result<DendConsistency, CharacterError> {
    let character = dend_cyclic_character(n)?;
    let fits = n >= 2
        && catalan(n - 1) <= BigInt::from(limits.max_dim_traces)
        && (n as usize - 1) <= limits.max_internal_nodes;
    let traces = if fits {
        Some(tau_traces(n as usize, limits, exec)?)
    } else {
        None
    };
    Ok(DendConsistency {
        n,
        character,
        traces,
    })
}

/// Schur expansion of `χ'_{n,n} - χ'_{n,1}`.
pub fn dias_character(n: u64, limits: &Limits, exec: Exec) -> Result<SchurExpansion, CharacterError> {
    let diff = induce_to_symmetric(n, n)?.checked_sub(&induce_to_symmetric(n, 1)?)?;
    Ok(diff.to_schur(n as usize, limits.max_schur_degree, exec)?)
}

/// `χ'_{n,n} = p_1^n`.
pub fn regular_is_p1_power(n: u64) -> bool {
    let expected = PowerSumPoly::monomial(Partition::rectangle(1, n as usize), BigRational::one(), n as usize);
    induce_to_symmetric(n, n).is_ok_and(|chi| chi == expected)
}
