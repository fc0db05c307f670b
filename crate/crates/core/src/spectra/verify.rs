use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;

use super::{
    charpoly_direct, charpoly_finite_order, conjecture_form, theorem_form, ExactMatrix,
    FactoredForm, IntPolynomial, SpectraError,
};
use crate::tamari::{build_lattice, TamariLattice};
use crate::{Exec, Limits};

/// `θ = -C (ᵗC)^{-1}` for the order matrix `C` of the lattice.
pub fn coxeter_matrix(lattice: &TamariLattice, exec: Exec) -> Result<ExactMatrix, SpectraError> {
    let c = lattice.order_matrix();
    let ct_inv = c.unit_upper_inverse(exec)?.transpose();
    Ok(c.mul(&ct_inv, exec)?.neg())
}

/// `θ^{-1} = -ᵗC C^{-1}`.
pub fn coxeter_inverse(lattice: &TamariLattice, exec: Exec) -> Result<ExactMatrix, SpectraError> {
    let c = lattice.order_matrix();
    let c_inv = c.unit_upper_inverse(exec)?;
    Ok(c.transpose().mul(&c_inv, exec)?.neg())
}

/// `τ = (-1)^{n+1} θ²` on the lattice with `n` leaves; fails unless `τ^n = I`.
pub fn tau_matrix(n: usize, limits: &Limits, exec: Exec) -> Result<ExactMatrix, SpectraError> {
    let lattice = build_lattice(n, limits)?;
    let theta = coxeter_matrix(&lattice, exec)?;
    tau_from_theta(&theta, n, exec)
}

fn tau_from_theta(theta: &ExactMatrix, n: usize, exec: Exec) -> Result<ExactMatrix, SpectraError> {
    let sq = theta.mul(theta, exec)?;
    let tau = if n % 2 == 1 { sq } else { sq.neg() };
    if !tau.pow(n as u64, exec)?.is_identity() {
        return Err(SpectraError::OrderCheckFailed { n: n as u64 });
    }
    Ok(tau)
}

/// `tr(τ^k)` for `k = 0..n`.
pub fn tau_traces(n: usize, limits: &Limits, exec: Exec) -> Result<Vec<BigInt>, SpectraError> {
    let tau = tau_matrix(n, limits, exec)?;
    Ok(charpoly_finite_order(&tau, n as u64, exec)?.traces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Theta,
    Tau,
}

impl MatrixKind {
    /// Exponent known to annihilate the matrix: `2n` for `θ`, `n` for `τ`.
    pub fn order_bound(self, n: usize) -> u64 {
        match self {
            MatrixKind::Theta => 2 * n as u64,
            MatrixKind::Tau => n as u64,
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Theta => "theta",
            MatrixKind::Tau => "tau",
        })
    }
}

pub fn build_matrix(
    kind: MatrixKind,
    n: usize,
    limits: &Limits,
    exec: Exec,
) -> Result<ExactMatrix, SpectraError> {
    let lattice = build_lattice(n, limits)?;
    let theta = coxeter_matrix(&lattice, exec)?;
    match kind {
        MatrixKind::Theta => Ok(theta),
        MatrixKind::Tau => tau_from_theta(&theta, n, exec),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Traces,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Traces => "traces",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Theorem,
    Conjecture,
}

#[derive(Clone, Debug)]
pub struct MethodResult {
    pub method: Method,
    pub poly: IntPolynomial,
    pub millis: u128,
}

/// First coefficient where a computed polynomial disagrees with the
/// predicted one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub method: Method,
    pub index: usize,
    pub expected: BigInt,
    pub actual: BigInt,
}

#[derive(Clone, Debug)]
pub struct CharpolyReport {
    pub claim: Claim,
    pub n: usize,
    pub dim: usize,
    pub expected_form: FactoredForm,
    pub expected: IntPolynomial,
    pub results: Vec<MethodResult>,
    /// Cyclotomic multiplicities found by the trace method.
    pub multiplicities: BTreeMap<u64, BigInt>,
    /// Measured multiplicative order of the matrix.
    pub matrix_order: u64,
    pub mismatch: Option<Mismatch>,
}

impl CharpolyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `Φ_3 Φ_4^2`-style rendering of cyclotomic multiplicities.
pub fn cyclotomic_string(multiplicities: &BTreeMap<u64, BigInt>) -> String {
    if multiplicities.is_empty() {
        return "1".to_string();
    }
    multiplicities
        .iter()
        .map(|(d, m)| {
            if *m == BigInt::from(1) {
                format!("Φ_{d}")
            } else {
                format!("Φ_{d}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Characteristic polynomial of `τ` on `n` leaves against the predicted
/// factored form. The trace method always runs; Berkowitz runs when the
/// dimension is within `limits.max_dim_direct`.
pub fn verify_theorem(n: usize, limits: &Limits, exec: Exec) -> Result<CharpolyReport, SpectraError> {
    let form = theorem_form(n as u64)?;
    run_claim(Claim::Theorem, MatrixKind::Tau, form, n, limits, exec)
}

/// Characteristic polynomial of `θ` on `n` leaves against the conjectured
/// factored form.
pub fn verify_conjecture(
    n: usize,
    limits: &Limits,
    exec: Exec,
) -> Result<CharpolyReport, SpectraError> {
    let form = conjecture_form(n as u64)?;
    run_claim(Claim::Conjecture, MatrixKind::Theta, form, n, limits, exec)
}

fn run_claim(
    claim: Claim,
    kind: MatrixKind,
    expected_form: FactoredForm,
    n: usize,
    limits: &Limits,
    exec: Exec,
) -> Result<CharpolyReport, SpectraError> {
    let expected = expected_form.expand()?;
    let m = build_matrix(kind, n, limits, exec)?;
    let mut results = Vec::new();

    let start = Instant::now();
    let fin = charpoly_finite_order(&m, kind.order_bound(n), exec)?;
    results.push(MethodResult {
        method: Method::Traces,
        poly: fin.poly,
        millis: start.elapsed().as_millis(),
    });

    if m.rows() <= limits.max_dim_direct {
        let start = Instant::now();
        let poly = charpoly_direct(&m, exec)?;
        results.push(MethodResult {
            method: Method::Direct,
            poly,
            millis: start.elapsed().as_millis(),
        });
    }

    let mismatch = results.iter().find_map(|r| {
        r.poly.first_difference(&expected).map(|index| Mismatch {
            method: r.method,
            index,
            expected: expected.coeff(index),
            actual: r.poly.coeff(index),
        })
    });
    Ok(CharpolyReport {
        claim,
        n,
        dim: m.rows(),
        expected_form,
        expected,
        results,
        multiplicities: fin.multiplicities,
        matrix_order: fin.order,
        mismatch,
    })
}
