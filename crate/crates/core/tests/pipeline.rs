//! End-to-end invariants of the lattice → matrix → characteristic polynomial
//! pipeline, with oracles computed independently of the code under test.

use dendcox::arith::{a_val, b_val, bprime_val, catalan, divisors};
use dendcox::characters::dend_consistency;
use dendcox::spectra::{
    build_matrix, charpoly_direct, charpoly_finite_order, conjecture_form, coxeter_inverse,
    coxeter_matrix, tau_matrix, theorem_form, ExactMatrix, IntPolynomial, MatrixKind,
};
use dendcox::tamari::{build_lattice, Tree};
use dendcox::{Exec, Limits};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn limits() -> Limits {
    Limits::default()
}

/// Transitive closure of the rotation relation by naive fixpoint iteration,
/// independent of the lattice's own bitset closure.
fn closure_oracle(n_leaves: usize) -> Vec<Vec<bool>> {
    let lat = build_lattice(n_leaves, &limits()).unwrap();
    let idx = |t: &Tree| lat.elements().iter().position(|e| e == t).unwrap();
    let k = lat.len();
    let mut r = vec![vec![false; k]; k];
    for (i, t) in lat.elements().iter().enumerate() {
        r[i][i] = true;
        for c in t.covers() {
            r[i][idx(&c)] = true;
        }
    }
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if !r[i][j] && (0..k).any(|m| r[i][m] && r[m][j]) {
                    r[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

#[test]
fn lattice_matches_closure_oracle() {
    for n in 2..=6 {
        let lat = build_lattice(n, &limits()).unwrap();
        let oracle = closure_oracle(n);
        for (i, row) in oracle.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(lat.leq(i, j), want, "n={n} ({i},{j})");
            }
        }
        assert_eq!(BigInt::from(lat.len()), catalan(n as u64 - 1));
    }
}

#[test]
fn lattice_sizes_and_extremes() {
    let wide = Limits {
        max_dim_traces: 4862,
        ..limits()
    };
    for n in 2..=10 {
        let lat = build_lattice(n, &wide).unwrap();
        assert_eq!(BigInt::from(lat.len()), catalan(n as u64 - 1));
        // the combs sit at the ends of the linear extension
        assert_eq!(lat.elements()[0], Tree::left_comb(n - 1));
        assert_eq!(lat.elements()[lat.len() - 1], Tree::right_comb(n - 1));
        for &(i, j) in lat.covers() {
            assert!(i < j);
        }
    }
    for n in 2..=7 {
        assert!(build_lattice(n, &limits()).unwrap().is_lattice());
    }
}

#[test]
fn order_matrix_is_unimodular() {
    for n in 2..=8 {
        let c = build_lattice(n, &limits()).unwrap().order_matrix();
        assert!(c.is_unit_upper_triangular());
        assert_eq!(c.determinant().unwrap(), BigInt::from(1), "n={n}");
    }
}

#[test]
fn finite_orders() {
    for n in 2..=7usize {
        let theta = build_matrix(MatrixKind::Theta, n, &limits(), Exec::Parallel).unwrap();
        assert!(theta.pow(2 * n as u64, Exec::Parallel).unwrap().is_identity(), "θ^2n, n={n}");
        let tau = tau_matrix(n, &limits(), Exec::Parallel).unwrap();
        assert!(tau.pow(n as u64, Exec::Parallel).unwrap().is_identity(), "τ^n, n={n}");
    }
}

#[test]
fn small_matrix_examples() {
    let l = limits();
    let t3 = build_matrix(MatrixKind::Theta, 3, &l, Exec::Sequential).unwrap();
    assert_eq!(t3, ExactMatrix::from_rows(&[vec![0, -1], vec![1, -1]]));
    let t4 = build_matrix(MatrixKind::Theta, 4, &l, Exec::Sequential).unwrap();
    assert!(t4.pow(8, Exec::Sequential).unwrap().is_identity());
    let tau4 = build_matrix(MatrixKind::Tau, 4, &l, Exec::Sequential).unwrap();
    let fin = charpoly_finite_order(&tau4, 4, Exec::Sequential).unwrap();
    assert_eq!(fin.poly, IntPolynomial::from_i64(&[1, 1, 2, 2, 1, 1]));
    assert_eq!(charpoly_direct(&tau4, Exec::Sequential).unwrap(), fin.poly);
}

#[test]
fn two_methods_agree() {
    for n in 2..=7usize {
        for kind in [MatrixKind::Theta, MatrixKind::Tau] {
            let m = build_matrix(kind, n, &limits(), Exec::Parallel).unwrap();
            let direct = charpoly_direct(&m, Exec::Parallel).unwrap();
            let traces = charpoly_finite_order(&m, kind.order_bound(n), Exec::Parallel).unwrap();
            assert_eq!(direct, traces.poly, "{kind} n={n}");
            assert_eq!(BigInt::from(direct.degree().unwrap()), catalan(n as u64 - 1));
        }
    }
}

#[test]
fn orientation_does_not_change_theta_charpoly() {
    for n in 2..=7usize {
        let lat = build_lattice(n, &limits()).unwrap();
        let th = coxeter_matrix(&lat, Exec::Parallel).unwrap();
        let inv = coxeter_inverse(&lat, Exec::Parallel).unwrap();
        assert_eq!(
            charpoly_direct(&th, Exec::Parallel).unwrap(),
            charpoly_direct(&inv, Exec::Parallel).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn theorem_form_is_division_free() {
    // expand(F) · ∏_{d|n} (t^d-1)^{a_d} = (t^n-1)^{2 c_{n-1}}; the right side
    // has degree 2n·c_{n-1}, so stay small
    for n in 2..=7u64 {
        let mut lhs = theorem_form(n).unwrap().expand().unwrap();
        for d in divisors(n) {
            let a = a_val(d).unwrap().to_u64().unwrap();
            lhs = lhs.mul(&IntPolynomial::t_pow_minus_one(d as usize).pow(a));
        }
        let c = (catalan(n - 1) * 2u32).to_u64().unwrap();
        assert_eq!(lhs, IntPolynomial::t_pow_minus_one(n as usize).pow(c), "n={n}");
    }
}

#[test]
fn degree_identities() {
    for n in 2..=30u64 {
        let c = catalan(n - 1);
        let a_sum: BigInt = divisors(n).iter().map(|&d| a_val(d).unwrap() * d).sum();
        assert_eq!(catalan(n - 1) * (2 * n) - a_sum, c.clone(), "τ degree n={n}");
        let b_sum: BigInt = divisors(2 * n)
            .iter()
            .map(|&d| {
                let v = if n % 2 == 0 { b_val(d) } else { bprime_val(d) };
                v.unwrap() * d
            })
            .sum();
        assert_eq!(catalan(n - 1) * (2 * n) - b_sum, c.clone(), "θ degree n={n}");
        assert_eq!(theorem_form(n).unwrap().degree(), c);
        assert_eq!(conjecture_form(n).unwrap().degree(), c);
    }
}

#[test]
fn character_matches_traces() {
    for n in 1..=8u64 {
        let r = dend_consistency(n, &limits(), Exec::Parallel).unwrap();
        assert!(r.dimension_matches(), "n={n}");
        if n >= 2 {
            assert_eq!(r.traces_match(), Some(true), "n={n}");
        }
    }
}
