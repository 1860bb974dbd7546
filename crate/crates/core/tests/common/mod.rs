#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::Pow;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use subspace_codes::cdc::{hamming_guard, identifying_vector, inverse_identifying_vector, reorder_pairing};
use subspace_codes::gf::FieldCtx;
use subspace_codes::linalg::{gaussian_binomial, subspace_distance, MatGF, Subspace};
use subspace_codes::rankmetric::rank_distribution;

pub const SEED: u64 = 0x5eed_2024;
pub const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(config(cases))
}

pub fn matrix_in(
    qs: &'static [u32],
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = MatGF> {
    (prop::sample::select(qs), rows, cols).prop_flat_map(|(q, r, c)| {
        prop::collection::vec(0..q as u8, r * c)
            .prop_map(move |data| MatGF::from_vec(FieldCtx::get(q).unwrap(), r, c, data).unwrap())
    })
}

pub fn matrix() -> impl Strategy<Value = MatGF> {
    matrix_in(&ORDERS, 1..=6, 1..=7)
}

/// A matrix plus a row operation `row[j] += c * row[i]`.
pub fn matrix_with_op() -> impl Strategy<Value = (MatGF, usize, usize, u8)> {
    matrix().prop_flat_map(|m| {
        let (r, q) = (m.rows(), m.q());
        (Just(m), 0..r, 0..r, 1..q as u8)
    })
}

pub fn rref_idempotent((m, i, j, c): (MatGF, usize, usize, u8)) -> Result<(), TestCaseError> {
    let (e, piv) = m.rref();
    prop_assert!(e.is_rref());
    prop_assert_eq!(e.rref().0, e.clone());
    prop_assert_eq!(piv.len(), m.rank());
    if i != j {
        let mut moved = m.clone();
        let src = MatGF::from_vec(m.field(), 1, m.cols(), m.row(i).to_vec()).unwrap();
        let mut dst = MatGF::from_vec(m.field(), 1, m.cols(), m.row(j).to_vec()).unwrap();
        dst.add_scaled(c, &src);
        moved.set_block(j, 0, &dst);
        prop_assert_eq!(moved.rref().0, e);
    }
    Ok(())
}

pub fn generator_pair() -> impl Strategy<Value = (MatGF, MatGF)> {
    (prop::sample::select(&[2u32, 3][..]), 2..=8usize).prop_flat_map(|(q, n)| {
        (1..=n).prop_flat_map(move |k| {
            let one = move || {
                prop::collection::vec(0..q as u8, k * n)
                    .prop_map(move |d| MatGF::from_vec(FieldCtx::get(q).unwrap(), k, n, d).unwrap())
            };
            (one(), one())
        })
    })
}

pub fn distance_dominates((a, b): (MatGF, MatGF)) -> Result<(), TestCaseError> {
    let (u, v) = (Subspace::from_generators(&a), Subspace::from_generators(&b));
    prop_assume!(u.dim() == a.rows() && v.dim() == b.rows());
    let ds = subspace_distance(&u, &v).unwrap();
    let dh = hamming_guard(&identifying_vector(&u), &identifying_vector(&v)).unwrap();
    let dh_inv = hamming_guard(&inverse_identifying_vector(&u), &inverse_identifying_vector(&v)).unwrap();
    prop_assert!(ds >= dh, "d_S {} < d_H {}", ds, dh);
    prop_assert!(ds >= dh_inv, "d_S {} < inverse d_H {}", ds, dh_inv);
    Ok(())
}

pub fn sizes_and_perm() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<usize>)> {
    (1..=8usize, 0..=3usize).prop_flat_map(|(la, extra)| {
        let lb = la + extra;
        (
            prop::collection::vec(1..1000u32, la),
            prop::collection::vec(1..1000u32, lb),
            Just((0..lb).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

pub fn pairing_dominates((a, b, perm): (Vec<u32>, Vec<u32>, Vec<usize>)) -> Result<(), TestCaseError> {
    let big = |v: &[u32]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    let best = reorder_pairing(&big(&a), &big(&b)).total;
    let other: BigUint = a.iter().zip(&perm).map(|(&x, &j)| BigUint::from(x) * b[j]).sum();
    prop_assert!(best >= other, "{} < {}", best, other);
    Ok(())
}

/// Failures of [n k]_q = [n n-k]_q for every field order and n <= 12.
pub fn gaussian_symmetry_failures() -> Vec<(u32, usize, usize)> {
    let mut bad = Vec::new();
    for q in ORDERS {
        for n in 0..=12 {
            for k in 0..=n {
                if gaussian_binomial(n, k, q).unwrap() != gaussian_binomial(n, n - k, q).unwrap() {
                    bad.push((q, n, k));
                }
            }
        }
    }
    bad
}

/// Failures of the rank-distribution sum identity for q in {2, 3} and m, n <= 6.
pub fn rank_sum_failures() -> (usize, Vec<(u32, usize, usize, usize)>) {
    let (mut checked, mut bad) = (0, Vec::new());
    for q in [2u32, 3] {
        for m in 1..=6 {
            for n in 1..=6 {
                let lo = m.min(n);
                for delta in 1..=lo {
                    let sum: BigUint = (0..=lo).map(|r| rank_distribution(q, m, n, delta, r).unwrap()).sum();
                    let size: BigUint = Pow::pow(BigUint::from(q), (m.max(n) * (lo - delta + 1)) as u32);
                    checked += 1;
                    if sum != size {
                        bad.push((q, m, n, delta));
                    }
                }
            }
        }
    }
    (checked, bad)
}
