//! Cross-checks between the two independent pipelines: graded dimensions
//! of Nichols algebras (ranks of quantum symmetrizers on multidegree
//! blocks) against root-system combinatorics (the reflection closure and
//! its real roots).  For tuples of one-dimensional modules with finite
//! Weyl groupoid, the algebra factors through one truncated line per
//! positive root, so the multigraded dimension at `gamma` must equal the
//! number of ways to write `gamma` as a sum of positive roots with each
//! root used fewer times than its truncation height.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use nichols_core::engine::{
    build_scheme, graded_dims, s3_transposition_module, EngineCaps, YdTuple,
};
use nichols_core::exactfield::Cyclotomic;

/// Number of multisets of `roots` summing to `gamma`, with each root used
/// at most `height - 1` times.
fn root_partition_count(roots: &[(Vec<i64>, usize)], gamma: &[i64]) -> usize {
    fn rec(roots: &[(Vec<i64>, usize)], gamma: Vec<i64>, k: usize) -> usize {
        if gamma.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let (root, height) = &roots[k];
        let mut total = 0;
        for used in 0..*height {
            let next: Vec<i64> = gamma
                .iter()
                .zip(root)
                .map(|(g, r)| g - (used as i64) * r)
                .collect();
            if next.iter().any(|&x| x < 0) {
                break;
            }
            total += rec(roots, next, k + 1);
        }
        total
    }
    rec(roots, gamma.to_vec(), 0)
}

/// For a diagonal tuple with finite groupoid, predict every multigraded
/// dimension from the labeled positive roots: a root of degree `beta`
/// with one-dimensional class truncates at the multiplicative order of
/// the self-braiding scalar of its attached module evaluated at `beta`.
fn predicted_dims_for_diagonal(
    tuple: &YdTuple,
    bound: usize,
) -> BTreeMap<Vec<usize>, usize> {
    let caps = EngineCaps::default();
    let build = build_scheme(tuple, &caps).unwrap();
    assert!(build.complete);
    let theta = tuple.theta();

    // self-braiding scalar of the degree-beta root vector: product of
    // q_kl^(b_k b_l) over the exponents of the root
    let q_matrix: Vec<Vec<Cyclotomic>> = (0..theta)
        .map(|k| {
            (0..theta)
                .map(|l| {
                    let deg_k = tuple.module(k).degree(0);
                    let act = tuple.module(l).action_of(deg_k);
                    act.get(0, 0)
                })
                .collect()
        })
        .collect();
    let roots: Vec<(Vec<i64>, usize)> = build.labeled_roots[0]
        .iter()
        .map(|r| {
            let beta = &r.degree;
            let mut q = Cyclotomic::from_int(1);
            for k in 0..theta {
                for l in 0..theta {
                    let e = beta[k] * beta[l];
                    if e > 0 {
                        q = q.mul(&q_matrix[k][l].pow(e as u64));
                    }
                }
            }
            // multiplicative order of q: truncation height of the root line
            let mut height = 1;
            let mut acc = q.clone();
            while !acc.is_one() {
                acc = acc.mul(&q);
                height += 1;
                assert!(height < 1000, "q has finite order");
            }
            (beta.clone(), height)
        })
        .collect();

    let mut out = BTreeMap::new();
    for n in 0..=bound {
        for gamma in nichols_core::engine::tensor::compositions(n, theta) {
            let g: Vec<i64> = gamma.iter().map(|&x| x as i64).collect();
            out.insert(gamma, root_partition_count(&roots, &g));
        }
    }
    out
}

#[test]
fn a2_order5_dims_factor_through_the_root_system() {
    let tuple = nichols_core::engine::diagonal_tuple(5, &[vec![1, -1], vec![0, 1]]).unwrap();
    let computed = graded_dims(&tuple, 4, 20_000).unwrap();
    let predicted = predicted_dims_for_diagonal(&tuple, 4);
    assert_eq!(computed, predicted);
    // spot value: (1,1) is reached by alpha_1 + alpha_2 and by the root
    // alpha_1 + alpha_2 itself
    assert_eq!(computed[&vec![1, 1]], 2);
}

#[test]
fn b2_dims_factor_through_the_root_system() {
    let tuple = nichols_core::engine::diagonal_tuple(4, &[vec![1, 1], vec![1, 2]]).unwrap();
    let computed = graded_dims(&tuple, 4, 20_000).unwrap();
    let predicted = predicted_dims_for_diagonal(&tuple, 4);
    assert_eq!(computed, predicted);
}

#[test]
fn g2_dims_factor_through_the_root_system() {
    let tuple = nichols_core::engine::diagonal_tuple(7, &[vec![1, -3], vec![0, 3]]).unwrap();
    let computed = graded_dims(&tuple, 3, 20_000).unwrap();
    let predicted = predicted_dims_for_diagonal(&tuple, 3);
    assert_eq!(computed, predicted);
    // spot value: (2,1) = a1+a1+a2 = a1+(a1+a2) = (2a1+a2)
    assert_eq!(computed[&vec![2, 1]], 3);
}

#[test]
fn transposition_module_nichols_algebra_is_twelve_dimensional() {
    // the rank-one tuple of the S3 transposition module: graded
    // dimensions 1, 3, 4, 3, 1 and nothing beyond degree 4
    let v = s3_transposition_module().unwrap();
    let tuple = YdTuple::new(vec![Arc::clone(&v)]).unwrap();
    let dims = graded_dims(&tuple, 5, 20_000).unwrap();
    let series: Vec<usize> = (0..=5).map(|n| dims[&vec![n]]).collect();
    assert_eq!(series, vec![1, 3, 4, 3, 1, 0]);
    let total: usize = series.iter().sum();
    assert_eq!(total, 12);
}
