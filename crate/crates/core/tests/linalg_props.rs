use pathcomplete::linalg::{
    definiteness, int, is_positive_definite, mat_mul, mat_vec, ratio, spectral_radius_estimate, Matrix, Scalar,
    Vector,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-6i64..=6, 1i64..=4), rows * cols).prop_map(move |entries| {
        let data = entries.into_iter().map(|(n, d)| ratio(n, d)).collect();
        Matrix::new(rows, cols, data).unwrap()
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| rational_matrix(n, n))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn permutation_matrix(p: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m.set(i, j, int(1));
    }
    m
}

/// Sum of all principal minors of size `k`, by cofactor expansion along rows.
fn principal_minor_sum(m: &Matrix, k: usize) -> Scalar {
    fn det_rows(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
        if rows.is_empty() {
            return int(1);
        }
        let mut total = Scalar::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = m.get(rows[0], c) * det_rows(m, &rows[1..], &rest);
            if pos % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let n = m.rows();
    let mut total = Scalar::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            total += det_rows(m, &idx, &idx);
        }
    }
    total
}

/// A real-rooted characteristic polynomial has only positive roots iff its
/// coefficients alternate strictly in sign, i.e. every principal minor sum
/// is positive.
fn pd_by_characteristic_polynomial(m: &Matrix) -> bool {
    (1..=m.rows()).all(|k| principal_minor_sum(m, k).is_positive())
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, int(v[i * n + j]));
                m.set(j, i, int(v[i * n + j]));
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        (a, b, c) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(p, q, r, s)| (rational_matrix(p, q), rational_matrix(q, r), rational_matrix(r, s)))
    ) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn matrix_vector_product_matches_column_product(a in square(4)) {
        let x: Vec<Scalar> = (0..a.cols()).map(|i| ratio(i as i64 - 1, 3)).collect();
        let column = Matrix::new(a.cols(), 1, x.clone()).unwrap();
        let by_matrix = mat_mul(&a, &column).unwrap();
        prop_assert_eq!(mat_vec(&a, &Vector(x)).unwrap().0, by_matrix.entries().to_vec());
    }

    #[test]
    fn radius_is_invariant_under_permutation_similarity(
        (a, p) in (1usize..=4).prop_flat_map(|n| (rational_matrix(n, n), permutation(n)))
    ) {
        let pm = permutation_matrix(&p);
        let conjugated = mat_mul(&mat_mul(&pm, &a).unwrap(), &pm.transpose()).unwrap();
        let r1 = spectral_radius_estimate(&a, 40).unwrap();
        let r2 = spectral_radius_estimate(&conjugated, 40).unwrap();
        prop_assert!((r1 - r2).abs() <= 1e-9 * r1.max(1.0), "{} vs {}", r1, r2);
    }

    #[test]
    fn cycle_digraph_has_radius_one((n, k, p) in (1usize..=6).prop_flat_map(|n| (Just(n), 1..=n, permutation(n)))) {
        // the k-cycle p[0] → p[1] → … → p[k-1] → p[0] inside an n×n zero matrix
        let mut m = Matrix::zeros(n, n);
        for i in 0..k {
            m.set(p[i], p[(i + 1) % k], int(1));
        }
        let r = spectral_radius_estimate(&m, 40).unwrap();
        prop_assert!((r - 1.0).abs() <= 1e-9, "{}", r);
    }

    #[test]
    fn positive_definiteness_matches_characteristic_polynomial(m in (2usize..=3).prop_flat_map(symmetric)) {
        let oracle = pd_by_characteristic_polynomial(&m);
        prop_assert_eq!(is_positive_definite(&m, 1e-9).unwrap(), oracle);
        prop_assert_eq!(definiteness(&m).unwrap().positive_definite, oracle);
    }

    #[test]
    fn semidefiniteness_matches_gram_construction(v in prop::collection::vec(-3i64..=3, 6)) {
        // BᵀB is PSD, and singular because B has only two rows
        let b = Matrix::new(2, 3, v.into_iter().map(int).collect()).unwrap();
        let gram = mat_mul(&b.transpose(), &b).unwrap();
        let d = definiteness(&gram).unwrap();
        prop_assert!(d.positive_semidefinite);
        prop_assert!(!d.positive_definite);
        prop_assert!(!d.min_pivot.is_negative());
    }
}

#[test]
fn indefinite_matrix_reports_negative_pivot() {
    let m = Matrix::from_i64(&[&[1, 2], &[2, 1]]);
    let d = definiteness(&m).unwrap();
    assert!(!d.positive_semidefinite);
    assert!(d.min_pivot.is_negative());
    assert!(!pd_by_characteristic_polynomial(&m));
}
