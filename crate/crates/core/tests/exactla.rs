use compat_linf::exactla::*;
use num_traits::Zero;
use proptest::prelude::*;

/// Plain dense Gauss-Jordan elimination over the rationals.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn matrix(rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(&refs)
}

fn transpose(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

#[test]
fn scalar_parsing() {
    assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
    assert_eq!(parse_scalar(" -3 ").unwrap(), int(-3));
    assert_eq!(parse_scalar("6/-4").unwrap(), frac(-3, 2));
    assert!(parse_scalar("1/0").unwrap_err().to_string().contains("zero denominator"));
    assert!(parse_scalar("x").is_err());
    assert_eq!(format_scalar(&frac(-6, 4)), "-3/2");
    assert_eq!(format_scalar(&int(7)), "7");
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&matrix(&[vec![1, 2], vec![2, 4]])), 1);
    assert_eq!(rank(&matrix(&[vec![0, 0], vec![0, 0]])), 0);
    assert_eq!(rank(&Matrix::identity(4)), 4);
    // large entries stay exact
    let big = Matrix::from_rows(&[vec![frac(1, 3), frac(10_000_000, 7)], vec![frac(2, 3), frac(20_000_000, 7)]]);
    assert_eq!(rank(&big), 1);
}

#[test]
fn solve_examples() {
    let m = matrix(&[vec![1, 1], vec![1, -1]]);
    let x = solve(&m, &[int(3), int(1)]).unwrap();
    assert_eq!(x, vec![int(2), int(1)]);
    let singular = matrix(&[vec![1, 2], vec![2, 4]]);
    assert!(solve(&singular, &[int(1), int(0)]).is_none());
    assert!(solve(&singular, &[int(1), int(2)]).is_some());
}

proptest! {
    #[test]
    fn rank_matches_dense_elimination(rows in small_matrix()) {
        prop_assert_eq!(rank(&matrix(&rows)), dense_rank(&rows));
    }

    #[test]
    fn rank_of_transpose(rows in small_matrix()) {
        prop_assert_eq!(rank(&matrix(&rows)), rank(&matrix(&transpose(&rows))));
    }

    #[test]
    fn kernel_is_a_basis_of_the_null_space(rows in small_matrix()) {
        let m = matrix(&rows);
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len(), m.cols() - rank(&m));
        for k in &ker {
            prop_assert!(is_zero_vec(&m.mul_vec(k)));
        }
        if !ker.is_empty() {
            prop_assert_eq!(rank(&Matrix::from_rows(&ker)), ker.len());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(rows in small_matrix(), x in prop::collection::vec(-3i64..=3, 5)) {
        let m = matrix(&rows);
        let x: Vec<Scalar> = x[..m.cols()].iter().map(|&v| int(v)).collect();
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn scalar_format_round_trip(p in -1000i64..1000, q in 1i64..50) {
        let x = frac(p, q);
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }
}
