use nakayama_core::{Field, LinalgError, Matrix};
use proptest::prelude::*;

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(0i64..5, r * c).prop_map(move |v| Matrix::from_i64(f5(), r, c, &v))
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(6)) {
        let k = m.rank_and_kernel();
        prop_assert_eq!(k.rank + k.dim(), m.cols());
        prop_assert!(m.mul(&k.basis).unwrap().is_zero());
        prop_assert_eq!(k.basis.rank(), k.dim());
    }

    #[test]
    fn cokernel_annihilates(m in matrix(6)) {
        let c = m.cokernel_projection();
        prop_assert!(c.projection.mul(&m).unwrap().is_zero());
        prop_assert_eq!(c.projection.rank(), m.rows() - m.rank());
        prop_assert_eq!(c.dim, c.projection.rows());
    }

    #[test]
    fn solve_consistent(m in matrix(6), seed in prop::collection::vec(0i64..5, 6)) {
        let x0 = Matrix::from_i64(f5(), m.cols(), 1, &seed[..m.cols()]);
        let b = m.mul(&x0).unwrap();
        let x = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul(&x).unwrap(), b);
    }

    #[test]
    fn deterministic(m in matrix(5)) {
        let copy = m.clone();
        prop_assert_eq!(m.rank_and_kernel(), copy.rank_and_kernel());
        prop_assert_eq!(m.cokernel_projection(), copy.cokernel_projection());
        prop_assert_eq!(format!("{:?}", m.rref()), format!("{:?}", copy.rref()));
    }

    #[test]
    fn transpose_preserves_rank(m in matrix(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

#[test]
fn inconsistent_system_is_distinct_from_shape_error() {
    let q = Field::Rational;
    let m = Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]);
    assert_eq!(m.solve(&Matrix::from_i64(q, 2, 1, &[1, 0])), Err(LinalgError::NoSolution));
    assert!(matches!(
        m.solve(&Matrix::from_i64(q, 1, 1, &[1])),
        Err(LinalgError::DimensionMismatch { .. })
    ));
}
