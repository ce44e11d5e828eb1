use std::sync::Arc;

use nakayama_core::fixtures;
use nakayama_core::{build_category, Category, Field, Matrix, Quiver};

fn all_fixtures(field: Field) -> Vec<(&'static str, Category)> {
    vec![
        ("a2", fixtures::linear(2, field)),
        ("a3", fixtures::linear(3, field)),
        ("square", fixtures::square(field)),
        ("chain2", fixtures::chain(2, field)),
        ("chain3", fixtures::chain(3, field)),
        ("cyclic3", fixtures::cyclic(3, field)),
        ("dual", fixtures::dual_numbers(field)),
        ("loop", fixtures::loop_algebra(field)),
        ("loop-op", fixtures::loop_algebra(field).opposite()),
        ("two-into-one", fixtures::two_into_one(field)),
    ]
}

fn unit(field: Field, n: usize, i: usize) -> Matrix {
    Matrix::unit_column(field, n, i)
}

fn check_laws(name: &str, c: &Category) {
    let field = c.field();
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            let id_x = unit(field, c.hom_dim(x, x), c.identity_index(x));
            let id_y = unit(field, c.hom_dim(y, y), c.identity_index(y));
            for i in 0..c.hom_dim(x, y) {
                let f = unit(field, c.hom_dim(x, y), i);
                assert_eq!(c.compose(x, x, y, &id_x, &f), f, "{name}: left unit");
                assert_eq!(c.compose(x, y, y, &f, &id_y), f, "{name}: right unit");
            }
            for z in 0..n {
                for w in 0..n {
                    for i in 0..c.hom_dim(x, y) {
                        for j in 0..c.hom_dim(y, z) {
                            for k in 0..c.hom_dim(z, w) {
                                let f = unit(field, c.hom_dim(x, y), i);
                                let g = unit(field, c.hom_dim(y, z), j);
                                let h = unit(field, c.hom_dim(z, w), k);
                                let left = c.compose(x, z, w, &c.compose(x, y, z, &f, &g), &h);
                                let right = c.compose(x, y, w, &f, &c.compose(y, z, w, &g, &h));
                                assert_eq!(left, right, "{name}: associativity");
                            }
                        }
                    }
                }
            }
        }
    }
    for r in c.relations() {
        assert!(c.relation_value(r).is_zero(), "{name}: relation");
    }
}

#[test]
fn associativity_units_and_relations() {
    for field in [Field::Rational, Field::prime(2).unwrap(), Field::prime(5).unwrap()] {
        for (name, c) in all_fixtures(field) {
            check_laws(name, &c);
        }
    }
    let q = Field::Rational;
    let a2 = fixtures::linear(2, q);
    check_laws("a2 x a2", &a2.tensor(&a2).unwrap());
    check_laws("a2 x loop", &a2.tensor(&fixtures::loop_algebra(q)).unwrap());
    let l = fixtures::loop_algebra(q);
    check_laws("loop x loop-op", &l.tensor(&l.opposite()).unwrap());
}

#[test]
fn larger_cutoff_keeps_dimensions() {
    let q = Field::Rational;
    for (name, c) in all_fixtures(q) {
        let bigger = build_category(c.quiver().clone(), c.relations().to_vec(), q, c.length_cutoff() + 3).unwrap();
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                assert_eq!(c.hom_dim(x, y), bigger.hom_dim(x, y), "{name}");
                assert_eq!(c.hom_basis(x, y), bigger.hom_basis(x, y), "{name}");
            }
        }
    }
}

#[test]
fn tensor_dimensions_multiply() {
    let q = Field::Rational;
    let fx = all_fixtures(q);
    for (n1, c1) in &fx[..4] {
        for (n2, c2) in &fx[6..] {
            let t = c1.tensor(c2).unwrap();
            let m = c2.num_objects();
            for x in 0..c1.num_objects() {
                for y in 0..c1.num_objects() {
                    for u in 0..m {
                        for v in 0..m {
                            assert_eq!(
                                t.hom_dim(x * m + u, y * m + v),
                                c1.hom_dim(x, y) * c2.hom_dim(u, v),
                                "{n1} x {n2}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn a2_squared_is_the_square() {
    let q = Field::Rational;
    let a2 = fixtures::linear(2, q);
    let t = a2.tensor(&a2).unwrap();
    let sq = fixtures::square(q);
    // (1,1)=c1, (1,2)=c2, (2,1)=c3, (2,2)=c4
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(t.hom_dim(x, y), sq.hom_dim(x, y));
        }
    }
    assert_eq!(sq.hom_dim(0, 3), 1);
}

#[test]
fn point_is_tensor_unit() {
    let q = Field::Rational;
    let c = fixtures::loop_algebra(q);
    let t = c.tensor(&nakayama_core::point_category(q)).unwrap();
    assert_eq!(t.num_objects(), c.num_objects());
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(t.hom_dim(x, y), c.hom_dim(x, y));
        }
    }
}

#[test]
fn loop_algebra_basis() {
    let c = fixtures::loop_algebra(Field::Rational);
    assert_eq!(c.total_dimension(), 4);
    assert_eq!(c.hom_dim(0, 0), 1);
    assert_eq!(c.hom_dim(0, 1), 1);
    assert_eq!(c.hom_dim(1, 1), 2);
    assert_eq!(c.hom_dim(1, 0), 0);
    let labels: Vec<String> = (0..c.hom_dim(1, 1)).map(|i| c.basis_label(1, 1, i)).collect();
    assert!(labels.iter().any(|l| l == "beta"));
}

#[test]
fn opposite_transposes_dimensions() {
    for (name, c) in all_fixtures(Field::Rational) {
        let o = c.opposite();
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                assert_eq!(o.hom_dim(x, y), c.hom_dim(y, x), "{name}");
            }
        }
        let oo = Arc::new(o.opposite());
        assert_eq!(oo.quiver(), c.quiver());
        check_laws(name, &o);
    }
}

#[test]
fn parallel_arrows_are_allowed() {
    let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    let c = build_category(q, vec![], Field::Rational, 2).unwrap();
    assert_eq!(c.hom_dim(0, 1), 2);
}
