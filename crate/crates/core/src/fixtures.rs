//! Small named categories used by tests, the CLI and the examples.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use alloc::sync::Arc;

use crate::category::{build_category, Category, CategoryError, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::Module;
use crate::representation::{Representation, Setting};
use crate::scalar::{Field, Scalar};

/// Builds a relation from `(coefficient, word)` terms, words in composition order.
pub fn relation(quiver: &Quiver, field: Field, terms: &[(i64, &str)]) -> core::result::Result<Relation, CategoryError> {
    let terms = terms
        .iter()
        .map(|(c, w)| Ok((Scalar::from_i64(field, *c), quiver.parse_path(w)?.arrows)))
        .collect::<core::result::Result<Vec<_>, CategoryError>>()?;
    Ok(Relation { terms })
}

fn names(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn quiver(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Quiver {
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let a: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(n, s, t)| (n.as_str(), s.as_str(), t.as_str()))
        .collect();
    Quiver::from_names(&v, &a).expect("fixture quiver")
}

/// The linear quiver `1 -> 2 -> ... -> n` without relations.
pub fn linear(n: usize, field: Field) -> Category {
    let vs = names("", 1..=n);
    let arrows = (1..n)
        .map(|i| (format!("a{i}"), format!("{i}"), format!("{}", i + 1)))
        .collect();
    build_category(quiver(vs, arrows), Vec::new(), field, n.max(1)).expect("path category")
}

/// `c1 -a-> c2 -b-> c4`, `c1 -m-> c3 -g-> c4` with `b*a = g*m`.
pub fn square(field: Field) -> Category {
    let q = Quiver::from_names(
        &["c1", "c2", "c3", "c4"],
        &[("a", "c1", "c2"), ("m", "c1", "c3"), ("b", "c2", "c4"), ("g", "c3", "c4")],
    )
    .expect("square quiver");
    let r = relation(&q, field, &[(1, "b*a"), (-1, "g*m")]).expect("square relation");
    build_category(q, alloc::vec![r], field, 3).expect("square category")
}

/// `c_n -> ... -> c_1 -> c_0` with `d_{i-1} d_i = 0`.
pub fn chain(n: usize, field: Field) -> Category {
    let vs = names("c", 0..=n);
    let arrows = (1..=n)
        .map(|i| (format!("d{i}"), format!("c{i}"), format!("c{}", i - 1)))
        .collect();
    let q = quiver(vs, arrows);
    let rels = (2..=n)
        .map(|i| relation(&q, field, &[(1, &format!("d{}*d{}", i - 1, i))]).expect("chain relation"))
        .collect();
    build_category(q, rels, field, n + 1).expect("chain category")
}

/// Periodic complexes: `d_i: c_i -> c_{i-1}` with indices mod `n` and `d d = 0`.
pub fn cyclic(n: usize, field: Field) -> Category {
    let vs = names("c", 0..n);
    let prev = |i: usize| (i + n - 1) % n;
    let arrows = (0..n)
        .map(|i| (format!("d{i}"), format!("c{i}"), format!("c{}", prev(i))))
        .collect();
    let q = quiver(vs, arrows);
    let rels = (0..n)
        .map(|i| relation(&q, field, &[(1, &format!("d{}*d{}", prev(i), i))]).expect("cyclic relation"))
        .collect();
    build_category(q, rels, field, 3).expect("cyclic category")
}

/// One object with a loop `x`, `x*x = 0`.
pub fn dual_numbers(field: Field) -> Category {
    let q = Quiver::from_names(&["1"], &[("x", "1", "1")]).expect("loop quiver");
    let r = relation(&q, field, &[(1, "x*x")]).expect("loop relation");
    build_category(q, alloc::vec![r], field, 3).expect("dual numbers")
}

/// `1 -alpha-> 2` with a loop `beta` at 2 and `beta*beta = beta*alpha = 0`.
pub fn loop_algebra(field: Field) -> Category {
    let q = Quiver::from_names(&["1", "2"], &[("alpha", "1", "2"), ("beta", "2", "2")]).expect("quiver");
    let r1 = relation(&q, field, &[(1, "beta*beta")]).expect("relation");
    let r2 = relation(&q, field, &[(1, "beta*alpha")]).expect("relation");
    build_category(q, alloc::vec![r1, r2], field, 3).expect("loop algebra")
}

/// Two objects, no arrows.
pub fn two_points(field: Field) -> Category {
    let q = Quiver::from_names(&["1", "2"], &[]).expect("quiver");
    build_category(q, Vec::new(), field, 1).expect("semisimple")
}

/// Two arrows `1 -> 3`, `2 -> 3`.
pub fn two_into_one(field: Field) -> Category {
    let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "3"), ("b", "2", "3")]).expect("quiver");
    build_category(q, Vec::new(), field, 2).expect("path category")
}

/// The representation of `loop_algebra` in modules over its opposite with `M(1) = 0`,
/// `M(2) = D(2, -)` and `beta` acting by precomposition with the loop.
pub fn loop_module(setting: &Arc<Setting>) -> Result<Representation> {
    let base = &setting.base;
    let cat = &setting.cat;
    if cat.num_objects() != 2 || base.num_objects() != 2 || cat.num_arrows() != 2 {
        return Err(Error::CategoryMismatch);
    }
    let field = setting.field();
    let q2 = Module::representable(base.clone(), 1);
    let comps = alloc::vec![Module::zero(base.clone()), q2.clone()];
    let loop_el = base.arrow_element(1);
    let alpha = (0..2).map(|b| Matrix::zeros(field, q2.dim(b), 0)).collect();
    let beta = (0..2).map(|b| base.right_mult(1, 1, b, loop_el)).collect();
    Representation::from_components(setting, &comps, &[alpha, beta])
}
