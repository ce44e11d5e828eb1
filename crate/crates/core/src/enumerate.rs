//! Exhaustive enumeration of representations over a prime field and random sampling.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::Module;
use crate::resolution::{map_from_free, FreeModule};
use crate::scalar::{Field, Scalar};

/// Default bound on the raw number of arrow-matrix assignments.
pub const DEFAULT_SEARCH_LIMIT: u128 = 1 << 22;

/// All representations with a fixed dimension vector, in colexicographic order of
/// the flattened arrow entries (first arrow, row-major, varies fastest).
#[derive(Clone, Debug)]
pub struct Enumeration {
    cat: Arc<Category>,
    dims: Vec<usize>,
    p: u64,
    shapes: Vec<(usize, usize)>,
    counter: Vec<u64>,
    done: bool,
}

fn checked_pow(p: u64, e: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// Number of raw assignments for a dimension vector.
pub fn search_size(cat: &Category, dims: &[usize], field: Field) -> Result<u128> {
    let p = field.order().ok_or(Error::NeedsPrimeField)?;
    let entries: usize = (0..cat.num_arrows())
        .map(|a| {
            let arrow = cat.arrow(a);
            dims[arrow.source] * dims[arrow.target]
        })
        .sum();
    Ok(checked_pow(p, entries).unwrap_or(u128::MAX))
}

impl Enumeration {
    pub fn new(cat: Arc<Category>, dims: &[usize], limit: u128) -> Result<Enumeration> {
        let field = cat.field();
        let p = field.order().ok_or(Error::NeedsPrimeField)?;
        if dims.len() != cat.num_objects() {
            return Err(Error::Shape(alloc::format!(
                "{} dimensions for {} objects",
                dims.len(),
                cat.num_objects()
            )));
        }
        let size = search_size(&cat, dims, field)?;
        if size > limit {
            return Err(Error::SearchTooLarge { size, limit });
        }
        let shapes: Vec<(usize, usize)> = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                (dims[arrow.target], dims[arrow.source])
            })
            .collect();
        let total = shapes.iter().map(|(r, c)| r * c).sum();
        Ok(Enumeration {
            cat,
            dims: dims.to_vec(),
            p,
            shapes,
            counter: vec![0; total],
            done: false,
        })
    }

    fn current(&self) -> Vec<Matrix> {
        let field = self.cat.field();
        let mut pos = 0;
        self.shapes
            .iter()
            .map(|&(r, c)| {
                let mut m = Matrix::zeros(field, r, c);
                for i in 0..r {
                    for j in 0..c {
                        let v = self.counter[pos];
                        if v != 0 {
                            m.set(i, j, &Scalar::from_i64(field, v as i64));
                        }
                        pos += 1;
                    }
                }
                m
            })
            .collect()
    }

    fn advance(&mut self) {
        for d in self.counter.iter_mut() {
            *d += 1;
            if *d < self.p {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

impl Iterator for Enumeration {
    type Item = Module;

    fn next(&mut self) -> Option<Module> {
        while !self.done {
            let arrows = self.current();
            self.advance();
            if let Ok(m) = Module::new(self.cat.clone(), self.dims.clone(), arrows) {
                return Some(m);
            }
        }
        None
    }
}

/// Every dimension vector bounded by `max_dims`, colexicographic.
pub fn dimension_vectors(max_dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; max_dims.len()];
    loop {
        out.push(cur.clone());
        let mut k = 0;
        loop {
            if k == cur.len() {
                return out;
            }
            if cur[k] < max_dims[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// All representations with dimensions bounded by `max_dims`, refusing when the raw
/// search space exceeds `limit`.
pub fn enumerate_representations(cat: &Arc<Category>, max_dims: &[usize], limit: u128) -> Result<Vec<Module>> {
    let vectors = dimension_vectors(max_dims);
    let mut size: u128 = 0;
    for d in &vectors {
        size = size.saturating_add(search_size(cat, d, cat.field())?);
    }
    if size > limit {
        return Err(Error::SearchTooLarge { size, limit });
    }
    let mut out = Vec::new();
    for d in vectors {
        out.extend(Enumeration::new(cat.clone(), &d, limit)?);
    }
    Ok(out)
}

/// A uniformly random scalar (small integers over Q).
pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field.order() {
        Some(p) => Scalar::from_i64(field, rng.gen_range(0..p) as i64),
        None => Scalar::from_i64(field, rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, &random_scalar(field, rng));
        }
    }
    m
}

/// Random arrow matrices; only valid without relations.
pub fn random_module<R: Rng + ?Sized>(cat: &Arc<Category>, dims: &[usize], rng: &mut R) -> Result<Module> {
    if !cat.is_path_category() {
        return Err(Error::NotPathCategory);
    }
    let arrows = (0..cat.num_arrows())
        .map(|a| {
            let arrow = cat.arrow(a);
            random_matrix(cat.field(), dims[arrow.target], dims[arrow.source], rng)
        })
        .collect();
    Module::new(cat.clone(), dims.to_vec(), arrows)
}

/// A random quotient of a free module: up to `max_gens` representable summands
/// modulo up to `max_rels` random elements.
pub fn random_quotient<R: Rng + ?Sized>(cat: &Arc<Category>, max_gens: usize, max_rels: usize, rng: &mut R) -> Module {
    let n = cat.num_objects();
    let k = rng.gen_range(1..=max_gens.max(1));
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let free = FreeModule::new(cat.clone(), gens).module();
    let r = rng.gen_range(0..=max_rels);
    let mut rel_gens = Vec::with_capacity(r);
    let mut vectors = Vec::with_capacity(r);
    for _ in 0..r {
        let x = rng.gen_range(0..n);
        rel_gens.push(x);
        vectors.push(random_matrix(cat.field(), free.dim(x), 1, rng));
    }
    let rels = FreeModule::new(cat.clone(), rel_gens);
    map_from_free(&rels, &vectors, &free).cokernel().0
}
