//! The tensor product `M (x)_C F` and the space `Hom_C(F, G)`.
//!
//! `M (x)_C F` is the cokernel of
//! `(+)_{a: x -> y} M(y) (x) F(x) -> (+)_x M(x) (x) F(x)`, `m (x) v -> M(a)m (x) v - m (x) F(a)v`,
//! which presents the coequalizer using the arrows as generators of the category.
//! `Hom_C(F, G)` is the kernel of `(phi_x) -> (G(a) phi_x - phi_y F(a))_a` with each
//! `phi_x` vectorized row by row.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Cokernel, Kernel, Matrix};
use crate::module::{same_category, Module, ModuleMap, RightModule};

/// A computed tensor product with the chosen presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    /// Offsets of the blocks `M(x) (x) F(x)` in the presenting sum.
    pub offsets: Vec<usize>,
    pub cokernel: Cokernel,
}

impl Tensor {
    pub fn dim(&self) -> usize {
        self.cokernel.dim
    }

    /// Size of the presenting sum `(+)_x M(x) (x) F(x)`.
    pub fn ambient(&self) -> usize {
        self.cokernel.projection.cols()
    }
}

/// A computed Hom space with the kernel basis of the vectorized equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub offsets: Vec<usize>,
    pub kernel: Kernel,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// The `k`-th basis map, as its components.
    pub fn basis_map(&self, source: &Module, target: &Module, k: usize) -> Vec<Matrix> {
        let col = self.kernel.basis.select_cols(&[k]);
        self.components_of(source, target, &col)
    }

    /// Splits a vectorized family into per-object matrices.
    pub fn components_of(&self, source: &Module, target: &Module, v: &Matrix) -> Vec<Matrix> {
        (0..source.dims().len())
            .map(|x| {
                let (r, c) = (target.dim(x), source.dim(x));
                let mut m = Matrix::zeros(v.field(), r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, &v.get(self.offsets[x] + i * c + j, 0));
                    }
                }
                m
            })
            .collect()
    }

    /// Vectorizes a family of components.
    pub fn vectorize(&self, comps: &[Matrix]) -> Matrix {
        let field = self.kernel.basis.field();
        let total = self.kernel.basis.rows();
        let mut v = Matrix::zeros(field, total, 1);
        for (x, m) in comps.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    v.set(self.offsets[x] + i * m.cols() + j, 0, &m.get(i, j));
                }
            }
        }
        v
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = Vec::new();
    let mut acc = 0;
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    out.push(acc);
    out
}

pub fn tensor_over_c(m: &RightModule, f: &Module) -> Result<Tensor> {
    if !same_category(m.category(), f.category()) {
        return Err(Error::CategoryMismatch);
    }
    let cat = f.category();
    let field = f.field();
    let n = cat.num_objects();
    let off = offsets((0..n).map(|x| m.dims()[x] * f.dim(x)));
    let rel_sizes: Vec<usize> = (0..cat.num_arrows())
        .map(|a| {
            let arrow = cat.arrow(a);
            m.dims()[arrow.target] * f.dim(arrow.source)
        })
        .collect();
    let col_off = offsets(rel_sizes.iter().copied());
    let mut pres = Matrix::zeros(field, off[n], col_off[rel_sizes.len()]);
    for a in 0..cat.num_arrows() {
        let arrow = cat.arrow(a);
        let (x, y) = (arrow.source, arrow.target);
        // M(a) (x) 1 into the x block, -(1 (x) F(a)) into the y block.
        let left = m
            .arrow_matrix(a)
            .kronecker_product(&Matrix::identity(field, f.dim(x)))?;
        let right = Matrix::identity(field, m.dims()[y])
            .kronecker_product(f.arrow_matrix(a))?
            .neg();
        pres.add_block(off[x], col_off[a], &left);
        pres.add_block(off[y], col_off[a], &right);
    }
    Ok(Tensor {
        offsets: off,
        cokernel: pres.cokernel_projection(),
    })
}

/// Map `M (x) F -> M' (x) F'` induced by `kappa: M -> M'` (as left maps over `C^op`)
/// and `phi: F -> F'`.
pub fn tensor_map(
    kappa: &ModuleMap,
    phi: &ModuleMap,
    src: &Tensor,
    dst: &Tensor,
) -> Result<Matrix> {
    let n = phi.source().dims().len();
    let field = phi.source().field();
    let mut big = Matrix::zeros(field, dst.ambient(), src.ambient());
    for x in 0..n {
        let block = kappa.component(x).kronecker_product(phi.component(x))?;
        if block.rows() != dst.offsets[x + 1] - dst.offsets[x]
            || block.cols() != src.offsets[x + 1] - src.offsets[x]
        {
            return Err(Error::Shape(format!("tensor map block at object {x}")));
        }
        big.set_block(dst.offsets[x], src.offsets[x], &block);
    }
    Ok(dst
        .cokernel
        .projection
        .mul(&big)?
        .mul(&src.cokernel.section)?)
}

pub fn hom_over_c(f: &Module, g: &Module) -> Result<HomSpace> {
    if !same_category(f.category(), g.category()) {
        return Err(Error::CategoryMismatch);
    }
    let cat = f.category();
    let field = f.field();
    let n = cat.num_objects();
    let off = offsets((0..n).map(|x| g.dim(x) * f.dim(x)));
    let row_sizes: Vec<usize> = (0..cat.num_arrows())
        .map(|a| {
            let arrow = cat.arrow(a);
            g.dim(arrow.target) * f.dim(arrow.source)
        })
        .collect();
    let row_off = offsets(row_sizes.iter().copied());
    let mut eqs = Matrix::zeros(field, row_off[row_sizes.len()], off[n]);
    for a in 0..cat.num_arrows() {
        let arrow = cat.arrow(a);
        let (x, y) = (arrow.source, arrow.target);
        let left = g
            .arrow_matrix(a)
            .kronecker_product(&Matrix::identity(field, f.dim(x)))?;
        let right = Matrix::identity(field, g.dim(y))
            .kronecker_product(&f.arrow_matrix(a).transpose())?
            .neg();
        eqs.add_block(row_off[a], off[x], &left);
        eqs.add_block(row_off[a], off[y], &right);
    }
    Ok(HomSpace {
        offsets: off,
        kernel: eqs.rank_and_kernel(),
    })
}

/// Map `Hom(F, G) -> Hom(F', G')`, `theta -> psi o theta o rho` for `rho: F' -> F`,
/// `psi: G -> G'`.
pub fn hom_map(rho: &ModuleMap, psi: &ModuleMap, src: &HomSpace, dst: &HomSpace) -> Result<Matrix> {
    let n = rho.source().dims().len();
    let field = rho.source().field();
    let src_total = src.kernel.basis.rows();
    let dst_total = dst.kernel.basis.rows();
    let mut big = Matrix::zeros(field, dst_total, src_total);
    for x in 0..n {
        let block = psi
            .component(x)
            .kronecker_product(&rho.component(x).transpose())?;
        big.set_block(dst.offsets[x], src.offsets[x], &block);
    }
    let image = big.mul(&src.kernel.basis)?;
    Ok(dst.kernel.coordinates(&image))
}
