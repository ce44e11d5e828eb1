//! Finite-dimensional modules over a category and their morphisms.
//!
//! A left module is a covariant functor to vector spaces, stored as one space per
//! object and one matrix per arrow. Right modules are left modules over the
//! opposite category.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{Category, Path};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

pub(crate) fn same_category(a: &Arc<Category>, b: &Arc<Category>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A left module: spaces `dims[x]` and matrices `F(a): F(s a) -> F(t a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    cat: Arc<Category>,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

/// Precomputed actions of every basis element of every Hom space.
#[derive(Clone, Debug)]
pub struct BasisActions {
    n: usize,
    table: Vec<Vec<Matrix>>,
}

impl BasisActions {
    /// `F(u_i)` for the `i`-th basis element of Hom(x, y).
    pub fn get(&self, x: usize, y: usize, i: usize) -> &Matrix {
        &self.table[x * self.n + y][i]
    }
}

impl Module {
    /// Validates shapes, field and relations.
    pub fn new(cat: Arc<Category>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Module> {
        let m = Module::new_unchecked(cat, dims, arrows)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Validates shapes and field only.
    pub(crate) fn new_unchecked(
        cat: Arc<Category>,
        dims: Vec<usize>,
        arrows: Vec<Matrix>,
    ) -> Result<Module> {
        if dims.len() != cat.num_objects() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} objects",
                dims.len(),
                cat.num_objects()
            )));
        }
        if arrows.len() != cat.num_arrows() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                arrows.len(),
                cat.num_arrows()
            )));
        }
        for (a, m) in arrows.iter().enumerate() {
            let arrow = cat.arrow(a);
            if m.field() != cat.field() {
                return Err(Error::Shape(format!("arrow `{}` over the wrong field", arrow.name)));
            }
            if m.shape() != (dims[arrow.target], dims[arrow.source]) {
                return Err(Error::Shape(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    arrow.name,
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Module { cat, dims, arrows })
    }

    fn check_relations(&self) -> Result<()> {
        for (ri, r) in self.cat.relations().iter().enumerate() {
            let first = self
                .cat
                .quiver()
                .path_from_arrows(&r.terms[0].1)
                .expect("validated relation");
            let mut acc = Matrix::zeros(self.field(), self.dims[first.target], self.dims[first.source]);
            for (c, arrows) in &r.terms {
                let p = self.cat.quiver().path_from_arrows(arrows).expect("validated");
                acc = acc.add(&self.path_action(&p).scale(c))?;
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated {
                    relation: ri,
                    object: self.cat.object_name(first.source).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn zero(cat: Arc<Category>) -> Module {
        let field = cat.field();
        let arrows = (0..cat.num_arrows())
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        let dims = vec![0; cat.num_objects()];
        Module { cat, dims, arrows }
    }

    /// The representable `C(c, -)`.
    pub fn representable(cat: Arc<Category>, c: usize) -> Module {
        let dims: Vec<usize> = (0..cat.num_objects()).map(|y| cat.hom_dim(c, y)).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                cat.left_mult(c, arrow.source, arrow.target, cat.arrow_element(a))
            })
            .collect();
        Module { cat, dims, arrows }
    }

    /// One-dimensional at `c`, zero elsewhere.
    pub fn simple(cat: Arc<Category>, c: usize) -> Module {
        let field = cat.field();
        let dims: Vec<usize> = (0..cat.num_objects()).map(|y| usize::from(y == c)).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                Matrix::zeros(field, dims[arrow.target], dims[arrow.source])
            })
            .collect();
        Module { cat, dims, arrows }
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.arrows[a]
    }

    pub fn arrow_matrices(&self) -> &[Matrix] {
        &self.arrows
    }

    /// Action of a path, composing arrow matrices.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.arrows[a].mul(&acc).expect("composable");
        }
        acc
    }

    pub fn basis_actions(&self) -> BasisActions {
        let n = self.cat.num_objects();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(
                    self.cat
                        .hom_basis(x, y)
                        .iter()
                        .map(|p| self.path_action(p))
                        .collect(),
                );
            }
        }
        BasisActions { n, table }
    }

    /// Action of an element of Hom(x, y) given by its basis coefficients.
    pub fn element_action(&self, actions: &BasisActions, x: usize, y: usize, u: &Matrix) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dims[y], self.dims[x]);
        for i in 0..u.rows() {
            let c = u.get(i, 0);
            if !c.is_zero() {
                acc = acc.add(&actions.get(x, y, i).scale(&c)).expect("shape");
            }
        }
        acc
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if !same_category(&self.cat, &other.cat) {
            return Err(Error::CategoryMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        Ok(Module {
            cat: self.cat.clone(),
            dims,
            arrows,
        })
    }

    /// `D(M)` over the given opposite category: dual spaces, transposed matrices.
    pub fn dual_over(&self, opposite: Arc<Category>) -> Result<Module> {
        if opposite.num_objects() != self.cat.num_objects() || opposite.num_arrows() != self.cat.num_arrows() {
            return Err(Error::CategoryMismatch);
        }
        Module::new_unchecked(
            opposite,
            self.dims.clone(),
            self.arrows.iter().map(Matrix::transpose).collect(),
        )
    }

    pub fn dual(&self) -> Module {
        self.dual_over(Arc::new(self.cat.opposite()))
            .expect("opposite has the same shape")
    }

    /// Same data viewed over a structurally equal category handle.
    pub fn rebase(&self, cat: Arc<Category>) -> Result<Module> {
        if !same_category(&self.cat, &cat) {
            return Err(Error::CategoryMismatch);
        }
        Ok(Module {
            cat,
            dims: self.dims.clone(),
            arrows: self.arrows.clone(),
        })
    }

    /// The radical at `x`: the span of images of arrows ending at `x`, as columns.
    pub fn radical_span(&self, x: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dims[x], 0);
        for (a, m) in self.arrows.iter().enumerate() {
            if self.cat.arrow(a).target == x {
                acc = acc.hstack(m).expect("rows agree");
            }
        }
        acc
    }

    /// Dimension of the top `M(x) / rad M(x)` at each object.
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.cat.num_objects())
            .map(|x| self.dims[x] - self.radical_span(x).rank())
            .collect()
    }
}

/// A right module over `C`, stored as a left module over `C^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    base: Arc<Category>,
    inner: Module,
}

impl RightModule {
    /// `inner` must live over the opposite of `base`.
    pub fn new(base: Arc<Category>, inner: Module) -> Result<RightModule> {
        if inner.category().num_objects() != base.num_objects() || **inner.category() != base.opposite() {
            return Err(Error::CategoryMismatch);
        }
        Ok(RightModule { base, inner })
    }

    /// The category `C` acting on the right.
    pub fn category(&self) -> &Arc<Category> {
        &self.base
    }

    pub fn as_left(&self) -> &Module {
        &self.inner
    }

    pub fn dims(&self) -> &[usize] {
        self.inner.dims()
    }

    /// Contravariant action `M(a): M(t a) -> M(s a)` of an arrow of `C`.
    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        self.inner.arrow_matrix(a)
    }

    /// `C(-, c)`.
    pub fn representable(base: Arc<Category>, opposite: Arc<Category>, c: usize) -> RightModule {
        RightModule {
            base,
            inner: Module::representable(opposite, c),
        }
    }

    pub fn simple(base: Arc<Category>, opposite: Arc<Category>, c: usize) -> RightModule {
        RightModule {
            base,
            inner: Module::simple(opposite, c),
        }
    }

    /// `D(M)` as a left module over `C`.
    pub fn dual(&self) -> Module {
        self.inner
            .dual_over(self.base.clone())
            .expect("opposite has the same shape")
    }

    /// `D(F)` of a left module, as a right module.
    pub fn dual_of(f: &Module, opposite: Arc<Category>) -> Result<RightModule> {
        Ok(RightModule {
            base: f.category().clone(),
            inner: f.dual_over(opposite)?,
        })
    }
}

/// A natural transformation between left modules over one category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    components: Vec<Matrix>,
}

impl ModuleMap {
    /// Validates shapes and naturality along every arrow.
    pub fn new(source: Module, target: Module, components: Vec<Matrix>) -> Result<ModuleMap> {
        let m = ModuleMap::new_unchecked(source, target, components)?;
        m.check_naturality()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Module,
        target: Module,
        components: Vec<Matrix>,
    ) -> Result<ModuleMap> {
        if !same_category(&source.cat, &target.cat) {
            return Err(Error::CategoryMismatch);
        }
        if components.len() != source.dims.len() {
            return Err(Error::Shape("component count".to_string()));
        }
        for (x, c) in components.iter().enumerate() {
            if c.shape() != (target.dims[x], source.dims[x]) {
                return Err(Error::Shape(format!(
                    "component at `{}` is {}x{}, expected {}x{}",
                    source.cat.object_name(x),
                    c.rows(),
                    c.cols(),
                    target.dims[x],
                    source.dims[x]
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub fn check_naturality(&self) -> Result<()> {
        for a in 0..self.source.cat.num_arrows() {
            let arrow = self.source.cat.arrow(a);
            let lhs = self.target.arrows[a].mul(&self.components[arrow.source])?;
            let rhs = self.components[arrow.target].mul(&self.source.arrows[a])?;
            if lhs != rhs {
                return Err(Error::NotNatural(arrow.name.clone()));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let components = m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            components,
        }
    }

    pub fn zero(source: &Module, target: &Module) -> Result<ModuleMap> {
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(source.field(), t, s))
            .collect();
        ModuleMap::new_unchecked(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn component(&self, x: usize) -> &Matrix {
        &self.components[x]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// `other o self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target.dims != other.source.dims {
            return Err(Error::Shape("maps are not composable".to_string()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| g.mul(f))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        ModuleMap::new_unchecked(self.source.clone(), other.target.clone(), components)
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.add(g))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(Matrix::is_identity)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }

    pub fn is_mono(&self) -> bool {
        self.ranks().iter().zip(&self.source.dims).all(|(r, d)| r == d)
    }

    pub fn is_epi(&self) -> bool {
        self.ranks().iter().zip(&self.target.dims).all(|(r, d)| r == d)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_mono()
    }

    /// Kernel with its inclusion; basis vectors follow the kernel normalization.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let cat = &self.source.cat;
        let kers: Vec<_> = self.components.iter().map(Matrix::rank_and_kernel).collect();
        let dims: Vec<usize> = kers.iter().map(|k| k.dim()).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let moved = self.source.arrows[a]
                    .mul(&kers[arrow.source].basis)
                    .expect("shape");
                kers[arrow.target].coordinates(&moved)
            })
            .collect();
        let k = Module {
            cat: cat.clone(),
            dims,
            arrows,
        };
        let incl = ModuleMap {
            source: k.clone(),
            target: self.source.clone(),
            components: kers.into_iter().map(|k| k.basis).collect(),
        };
        (k, incl)
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let cat = &self.target.cat;
        let cos: Vec<_> = self.components.iter().map(Matrix::cokernel_projection).collect();
        let dims: Vec<usize> = cos.iter().map(|c| c.dim).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                cos[arrow.target]
                    .projection
                    .mul(&self.target.arrows[a])
                    .and_then(|m| m.mul(&cos[arrow.source].section))
                    .expect("shape")
            })
            .collect();
        let q = Module {
            cat: cat.clone(),
            dims,
            arrows,
        };
        let proj = ModuleMap {
            source: self.target.clone(),
            target: q.clone(),
            components: cos.into_iter().map(|c| c.projection).collect(),
        };
        (q, proj)
    }

    /// Image as the submodule spanned by the pivot columns of each component.
    pub fn image(&self) -> (Module, ModuleMap, ModuleMap) {
        let cat = &self.target.cat;
        let bases: Vec<Matrix> = self
            .components
            .iter()
            .map(|c| c.select_cols(&c.rref().pivots))
            .collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let moved = self.target.arrows[a].mul(&bases[arrow.source]).expect("shape");
                bases[arrow.target].solve(&moved).expect("image is a submodule")
            })
            .collect();
        let im = Module {
            cat: cat.clone(),
            dims,
            arrows,
        };
        let epi = ModuleMap {
            source: self.source.clone(),
            target: im.clone(),
            components: self
                .components
                .iter()
                .zip(&bases)
                .map(|(c, b)| b.solve(c).expect("columns lie in the image"))
                .collect(),
        };
        let mono = ModuleMap {
            source: im.clone(),
            target: self.target.clone(),
            components: bases,
        };
        (im, epi, mono)
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.direct_sum(g))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        ModuleMap::new_unchecked(source, target, components)
    }
}
