//! Representations of `C` with values in modules over a base algebra.
//!
//! A representation is a module over the total category `C (x) B`; object `(c, b)`
//! has index `c * |B| + b`. When the base is the one-object category `k`, the total
//! category is `C` itself. Functors over `C` act on the slices `F(-, b)` and the base
//! arrows are carried along as module maps between slices.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{build_category, Category, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{same_category, Module, ModuleMap};
use crate::scalar::Field;

/// The one-object category with Hom = k.
pub fn point_category(field: Field) -> Category {
    let q = Quiver::new(vec![String::from("*")], Vec::new()).expect("valid quiver");
    build_category(q, Vec::new(), field, 1).expect("point category")
}

/// `C`, its opposite, a base category `B` and the total category `C (x) B`.
#[derive(Debug)]
pub struct Setting {
    pub cat: Arc<Category>,
    pub op: Arc<Category>,
    pub base: Arc<Category>,
    pub total: Arc<Category>,
    trivial_base: bool,
}

impl Setting {
    /// Representations of `C` in vector spaces.
    pub fn plain(cat: Arc<Category>) -> Arc<Setting> {
        let op = Arc::new(cat.opposite());
        let base = Arc::new(point_category(cat.field()));
        Arc::new(Setting {
            total: cat.clone(),
            cat,
            op,
            base,
            trivial_base: true,
        })
    }

    /// Representations of `C` in modules over `base`.
    pub fn with_base(cat: Arc<Category>, base: Arc<Category>) -> Result<Arc<Setting>> {
        let total = Arc::new(cat.tensor(&base)?);
        let op = Arc::new(cat.opposite());
        Ok(Arc::new(Setting {
            cat,
            op,
            base,
            total,
            trivial_base: false,
        }))
    }

    pub fn has_trivial_base(&self) -> bool {
        self.trivial_base
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn base_objects(&self) -> usize {
        self.base.num_objects()
    }

    pub fn object(&self, c: usize, b: usize) -> usize {
        c * self.base_objects() + b
    }

    /// Index of the arrow `(a, b)` of the total category.
    pub fn c_arrow(&self, a: usize, b: usize) -> usize {
        a * self.base_objects() + b
    }

    /// Index of the arrow `(c, beta)` of the total category.
    pub fn b_arrow(&self, c: usize, beta: usize) -> usize {
        self.cat.num_arrows() * self.base_objects() + c * self.base.num_arrows() + beta
    }
}

/// A representation of `C` with values in base modules.
#[derive(Clone, Debug)]
pub struct Representation {
    setting: Arc<Setting>,
    module: Module,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module
    }
}

impl Eq for Representation {}

impl Representation {
    pub fn new(setting: Arc<Setting>, module: Module) -> Result<Representation> {
        if !same_category(module.category(), &setting.total) {
            return Err(Error::CategoryMismatch);
        }
        let module = module.rebase(setting.total.clone())?;
        Ok(Representation { setting, module })
    }

    /// A module over `C` viewed with the trivial base.
    pub fn plain(module: Module) -> Representation {
        let setting = Setting::plain(module.category().clone());
        Representation { setting, module }
    }

    /// A module over `C` in an existing trivial-base setting.
    pub fn in_setting(setting: &Arc<Setting>, module: Module) -> Result<Representation> {
        Representation::new(setting.clone(), module)
    }

    pub fn zero(setting: &Arc<Setting>) -> Representation {
        Representation {
            setting: setting.clone(),
            module: Module::zero(setting.total.clone()),
        }
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn field(&self) -> Field {
        self.setting.field()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// `F(c, b)`.
    pub fn dim(&self, c: usize, b: usize) -> usize {
        self.module.dim(self.setting.object(c, b))
    }

    /// Total dimension of `F(c)` over k.
    pub fn dim_at(&self, c: usize) -> usize {
        (0..self.setting.base_objects()).map(|b| self.dim(c, b)).sum()
    }

    /// `F(-, b)` as a module over `C`.
    pub fn slice(&self, b: usize) -> Module {
        if self.setting.trivial_base {
            return self.module.clone();
        }
        let s = &self.setting;
        let dims = (0..s.cat.num_objects()).map(|c| self.dim(c, b)).collect();
        let arrows = (0..s.cat.num_arrows())
            .map(|a| self.module.arrow_matrix(s.c_arrow(a, b)).clone())
            .collect();
        Module::new_unchecked(s.cat.clone(), dims, arrows).expect("slice shapes")
    }

    pub fn slices(&self) -> Vec<Module> {
        (0..self.setting.base_objects()).map(|b| self.slice(b)).collect()
    }

    /// `F(-, beta)` as a map of slices.
    pub fn base_map(&self, beta: usize) -> ModuleMap {
        let s = &self.setting;
        let arrow = s.base.arrow(beta);
        let comps = (0..s.cat.num_objects())
            .map(|c| self.module.arrow_matrix(s.b_arrow(c, beta)).clone())
            .collect();
        ModuleMap::new_unchecked(self.slice(arrow.source), self.slice(arrow.target), comps)
            .expect("base map shapes")
    }

    /// `F(c)` as a module over the base.
    pub fn component(&self, c: usize) -> Module {
        let s = &self.setting;
        let dims = (0..s.base_objects()).map(|b| self.dim(c, b)).collect();
        let arrows = if s.trivial_base {
            Vec::new()
        } else {
            (0..s.base.num_arrows())
                .map(|beta| self.module.arrow_matrix(s.b_arrow(c, beta)).clone())
                .collect()
        };
        Module::new_unchecked(s.base.clone(), dims, arrows).expect("component shapes")
    }

    /// Assembles slices and base maps; `base_maps[beta][c]` is the component at `c`.
    pub fn from_slices(setting: &Arc<Setting>, slices: &[Module], base_maps: &[Vec<Matrix>]) -> Result<Representation> {
        let s = setting;
        let (nc, nb) = (s.cat.num_objects(), s.base_objects());
        if slices.len() != nb || base_maps.len() != s.base.num_arrows() {
            return Err(Error::Shape(format!("{} slices for {} base objects", slices.len(), nb)));
        }
        if s.trivial_base {
            return Representation::new(s.clone(), slices[0].rebase(s.cat.clone())?);
        }
        let mut dims = vec![0; nc * nb];
        for c in 0..nc {
            for b in 0..nb {
                dims[s.object(c, b)] = slices[b].dim(c);
            }
        }
        let mut arrows = vec![Matrix::zeros(s.field(), 0, 0); s.total.num_arrows()];
        for a in 0..s.cat.num_arrows() {
            for b in 0..nb {
                arrows[s.c_arrow(a, b)] = slices[b].arrow_matrix(a).clone();
            }
        }
        for (beta, comps) in base_maps.iter().enumerate() {
            for c in 0..nc {
                arrows[s.b_arrow(c, beta)] = comps[c].clone();
            }
        }
        let module = Module::new_unchecked(s.total.clone(), dims, arrows)?;
        Ok(Representation {
            setting: s.clone(),
            module,
        })
    }

    /// Assembles base components `F(c)` and C-arrow actions `arrows[a]` given as
    /// base-module maps per base object: `arrows[a][b]`.
    pub fn from_components(
        setting: &Arc<Setting>,
        components: &[Module],
        arrows: &[Vec<Matrix>],
    ) -> Result<Representation> {
        let s = setting;
        let nb = s.base_objects();
        let slices: Vec<Module> = (0..nb)
            .map(|b| {
                let dims = components.iter().map(|m| m.dim(b)).collect();
                let mats = arrows.iter().map(|per_b| per_b[b].clone()).collect();
                Module::new_unchecked(s.cat.clone(), dims, mats)
            })
            .collect::<Result<_>>()?;
        let base_maps: Vec<Vec<Matrix>> = (0..s.base.num_arrows())
            .map(|beta| components.iter().map(|m| m.arrow_matrix(beta).clone()).collect())
            .collect();
        Representation::from_slices(s, &slices, &base_maps)
    }

    /// Checks every relation of the total category, including commutativity with the base.
    pub fn validate(&self) -> Result<()> {
        Module::new(self.setting.total.clone(), self.module.dims().to_vec(), self.module.arrow_matrices().to_vec())
            .map(|_| ())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        Ok(Representation {
            setting: self.setting.clone(),
            module: self.module.direct_sum(&other.module)?,
        })
    }
}

/// Restricts a map of representations to the slice at `b`.
pub fn slice_map(setting: &Setting, map: &ModuleMap, source: &Representation, target: &Representation, b: usize) -> ModuleMap {
    let comps = (0..setting.cat.num_objects())
        .map(|c| map.component(setting.object(c, b)).clone())
        .collect();
    ModuleMap::new_unchecked(source.slice(b), target.slice(b), comps).expect("slice map shapes")
}

/// Assembles slice maps into a map of representations.
pub fn assemble_map(source: &Representation, target: &Representation, slice_maps: &[ModuleMap]) -> Result<ModuleMap> {
    let s = source.setting();
    let mut comps = vec![Matrix::zeros(s.field(), 0, 0); s.total.num_objects()];
    for (b, m) in slice_maps.iter().enumerate() {
        for c in 0..s.cat.num_objects() {
            comps[s.object(c, b)] = m.component(c).clone();
        }
    }
    ModuleMap::new_unchecked(source.module().clone(), target.module().clone(), comps)
}
