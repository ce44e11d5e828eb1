//! The adjoint triple `i_! -| i^* -| i_*`, the Nakayama functor `nu = D(C) (x)_C -`,
//! its right adjoint `nu^- = Hom_C(D(C), -)`, their derived functors and the unit
//! `lambda: 1 -> nu^- nu`.
//!
//! With `X_c = D(C(c, -))` (a right module) and `I_e = D(C(-, e))` (a left module):
//! `nu(F)(c) = X_c (x)_C F`, `nu^-(G)(e) = Hom_C(I_e, G)`,
//! `L_i nu(F)(c) = Tor_i(X_c, F)` and `R^i nu^-(G)(e) = Ext^i(I_e, G)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::Category;
use crate::derived::{ext_complex, free_term_map, hom_free_map, tensor_free_map, tor_complex, Homology};
use crate::error::{Error, Result};
use crate::functor::{hom_map, hom_over_c, tensor_map, tensor_over_c, HomSpace, Tensor};
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap, RightModule};
use crate::representation::{Representation, Setting};
use crate::resolution::{lift_chain_map, projective_resolution, Dimension, FreeMap, Resolution};

/// `nu(F)` with the tensor presentations used at each object.
#[derive(Clone, Debug)]
pub struct NuImage {
    pub module: Module,
    pub tensors: Vec<Tensor>,
}

/// `nu^-(G)` with the Hom spaces used at each object.
#[derive(Clone, Debug)]
pub struct NuMinusImage {
    pub module: Module,
    pub homs: Vec<HomSpace>,
}

/// A derived functor value with its homology at each object.
#[derive(Clone, Debug)]
pub struct DerivedImage {
    pub module: Module,
    pub homology: Vec<Homology>,
}

/// The Gorenstein dimension of `P = i_! i^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorensteinDimension {
    /// Both suprema are finite and equal.
    Finite(usize),
    /// Neither side completed within the cutoff.
    AtLeast(usize),
    /// One side is finite, the other did not complete within the cutoff.
    NotIwanagaGorenstein { left: Dimension, right: Dimension },
}

impl GorensteinDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            GorensteinDimension::Finite(n) => Some(n),
            _ => None,
        }
    }
}

/// Coefficient modules, their minimal resolutions and the lifted arrow actions.
#[derive(Debug)]
pub struct AdjointTriple {
    setting: Arc<Setting>,
    cutoff: usize,
    x: Vec<RightModule>,
    inj: Vec<Module>,
    x_res: Vec<Resolution>,
    i_res: Vec<Resolution>,
    /// Per arrow `a: c -> c'`, the map `X_c -> X_c'` (over `C^op`).
    x_maps: Vec<ModuleMap>,
    /// Per arrow `a: e -> e'`, the map `I_e' -> I_e`.
    i_maps: Vec<ModuleMap>,
    x_lifts: Vec<Vec<FreeMap>>,
    i_lifts: Vec<Vec<FreeMap>>,
}

fn sup(dims: impl Iterator<Item = Dimension>) -> Dimension {
    let mut best = Dimension::Finite(0);
    for d in dims {
        best = match (best, d) {
            (Dimension::AtLeast(a), Dimension::AtLeast(b)) => Dimension::AtLeast(a.max(b)),
            (Dimension::AtLeast(a), _) | (_, Dimension::AtLeast(a)) => Dimension::AtLeast(a),
            (Dimension::Finite(a), Dimension::Finite(b)) => Dimension::Finite(a.max(b)),
        };
    }
    best
}

fn sum_offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    let mut acc = 0;
    for s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

impl AdjointTriple {
    pub fn new(setting: &Arc<Setting>, cutoff: usize) -> Result<AdjointTriple> {
        let cat = setting.cat.clone();
        let op = setting.op.clone();
        let n = cat.num_objects();
        let x: Vec<RightModule> = (0..n)
            .map(|c| RightModule::dual_of(&Module::representable(cat.clone(), c), op.clone()))
            .collect::<Result<_>>()?;
        let inj: Vec<Module> = (0..n)
            .map(|e| RightModule::representable(cat.clone(), op.clone(), e).dual())
            .collect();
        let x_res: Vec<Resolution> = x.iter().map(|m| projective_resolution(m.as_left(), cutoff)).collect();
        let i_res: Vec<Resolution> = inj.iter().map(|m| projective_resolution(m, cutoff)).collect();
        let mut x_maps = Vec::with_capacity(cat.num_arrows());
        let mut i_maps = Vec::with_capacity(cat.num_arrows());
        let mut x_lifts = Vec::with_capacity(cat.num_arrows());
        let mut i_lifts = Vec::with_capacity(cat.num_arrows());
        for a in 0..cat.num_arrows() {
            let arrow = cat.arrow(a);
            let (s, t) = (arrow.source, arrow.target);
            let g = cat.arrow_element(a);
            let xc = (0..n)
                .map(|y| cat.right_mult(s, t, y, g).transpose())
                .collect();
            let xm = ModuleMap::new(x[s].as_left().clone(), x[t].as_left().clone(), xc)?;
            x_lifts.push(lift_chain_map(&xm, &x_res[s], &x_res[t], cutoff + 1)?);
            x_maps.push(xm);
            let ic = (0..n).map(|y| cat.left_mult(y, s, t, g).transpose()).collect();
            let im = ModuleMap::new(inj[t].clone(), inj[s].clone(), ic)?;
            i_lifts.push(lift_chain_map(&im, &i_res[t], &i_res[s], cutoff + 1)?);
            i_maps.push(im);
        }
        Ok(AdjointTriple {
            setting: setting.clone(),
            cutoff,
            x,
            inj,
            x_res,
            i_res,
            x_maps,
            i_maps,
            x_lifts,
            i_lifts,
        })
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.setting.cat
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// `X_c = D(C(c, -))`.
    pub fn coefficient(&self, c: usize) -> &RightModule {
        &self.x[c]
    }

    /// `I_e = D(C(-, e))`.
    pub fn injective(&self, e: usize) -> &Module {
        &self.inj[e]
    }

    pub fn coefficient_resolution(&self, c: usize) -> &Resolution {
        &self.x_res[c]
    }

    pub fn injective_resolution(&self, e: usize) -> &Resolution {
        &self.i_res[e]
    }

    /// `pdim X_c` for every object.
    pub fn coefficient_pdims(&self) -> Vec<Dimension> {
        self.x_res.iter().map(Resolution::pdim).collect()
    }

    /// `pdim I_e` for every object.
    pub fn injective_pdims(&self) -> Vec<Dimension> {
        self.i_res.iter().map(Resolution::pdim).collect()
    }

    /// `sup_e pdim I_e` against `sup_c pdim X_c`.
    pub fn gorenstein_dimension(&self) -> Result<GorensteinDimension> {
        let left = sup(self.injective_pdims().into_iter());
        let right = sup(self.coefficient_pdims().into_iter());
        match (left, right) {
            (Dimension::Finite(l), Dimension::Finite(r)) if l == r => Ok(GorensteinDimension::Finite(l)),
            (Dimension::Finite(l), Dimension::Finite(r)) => {
                Err(Error::InconsistentGorensteinDimension { left: l, right: r })
            }
            (Dimension::AtLeast(_), Dimension::AtLeast(_)) => Ok(GorensteinDimension::AtLeast(self.cutoff)),
            _ => Ok(GorensteinDimension::NotIwanagaGorenstein { left, right }),
        }
    }

    fn check_slice(&self, f: &Module) -> Result<()> {
        if crate::module::same_category(f.category(), &self.setting.cat) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    // ----- nu and nu^- on modules over C -----

    pub fn nu_module(&self, f: &Module) -> Result<NuImage> {
        self.check_slice(f)?;
        let cat = &self.setting.cat;
        let tensors: Vec<Tensor> = self.x.iter().map(|x| tensor_over_c(x, f)).collect::<Result<_>>()?;
        let id = ModuleMap::identity(f);
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                tensor_map(&self.x_maps[a], &id, &tensors[arrow.source], &tensors[arrow.target])
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = tensors.iter().map(Tensor::dim).collect();
        Ok(NuImage {
            module: Module::new_unchecked(cat.clone(), dims, arrows)?,
            tensors,
        })
    }

    pub fn nu_map(&self, phi: &ModuleMap, src: &NuImage, dst: &NuImage) -> Result<ModuleMap> {
        let comps = (0..self.x.len())
            .map(|c| {
                let id = ModuleMap::identity(self.x[c].as_left());
                tensor_map(&id, phi, &src.tensors[c], &dst.tensors[c])
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new_unchecked(src.module.clone(), dst.module.clone(), comps)
    }

    pub fn nu_minus_module(&self, g: &Module) -> Result<NuMinusImage> {
        self.check_slice(g)?;
        let cat = &self.setting.cat;
        let homs: Vec<HomSpace> = self.inj.iter().map(|i| hom_over_c(i, g)).collect::<Result<_>>()?;
        let id = ModuleMap::identity(g);
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                hom_map(&self.i_maps[a], &id, &homs[arrow.source], &homs[arrow.target])
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = homs.iter().map(HomSpace::dim).collect();
        Ok(NuMinusImage {
            module: Module::new_unchecked(cat.clone(), dims, arrows)?,
            homs,
        })
    }

    pub fn nu_minus_map(&self, psi: &ModuleMap, src: &NuMinusImage, dst: &NuMinusImage) -> Result<ModuleMap> {
        let comps = (0..self.inj.len())
            .map(|e| {
                let id = ModuleMap::identity(&self.inj[e]);
                hom_map(&id, psi, &src.homs[e], &dst.homs[e])
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new_unchecked(src.module.clone(), dst.module.clone(), comps)
    }

    /// `lambda_F: F -> nu^- nu F`, `v -> (xi -> [xi (x) v])`.
    pub fn unit_lambda_module(&self, f: &Module) -> Result<(ModuleMap, NuImage, NuMinusImage)> {
        let nu = self.nu_module(f)?;
        let back = self.nu_minus_module(&nu.module)?;
        let cat = &self.setting.cat;
        let n = cat.num_objects();
        let field = f.field();
        let mut comps = Vec::with_capacity(n);
        for e in 0..n {
            let mut comp = Matrix::zeros(field, back.module.dim(e), f.dim(e));
            for i in 0..f.dim(e) {
                let family: Vec<Matrix> = (0..n)
                    .map(|x| {
                        let t = &nu.tensors[x];
                        let h = cat.hom_dim(x, e);
                        let mut m = Matrix::zeros(field, t.dim(), h);
                        for k in 0..h {
                            let idx = t.offsets[e] + k * f.dim(e) + i;
                            let col = t.cokernel.projection.select_cols(&[idx]);
                            m.set_block(0, k, &col);
                        }
                        m
                    })
                    .collect();
                let v = back.homs[e].vectorize(&family);
                comp.set_block(0, i, &back.homs[e].kernel.coordinates(&v));
            }
            comps.push(comp);
        }
        let map = ModuleMap::new_unchecked(f.clone(), back.module.clone(), comps)?;
        Ok((map, nu, back))
    }

    /// `sigma_G: nu nu^- G -> G`, `xi (x) psi -> psi(xi)`.
    pub fn counit_sigma_module(&self, g: &Module) -> Result<(ModuleMap, NuMinusImage, NuImage)> {
        let minus = self.nu_minus_module(g)?;
        let nu = self.nu_module(&minus.module)?;
        let cat = &self.setting.cat;
        let n = cat.num_objects();
        let field = g.field();
        let basis_maps: Vec<Vec<Vec<Matrix>>> = (0..n)
            .map(|e| {
                (0..minus.homs[e].dim())
                    .map(|j| minus.homs[e].basis_map(&self.inj[e], g, j))
                    .collect()
            })
            .collect();
        let mut comps = Vec::with_capacity(n);
        for x in 0..n {
            let t = &nu.tensors[x];
            let mut a = Matrix::zeros(field, g.dim(x), t.ambient());
            for e in 0..n {
                let dn = minus.module.dim(e);
                for k in 0..cat.hom_dim(x, e) {
                    for (j, psi) in basis_maps[e].iter().enumerate() {
                        a.set_block(0, t.offsets[e] + k * dn + j, &psi[x].select_cols(&[k]));
                    }
                }
            }
            comps.push(a.mul(&t.cokernel.section)?);
        }
        let map = ModuleMap::new_unchecked(nu.module.clone(), g.clone(), comps)?;
        Ok((map, minus, nu))
    }

    // ----- derived functors on modules over C -----

    /// `L_i nu(F)` with its module structure.
    pub fn left_derived_module(&self, f: &Module, i: usize) -> Result<DerivedImage> {
        self.check_slice(f)?;
        let cat = &self.setting.cat;
        let actions = f.basis_actions();
        let mut homology = Vec::with_capacity(self.x.len());
        for r in &self.x_res {
            let (inc, out) = tor_complex(r, f, &actions, i)?;
            homology.push(Homology::new(&inc, &out)?);
        }
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let (s, t) = (arrow.source, arrow.target);
                // Past a completed resolution both terms are zero.
                let chain = match self.x_lifts[a].get(i) {
                    Some(l) => tensor_free_map(l, f, &actions),
                    None => Matrix::zeros(
                        f.field(),
                        homology[t].cycles.basis.rows(),
                        homology[s].cycles.basis.rows(),
                    ),
                };
                homology[s].induced(&chain, &homology[t])
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = homology.iter().map(Homology::dim).collect();
        Ok(DerivedImage {
            module: Module::new_unchecked(cat.clone(), dims, arrows)?,
            homology,
        })
    }

    /// Dimensions of `L_i nu(F)` per object, without the module structure.
    pub fn left_derived_dims(&self, f: &Module, i: usize) -> Result<Vec<usize>> {
        self.check_slice(f)?;
        let actions = f.basis_actions();
        self.x_res
            .iter()
            .map(|r| {
                let (inc, out) = tor_complex(r, f, &actions, i)?;
                Ok(Homology::new(&inc, &out)?.dim())
            })
            .collect()
    }

    pub fn left_derived_map(&self, phi: &ModuleMap, src: &DerivedImage, dst: &DerivedImage, i: usize) -> Result<ModuleMap> {
        let comps = self
            .x_res
            .iter()
            .enumerate()
            .map(|(c, r)| {
                let chain = match r.term(i) {
                    Some(p) => free_term_map(&p, phi),
                    None => return Err(Error::Inconclusive { degree: i, cutoff: r.cutoff }),
                };
                src.homology[c].induced(&chain, &dst.homology[c])
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new_unchecked(src.module.clone(), dst.module.clone(), comps)
    }

    /// `R^i nu^-(G)` with its module structure.
    pub fn right_derived_module(&self, g: &Module, i: usize) -> Result<DerivedImage> {
        self.check_slice(g)?;
        let cat = &self.setting.cat;
        let actions = g.basis_actions();
        let mut homology = Vec::with_capacity(self.inj.len());
        for r in &self.i_res {
            let (inc, out) = ext_complex(r, g, &actions, i)?;
            homology.push(Homology::new(&inc, &out)?);
        }
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let (s, t) = (arrow.source, arrow.target);
                let chain = match self.i_lifts[a].get(i) {
                    Some(l) => hom_free_map(l, g, &actions),
                    None => Matrix::zeros(
                        g.field(),
                        homology[t].cycles.basis.rows(),
                        homology[s].cycles.basis.rows(),
                    ),
                };
                homology[s].induced(&chain, &homology[t])
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = homology.iter().map(Homology::dim).collect();
        Ok(DerivedImage {
            module: Module::new_unchecked(cat.clone(), dims, arrows)?,
            homology,
        })
    }

    pub fn right_derived_dims(&self, g: &Module, i: usize) -> Result<Vec<usize>> {
        self.check_slice(g)?;
        let actions = g.basis_actions();
        self.i_res
            .iter()
            .map(|r| {
                let (inc, out) = ext_complex(r, g, &actions, i)?;
                Ok(Homology::new(&inc, &out)?.dim())
            })
            .collect()
    }

    pub fn right_derived_map(&self, psi: &ModuleMap, src: &DerivedImage, dst: &DerivedImage, i: usize) -> Result<ModuleMap> {
        let comps = self
            .i_res
            .iter()
            .enumerate()
            .map(|(e, r)| {
                let chain = match r.term(i) {
                    Some(p) => free_term_map(&p, psi),
                    None => return Err(Error::Inconclusive { degree: i, cutoff: r.cutoff }),
                };
                src.homology[e].induced(&chain, &dst.homology[e])
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new_unchecked(src.module.clone(), dst.module.clone(), comps)
    }

    // ----- the I-injective coresolution route for R^i nu^- -----

    /// The unit `G -> i_* i^* G`, `v -> sum_u u* (x) G(u) v`, over `C`.
    pub fn injective_unit(&self, g: &Module) -> Result<ModuleMap> {
        let cat = &self.setting.cat;
        let n = cat.num_objects();
        let dims: Vec<usize> = (0..n)
            .map(|x| (0..n).map(|c| cat.hom_dim(x, c) * g.dim(c)).sum())
            .collect();
        let field = g.field();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let (x, y) = (arrow.source, arrow.target);
                let mut m = Matrix::zeros(field, dims[y], dims[x]);
                let (mut ro, mut co) = (0, 0);
                for c in 0..n {
                    let block = self.inj[c]
                        .arrow_matrix(a)
                        .kronecker_product(&Matrix::identity(field, g.dim(c)))?;
                    m.set_block(ro, co, &block);
                    ro += cat.hom_dim(y, c) * g.dim(c);
                    co += cat.hom_dim(x, c) * g.dim(c);
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let target = Module::new_unchecked(cat.clone(), dims.clone(), arrows)?;
        let actions = g.basis_actions();
        let comps = (0..n)
            .map(|x| {
                let mut m = Matrix::zeros(field, dims[x], g.dim(x));
                let mut ro = 0;
                for c in 0..n {
                    for k in 0..cat.hom_dim(x, c) {
                        m.set_block(ro, 0, actions.get(x, c, k));
                        ro += g.dim(c);
                    }
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(g.clone(), target, comps)
    }

    /// `R^i nu^-(G)` dimensions from an I-injective coresolution of `G`.
    pub fn right_derived_dims_by_coresolution(&self, g: &Module, i: usize) -> Result<Vec<usize>> {
        // 0 -> G -> J^0 -> J^1 -> ...; keep the maps J^k -> J^{k+1}.
        let mut maps: Vec<ModuleMap> = Vec::new();
        let eta = self.injective_unit(g)?;
        let (mut cok, mut proj) = eta.cokernel();
        while maps.len() <= i {
            let next = self.injective_unit(&cok)?;
            maps.push(proj.then(&next)?);
            let (c2, p2) = next.cokernel();
            cok = c2;
            proj = p2;
        }
        // Apply nu^- to J^{i-1} -> J^i -> J^{i+1}.
        let j_i = maps[i].source().clone();
        let img_i = self.nu_minus_module(&j_i)?;
        let img_next = self.nu_minus_module(maps[i].target())?;
        let out = self.nu_minus_map(&maps[i], &img_i, &img_next)?;
        let inc: Vec<Matrix> = if i == 0 {
            (0..self.inj.len())
                .map(|e| Matrix::zeros(g.field(), img_i.module.dim(e), 0))
                .collect()
        } else {
            let img_prev = self.nu_minus_module(maps[i - 1].source())?;
            self.nu_minus_map(&maps[i - 1], &img_prev, &img_i)?.components().to_vec()
        };
        (0..self.inj.len())
            .map(|e| Ok(Homology::new(&inc[e], out.component(e))?.dim()))
            .collect()
    }

    // ----- i_!, i^*, i_* -----

    /// `i_!((B^c)_c) = (+)_c C(c, -) (x) B^c`, blocks ordered by `c`, generator-major.
    pub fn i_shriek(&self, parts: &[Module]) -> Result<Representation> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        self.check_parts(parts)?;
        let field = s.field();
        let slices = (0..s.base_objects())
            .map(|b| {
                let dims: Vec<usize> = (0..n)
                    .map(|y| (0..n).map(|c| parts[c].dim(b) * cat.hom_dim(c, y)).sum())
                    .collect();
                let arrows = (0..cat.num_arrows())
                    .map(|a| {
                        let arrow = cat.arrow(a);
                        let (y, y2) = (arrow.source, arrow.target);
                        let mut m = Matrix::zeros(field, dims[y2], dims[y]);
                        let (mut ro, mut co) = (0, 0);
                        for (c, part) in parts.iter().enumerate() {
                            let lm = cat.left_mult(c, y, y2, cat.arrow_element(a));
                            let block = Matrix::identity(field, part.dim(b)).kronecker_product(&lm)?;
                            m.set_block(ro, co, &block);
                            ro += block.rows();
                            co += block.cols();
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Module::new_unchecked(cat.clone(), dims, arrows)
            })
            .collect::<Result<Vec<_>>>()?;
        let base_maps = (0..s.base.num_arrows())
            .map(|beta| {
                (0..n)
                    .map(|y| {
                        let blocks: Vec<Matrix> = parts
                            .iter()
                            .enumerate()
                            .map(|(c, part)| {
                                part.arrow_matrix(beta)
                                    .kronecker_product(&Matrix::identity(field, cat.hom_dim(c, y)))
                            })
                            .collect::<core::result::Result<_, _>>()?;
                        block_diagonal(field, &blocks)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::from_slices(s, &slices, &base_maps)
    }

    /// `i^*(F) = (F(c))_c`.
    pub fn i_star_restrict(&self, f: &Representation) -> Vec<Module> {
        (0..self.setting.cat.num_objects()).map(|c| f.component(c)).collect()
    }

    /// `i_*((D^c)_c) = (+)_c I_c (x) D^c`.
    pub fn i_star_right(&self, parts: &[Module]) -> Result<Representation> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        self.check_parts(parts)?;
        let field = s.field();
        let slices = (0..s.base_objects())
            .map(|b| {
                let dims: Vec<usize> = (0..n)
                    .map(|x| (0..n).map(|c| cat.hom_dim(x, c) * parts[c].dim(b)).sum())
                    .collect();
                let arrows = (0..cat.num_arrows())
                    .map(|a| {
                        let blocks: Vec<Matrix> = parts
                            .iter()
                            .enumerate()
                            .map(|(c, part)| {
                                self.inj[c]
                                    .arrow_matrix(a)
                                    .kronecker_product(&Matrix::identity(field, part.dim(b)))
                            })
                            .collect::<core::result::Result<_, _>>()?;
                        block_diagonal(field, &blocks)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Module::new_unchecked(cat.clone(), dims, arrows)
            })
            .collect::<Result<Vec<_>>>()?;
        let base_maps = (0..s.base.num_arrows())
            .map(|beta| {
                (0..n)
                    .map(|x| {
                        let blocks: Vec<Matrix> = parts
                            .iter()
                            .enumerate()
                            .map(|(c, part)| {
                                Matrix::identity(field, cat.hom_dim(x, c)).kronecker_product(part.arrow_matrix(beta))
                            })
                            .collect::<core::result::Result<_, _>>()?;
                        block_diagonal(field, &blocks)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::from_slices(s, &slices, &base_maps)
    }

    fn check_parts(&self, parts: &[Module]) -> Result<()> {
        let s = &self.setting;
        if parts.len() != s.cat.num_objects() {
            return Err(Error::Shape(alloc::format!(
                "{} parts for {} objects",
                parts.len(),
                s.cat.num_objects()
            )));
        }
        for p in parts {
            if !crate::module::same_category(p.category(), &s.base) {
                return Err(Error::CategoryMismatch);
            }
        }
        Ok(())
    }

    /// `i_!` on a family of base maps.
    pub fn i_shriek_map(&self, src: &[Module], dst: &[Module], maps: &[ModuleMap]) -> Result<ModuleMap> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        let source = self.i_shriek(src)?;
        let target = self.i_shriek(dst)?;
        let field = s.field();
        let mut comps = vec![Matrix::zeros(field, 0, 0); s.total.num_objects()];
        for y in 0..n {
            for b in 0..s.base_objects() {
                let blocks: Vec<Matrix> = maps
                    .iter()
                    .enumerate()
                    .map(|(c, m)| m.component(b).kronecker_product(&Matrix::identity(field, cat.hom_dim(c, y))))
                    .collect::<core::result::Result<_, _>>()?;
                comps[s.object(y, b)] = block_diagonal(field, &blocks)?;
            }
        }
        ModuleMap::new_unchecked(source.module().clone(), target.module().clone(), comps)
    }

    /// The counit `i_! i^* F -> F`, `v (x) u -> F(u) v`.
    pub fn counit_epsilon(&self, f: &Representation) -> Result<ModuleMap> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        let source = self.i_shriek(&self.i_star_restrict(f))?;
        let field = s.field();
        let mut comps = vec![Matrix::zeros(field, 0, 0); s.total.num_objects()];
        for b in 0..s.base_objects() {
            let slice = f.slice(b);
            let actions = slice.basis_actions();
            for y in 0..n {
                let mut m = Matrix::zeros(field, slice.dim(y), 0);
                for c in 0..n {
                    for v in 0..slice.dim(c) {
                        for u in 0..cat.hom_dim(c, y) {
                            m = m.hstack(&actions.get(c, y, u).select_cols(&[v]))?;
                        }
                    }
                }
                comps[s.object(y, b)] = m;
            }
        }
        ModuleMap::new_unchecked(source.module().clone(), f.module().clone(), comps)
    }

    /// The unit `D^c -> (i^* i_! D)(c)`, `v -> v (x) id_c`, as base maps per object.
    pub fn unit_eta(&self, parts: &[Module]) -> Result<Vec<ModuleMap>> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        let image = self.i_star_restrict(&self.i_shriek(parts)?);
        let field = s.field();
        (0..n)
            .map(|c| {
                let comps = (0..s.base_objects())
                    .map(|b| {
                        let off: usize = (0..c).map(|c2| parts[c2].dim(b) * cat.hom_dim(c2, c)).sum();
                        let h = cat.hom_dim(c, c);
                        let mut m = Matrix::zeros(field, image[c].dim(b), parts[c].dim(b));
                        for v in 0..parts[c].dim(b) {
                            m.set_block(
                                off + v * h + cat.identity_index(c),
                                v,
                                &Matrix::identity(field, 1),
                            );
                        }
                        m
                    })
                    .collect();
                ModuleMap::new_unchecked(parts[c].clone(), image[c].clone(), comps)
            })
            .collect()
    }

    /// The co-Yoneda isomorphism `i_*(D) -> nu(i_!(D))`.
    pub fn nu_i_shriek_iso(&self, parts: &[Module]) -> Result<ModuleMap> {
        let s = &self.setting;
        let cat = &s.cat;
        let n = cat.num_objects();
        let shriek = self.i_shriek(parts)?;
        let star = self.i_star_right(parts)?;
        let nu = self.nu(&shriek)?;
        let field = s.field();
        let mut comps = vec![Matrix::zeros(field, 0, 0); s.total.num_objects()];
        for b in 0..s.base_objects() {
            let slice = shriek.slice(b);
            let image = self.nu_module(&slice)?;
            for x in 0..n {
                let t = &image.tensors[x];
                let mut m = Matrix::zeros(field, t.dim(), star.dim(x, b));
                let mut col = 0;
                for c in 0..n {
                    let inner: usize = (0..c).map(|c2| parts[c2].dim(b) * cat.hom_dim(c2, c)).sum();
                    let h = cat.hom_dim(c, c);
                    for k in 0..cat.hom_dim(x, c) {
                        for v in 0..parts[c].dim(b) {
                            let idx = t.offsets[c] + k * slice.dim(c) + inner + v * h + cat.identity_index(c);
                            m.set_block(0, col, &t.cokernel.projection.select_cols(&[idx]));
                            col += 1;
                        }
                    }
                }
                comps[s.object(x, b)] = m;
            }
        }
        ModuleMap::new(star.module().clone(), nu.module().clone(), comps)
    }

    // ----- functors on representations, applied slice by slice -----

    pub fn nu(&self, f: &Representation) -> Result<Representation> {
        let images: Vec<NuImage> = f.slices().iter().map(|m| self.nu_module(m)).collect::<Result<_>>()?;
        let base_maps = self.base_maps(f, |phi, b0, b1| Ok(self.nu_map(phi, &images[b0], &images[b1])?))?;
        let slices: Vec<Module> = images.into_iter().map(|i| i.module).collect();
        Representation::from_slices(&self.setting, &slices, &base_maps)
    }

    pub fn nu_minus(&self, g: &Representation) -> Result<Representation> {
        let images: Vec<NuMinusImage> = g.slices().iter().map(|m| self.nu_minus_module(m)).collect::<Result<_>>()?;
        let base_maps = self.base_maps(g, |psi, b0, b1| Ok(self.nu_minus_map(psi, &images[b0], &images[b1])?))?;
        let slices: Vec<Module> = images.into_iter().map(|i| i.module).collect();
        Representation::from_slices(&self.setting, &slices, &base_maps)
    }

    pub fn left_derived_nu(&self, f: &Representation, i: usize) -> Result<Representation> {
        let images: Vec<DerivedImage> = f
            .slices()
            .iter()
            .map(|m| self.left_derived_module(m, i))
            .collect::<Result<_>>()?;
        let base_maps = self.base_maps(f, |phi, b0, b1| self.left_derived_map(phi, &images[b0], &images[b1], i))?;
        let slices: Vec<Module> = images.into_iter().map(|i| i.module).collect();
        Representation::from_slices(&self.setting, &slices, &base_maps)
    }

    pub fn right_derived_nu_minus(&self, g: &Representation, i: usize) -> Result<Representation> {
        let images: Vec<DerivedImage> = g
            .slices()
            .iter()
            .map(|m| self.right_derived_module(m, i))
            .collect::<Result<_>>()?;
        let base_maps = self.base_maps(g, |psi, b0, b1| self.right_derived_map(psi, &images[b0], &images[b1], i))?;
        let slices: Vec<Module> = images.into_iter().map(|i| i.module).collect();
        Representation::from_slices(&self.setting, &slices, &base_maps)
    }

    /// Dimensions `L_i nu(F)(c, b)` indexed by total object.
    pub fn left_derived_nu_dims(&self, f: &Representation, i: usize) -> Result<Vec<usize>> {
        self.slicewise_dims(f, |m| self.left_derived_dims(m, i))
    }

    pub fn right_derived_nu_minus_dims(&self, g: &Representation, i: usize) -> Result<Vec<usize>> {
        self.slicewise_dims(g, |m| self.right_derived_dims(m, i))
    }

    /// `lambda_F` over the total category.
    pub fn unit_lambda(&self, f: &Representation) -> Result<ModuleMap> {
        let s = &self.setting;
        let slices = f.slices();
        let lambdas: Vec<ModuleMap> = slices
            .iter()
            .map(|m| self.unit_lambda_module(m).map(|t| t.0))
            .collect::<Result<_>>()?;
        let target = self.nu_minus(&self.nu(f)?)?;
        let mut comps = vec![Matrix::zeros(s.field(), 0, 0); s.total.num_objects()];
        for (b, l) in lambdas.iter().enumerate() {
            for c in 0..s.cat.num_objects() {
                comps[s.object(c, b)] = l.component(c).clone();
            }
        }
        ModuleMap::new_unchecked(f.module().clone(), target.module().clone(), comps)
    }

    fn slicewise_dims(&self, f: &Representation, per: impl Fn(&Module) -> Result<Vec<usize>>) -> Result<Vec<usize>> {
        let s = &self.setting;
        let mut out = vec![0; s.total.num_objects()];
        for (b, m) in f.slices().iter().enumerate() {
            for (c, d) in per(m)?.into_iter().enumerate() {
                out[s.object(c, b)] = d;
            }
        }
        Ok(out)
    }

    fn base_maps(
        &self,
        f: &Representation,
        apply: impl Fn(&ModuleMap, usize, usize) -> Result<ModuleMap>,
    ) -> Result<Vec<Vec<Matrix>>> {
        let s = &self.setting;
        (0..s.base.num_arrows())
            .map(|beta| {
                let arrow = s.base.arrow(beta);
                let mapped = apply(&f.base_map(beta), arrow.source, arrow.target)?;
                Ok(mapped.components().to_vec())
            })
            .collect()
    }
}

fn block_diagonal(field: crate::scalar::Field, blocks: &[Matrix]) -> Result<Matrix> {
    let rows = sum_offsets(blocks.iter().map(Matrix::rows));
    let cols = sum_offsets(blocks.iter().map(Matrix::cols));
    let mut m = Matrix::zeros(field, rows[blocks.len()], cols[blocks.len()]);
    for (k, b) in blocks.iter().enumerate() {
        m.set_block(rows[k], cols[k], b);
    }
    Ok(m)
}
