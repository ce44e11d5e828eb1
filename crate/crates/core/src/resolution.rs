//! Projective covers, minimal projective resolutions and chain-map lifting.
//!
//! Free modules are sums of representables `D(c_j, -)`. A map between free modules
//! is stored by the images of the generators: generator `j` of the source goes to an
//! element of `(+)_i D(d_i, c_j)` in the target.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::{LinalgError, Matrix};
use crate::module::{Module, ModuleMap};

/// `(+)_j D(c_j, -)`, generators in the stored order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    cat: Arc<Category>,
    gens: Vec<usize>,
}

impl FreeModule {
    pub fn new(cat: Arc<Category>, gens: Vec<usize>) -> FreeModule {
        FreeModule { cat, gens }
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Offset of generator `j`'s block inside the space at `y`.
    pub fn block_offsets(&self, y: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.gens.len() + 1);
        let mut acc = 0;
        for &c in &self.gens {
            out.push(acc);
            acc += self.cat.hom_dim(c, y);
        }
        out.push(acc);
        out
    }

    pub fn dim(&self, y: usize) -> usize {
        self.gens.iter().map(|&c| self.cat.hom_dim(c, y)).sum()
    }

    pub fn module(&self) -> Module {
        let cat = &self.cat;
        let n = cat.num_objects();
        let dims: Vec<usize> = (0..n).map(|y| self.dim(y)).collect();
        let arrows = (0..cat.num_arrows())
            .map(|a| {
                let arrow = cat.arrow(a);
                let mut m = Matrix::zeros(cat.field(), dims[arrow.target], dims[arrow.source]);
                let (so, to) = (self.block_offsets(arrow.source), self.block_offsets(arrow.target));
                for (j, &c) in self.gens.iter().enumerate() {
                    let block = cat.left_mult(c, arrow.source, arrow.target, cat.arrow_element(a));
                    m.set_block(to[j], so[j], &block);
                }
                m
            })
            .collect();
        Module::new_unchecked(cat.clone(), dims, arrows).expect("free module shapes")
    }

    /// Block `(i)` of an element of the space at `y`, as an element of `D(c_i, y)`.
    pub fn component(&self, y: usize, v: &Matrix, i: usize) -> Matrix {
        let off = self.block_offsets(y);
        let rows: Vec<usize> = (off[i]..off[i + 1]).collect();
        v.select_rows(&rows)
    }
}

/// A morphism of free modules given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    /// `images[j]` is a column in the target space at `source.gens[j]`.
    pub images: Vec<Matrix>,
}

impl FreeMap {
    /// The coefficient vector of `images[j]` in the summand `D(d_i, c_j)`.
    pub fn entry(&self, i: usize, j: usize) -> Matrix {
        self.target.component(self.source.gens[j], &self.images[j], i)
    }

    /// Component of the induced module map at object `y`.
    pub fn component_at(&self, y: usize) -> Matrix {
        let cat = &self.source.cat;
        let (so, to) = (self.source.block_offsets(y), self.target.block_offsets(y));
        let mut m = Matrix::zeros(cat.field(), to[self.target.rank()], so[self.source.rank()]);
        for (j, &c) in self.source.gens.iter().enumerate() {
            for (i, &d) in self.target.gens.iter().enumerate() {
                let h = self.entry(i, j);
                if h.is_zero() {
                    continue;
                }
                // u in D(c_j, y) goes to u o h in D(d_i, y).
                m.set_block(to[i], so[j], &cat.right_mult(d, c, y, &h));
            }
        }
        m
    }

    pub fn module_map(&self) -> ModuleMap {
        let n = self.source.cat.num_objects();
        ModuleMap::new_unchecked(
            self.source.module(),
            self.target.module(),
            (0..n).map(|y| self.component_at(y)).collect(),
        )
        .expect("free map shapes")
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> FreeMap {
        let images = source
            .gens
            .iter()
            .map(|&c| Matrix::zeros(source.cat.field(), target.dim(c), 1))
            .collect();
        FreeMap {
            source,
            target,
            images,
        }
    }
}

/// A projective cover `(+)_j D(c_j, -) -> M`, generator `j` sent to `vectors[j]`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub free: FreeModule,
    pub vectors: Vec<Matrix>,
    pub epi: ModuleMap,
}

/// The map `(+)_j D(c_j, -) -> M` sending generator `j` to `vectors[j]` in `M(c_j)`.
pub fn map_from_free(free: &FreeModule, vectors: &[Matrix], m: &Module) -> ModuleMap {
    let cat = m.category();
    let actions = m.basis_actions();
    let n = cat.num_objects();
    let comps = (0..n)
        .map(|y| {
            let off = free.block_offsets(y);
            let mut comp = Matrix::zeros(m.field(), m.dim(y), off[free.rank()]);
            for (j, &c) in free.gens.iter().enumerate() {
                for u in 0..cat.hom_dim(c, y) {
                    let col = actions.get(c, y, u).mul(&vectors[j]).expect("shape");
                    comp.set_block(0, off[j] + u, &col);
                }
            }
            comp
        })
        .collect();
    ModuleMap::new_unchecked(free.module(), m.clone(), comps).expect("cover shapes")
}

/// Minimal projective cover; generators ordered by object, then basis position.
pub fn projective_cover(m: &Module) -> Cover {
    projective_cover_padded(m, &[])
}

/// A cover with extra generators `(object, vector)` appended after the minimal ones.
pub fn projective_cover_padded(m: &Module, extra: &[(usize, Matrix)]) -> Cover {
    let cat = m.category().clone();
    let field = m.field();
    let mut gens = Vec::new();
    let mut vectors = Vec::new();
    for x in 0..cat.num_objects() {
        let mut span = m.radical_span(x);
        let mut rank = span.rank();
        for i in 0..m.dim(x) {
            if rank == m.dim(x) {
                break;
            }
            let e = Matrix::unit_column(field, m.dim(x), i);
            let candidate = span.hstack(&e).expect("rows");
            let r = candidate.rank();
            if r > rank {
                span = candidate;
                rank = r;
                gens.push(x);
                vectors.push(e);
            }
        }
    }
    for (x, v) in extra {
        gens.push(*x);
        vectors.push(v.clone());
    }
    let free = FreeModule::new(cat, gens);
    let epi = map_from_free(&free, &vectors, m);
    Cover { free, vectors, epi }
}

/// A projective resolution `... -> P_1 -> P_0 -> M`, truncated at the cutoff.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub terms: Vec<FreeModule>,
    /// `differentials[k]` is `d_{k+1}: P_{k+1} -> P_k`.
    pub differentials: Vec<FreeMap>,
    /// Generator images of `P_0 -> M`.
    pub augmentation: Vec<Matrix>,
    /// `syzygies[k]` is the kernel of `P_k -> P_{k-1}` (of the augmentation for k = 0).
    pub syzygies: Vec<Module>,
    pub cutoff: usize,
    /// The last computed kernel is zero, so `P_k = 0` beyond the computed terms.
    pub completed: bool,
}

/// A projective dimension or a lower bound when the cutoff was reached first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Finite(usize),
    AtLeast(usize),
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::AtLeast(_) => None,
        }
    }
}

impl core::fmt::Display for Dimension {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl Resolution {
    /// Length of the resolution when completed.
    pub fn pdim(&self) -> Dimension {
        if self.completed {
            Dimension::Finite(self.terms.len().saturating_sub(1))
        } else {
            Dimension::AtLeast(self.cutoff)
        }
    }

    /// Number of computed terms `P_0..P_{n}`.
    pub fn computed(&self) -> usize {
        self.terms.len()
    }

    /// `d_k: P_k -> P_{k-1}` for `k >= 1`; zero maps past a completed end.
    /// `None` when the term is beyond the truncation.
    pub fn differential(&self, k: usize) -> Option<FreeMap> {
        assert!(k >= 1);
        if k <= self.differentials.len() {
            return Some(self.differentials[k - 1].clone());
        }
        if self.completed {
            let src = FreeModule::new(self.module.category().clone(), Vec::new());
            let tgt = self.term(k - 1)?;
            return Some(FreeMap::zero(src, tgt));
        }
        None
    }

    /// `P_k`, empty beyond a completed end, `None` beyond the truncation.
    pub fn term(&self, k: usize) -> Option<FreeModule> {
        if k < self.terms.len() {
            Some(self.terms[k].clone())
        } else if self.completed {
            Some(FreeModule::new(self.module.category().clone(), Vec::new()))
        } else {
            None
        }
    }
}

/// Minimal projective resolution computing `P_0, ..., P_cutoff`.
pub fn projective_resolution(m: &Module, cutoff: usize) -> Resolution {
    resolve(m, cutoff, &[])
}

/// Resolution whose first cover carries extra generators; later stages are minimal.
pub fn projective_resolution_padded(m: &Module, cutoff: usize, extra: &[(usize, Matrix)]) -> Resolution {
    resolve(m, cutoff, extra)
}

fn resolve(m: &Module, cutoff: usize, extra: &[(usize, Matrix)]) -> Resolution {
    let cover = projective_cover_padded(m, extra);
    let (mut kernel, mut incl) = cover.epi.kernel();
    let mut terms = vec![cover.free.clone()];
    let mut differentials = Vec::new();
    let mut syzygies = vec![kernel.clone()];
    let augmentation = cover.vectors;
    let mut completed = kernel.is_zero();
    while !completed && terms.len() <= cutoff {
        let prev = terms.last().expect("nonempty").clone();
        let cover = projective_cover(&kernel);
        let images: Vec<Matrix> = cover
            .free
            .gens
            .iter()
            .zip(&cover.vectors)
            .map(|(&c, v)| incl.component(c).mul(v).expect("shape"))
            .collect();
        differentials.push(FreeMap {
            source: cover.free.clone(),
            target: prev,
            images,
        });
        let (k2, i2) = cover.epi.kernel();
        // The new kernel sits inside P_k; its inclusion is the kernel basis itself.
        terms.push(cover.free);
        completed = k2.is_zero();
        syzygies.push(k2.clone());
        kernel = k2;
        incl = i2;
    }
    Resolution {
        module: m.clone(),
        terms,
        differentials,
        augmentation,
        syzygies,
        cutoff,
        completed,
    }
}

fn solve_at(map: &Matrix, target: &Matrix) -> Result<Matrix> {
    map.solve(target).map_err(|e| match e {
        LinalgError::NoSolution => Error::Invalid("chain map does not lift".into()),
        other => Error::Linalg(other),
    })
}

/// Lifts `f: M -> N` to free maps `f_k: P_k -> Q_k` for `k < degrees`.
///
/// Fails with `Inconclusive` when a needed term of either resolution was truncated.
pub fn lift_chain_map(f: &ModuleMap, src: &Resolution, dst: &Resolution, degrees: usize) -> Result<Vec<FreeMap>> {
    let mut out: Vec<FreeMap> = Vec::with_capacity(degrees);
    let dst_aug = map_from_free(&dst.terms[0], &dst.augmentation, &dst.module);
    for k in 0..degrees {
        let p = src.term(k).ok_or(Error::Inconclusive { degree: k, cutoff: src.cutoff })?;
        let q = dst.term(k).ok_or(Error::Inconclusive { degree: k, cutoff: dst.cutoff })?;
        let mut images = Vec::with_capacity(p.rank());
        if k == 0 {
            for (j, &c) in p.gens.iter().enumerate() {
                let want = f.component(c).mul(&src.augmentation[j])?;
                images.push(solve_at(dst_aug.component(c), &want)?);
            }
        } else {
            let dp = src.differential(k).expect("term exists");
            let dq = dst.differential(k).ok_or(Error::Inconclusive { degree: k, cutoff: dst.cutoff })?;
            let prev = out[k - 1].clone();
            for (j, &c) in p.gens.iter().enumerate() {
                let want = prev.component_at(c).mul(&dp.images[j])?;
                if q.rank() == 0 {
                    if !want.is_zero() {
                        return Err(Error::Invalid("chain map does not lift".into()));
                    }
                    images.push(Matrix::zeros(f.source().field(), 0, 1));
                } else {
                    images.push(solve_at(&dq.component_at(c), &want)?);
                }
            }
        }
        out.push(FreeMap {
            source: p,
            target: q,
            images,
        });
    }
    Ok(out)
}
