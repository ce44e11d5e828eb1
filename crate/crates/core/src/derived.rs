//! Tor and Ext from projective resolutions, with induced maps on homology.
//!
//! For a resolution `P` of a right module over `C` (computed over `C^op`) and a left
//! module `F`, `P_k (x)_C F = (+)_j F(c_j)` and a free map with coefficients
//! `h_ij` in `C(c_j, d_i)` becomes the block matrix `(F(h_ij))`. For a resolution of
//! a left module and a left module `G`, `Hom_C(P_k, G) = (+)_j G(c_j)` and a free map
//! becomes the transposed block pattern `(G(h_ij))_{j,i}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Cokernel, Kernel, Matrix};
use crate::module::{BasisActions, Module, ModuleMap};
use crate::resolution::{FreeMap, FreeModule, Resolution};

/// `ker(out) / im(inc)` with chosen bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub cycles: Kernel,
    pub quotient: Cokernel,
}

impl Homology {
    /// `inc: U -> V`, `out: V -> W`; requires `out * inc = 0`.
    pub fn new(inc: &Matrix, out: &Matrix) -> Result<Homology> {
        let composite = out.mul(inc)?;
        if !composite.is_zero() {
            return Err(Error::Invalid("complex does not square to zero".into()));
        }
        let cycles = out.rank_and_kernel();
        let boundaries = cycles.coordinates(inc);
        let quotient = boundaries.cokernel_projection();
        Ok(Homology { cycles, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim
    }

    /// Cycles representing the homology basis, as columns in the ambient space.
    pub fn representatives(&self) -> Matrix {
        self.cycles
            .basis
            .mul(&self.quotient.section)
            .expect("shapes agree")
    }

    /// Homology class of a cycle.
    pub fn class_of(&self, v: &Matrix) -> Matrix {
        self.quotient
            .projection
            .mul(&self.cycles.coordinates(v))
            .expect("shapes agree")
    }

    /// Map on homology induced by a chain map component `chain: V -> V'`.
    pub fn induced(&self, chain: &Matrix, target: &Homology) -> Result<Matrix> {
        let moved = chain.mul(&self.representatives())?;
        Ok(target.class_of(&moved))
    }
}

fn term_dim(p: &FreeModule, f: &Module) -> usize {
    p.gens().iter().map(|&c| f.dim(c)).sum()
}

fn offsets(p: &FreeModule, f: &Module) -> Vec<usize> {
    let mut out = Vec::with_capacity(p.rank() + 1);
    let mut acc = 0;
    for &c in p.gens() {
        out.push(acc);
        acc += f.dim(c);
    }
    out.push(acc);
    out
}

/// `h (x) F` for a free map over `C^op`: `(+)_j F(c_j) -> (+)_i F(d_i)`.
pub fn tensor_free_map(h: &FreeMap, f: &Module, actions: &BasisActions) -> Matrix {
    let (so, to) = (offsets(&h.source, f), offsets(&h.target, f));
    let mut m = Matrix::zeros(f.field(), to[h.target.rank()], so[h.source.rank()]);
    for (j, &c) in h.source.gens().iter().enumerate() {
        for (i, &d) in h.target.gens().iter().enumerate() {
            let e = h.entry(i, j);
            if !e.is_zero() {
                m.set_block(to[i], so[j], &f.element_action(actions, c, d, &e));
            }
        }
    }
    m
}

/// `Hom(h, G)` for a free map over `C`: `(+)_i G(d_i) -> (+)_j G(c_j)`.
pub fn hom_free_map(h: &FreeMap, g: &Module, actions: &BasisActions) -> Matrix {
    let (so, to) = (offsets(&h.source, g), offsets(&h.target, g));
    let mut m = Matrix::zeros(g.field(), so[h.source.rank()], to[h.target.rank()]);
    for (j, &c) in h.source.gens().iter().enumerate() {
        for (i, &d) in h.target.gens().iter().enumerate() {
            let e = h.entry(i, j);
            if !e.is_zero() {
                m.set_block(so[j], to[i], &g.element_action(actions, d, c, &e));
            }
        }
    }
    m
}

/// `P (x) phi` or `Hom(P, phi)`: the block diagonal of `phi` over the generators.
pub fn free_term_map(p: &FreeModule, phi: &ModuleMap) -> Matrix {
    let (src, dst) = (phi.source(), phi.target());
    let (so, to) = (offsets(p, src), offsets(p, dst));
    let mut m = Matrix::zeros(src.field(), to[p.rank()], so[p.rank()]);
    for (j, &c) in p.gens().iter().enumerate() {
        m.set_block(to[j], so[j], phi.component(c));
    }
    m
}

fn blocked(degree: usize, res: &Resolution) -> Error {
    Error::Inconclusive {
        degree,
        cutoff: res.cutoff,
    }
}

/// The complex `P (x) F` around degree `i`: `(d_{i+1}, d_i)`.
pub fn tor_complex(res: &Resolution, f: &Module, actions: &BasisActions, i: usize) -> Result<(Matrix, Matrix)> {
    let p_i = res.term(i).ok_or_else(|| blocked(i, res))?;
    let d_in = res.differential(i + 1).ok_or_else(|| blocked(i, res))?;
    let inc = tensor_free_map(&d_in, f, actions);
    let out = if i == 0 {
        Matrix::zeros(f.field(), 0, term_dim(&p_i, f))
    } else {
        tensor_free_map(&res.differential(i).expect("term exists"), f, actions)
    };
    Ok((inc, out))
}

/// `Tor_i(M, F)` for a resolution of `M` over `C^op`.
pub fn tor(res: &Resolution, f: &Module, i: usize) -> Result<Homology> {
    let (inc, out) = tor_complex(res, f, &f.basis_actions(), i)?;
    Homology::new(&inc, &out)
}

/// The complex `Hom(P, G)` around degree `i`: `(delta^i, delta^{i+1})`.
pub fn ext_complex(res: &Resolution, g: &Module, actions: &BasisActions, i: usize) -> Result<(Matrix, Matrix)> {
    let p_i = res.term(i).ok_or_else(|| blocked(i, res))?;
    let d_out = res.differential(i + 1).ok_or_else(|| blocked(i, res))?;
    let out = hom_free_map(&d_out, g, actions);
    let inc = if i == 0 {
        Matrix::zeros(g.field(), term_dim(&p_i, g), 0)
    } else {
        hom_free_map(&res.differential(i).expect("term exists"), g, actions)
    };
    Ok((inc, out))
}

/// `Ext^i(M, G)` for a resolution of `M` over `C`.
pub fn ext(res: &Resolution, g: &Module, i: usize) -> Result<Homology> {
    let (inc, out) = ext_complex(res, g, &g.basis_actions(), i)?;
    Homology::new(&inc, &out)
}

/// Dimensions of `Tor_0..Tor_max`, stopping at the first blocked degree.
pub fn tor_table(res: &Resolution, f: &Module, max: usize) -> Result<Vec<usize>> {
    let actions = f.basis_actions();
    (0..=max)
        .map(|i| {
            let (inc, out) = tor_complex(res, f, &actions, i)?;
            Ok(Homology::new(&inc, &out)?.dim())
        })
        .collect()
}
