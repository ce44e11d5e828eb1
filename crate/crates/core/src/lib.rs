//! Exact computation of the Nakayama functor of a finite bound quiver category,
//! its derived functors, and Gorenstein projectivity certificates.
#![no_std]

extern crate alloc;

pub mod category;
pub mod derived;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod gorenstein;
pub mod linalg;
pub mod module;
pub mod nakayama;
pub mod representation;
pub mod resolution;
pub mod scalar;

pub use category::{build_category, Arrow, Category, CategoryError, Path, Quiver, Relation};
pub use derived::{ext, free_term_map, hom_free_map, tensor_free_map, tor, tor_table, Homology};
pub use error::{Error, Result};
pub use functor::{hom_map, hom_over_c, tensor_map, tensor_over_c, HomSpace, Tensor};
pub use gorenstein::{
    base_gp, counit_splits, discrepancy_probe, gp_resolution_dimension, is_gp_functor, is_gproj_p, is_gproj_p_with,
    is_monic, lifted_class_membership, loop_witnesses, self_injective_dimension, swap_factors, totally_acyclic_window,
    BaseGorensteinProfile, FClass, GpDimension, Hypothesis, IsoFailure, Membership, Route, TableEntry, Verdict,
    WindowRecord, Witness, XClass,
};
pub use linalg::{Cokernel, Kernel, LinalgError, Matrix, Rref};
pub use module::{BasisActions, Module, ModuleMap, RightModule};
pub use resolution::{
    lift_chain_map, map_from_free, projective_cover, projective_cover_padded, projective_resolution,
    projective_resolution_padded, Cover, Dimension, FreeMap, FreeModule, Resolution,
};
pub use nakayama::{AdjointTriple, DerivedImage, GorensteinDimension, NuImage, NuMinusImage};
pub use representation::{assemble_map, point_category, slice_map, Representation, Setting};
pub use scalar::{Field, FieldError, Scalar, ScalarError};
