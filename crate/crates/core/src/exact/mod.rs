//! Exact rational linear and multilinear algebra.

pub mod linalg;
pub mod scalar;
pub mod sweedler;
pub mod tensor;

pub use linalg::{solve_affine, solve_linear, LinearMap, Vector};
pub use scalar::{ParseScalarError, Scalar};
pub use sweedler::{apply_sweedler, Context, Expr, Identity, Multi, Space, SpaceId};
pub use tensor::{
    tensor2_hom_product, tensor3_hom_product, AlphaPowers, BilinearMap, CoproductMap, Idx,
    SparseMap, TensorElement, TensorElement2, TensorElement3, DEFAULT_WINDOW,
};
