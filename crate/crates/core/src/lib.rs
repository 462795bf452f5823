//! Holomorphic Riemannian geometry of surfaces in `C^n`: the standard
//! bilinear form, Taylor jets of holomorphic charts, fundamental forms and
//! curvature, real slices and Wick moves, and a catalog of examples.

// index loops mirror the tensor notation; `!(x > t)` tests treat NaN as failing
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod expr;
pub mod grid;
pub mod jet;
pub mod linalg;
pub mod scalar;
pub mod slice;
pub mod surface;
pub mod verify;

pub use catalog::{complex_sphere, Catalog, CatalogEntry, Expected, Filter};
pub use error::{Error, Result};
pub use expr::{ChartProgram, Expr, ScalarField, Var};
pub use grid::{Axis, Grid};
pub use jet::Jet2;
pub use linalg::{
    apply_similarity, classify_subspace, classify_symmetric_2x2, gram_schmidt, holo_inner, BilinearForm, CVec,
    Mat2, NormalForm2, NormalKind, Similarity, SubspaceKind,
};
pub use scalar::{c64, HoloScalar, I};
pub use slice::{apply_wick_move, induced_signature, verify_in_slice, Param, SliceSpec, WickAtom, WickMove};
pub use surface::{
    curvature_report, fundamental_forms, gauss_residual, nabla_h, relative_second_form, sectional_curvature,
    CurvatureReport, PointGeometry, SurfaceChart,
};
pub use verify::{property_transfer_check, verify_grid, Ambient, Property};
