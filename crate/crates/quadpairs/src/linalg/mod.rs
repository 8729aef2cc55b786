//! Exact linear algebra over the grammar rings.
//!
//! Solving over filtered rings goes through an explicit degree-`D`
//! flattening to a finite module over the integers (with per-coordinate
//! congruences) or over a binary field; `D` is a caller-supplied parameter
//! on every public solve, so every verdict carries its window.

pub mod flat;
pub mod gauss;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod solve;

pub use flat::{Backend, FlatRing, FlatVec, MatSpace, Slot, Step};
pub use matrix::Mat;
pub use solve::{
    kernel_on_columns,
    image_of, invert_element, invert_mat, kernel_of, smith_normal_form, Certificate, ImageData,
    LinMap, Membership, Outcome, Subspace, SysData,
};
