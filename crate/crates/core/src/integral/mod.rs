//! Integral relations between the members of each pair: the kernels, the
//! adjoint identity they satisfy, numerical transforms, boundary terms and
//! the auxiliary integrals behind the closed-form evaluations.

mod appendix;
mod kernel;
mod transform;

pub use appendix::{appendix_integral, whittaker_a2_rhs, AppendixIntegral, AppendixReport};
pub use kernel::{kernel_value, verify_adjoint, AdjointReport, KernelKind, KernelSpec};
pub use transform::{
    transform_value, verify_boundary_terms, verify_transform, BoundaryReport, TransformReport,
};
