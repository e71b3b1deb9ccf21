//! Zeros of orthogonal polynomials from truncated Jacobi matrices, and
//! checks of their asymptotic distribution against closed forms.

pub mod bethe;
pub mod dd;
pub mod density;
pub mod eigen;
pub mod error;
pub mod families;
pub mod fixed;
pub mod nevai_ullman;
pub mod quad;
pub mod real;

pub use bethe::{GapDeviations, GapRatio, VerifierReport};
pub use dd::Dd;
pub use density::{DensityModel, EdgeInfo};
pub use eigen::{EigenOptions, Precision, PrecisionVisitor, Scale, SymTridiag, ZeroSet};
pub use error::{Error, Result};
pub use families::{Family, FamilySpec, ScalingClass};
pub use fixed::{Fixed, Mp};
pub use nevai_ullman::{MomentReport, MomentRow, MomentSpec};
pub use real::Real;
