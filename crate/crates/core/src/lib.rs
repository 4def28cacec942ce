//! Exact finite orthogonality spaces, their ortholattices, and positive-definite
//! quadratic spaces over computable ordered fields.

pub mod ortholat;
pub mod io;
pub mod nonarch;
pub mod orthograph;
pub mod pointset;
pub mod quadspace;
pub mod report;
pub mod rotation;
pub mod scalar;

pub use ortholat::OrthoLattice;
pub use orthograph::{OrthoGraph, Partition};
pub use pointset::PointSet;
pub use quadspace::{ProjPoint, QuadSpace, Vector};
pub use report::{Check, CheckReport};
pub use scalar::{FieldKind, FieldSpec, MagnitudeClass, Scalar, ScalarError};
