//! Exact spectra of magnetic Dirac operators on the round 3-sphere and on
//! flat tori, matrix oracles that re-derive them numerically, and the
//! classical eigenvalue estimates with magnetic corrections.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32`, `f64`); integer-input
//! closed forms also run over exact rationals. The aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod sphere;
pub mod torus;

pub use error::{Error, Result};

pub type CliffordRep64 = clifford::CliffordRep<f64>;
pub type Lattice64 = lattice::Lattice<f64>;
pub type CMatrix64 = matrix::CMatrix<f64>;
pub type HermitianMatrix64 = matrix::HermitianMatrix<f64>;
pub type SpinCData64 = torus::SpinCData<f64>;
pub type SphereSpectrum64 = sphere::SphereSpectrum<f64>;
pub type TorusSpectrum64 = torus::TorusSpectrum<f64>;
pub type FourierPotential64 = oracle::FourierPotential<f64>;
pub type GeometricData64 = bounds::GeometricData<f64>;
