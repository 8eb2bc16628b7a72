//! Numerical analysis of Gabor systems `{E_{m/M} T_{nN} g}` on the
//! integer lattice: frame and Riesz-sequence bounds via fiberization,
//! explicit linear-dependency certificates, the window families realizing
//! each parameter regime, and an exact classifier for parameter triples
//! `(M, N, K)`.
//!
//! All numerics are generic over the real scalar type through
//! [`Scalar`]; the `*32`/`*64` aliases below pin `f32` and `f64`. The
//! B-spline samples are additionally available as exact rationals.

pub mod classifier;
pub mod dependence;
pub mod error;
pub mod io;
pub mod oracle;
pub mod scalar;
pub mod sequences;
pub mod spectral;
pub mod verify;
pub mod windows;

pub use error::{GaborError, Result};
pub use scalar::Scalar;
pub use sequences::{
    gabor_element, modulate, translate, FiniteSequence, GaborSystem, LatticeIndex,
};
pub use spectral::{FrameReport, FrameVerdict, RieszReport, RieszVerdict};

pub mod prelude {
    pub use crate::classifier::{classify, witness_check};
    pub use crate::dependence::{certify_independence_range, find_dependency, verify_certificate};
    pub use crate::sequences::{FiniteSequence, GaborSystem, LatticeIndex};
    pub use crate::spectral::{frame_bounds, is_frame, is_riesz_sequence, riesz_bounds};
}

pub type FiniteSequence32 = sequences::FiniteSequence<f32>;
pub type FiniteSequence64 = sequences::FiniteSequence<f64>;
pub type GaborSystem32 = sequences::GaborSystem<f32>;
pub type GaborSystem64 = sequences::GaborSystem<f64>;
pub type FrameReport32 = spectral::FrameReport<f32>;
pub type FrameReport64 = spectral::FrameReport<f64>;
pub type RieszReport32 = spectral::RieszReport<f32>;
pub type RieszReport64 = spectral::RieszReport<f64>;
pub type DependencyCertificate64 = dependence::DependencyCertificate<f64>;
pub type ConstructionRecord64 = windows::ConstructionRecord<f64>;
