//! Homogeneous nearly-Kähler geometry of the flag manifold F₃ = SU(3)/T².

pub mod ce;
pub mod cohomology;
pub mod deform;
pub mod dirac;
pub mod fields;
pub mod haar;
pub mod lie;
pub mod structure;

pub use cohomology::{invariant_cohomology, CohomologyReport};
pub use deform::Normalization;
pub use fields::{Calculus, FieldKind, FormField};
pub use haar::{haar_sample, obstruction, obstruction_with, ObstructionEstimate};
pub use lie::{coefficients, coset_frame, CoefficientFunctions, CosetFrame, GroupElement, LieAlg};
pub use structure::{invariant_structure, InvariantStructure};
