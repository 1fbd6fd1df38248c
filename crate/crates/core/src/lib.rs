//! Exact-arithmetic engine for invariant metrics and equigeodesic vectors
//! on compact homogeneous spaces.
//!
//! Everything is computed over the rationals: structure constants, Killing
//! forms, isotropy decompositions, metric parameter spaces and the
//! polynomial systems cutting out equigeodesic vectors. Square roots that
//! arise when normalizing equivariant maps are carried symbolically as
//! exact squared factors, so no floating point enters any decision.

pub mod algebra;
pub mod equigeo;
pub mod error;
pub mod homogeneous;
pub mod linalg;
pub mod metrics;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod spec;
