//! Exact computations in the monomorphism category of a finite-dimensional
//! self-injective algebra: N-complexes and their homology, the categories
//! `MMor_k(mod-A)`, syzygy and cosyzygy functors, the cycle and expansion
//! functors between acyclic projective N-complexes and monomorphism diagrams,
//! and the Serre functor `S = Ω ∘ R ∘ ν` with its fractional Calabi-Yau
//! orbit search.
//!
//! All arithmetic is exact, over a prime field F_p.  Values are immutable
//! after construction and every operation is pure; randomized searches take
//! an explicit seeded [`rng::Rng`].

pub mod algebra;
pub mod buchweitz;
pub mod decomp;
pub mod error;
pub mod field;
pub mod io;
pub mod mat;
pub mod mmor;
pub mod module;
pub mod ncomplex;
pub mod rng;
pub mod serre;
pub mod triangular;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use mat::Mat;
pub use rng::Rng;
