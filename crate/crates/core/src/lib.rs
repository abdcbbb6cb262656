//! Exact computations in the graded Goldman-Turaev Lie bialgebra, derivation
//! algebras of free Lie algebras and their Johnson images.

pub mod alphabet;
pub mod cache;
pub mod cli;
pub mod coef;
pub mod combinat;
pub mod cyclic;
pub mod derivation;
pub mod error;
pub mod framing;
pub mod genus0;
pub mod genus1;
pub mod goldman;
pub mod lie;
pub mod linalg;
pub mod morita;
pub mod repring;
pub mod serial;
pub mod subspace;
pub mod tensor;

pub use alphabet::{Alphabet, Letter, Model, Word};
pub use coef::Q;
pub use cyclic::{cyclic_project, CyclicPoly};
pub use error::{Error, Result};
pub use lie::{lie_bracket, pbw_symmetrize, LiePoly};
pub use tensor::TensorPoly;
