//! Exact computations in the twisted affine Nappi–Witten algebra and its
//! Whittaker and Verma modules.

pub mod algebra;
pub mod envelope;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod modules;
pub mod partitions;
pub mod scalar;
pub mod solver;
pub mod text;

pub use algebra::{bracket, Generator, LieElement, Letter, WhittakerType};
pub use envelope::{ModuleVector, PBWMonomial, Rewriter, Strategy, Word};
pub use error::Error;
pub use modules::{basis, submodule_closure, ModuleContext, Truncation};
pub use scalar::{Poly, RatFunc, Rational};
