//! Multimode Bogoliubov transformations and squeezed states.
//!
//! The crate diagonalizes quadratic-plus-linear bosonic Hamiltonians,
//! builds the associated squeeze operators (exponent form and normal-ordered
//! disentangled form), evaluates the four squeezed-state families, factors
//! transformation matrices into rotation–squeeze–rotation form and checks
//! everything against an independent truncated Fock-space oracle.
//!
//! Numerical types are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below name the double-precision instances used by the CLI.

pub mod bogoliubov;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod reference;
pub mod scalar;
pub mod squeezeop;
pub mod states;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use scalar::{cx, CMat, CVec, Cx, Real};

pub use bogoliubov::{diagonalize, BtMatrix, DiagonalizationResult, SymplecticResiduals};
pub use decompose::{bloch_messiah, classify_special_case, mixed_boson_frame, BlochMessiahFactors, SpecialCase};
pub use model::{parse_spec, validate, BilinearHamiltonian, HamiltonianSpec, ValidationReport};
pub use squeezeop::{disentangle, exponent_form, DisentangledSo, ExponentForm};
pub use states::{QuadratureCovariance, StateDescriptor, StateKind};

pub type C64 = Cx<f64>;
pub type Hamiltonian64 = BilinearHamiltonian<f64>;
pub type Hamiltonian32 = BilinearHamiltonian<f32>;
pub type BtMatrix64 = BtMatrix<f64>;
pub type BtMatrix32 = BtMatrix<f32>;
pub type Diagonalization64 = DiagonalizationResult<f64>;
pub type Diagonalization32 = DiagonalizationResult<f32>;
pub type State64 = StateDescriptor<f64>;
pub type State32 = StateDescriptor<f32>;
pub type Factors64 = BlochMessiahFactors<f64>;
