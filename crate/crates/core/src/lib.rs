//! Finite-dimensional Hom-bialgebras over ℚ, Drinfeld twists, and machine
//! verification of their axioms and of representation-category coherence.

pub mod axioms;
pub mod correspondence;
pub mod error;
pub mod exact;
pub mod io;
pub mod library;
pub mod quasitriangular;
pub mod rep;
pub mod report;
pub mod structures;
pub mod twist;

pub use error::{Error, Result};
pub use exact::*;
pub use report::{CheckRecord, Failure, Outcome, VerificationReport};
pub use structures::{
    BialgebraParts, Coalgebra, Flavor, HomAlgebra, HomBialgebra, HomModule, ModuleAlgebra,
    ModuleCoalgebra,
};
