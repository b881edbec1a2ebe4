//! Gaussian circuit programs for the boundary and bulk lattice states.
//!
//! A program starts from a product of single-mode vacua (or local thermal
//! states), squeezes each normal mode and then applies one passive
//! interferometer. Gates are listed in application order. A small covariance
//! simulator is included as a verification oracle.

mod emit;
mod error;
mod givens;
mod program;
mod simulate;

pub use emit::{emit_program, squeezing_params, EmitOptions, Squeezing};
pub use error::CircuitError;
pub use givens::{compose_givens, givens_decompose, Givens, GivensSequence};
pub use program::{CircuitProgram, Gate, Interferometer, Metadata, SpecSnapshot, StateKind, Target, SCHEMA_VERSION};
pub use simulate::{max_deviation, program_symplectic, simulate};

pub type Result<T> = std::result::Result<T, CircuitError>;
