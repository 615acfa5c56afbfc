//! Cooper-pair-box qubit in two descriptions.
//!
//! * [`two_mode`]: the many-body two-electrode Hamiltonian, diagonalized
//!   exactly in its fixed-particle-number sector.
//! * [`effective`]: the requantized `E_C (n − n_g)² − E_J cos φ` model in the
//!   charge basis, whose two lowest eigenstates form the qubit.
//! * [`condensate`]: condensate product states for the same two qubit
//!   states and their (non-zero) overlaps.
//! * [`bridge`]: the semiclassical parameter map between the first two and a
//!   pipeline that sets the qubit orthogonality of the effective model
//!   against the condensate overlap.
//!
//! All Hamiltonians are real symmetric tridiagonal; [`tridiag`] holds the
//! shared eigensolver.

pub mod bridge;
pub mod condensate;
pub mod effective;
pub mod error;
pub mod tridiag;
pub mod two_mode;

pub use error::{Error, Result};
pub use tridiag::{eigen_all, eigen_lowest, Spectrum, TridiagMatrix};
