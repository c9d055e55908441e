//! Spherical harmonics reconstructed from the SU(2) angular-momentum
//! algebra.
//!
//! The crate builds the spin-`l` matrices of `L_x, L_y, L_z, L_+-, L^2`,
//! the rotation operators `exp(-i L_k phi)` and the directional mirror
//! operators, and then recovers wavefunctions `Y(theta, phi)` without any
//! differential equation: a state is rotated so the direction of interest
//! lands on the north pole, where only its `m = 0` amplitude survives.
//!
//! ```
//! use algebraic_harmonics::{realbasis, wavefield};
//!
//! let z2 = realbasis::named_state(2, "z2").unwrap();
//! let cones = wavefield::nodal_cones(&z2.vector).unwrap();
//! assert!((cones[0].to_degrees() - 54.7356).abs() < 1e-3);
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod mirror;
pub mod oracle;
pub mod realbasis;
pub mod rotor;
pub mod su2;
pub mod wavefield;

pub use error::{Error, Result};
pub use su2::{AngularBasis, Axis, OperatorMatrix, StateVector};
