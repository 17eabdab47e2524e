//! Explicit constants for the Tate–Voloch distance bound of a curve of genus
//! `g >= 2` embedded in its Jacobian.
//!
//! The crate is organised along the pipeline it implements:
//!
//! * [`theta`] evaluates the Riemann theta function and the translation
//!   invariant norm of the canonical theta section;
//! * [`theta_max`] maximises that norm over the Jacobian torus;
//! * [`bounds`] evaluates the combinatorial bound chain in log scale;
//! * [`arakelov`] combines the Arakelov invariants into the constant `D`;
//! * [`jacobian`] does genus-2 Mumford arithmetic over `Q` and `Z/p^j` and
//!   measures p-adic distances of torsion classes to the curve;
//! * [`report`] drives the whole pipeline from a JSON run configuration.

pub mod arakelov;
pub mod bounds;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod numeric;
pub mod report;
pub mod simplex;
pub mod theta;
pub mod theta_max;

pub use error::{Error, Result};
