//! Spectra of the Perlick Family I deformed Kepler problem.
//!
//! The crate covers the classical model (metric, potential, curvature,
//! coordinate charts), the shape-invariant ladder construction of the
//! hyperbolic radial problem, the Jacobi-polynomial closed forms, the
//! quantizations of the radial operator, and an independent finite-difference
//! oracle used to check all of them. The [`degeneracy`] module enumerates the
//! accidental degeneracies of the general-β family in exact arithmetic.
//!
//! ```
//! use perlick::closedform::closedform_energy;
//! use perlick::susy::{bound_state_count, build_eigenfunction};
//!
//! // μ = 5, k = 1/2: three bound levels in the l = 0 channel
//! assert_eq!(bound_state_count(&1.0, &5.0, &0.5), Some(2));
//! let e = closedform_energy(0, 0, 5.0, 0.5).unwrap();
//! assert!((e + 12.59375).abs() < 1e-12);
//!
//! let psi = build_eigenfunction(2, 1.0, 5.0, 0.5).unwrap();
//! assert_eq!(psi.nodes().len(), 2);
//! ```

pub mod closedform;
pub mod degeneracy;
pub mod error;
pub mod function;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod quantize;
pub mod susy;
pub mod verify;

pub use error::{Error, Result};
pub use function::{Func, Jet, RadialFunction};
pub use model::{CoordinateChart, PerlickIParams};
