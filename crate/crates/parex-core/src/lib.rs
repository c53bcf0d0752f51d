//! parex-core: space-time grid toolkit for one-sided (forward/backward in time)
//! averaging operators with a time lag.
//!
//! The crate provides, on a discrete (n+1)-dimensional lattice:
//!
//! * dense grid functions with O(1) box sums via (n+1)-dimensional prefix tables,
//! * parabolic rectangles `Q(x,m) × [t−m^p, t+m^p)` with dyadic time lag γ splitting
//!   them into a past part and a future part,
//! * uncentered fractional maximal operators, fractional integral operators over the
//!   forward/backward parabolic region, and all their commutator constructions,
//! * one- and two-weight Muckenhoupt-type constants with time lag, weighted
//!   Lebesgue/weak/Lorentz norms via the weighted decreasing rearrangement, and
//!   oscillation (BMO/Campanato/Lipschitz) norms,
//! * the Rubio-de-Francia-style iteration majorants, a Cauchy-contour reconstruction
//!   of higher-order commutators, probe-based operator-norm estimation, and the
//!   extrapolation/characterization experiment drivers,
//! * a check registry producing structured reports (CSV/JSON-ready).
//!
//! The crate is `no_std` (alloc required). All transcendental math goes through
//! `libm` so results are identical across builds. Every randomized component takes
//! an explicit seed; all reductions have a fixed order, so outputs are
//! deterministic run to run.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod checks;
pub mod contour;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod lattice;
pub mod math;
pub mod norms;
pub mod operators;
pub mod probe;
pub mod rdf;
pub mod recipes;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
pub use geometry::{CellBox, ParabolicRectangle, RectConstraint, TimeLag};
pub use lattice::{Boundary, Cell, GridFunction, GridSpec, PrefixSumTable};
pub use operators::{Direction, Engine, MaskedGrid};
pub use report::{CheckRecord, Report};
pub use weights::{Exponent, ExponentPair, Weight};
