//! Hyperbolic triangle geometry in the Poincaré disk.
//!
//! The crate constructs the cevian configuration of a triangle (area
//! bisectors, pseudoaltitudes, Euler circle, in- and excircles), the
//! pseudolength-based power/homothety/inversion machinery, and residual
//! checks for the theorems relating them.

pub mod cevians;
pub mod cycle;
pub mod disk;
pub mod error;
pub mod generate;
pub mod power;
pub mod root;
pub mod theorems;

pub use cevians::{CevianKind, Flag, TriangleConfig, Vertex};
pub use cycle::{CycleClass, GeneralizedCycle};
pub use disk::{AbsolutePoint, DiskIsometry, DiskPoint, Orientation, SignedAngle, Triangle};
pub use error::{GeomError, Result};
pub use power::{HomothetySign, SignPattern};
pub use theorems::{Status, TheoremCheck, Tolerances};
