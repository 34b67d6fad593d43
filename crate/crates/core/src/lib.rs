//! Exact computations for the Brauer loop scheme: link patterns, the circle
//! algebra, components of the scheme and their multidegrees, the loop Markov
//! chain, Pfaffian degree formulas and the commuting variety.

pub mod circlealg;
pub mod commvar;
pub mod error;
pub mod escheme;
pub mod evalmode;
pub mod field;
pub mod linalg;
pub mod linkpat;
pub mod loopchain;
pub mod persist;
pub mod pfdet;
pub mod points;
pub mod psitable;
pub mod suites;

pub use error::{CoreError, Result};
