//! Fiber cones, reduction numbers and mixed multiplicities of ideals in
//! polynomial rings, with exact integer arithmetic throughout.
//!
//! The crate is organized as engines (monomial, graded, local), a text front
//! end, series utilities and the analyses built on top of them.

pub mod budget;
pub mod corpus;
pub mod delta;
pub mod dsl;
pub mod error;
pub mod fiber;
pub mod graded;
pub mod linalg;
pub mod mixed;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod series;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graded::{GradedIdeal, LocalIdeal};
pub use monomial::{Monomial, MonomialIdeal};
pub use poly::{HomogeneousPolynomial, Polynomial};
pub use ring::{Ring, RingRef};
pub use series::{HilbertSeries, SampleTable2D};
