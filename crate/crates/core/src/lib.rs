//! Exact combinatorics of extremal-ray diagrams.
//!
//! A diagram is a [`RaySet`]: vertex kinds plus an exact intersection matrix.
//! The crate classifies diagrams (elliptic, parabolic, Lanner, quasi-Lanner,
//! semi-elliptic), builds the parameterized diagram catalog, types graph
//! shapes, extracts diagram constants and evaluates the Picard-number bound
//! formulas.
//!
//! All algorithms are generic over [`Scalar`]; the default instantiation is
//! [`Rational`] (arbitrary precision). [`SmallRational`] is a faster
//! fixed-width alternative for bounded inputs.

pub mod bounds;
pub mod catalog;
pub mod classifier;
pub mod error;
pub mod exhaustive;
pub mod feasibility;
pub mod linalg;
pub mod polytope;
pub mod quasi;
pub mod raygraph;
pub mod scalar;
pub mod shapes;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational; overflow panics in debug builds.
pub type SmallRational = num_rational::Ratio<i128>;

pub use classifier::{classify, Classification, DiagramClass};
pub use raygraph::{Dist, Mode, RayKind, RaySet};

/// Ray set over the default scalar.
pub type RaySetQ = RaySet<Rational>;

/// Shorthand for an exact rational `p/q`.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Shorthand for an integer as a rational.
pub fn qi(p: i64) -> Rational {
    Rational::from_integer(p.into())
}
