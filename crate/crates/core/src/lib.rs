//! Discriminant geometry and braid monodromy of deformed bidouble covers.
//!
//! The crate is layered:
//!
//! * [`kernel`]: exact multivariate polynomials over big rationals, dense
//!   univariate polynomials, exact linear algebra, resultants, certified
//!   complex root isolation and root continuation along paths.
//! * [`bidouble`]: the multiplication algebra of a deformed bidouble cover,
//!   its different and discriminant, and the three cusps of the normalized
//!   branch curve.
//! * [`quartic`]: the nodal cubic `D`, its dual three-cuspidal quartic `C`,
//!   fibers, critical values and the real-fiber classification.
//! * [`braid`]: braid words, the Artin action, half-twists along arcs,
//!   sweep extraction of braids from strand motion and the monodromy
//!   factorization of `C`.
//! * [`groups`]: free words, presentations, van Kampen relators, Tietze
//!   elimination, abelianization, coset enumeration and homomorphisms into
//!   symmetric groups.
//! * [`surface`]: the twisted cubic, its net of quadrics and the quartic
//!   surfaces singular along it.
//! * [`verify`]: named end-to-end checks consumed by the command line tool.
//!
//! Exact results are computed over [`Rational`]; numerical layers are generic
//! over the floating point type through [`Real`].

pub mod bidouble;
pub mod braid;
pub mod error;
pub mod groups;
pub mod kernel;
pub mod quartic;
pub mod scalar;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Field, Real, Ring};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Complex number over a floating point type.
pub type Complex<F = f64> = num_complex::Complex<F>;

/// Exact multivariate polynomial over the rationals.
pub type QPoly = kernel::mpoly::MPoly<Rational>;
/// Exact dense univariate polynomial over the rationals.
pub type QUPoly = kernel::upoly::UPoly<Rational>;
/// Dense univariate polynomial with `f64` complex coefficients.
pub type CUPoly = kernel::upoly::UPoly<Complex<f64>>;
/// Certified root over `f64`.
pub type ApproxRoot = kernel::roots::ApproxRoot<f64>;
/// Strand path over `f64`.
pub type StrandPath = kernel::continuation::StrandPath<f64>;
