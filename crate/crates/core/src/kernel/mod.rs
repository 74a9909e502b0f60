//! Exact algebra and certified numerics shared by every other module.

pub mod continuation;
pub mod matrix;
pub mod mpoly;
pub mod resultant;
pub mod roots;
pub mod upoly;
pub mod winding;

pub use continuation::{continue_roots, BivariateFamily, ContinuationConfig, FiberFamily, StrandPath};
pub use matrix::Matrix;
pub use mpoly::{grevlex_cmp, mpoly_arith, var_names, ArithOp, MPoly};
pub use resultant::{discriminant, resultant, sylvester_matrix};
pub use roots::{roots_univariate, ApproxRoot, RootMode};
pub use upoly::UPoly;
