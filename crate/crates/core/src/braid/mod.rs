//! Braid words, the Artin action and braid monodromy.

pub mod arc;
pub mod fixture;
pub mod monodromy;
pub mod sweep;
pub mod word;

pub use arc::{halftwist_around_arc, ArcSpec, Side};
pub use fixture::{three_cuspidal_quartic_arcs, three_cuspidal_quartic_factors};
pub use monodromy::{monodromy_factorization, monodromy_factorization_with, Factorization, LoopFactor, MonodromyConfig};
pub use sweep::{braid_from_strand_paths, sweep_at, sweep_from};
pub use word::{artin_action, braid_equal, conjugate_of_sigma1_power, hurwitz_move, ordered_product, BraidWord};
