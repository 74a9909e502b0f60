//! Free groups, finite presentations and their finite quotients.

pub mod free;
pub mod homs;
pub mod perm;
pub mod presentation;
pub mod smith;
pub mod tietze;
pub mod todd_coxeter;

pub use free::FreeWord;
pub use homs::{enumerate_homs_to_sym, count_homs, HomClass, HomConstraints, HomEnumeration};
pub use perm::Perm;
pub use presentation::{abelianization, add_projective_relation, fingerprint, van_kampen, Fingerprint, Presentation};
pub use tietze::{tietze_simplify, TietzeResult};
pub use todd_coxeter::{group_order, todd_coxeter, CosetTable, TableStatus};

/// Default coset limit for enumeration.
pub const DEFAULT_MAX_COSETS: usize = 100_000;
