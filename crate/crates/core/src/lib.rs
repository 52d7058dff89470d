//! Normal-subgroup order sums of finite groups.
//!
//! For a finite group `G`, D(G) is the sum of the orders of its normal
//! subgroups, and `G` is *perfect* when D(G) = 2|G|. For cyclic groups D
//! is the divisor sum σ, so `C_n` is perfect exactly when `n` is a perfect
//! number. The crate realizes small groups as multiplication tables,
//! computes their normal lattices and composition factors, and searches
//! for cyclic cofactors `m` making `seed × C_m` perfect.
//!
//! Arithmetic in [`numbers`] and [`search`] is generic over any unsigned
//! integer type implementing [`numbers::Natural`]; the aliases below fix
//! it to arbitrary precision.

pub mod composition;
pub mod error;
pub mod group;
pub mod interface;
pub mod normal;
pub mod numbers;
pub mod search;

pub use composition::{composition_factors, coprime, is_simple, FactorLabel, FactorMultiset};
pub use error::{Error, ErrorKind, Result};
pub use group::{Group, Permutation, Realizer, Subgroup};
pub use interface::{analyze, parse_spec, GroupSpec};
pub use normal::{d_group, NormalLattice};
pub use search::{perfect_completions, solve_ratio, verify_certificate, SearchBounds};

/// Default scalar: unbounded naturals.
pub type Nat = num_bigint::BigUint;
pub type Rational = num_rational::Ratio<Nat>;
pub type DResult = normal::DResult<Nat>;
pub type SeedSummary = search::SeedSummary<Nat>;
pub type SearchNode = search::SearchNode<Nat>;
pub type PerfectCertificate = search::PerfectCertificate<Nat>;
