//! Exact-arithmetic verification toolkit for the simultaneous Diophantine
//! system `a^2 + b^2 = c^r`, `a^2 + b^y = c^z` (r, z odd, y ≡ 2 mod 4).
//!
//! The crate enumerates two-square representations of c, evaluates explicit
//! lower bounds for linear forms in two logarithms with certified interval
//! arithmetic, derives exponent-bound tables, tests Lucas/Lehmer terms for
//! primitive divisors, certifies trinomial-discriminant facts, and runs a
//! shard-parallel exclusion sweep over ranges of c. Every lemma-level check
//! emits a replayable [`cert::Certificate`].

pub mod bounds;
pub mod cert;
pub mod curves;
pub mod error;
pub mod exact;
pub mod lagrange;
pub mod linform;
pub mod lucas;
pub mod poly;
pub mod repr;
pub mod sweep;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
