//! Two-square representations: certified factoring, Cornacchia enumeration
//! with the parity normalization (u even, v odd), and exact witnesses
//! `a^2 + b^2 = c^r` from Gaussian-integer powers.

pub mod cornacchia;
pub mod factor;
pub mod primality;
pub mod witness;

pub use cornacchia::{cornacchia_all, cornacchia_prime, residue_class_filter, Representation};
pub use factor::{factor, factor_with_effort, valuation, FactorEffort, Factorization, PrimePower};
pub use primality::{is_prime, is_prime_u64, PrimalityEvidence};
pub use witness::{witness_from, SolutionWitness};
