//! Weighted simplicial complexes and F2 cochain analysis.
//!
//! The crate is organised bottom-up:
//!
//! - [`complex`]: pure complexes with the probability weights induced by a
//!   uniform distribution on top faces, plus links.
//! - [`cochain`]: F2 cochains, coboundary, the `delta_i` partition,
//!   localization/restriction and (mutual) norms.
//! - [`gf2`] and [`cohomology`]: bitset elimination, cocycle/coboundary
//!   spaces, minimum-weight coset search.
//! - [`balance`]: double-balance constants, the dense-face hierarchy and
//!   pseudorandomness fractions.
//! - [`spectral`]: walk spectra of link graphs, the complement-walk graph and
//!   Cheeger-type edge bounds.
//! - [`expansion`]: coboundary/cosystolic expansion and the theorem-level
//!   checks built on all of the above.
//! - [`generators`]: deterministic and seeded test complexes.
//!
//! All weights and norms are exact rationals; floating point appears only in
//! eigenvalue computations and in bounds that involve a spectral parameter.

pub mod balance;
pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod expansion;
pub mod generators;
pub mod gf2;
pub mod io;
pub mod rational;
pub mod rng;
pub mod spectral;
pub mod verdict;

pub use cochain::Cochain;
pub use complex::{Face, LinkView, SimplicialComplex};
pub use error::{Error, Result};
pub use rational::{ExtRational, Rational};
pub use verdict::Verdict;

/// Default cap on the number of candidate cochains any exhaustive scan may
/// evaluate.
pub const DEFAULT_BUDGET: u64 = 1 << 24;
