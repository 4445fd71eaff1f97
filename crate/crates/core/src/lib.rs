//! Exact symbolic computation for cable algebras of locally nilpotent
//! derivations on polynomial rings over the rationals.
//!
//! The crate is built from a handful of layers:
//!
//! * [`poly`] — sparse multivariate polynomials with exact rational
//!   coefficients and Z^2-gradings; the value type everything else uses.
//! * [`linalg`] — dense exact linear algebra over Q (RREF, kernels,
//!   canonical particular solutions) used to realize graded pieces of
//!   kernels and ideals as vector spaces.
//! * [`derivation`] — derivations given by generator images, with graded
//!   kernels/preimages, Dixmier maps, exponentials and Wronskians.
//! * [`cable`] — finite prefixes of D-cables and their operations
//!   (scaling, sums, shifted sums, limits, evaluation maps).
//! * [`omega`] — the truncated infinite polynomial ring with the down
//!   operator, the theta/beta/eta cable bases, Q-ideal slices and the
//!   reduction algorithm.
//! * [`dim5`] — the five-variable ring k\[a,x,y,z,v\] with its triangular
//!   derivation, the invariants F, G, h and the sigma cable.
//! * [`roberts`] — Roberts' seven-variable derivation for m = 2 and the
//!   P-cable rooted at X.
//!
//! All values are immutable after construction and every operation is a
//! pure function over exact rationals; results are bit-identical across
//! runs.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cable;
pub mod derivation;
pub mod dim5;
pub mod error;
pub mod linalg;
pub mod omega;
pub mod poly;
pub mod rat;
pub mod roberts;

pub use error::{Error, Result};
pub use poly::{Bigrade, Bigrading, Monomial, Polynomial, VarSet};
pub use rat::Rat;
