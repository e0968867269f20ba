//! Construction and analysis of (*)-(L,P)-twisted generalized Reed-Solomon
//! codes over odd-prime-power finite fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf`] — finite fields GF(p^m): prime fields by modular arithmetic,
//!   extension fields (q ≤ 2¹⁶) by exponent/log tables over a canonical
//!   irreducible modulus.
//! * [`linalg`] — exact dense matrices over a field: rank, determinant,
//!   RREF, nullspace, with deterministic pivoting.
//! * [`symfun`] — evaluation-point sets and their symmetric-function
//!   toolkit: complete homogeneous sums S_t, the unit-Vandermonde solution
//!   uᵢ, power-sum identities, Ω/Φ correction scalars, and root extraction
//!   for xⁿ − λ.
//! * [`twisted`] — the twisted codes themselves: parameter validation,
//!   generator and closed-form parity-check matrices, encoding.
//! * [`analysis`] — exhaustive minimum-distance and dual-distance
//!   computation behind explicit guards, MDS/AMDS/NMDS classification, hull
//!   dimension, and a three-way LCD check.
//! * [`constructor`] — the four LCD construction theorems (T41–T44):
//!   hypothesis validators, certified builders, and a bounded deterministic
//!   search.
//! * [`fixtures`] — eight embedded reference examples with golden tables,
//!   used by the reproduction suite.
//!
//! All arithmetic is exact; nothing in the crate samples nondeterministically
//! (randomized search draws come from a caller-seeded generator).

pub mod analysis;
pub mod constructor;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod linalg;
pub mod symfun;
pub mod twisted;

pub use error::{Error, Result};
