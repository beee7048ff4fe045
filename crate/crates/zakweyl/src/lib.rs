//! A finite sampled model of time-frequency analysis on the line: the
//! Heisenberg group acting on d = L*M samples, the Zak transform, the Weyl
//! quantization with its symbol inverse, lattice periodization of
//! finite-rank operators, and the trace that reads symbols off
//! periodizations.
//!
//! Everything lives over a [`GridSpec`] (M samples per unit, L units per
//! period, lattice parameter a with a | M). Time points are t_n = n/M mod
//! L, phase space is the d x d window of points (x, y) = (ix/M, iy/L), and
//! every phase that appears is an exact root of unity (see [`grid::phase`]).
//! On this model the classical identities hold to machine precision rather
//! than asymptotically, so each one is enforced by tests and by the named
//! check suites in [`verify`].
//!
//! The headline construction: periodizing a finite-rank operator X over the
//! lattice N = Z x aZ yields an operator whose dual-window expansion
//! coefficients are exactly the symbol alpha(X) there, while rank(X) < a
//! forces an explicit kernel vector. Together these make the support of
//! alpha(X) answerable by finite linear algebra; the [`benedicks`] module
//! packages that argument as a reproducible pipeline with a verdict.
//!
//! The examples directory is the tour:
//!
//! - `heisenberg_group`: composition, canonicalization, commutators.
//! - `zak_transform`: unitarity, quasi-periodicity, covariance.
//! - `weyl_inversion`: quantization and symbol as exact inverses.
//! - `multiplication_operators`: the lattice-invariant algebra and its
//!   distribution functions.
//! - `trace_functional`: the trace tau and its orthonormality relations.
//! - `periodize_rank_one`: coefficients of the periodization equal the
//!   symbol.
//! - `kernel_vector`: the explicit non-injectivity witness.
//! - `benedicks_pipeline`: the full support argument end to end.
//! - `verification_suites`: every named check suite in one run.
//!
//! The `zakweyl` binary exposes the same machinery on files; see
//! [`cli`] for subcommands, flags, formats and exit codes.

pub mod benedicks;
pub mod cli;
pub mod error;
pub mod grid;
pub mod heisenberg;
pub mod io;
pub mod linalg;
pub mod nullfield;
pub mod operator;
pub mod periodization;
pub mod verify;
pub mod weyl;
pub mod zak;

pub use error::{Error, Result};
pub use grid::{GridSpec, Signal};
pub use heisenberg::{GroupElement, LatticeSpec, PhasePoint};
pub use operator::{FactoredOperator, OperatorMatrix};
