//! # gausscanon
//!
//! Canonical forms and local Gaussian channels for multimode Gaussian quantum
//! states, working entirely at the covariance-matrix level.
//!
//! A Gaussian state of `n` modes is represented (displacements dropped) by a
//! real symmetric `2n x 2n` covariance matrix with **vacuum = identity**. On
//! top of that representation the crate provides:
//!
//! - **Phase-space basics** ([`phase_space`]): the symplectic form,
//!   uncertainty-relation and purity tests, symplectic eigenvalues, the
//!   Williamson normal form, and exact reordering between the mode-ordered
//!   and xp-ordered bases.
//! - **A unique standard form under Gaussian local unitaries**
//!   ([`standard_form`]): every state is canonicalized by one active and one
//!   passive operation per mode; two states are GLU-equivalent iff their
//!   standard forms coincide entrywise. Includes the two-mode pure-state
//!   reduction to the `cosh r / sinh r` normal form.
//! - **Pure three-mode states** ([`three_mode`]): a triple of local purities
//!   `(lambda_1, lambda_2, lambda_3)` with `lambda_i + 1 <= lambda_j +
//!   lambda_k` determines a pure state up to local unitaries. Construction,
//!   classification of the degenerate families, two independent closed-form
//!   solution chains used as cross-checks, and a scalar positivity
//!   certificate.
//! - **Reference circuits** ([`generation`]): two-mode squeezed vacua, beam
//!   splitters, and distributed two-mode squeezed states.
//! - **Pure Gaussian LOCC channels** ([`glocc`]): single-mode channels in
//!   Choi-Jamiolkowski form, their action on states, closed-form output
//!   blocks, the determinant-sign invariant (nonpositive off-diagonal block
//!   determinants can never be made positive), and the recipe preparing every
//!   symmetric state from a distributed two-mode squeezed state.
//! - **Plumbing**: a shared JSON matrix format ([`io`]), seeded samplers
//!   ([`sampling`]), invariant suites ([`selftest`]), and a CLI ([`cli`]).
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p gausscanon --example validate_state    # physicality, purity, Williamson
//! cargo run -p gausscanon --example canonical_form    # standard form + equivalence
//! cargo run -p gausscanon --example two_mode_squeezed # two-mode normal form
//! cargo run -p gausscanon --example three_mode_family # purity triples -> states
//! cargo run -p gausscanon --example distributed_states
//! cargo run -p gausscanon --example channel_filtering # CJ channels, closed forms
//! cargo run -p gausscanon --example sign_no_go        # the determinant-sign invariant
//! cargo run -p gausscanon --example prepare_symmetric # symmetric-state preparation
//! ```
//!
//! ## CLI
//!
//! The `gausscanon` binary exposes the same operations for scripted use:
//! `validate`, `standard-form`, `glu-equiv`, `make-three-mode`, `classify`,
//! `gen`, `glocc` (`apply`/`signs`/`prepare-symmetric`/`scan`), `selftest`.
//! Matrices travel as JSON files; see [`io`] for the format. Stochastic
//! subcommands take `--seed` (or `GAUSSCANON_SEED`) and are reproducible.
//!
//! ## Conventions
//!
//! Vacuum variance is 1 (not 1/2); the symplectic form is
//! `J = ⊕ [[0, -1], [1, 0]]`; a state is physical iff `gamma - iJ >= 0` and
//! pure iff `det gamma = 1`. Planar rotations are `rot(a) = [[cos a, sin a],
//! [-sin a, cos a]]`.

pub mod cli;
pub mod error;
pub mod generation;
pub mod glocc;
pub mod io;
pub mod mat2;
pub mod phase_space;
pub mod sampling;
pub mod selftest;
pub mod standard_form;
pub mod three_mode;

pub use error::{Error, Result};
pub use phase_space::{BasisOrdering, CovMatrix, SymplecticTransform};
