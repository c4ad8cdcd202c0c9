//! Simulator for a two-mode bosonic system with one- and two-particle
//! mode-exchange collisions on a fixed-particle-number sector.
//!
//! The crate provides two routes to the same physics and the machinery to
//! cross-check them against each other:
//!
//! - a closed-form route ([`exact`]) built on rotated Dicke states, valid on
//!   the solvable parameter manifold described by [`model`];
//! - a general-parameter numerical route ([`spectral`]) built on a
//!   self-contained Hermitian eigensolver over the banded Hamiltonians
//!   assembled in [`fock`].
//!
//! [`observables`] holds the measurement layer (number distributions,
//! relative population, mode-entanglement entropy, peak counting) and
//! [`verify`] runs the acceptance checks that tie everything together.

pub mod dense;
pub mod exact;
pub mod fock;
pub mod model;
pub mod observables;
pub mod spectral;
pub mod verify;

pub use num_complex::Complex64;
