//! Numerical workbench for higher-dimensional quantum tori.
//!
//! The crate works with finite Fourier polynomials over an antisymmetric
//! twist matrix: twisted products, one-sided operator-norm estimates through
//! truncated left-regular representations, Riemannian metrics on the free
//! module of rank `n`, the associated torsion-free compatible connection,
//! Lipschitz and differential seminorms, and modular bridges between scaled
//! metric contexts.
//!
//! Everything is deterministic under a supplied seed and sound in the sense
//! that reported lower bounds never exceed the quantity they estimate and
//! upper bounds never fall below it (up to floating-point rounding).
//!
//! The crate is `no_std` (with `alloc`); the companion CLI crate carries IO,
//! fixtures, and report serialization.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod connection;
pub mod geometry;
pub mod gns;
pub mod linalg;
pub mod math;
pub mod norms;
pub mod propinquity;
pub mod rng;
pub mod seminorms;

pub use num_complex::Complex64;
