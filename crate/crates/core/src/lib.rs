//! Spectra of the Laplace and Stokes operators on three-dimensional
//! spherical shells.
//!
//! A shell is the region between two concentric spheres. It is described
//! either by the inverse relative gap width `A = 2 R_i / (R_o - R_i)` (the
//! "A frame", gap width normalized to 1) or by the radius ratio
//! `sigma = R_i / R_o` (the "sigma frame", outer radius normalized to 1).
//!
//! The crate computes the first Dirichlet eigenvalue of the scalar Laplacian
//! (always `pi^2` in the A frame) and the first, triple eigenvalue of the
//! Stokes operator, together with the Poincare constants `lambda^{-1/2}`.
//! Every computed value can be cross-checked against two independent
//! numerical routes:
//!
//! * [`oracle`]: a finite-difference Sturm-Liouville solver for the radial
//!   reductions, using Sturm-sequence bisection;
//! * [`greens`]: the image-series Green's function of the shell and a Nystrom
//!   power iteration for the norm of the inverse Laplacian.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod eigenfun;
pub mod error;
pub mod geometry;
pub mod greens;
pub mod grid;
pub mod oracle;
pub mod quadrature;
pub mod rootfind;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
pub use geometry::{Frame, ShellGeometry, ShellParam};
pub use rootfind::RootSearchConfig;
pub use spectra::{BoundSet, EigenResult, Method, Operator};

/// First positive root of `tan x = x`, i.e. the first zero of `J_{3/2}`.
pub const FIRST_ZERO_J3HALF: f64 = 4.493_409_457_909_064;
