// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Lattice Boltzmann as a product of unitaries.
//!
//! The crate builds the linear collision and streaming-with-boundary
//! matrices of the D2Q9 model, factorizes them into orthogonal factors and a
//! normalized diagonal (SVD), block-encodes the diagonal as a two-term
//! linear combination of unitaries on one ancilla, and evolves an exact
//! complex statevector through the resulting six-block circuit. A loop-based
//! classical LBM and the analytic benchmark profiles serve as oracles.
//!
//! Layout:
//! - [`lattice`], [`grid`]: constants and index maps.
//! - [`operators`]: collision, streaming/BC, affine corrections, moments.
//! - [`factory`]: SVD, LCU split and dilations.
//! - [`qstate`]: the statevector pipeline.
//! - [`oracle`]: classical stepper and analytic solutions.
//! - [`config`], [`runner`], [`gates`], [`artifacts`]: benchmark driver.

// `!(x > lo)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod artifacts;
pub mod config;
pub mod error;
pub mod factory;
pub mod gates;
pub mod grid;
pub mod lattice;
pub mod operators;
pub mod oracle;
pub mod qstate;
pub mod runner;

pub use error::{Error, Result};
pub use factory::{
    decompose_operator, svd_decompose, DecomposedOperator, DilatedOperator, UnitaryTriple,
};
pub use grid::GridSpec;
pub use lattice::{d2q9, LatticeModel};
pub use operators::{AffineCorrection, BcSpec, CollisionKernel, EdgeKind, LbOperator, Structure};
pub use qstate::QState;

pub use num_complex::Complex64;
