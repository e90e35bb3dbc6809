// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Vector2;

use super::{Kernel, LbOperator};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::lattice::{LatticeModel, Q};

/// Per-site linear BGK collision with Δt = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CollisionKernel {
    pub a: Kernel,
    pub tau: f64,
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.5) || !tau.is_finite() {
        return Err(Error::NonPhysicalTau(tau));
    }
    Ok(())
}

/// Fluid collision with the linearized equilibrium
/// `f_eq_i = w_i (ρ + 3 e_i·ρu)`, where ρ and ρu are moments of f:
/// `a[i][k] = δ_ik (1 − 1/τ) + (1/τ) w_i (1 + 3 e_i·e_k)`.
pub fn collision_kernel(lat: &LatticeModel, tau: f64) -> Result<CollisionKernel> {
    check_tau(tau)?;
    let omega = 1.0 / tau;
    let w = lat.weights_f64();
    let a = Kernel::from_fn(|i, k| {
        let delta = if i == k { 1.0 } else { 0.0 };
        delta * (1.0 - omega) + omega * w[i] * (1.0 + 3.0 * lat.dot(i, k) as f64)
    });
    Ok(CollisionKernel { a, tau })
}

/// Scalar transport with a prescribed advection velocity `u`:
/// `f_eq_i = w_i C (1 + e_i·u / c_s²)`, `C = Σ_k f_k`. The diffusion
/// coefficient is `c_s² (τ − 1/2)`.
pub fn advection_diffusion_kernel(
    lat: &LatticeModel,
    tau: f64,
    u: Vector2<f64>,
) -> Result<CollisionKernel> {
    check_tau(tau)?;
    let omega = 1.0 / tau;
    let w = lat.weights_f64();
    let e = lat.velocities_f64();
    let inv_cs2 = 1.0 / lat.cs2_f64();
    let a = Kernel::from_fn(|i, k| {
        let delta = if i == k { 1.0 } else { 0.0 };
        let eu = e[i][0] * u.x + e[i][1] * u.y;
        delta * (1.0 - omega) + omega * w[i] * (1.0 + inv_cs2 * eu)
    });
    Ok(CollisionKernel { a, tau })
}

/// Lifts the site kernel to the whole grid: `a ⊗ I_{n_g}` plus identity on
/// the padding.
pub fn build_collision_operator(kernel: &CollisionKernel, g: &GridSpec) -> LbOperator {
    LbOperator::kron_local(kernel.a, g.n_g(), g.padded_len())
        .expect("padded length always covers n_f")
}

impl CollisionKernel {
    /// Column sums; each is 1 when collision conserves mass.
    pub fn column_sums(&self) -> [f64; Q] {
        std::array::from_fn(|k| self.a.column(k).sum())
    }
}
