// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Exponent denominator of the Gaussian hill.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GaussianForm {
    /// `2(σ₀² + σ_D²)`: the variance that matches the amplitude decay and
    /// solves the advection-diffusion equation.
    #[default]
    Consistent,
    /// `2σ₀² + σ_D²`, as the formula is commonly quoted.
    Printed,
}

/// Gaussian hill in a uniform flow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianParams {
    pub c0: f64,
    pub sigma0: f64,
    pub diffusion: f64,
    pub velocity: [f64; 2],
    pub x0: [f64; 2],
    pub form: GaussianForm,
}

fn gaussian_from_offset(d: [f64; 2], t: f64, p: &GaussianParams) -> f64 {
    let s0 = p.sigma0 * p.sigma0;
    let sd = 2.0 * p.diffusion * t;
    let r2 = d[0] * d[0] + d[1] * d[1];
    let denom = match p.form {
        GaussianForm::Consistent => 2.0 * (s0 + sd),
        GaussianForm::Printed => 2.0 * s0 + sd,
    };
    s0 / (s0 + sd) * p.c0 * (-r2 / denom).exp()
}

/// `C = σ₀²/(σ₀²+σ_D²) C₀ exp(−|x − x₀ − ut|² / denom)` with
/// `σ_D² = 2Dt`; see [`GaussianForm`] for `denom`.
pub fn analytic_gaussian(x: [f64; 2], t: f64, p: &GaussianParams) -> f64 {
    let d = [
        x[0] - p.x0[0] - p.velocity[0] * t,
        x[1] - p.x0[1] - p.velocity[1] * t,
    ];
    gaussian_from_offset(d, t, p)
}

/// Same, with the displacement taken to the nearest periodic image of a
/// `lx × ly` box.
pub fn analytic_gaussian_periodic(
    x: [f64; 2],
    t: f64,
    p: &GaussianParams,
    extent: [f64; 2],
) -> f64 {
    let wrap = |d: f64, l: f64| d - l * (d / l).round();
    let d = [
        wrap(x[0] - p.x0[0] - p.velocity[0] * t, extent[0]),
        wrap(x[1] - p.x0[1] - p.velocity[1] * t, extent[1]),
    ];
    gaussian_from_offset(d, t, p)
}

/// `u_x(y) = G/(2μ) · y (y − h)`; `G` is the pressure gradient.
pub fn analytic_poiseuille(y: f64, g: f64, mu: f64, h: f64) -> f64 {
    g / (2.0 * mu) * y * (y - h)
}

/// Couette flow driven by a top wall at `u_w`, plus a pressure gradient.
pub fn analytic_couette(y: f64, u_w: f64, g: f64, mu: f64, h: f64) -> f64 {
    u_w * y / h + analytic_poiseuille(y, g, mu, h)
}

/// `√(Σ(ref − got)² / Σ ref²)`.
pub fn l2_relative_error(reference: &[f64], got: &[f64]) -> Result<f64> {
    if reference.len() != got.len() {
        return Err(Error::LengthMismatch(reference.len(), got.len()));
    }
    let den: f64 = reference.iter().map(|r| r * r).sum();
    if den == 0.0 {
        return Err(Error::ZeroReference);
    }
    let num: f64 = reference
        .iter()
        .zip(got)
        .map(|(r, g)| (r - g) * (r - g))
        .sum();
    Ok((num / den).sqrt())
}
