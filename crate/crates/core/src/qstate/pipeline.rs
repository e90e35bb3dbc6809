// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! One LBM time step through the dilated circuit.
//!
//! With `φ⁰ = [df; df] / ‖φ‖` the collision blocks give two equal halves
//! `U^c (D^c + iL^c) V^c df`; the ancilla Hadamard folds them into the first
//! block with a factor √2 and empties the second. After streaming, the real
//! part of the first block is `√2 · S C df / (‖φ‖ α_c α_s)`, hence the
//! readout scale `‖φ‖ α_c α_s / √2`.

use super::QState;
use crate::error::{Error, Result};
use crate::factory::DecomposedOperator;
use crate::grid::GridSpec;
use crate::operators::{AffineCorrection, CorrectionKind};

/// Precomputed collision/streaming circuit plus the affine terms of a case.
#[derive(Clone, Debug)]
pub struct QuantumStepper {
    grid: GridSpec,
    collision: DecomposedOperator,
    streaming: DecomposedOperator,
    /// Streamed forcing plus moving-wall term, length `n_f`.
    affine: Option<Vec<f64>>,
}

impl QuantumStepper {
    pub fn new(
        grid: GridSpec,
        collision: DecomposedOperator,
        streaming: DecomposedOperator,
        corrections: &[AffineCorrection],
    ) -> Result<Self> {
        let dim = grid.padded_len();
        for op in [&collision, &streaming] {
            if op.block_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: op.block_dim(),
                });
            }
        }
        let n_f = grid.n_f();
        let mut affine = vec![0.0; n_f];
        for c in corrections {
            if c.values.len() != n_f {
                return Err(Error::LengthMismatch(c.values.len(), n_f));
            }
            match c.kind {
                // Forcing enters before streaming, so it is streamed too.
                CorrectionKind::Forcing => {
                    let streamed = streaming.triple.apply(&grid.pad(&c.values))?;
                    for (a, s) in affine.iter_mut().zip(&streamed) {
                        *a += s;
                    }
                }
                CorrectionKind::MovingWall => {
                    for (a, s) in affine.iter_mut().zip(&c.values) {
                        *a += s;
                    }
                }
            }
        }
        let affine = affine.iter().any(|&v| v != 0.0).then_some(affine);
        Ok(QuantumStepper {
            grid,
            collision,
            streaming,
            affine,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn collision(&self) -> &DecomposedOperator {
        &self.collision
    }

    pub fn streaming(&self) -> &DecomposedOperator {
        &self.streaming
    }

    pub fn readout_scale(state: &QState) -> f64 {
        state.norm_phi * state.alpha_c * state.alpha_s / std::f64::consts::SQRT_2
    }

    /// Runs the circuit on `df` (length `n_f`) and returns the final state.
    pub fn evolve(&self, df: &[f64]) -> Result<QState> {
        let n_f = self.grid.n_f();
        if df.len() != n_f {
            return Err(Error::LengthMismatch(df.len(), n_f));
        }
        let mut state = QState::encode(&self.grid.pad(df))?;
        state.alpha_c = self.collision.alpha;
        state.alpha_s = self.streaming.alpha;
        for block in self.collision.blocks() {
            state.apply_dilated(block)?;
        }
        state.apply_hadamard_ancilla();
        for block in self.streaming.blocks() {
            state.apply_dilated(block)?;
        }
        Ok(state)
    }

    /// Linear part only: `S C df`.
    pub fn linear_step(&self, df: &[f64]) -> Result<Vec<f64>> {
        let state = self.evolve(df)?;
        let mut out = state.readout(Self::readout_scale(&state));
        // Padding is re-zeroed by dropping it.
        out.truncate(self.grid.n_f());
        Ok(out)
    }

    pub fn step(&self, df: &[f64]) -> Result<Vec<f64>> {
        let mut out = self.linear_step(df)?;
        if let Some(affine) = &self.affine {
            for (o, a) in out.iter_mut().zip(affine) {
                *o += a;
            }
        }
        Ok(out)
    }
}

/// One step `df' = S (C df + forcing) + moving-wall term`.
pub fn qlb_step(
    grid: &GridSpec,
    df: &[f64],
    collision: &DecomposedOperator,
    streaming: &DecomposedOperator,
    corrections: &[AffineCorrection],
) -> Result<Vec<f64>> {
    QuantumStepper::new(*grid, collision.clone(), streaming.clone(), corrections)?.step(df)
}
