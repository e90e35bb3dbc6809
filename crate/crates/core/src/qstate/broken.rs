// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! The two wrong pipelines, kept for tests and demonstrations.
//!
//! Both return the first ancilla block rescaled by `‖φ‖ α_c α_s` (no √2,
//! since no Hadamard folds the blocks). Its real part is
//! `S C df − U^s L^s V^s U^c L^c V^c df`, where `L = √(I − D²)`.

use num_complex::Complex64;

use super::QState;
use crate::error::Result;
use crate::factory::DecomposedOperator;

fn run_without_mixing(
    mut state: QState,
    collision: &DecomposedOperator,
    streaming: &DecomposedOperator,
) -> Result<Vec<Complex64>> {
    state.alpha_c = collision.alpha;
    state.alpha_s = streaming.alpha;
    for block in collision.blocks().into_iter().chain(streaming.blocks()) {
        state.apply_dilated(block)?;
    }
    let scale = state.norm_phi * state.alpha_c * state.alpha_s;
    Ok(state.first_block().iter().map(|a| a * scale).collect())
}

/// Encodes `[df; 0]` and skips the ancilla Hadamard. `df` has `padded_len`
/// entries.
pub fn broken_step_zero_padding(
    df: &[f64],
    collision: &DecomposedOperator,
    streaming: &DecomposedOperator,
) -> Result<Vec<Complex64>> {
    run_without_mixing(QState::encode_zero_padded(df)?, collision, streaming)
}

/// Encodes `[df; df]` but skips the ancilla Hadamard.
pub fn broken_step_no_hadamard(
    df: &[f64],
    collision: &DecomposedOperator,
    streaming: &DecomposedOperator,
) -> Result<Vec<Complex64>> {
    run_without_mixing(QState::encode(df)?, collision, streaming)
}

/// Correct encoding through collision and the ancilla Hadamard; the second
/// block of the result vanishes.
pub fn collide_and_mix(df: &[f64], collision: &DecomposedOperator) -> Result<QState> {
    let mut state = QState::encode(df)?;
    state.alpha_c = collision.alpha;
    for block in collision.blocks() {
        state.apply_dilated(block)?;
    }
    state.apply_hadamard_ancilla();
    Ok(state)
}
