// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures shared by the criterion targets.

use qlbm_core::config::{CaseConfig, CaseId, RawConfig};
use qlbm_core::qstate::QuantumStepper;
use qlbm_core::runner::CaseSetup;

/// Poiseuille setup on an `nx × ny` grid.
pub fn channel(nx: usize, ny: usize) -> CaseSetup {
    let cfg: CaseConfig = RawConfig {
        case: Some(CaseId::Poiseuille),
        nx: Some(nx),
        ny: Some(ny),
        ..RawConfig::default()
    }
    .resolve()
    .expect("bench grid fits the qubit ceiling");
    CaseSetup::new(&cfg).expect("valid setup")
}

pub fn stepper(setup: &CaseSetup) -> QuantumStepper {
    setup.quantum_stepper().expect("decomposable")
}

/// Deterministic non-zero input of length `n`.
pub fn probe(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 0.1 + ((k * 37) % 101) as f64 / 101.0)
        .collect()
}
