// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact statevector simulation of one ancilla plus the DF register.
//!
//! Amplitudes are stored with the ancilla as the most significant qubit, so
//! the vector is `[ancilla=0 block; ancilla=1 block]`.

mod broken;
mod pipeline;
mod sampling;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::factory::DilatedOperator;

pub use broken::{broken_step_no_hadamard, broken_step_zero_padding, collide_and_mix};
pub use pipeline::{qlb_step, QuantumStepper};
pub use sampling::sample_counts;

#[derive(Clone, Debug, PartialEq)]
pub struct QState {
    pub amps: Vec<Complex64>,
    /// Norm of the encoded (unnormalized) vector.
    pub norm_phi: f64,
    pub alpha_c: f64,
    pub alpha_s: f64,
}

fn check_df(df: &[f64]) -> Result<f64> {
    if df.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = df.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(n)
}

impl QState {
    /// Append-to-self encoding: `φ = [df; df] / ‖[df; df]‖`.
    pub fn encode(df: &[f64]) -> Result<QState> {
        let norm_phi = check_df(df)? * std::f64::consts::SQRT_2;
        let half: Vec<Complex64> = df
            .iter()
            .map(|&x| Complex64::new(x / norm_phi, 0.0))
            .collect();
        let mut amps = half.clone();
        amps.extend_from_slice(&half);
        Ok(QState {
            amps,
            norm_phi,
            alpha_c: 1.0,
            alpha_s: 1.0,
        })
    }

    /// `φ = [df; 0] / ‖df‖`, the encoding that leaves the ancilla unmixed.
    pub fn encode_zero_padded(df: &[f64]) -> Result<QState> {
        let norm_phi = check_df(df)?;
        let mut amps: Vec<Complex64> = df
            .iter()
            .map(|&x| Complex64::new(x / norm_phi, 0.0))
            .collect();
        amps.resize(2 * df.len(), Complex64::default());
        Ok(QState {
            amps,
            norm_phi,
            alpha_c: 1.0,
            alpha_s: 1.0,
        })
    }

    pub fn block_dim(&self) -> usize {
        self.amps.len() / 2
    }

    pub fn first_block(&self) -> &[Complex64] {
        &self.amps[..self.block_dim()]
    }

    pub fn second_block(&self) -> &[Complex64] {
        &self.amps[self.block_dim()..]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_dilated(&mut self, m: &DilatedOperator) -> Result<()> {
        let mut scratch = vec![Complex64::default(); self.amps.len()];
        m.apply_in_place(&mut self.amps, &mut scratch)
    }

    /// `H ⊗ I` on the ancilla.
    pub fn apply_hadamard_ancilla(&mut self) {
        let n = self.block_dim();
        let (top, bot) = self.amps.split_at_mut(n);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (t, b) in top.iter_mut().zip(bot.iter_mut()) {
            let (a, c) = (*t, *b);
            *t = (a + c) * h;
            *b = (a - c) * h;
        }
    }

    /// Real part of the first ancilla block times `scale`.
    pub fn readout(&self, scale: f64) -> Vec<f64> {
        self.first_block().iter().map(|a| a.re * scale).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::LbOperator;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn encode_basis_vector() {
        let mut df = vec![0.0; 8];
        df[0] = 1.0;
        let s = QState::encode(&df).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.norm_phi - std::f64::consts::SQRT_2).abs() < 1e-15);
        for (k, a) in s.amps.iter().enumerate() {
            let expect = if k == 0 || k == 8 { h } else { 0.0 };
            assert!((a - c(expect)).norm() < 1e-15);
        }
    }

    #[test]
    fn encode_rejects_degenerate() {
        assert!(matches!(QState::encode(&[0.0; 4]), Err(Error::ZeroVector)));
        assert!(matches!(
            QState::encode(&[1.0, f64::NAN]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn encode_readout_roundtrip() {
        let df: Vec<f64> = (0..16).map(|k| (k as f64 * 1.3).sin() + 0.2).collect();
        let s = QState::encode(&df).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-14);
        let back = s.readout(s.norm_phi);
        for (a, b) in back.iter().zip(&df) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn hadamard_examples() {
        let v = [0.3, -0.1, 0.5, 0.2];
        let mut s = QState::encode(&v).unwrap();
        let before = s.clone();
        s.apply_hadamard_ancilla();
        for k in 0..4 {
            let expect = before.amps[k] * std::f64::consts::SQRT_2;
            assert!((s.amps[k] - expect).norm() < 1e-15);
            assert!(s.amps[k + 4].norm() < 1e-16);
        }
        s.apply_hadamard_ancilla();
        for (a, b) in s.amps.iter().zip(&before.amps) {
            assert!((a - b).norm() < 1e-15);
        }

        let mut anti = before.clone();
        for a in &mut anti.amps[4..] {
            *a = -*a;
        }
        anti.apply_hadamard_ancilla();
        for k in 0..4 {
            assert!(anti.amps[k].norm() < 1e-16);
            assert!((anti.amps[k + 4] - before.amps[k] * std::f64::consts::SQRT_2).norm() < 1e-15);
        }
    }

    #[test]
    fn permutation_order() {
        let cycle = LbOperator::permutation(vec![1, 2, 3, 0]).unwrap();
        let m = DilatedOperator::BlockDiagonal(cycle);
        let s0 = QState::encode(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let mut s = s0.clone();
        let mut id = s0.clone();
        id.apply_dilated(&DilatedOperator::BlockDiagonal(LbOperator::identity(4)))
            .unwrap();
        assert_eq!(id, s0);
        for step in 1..=4 {
            s.apply_dilated(&m).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-15);
            assert_eq!(s == s0, step == 4);
        }
        assert!(matches!(
            s.apply_dilated(&DilatedOperator::BlockDiagonal(LbOperator::identity(8))),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
