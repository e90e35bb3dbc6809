// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Measurement sampling. Probabilities lose the amplitude signs, so this is
//! for measurement-overhead studies only and never feeds the stepping loop.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::QState;
use crate::error::{Error, Result};

/// Counts per basis state from `shots` computational-basis measurements.
pub fn sample_counts(state: &QState, shots: u64, seed: u64) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let probs: Vec<f64> = state.amps.iter().map(|a| a.norm_sqr()).collect();
    let dist = WeightedIndex::new(&probs).map_err(|_| Error::ZeroVector)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0; probs.len()];
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_is_deterministic() {
        let mut df = vec![0.0; 4];
        df[2] = 1.0;
        let s = QState::encode_zero_padded(&df).unwrap();
        let counts = sample_counts(&s, 1000, 7).unwrap();
        assert_eq!(counts[2], 1000);
        assert_eq!(counts.iter().sum::<u64>(), 1000);
    }

    #[test]
    fn zero_shots_rejected() {
        let s = QState::encode(&[1.0, 0.0]).unwrap();
        assert!(matches!(sample_counts(&s, 0, 1), Err(Error::ZeroShots)));
    }

    #[test]
    fn seeded_reproducible() {
        let s = QState::encode(&[0.3, 0.1, -0.5, 0.2]).unwrap();
        assert_eq!(
            sample_counts(&s, 5000, 42).unwrap(),
            sample_counts(&s, 5000, 42).unwrap()
        );
    }

    #[test]
    fn frequencies_converge() {
        // 8-dim state: 4-entry df appended to itself.
        let s = QState::encode(&[0.1, 0.7, -0.4, 0.25]).unwrap();
        let shots = 1_000_000;
        let counts = sample_counts(&s, shots, 2026).unwrap();
        let bound = 3.0 / (shots as f64).sqrt();
        for (c, a) in counts.iter().zip(&s.amps) {
            let freq = *c as f64 / shots as f64;
            assert!(
                (freq - a.norm_sqr()).abs() <= bound,
                "{freq} vs {}",
                a.norm_sqr()
            );
        }
    }
}
