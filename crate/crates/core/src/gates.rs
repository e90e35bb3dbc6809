// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form gate-count estimates for one time step.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GateEstimate {
    pub n_qa: u32,
    /// `2^(n+1)` for a diagonal unitary.
    pub diagonal_per_op: u128,
    /// `2^(n−1) (2^n − 1)` for a generic unitary.
    pub generic_per_op: u128,
    /// Two diagonal plus four generic unitaries.
    pub total: u128,
}

pub fn gate_count_estimate(n_qa: u32) -> Result<GateEstimate> {
    if !(2..=62).contains(&n_qa) {
        return Err(Error::config(format!("qubit count {n_qa} outside 2..=62")));
    }
    let diagonal_per_op = 1u128 << (n_qa + 1);
    let generic_per_op = (1u128 << (n_qa - 1)) * ((1u128 << n_qa) - 1);
    Ok(GateEstimate {
        n_qa,
        diagonal_per_op,
        generic_per_op,
        total: 2 * diagonal_per_op + 4 * generic_per_op,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(gate_count_estimate(2).unwrap().diagonal_per_op, 8);
        let e9 = gate_count_estimate(9).unwrap();
        assert_eq!(e9.generic_per_op, 130_816);
        assert_eq!(e9.total, 2 * 1024 + 4 * 130_816);
        assert!(gate_count_estimate(1).is_err());
        assert!(gate_count_estimate(63).is_err());
    }

    #[test]
    fn total_matches_leading_form() {
        // 2·2^(n+1) + 4·2^(n−1)(2^n − 1) = 2^(n+2) + 2^(n+1)(2^n − 1)
        for n in 2..40u32 {
            let e = gate_count_estimate(n).unwrap();
            let expect = (1u128 << (n + 2)) + (1u128 << (n + 1)) * ((1u128 << n) - 1);
            assert_eq!(e.total, expect);
        }
    }
}
