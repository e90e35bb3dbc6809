// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! D2Q9 velocity set.
//!
//! Directions are ordered rest, the four axis links (N, E, S, W) and the
//! four diagonals:
//! ```text
//!   7   1   5
//!    \  |  /
//!   4 - 0 - 2
//!    /  |  \
//!   8   3   6
//! ```

use num_rational::Rational64;

use crate::error::{Error, Result};

pub const Q: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeModel {
    pub velocities: [[i64; 2]; Q],
    pub weights: [Rational64; Q],
    pub opposite: [usize; Q],
    pub cs2: Rational64,
}

/// The D2Q9 model in the direction order shown in the module docs.
pub fn d2q9() -> LatticeModel {
    let r = Rational64::new;
    let velocities = [
        [0, 0],
        [0, 1],
        [1, 0],
        [0, -1],
        [-1, 0],
        [1, 1],
        [1, -1],
        [-1, 1],
        [-1, -1],
    ];
    let mut weights = [r(1, 36); Q];
    weights[0] = r(4, 9);
    for w in &mut weights[1..5] {
        *w = r(1, 9);
    }
    let mut opposite = [0; Q];
    for (i, e) in velocities.iter().enumerate() {
        opposite[i] = velocities
            .iter()
            .position(|f| f[0] == -e[0] && f[1] == -e[1])
            .expect("velocity set is closed under negation");
    }
    LatticeModel {
        velocities,
        weights,
        opposite,
        cs2: r(1, 3),
    }
}

impl LatticeModel {
    pub fn opposite(&self, i: usize) -> Result<usize> {
        self.opposite
            .get(i)
            .copied()
            .ok_or(Error::DirectionOutOfRange(i))
    }

    pub fn weights_f64(&self) -> [f64; Q] {
        self.weights.map(to_f64)
    }

    pub fn velocities_f64(&self) -> [[f64; 2]; Q] {
        self.velocities.map(|[x, y]| [x as f64, y as f64])
    }

    pub fn cs2_f64(&self) -> f64 {
        to_f64(self.cs2)
    }

    /// `e_i . e_k` as an integer.
    pub fn dot(&self, i: usize, k: usize) -> i64 {
        let (a, b) = (self.velocities[i], self.velocities[k]);
        a[0] * b[0] + a[1] * b[1]
    }
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let lat = d2q9();
        assert_eq!(lat.weights[0], Rational64::new(4, 9));
        assert_eq!(lat.velocities[5], [1, 1]);
        assert_eq!(lat.velocities[1], [0, 1]);
        assert_eq!(lat.velocities[8], [-1, -1]);
        let sum: Rational64 = lat.weights.iter().copied().sum();
        assert_eq!(sum, Rational64::from_integer(1));
    }

    #[test]
    fn opposite_examples() {
        let lat = d2q9();
        assert_eq!(lat.opposite(0).unwrap(), 0);
        assert_eq!(lat.opposite(1).unwrap(), 3);
        assert_eq!(lat.opposite(5).unwrap(), 8);
        assert!(matches!(
            lat.opposite(9),
            Err(Error::DirectionOutOfRange(9))
        ));
    }

    #[test]
    fn opposite_is_involution_and_negates() {
        let lat = d2q9();
        for i in 0..Q {
            let j = lat.opposite(i).unwrap();
            assert_eq!(lat.opposite(j).unwrap(), i);
            assert_eq!(lat.velocities[j][0], -lat.velocities[i][0]);
            assert_eq!(lat.velocities[j][1], -lat.velocities[i][1]);
        }
    }

    #[test]
    fn isotropy_exact() {
        let lat = d2q9();
        for a in 0..2 {
            let first: Rational64 = (0..Q)
                .map(|i| lat.weights[i] * Rational64::from_integer(lat.velocities[i][a]))
                .sum();
            assert_eq!(first, Rational64::from_integer(0));
            for b in 0..2 {
                let second: Rational64 = (0..Q)
                    .map(|i| {
                        lat.weights[i]
                            * Rational64::from_integer(lat.velocities[i][a] * lat.velocities[i][b])
                    })
                    .sum();
                let expect = if a == b {
                    lat.cs2
                } else {
                    Rational64::from_integer(0)
                };
                assert_eq!(second, expect);
            }
        }
    }
}
