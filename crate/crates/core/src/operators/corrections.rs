// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Affine terms added to the distribution vector once per step.

use serde::Serialize;

use super::streaming::{pull_source, BcSpec, Edge, EdgeKind, PullSource};
use crate::grid::GridSpec;
use crate::lattice::{LatticeModel, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CorrectionKind {
    /// Body-force source, added after collision and before streaming.
    Forcing,
    /// Moving-wall momentum, added after streaming.
    MovingWall,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineCorrection {
    pub kind: CorrectionKind,
    /// Length `n_f`.
    pub values: Vec<f64>,
}

impl AffineCorrection {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// `S_i = w_i (e_i·F) / c_s²` at every node.
pub fn forcing_vector(g: &GridSpec, lat: &LatticeModel, force: [f64; 2]) -> AffineCorrection {
    let w = lat.weights_f64();
    let e = lat.velocities_f64();
    let inv_cs2 = 1.0 / lat.cs2_f64();
    let n_g = g.n_g();
    let mut values = vec![0.0; g.n_f()];
    for i in 0..Q {
        let s = w[i] * inv_cs2 * (e[i][0] * force[0] + e[i][1] * force[1]);
        values[i * n_g..(i + 1) * n_g].fill(s);
    }
    AffineCorrection {
        kind: CorrectionKind::Forcing,
        values,
    }
}

/// Moving-wall bounce-back term. A population `f_j` leaving boundary node
/// `x_b` through a wall with velocity `u_w` returns as `f_{-j}(x_b)` shifted
/// by `−2 w_j ρ_w (e_j·u_w) / c_s²`. At corners each crossed wall
/// contributes its own term.
pub fn moving_wall_correction(g: &GridSpec, bc: &BcSpec, lat: &LatticeModel) -> AffineCorrection {
    let w = lat.weights_f64();
    let e = lat.velocities_f64();
    let inv_cs2 = 1.0 / lat.cs2_f64();
    let mut values = vec![0.0; g.n_f()];
    let wall_term = |edge: Edge, j: usize| match bc.edge(edge) {
        EdgeKind::Wall { velocity, density } => {
            -2.0 * w[j] * density * (e[j][0] * velocity[0] + e[j][1] * velocity[1]) * inv_cs2
        }
        EdgeKind::Periodic => 0.0,
    };
    for i in 1..Q {
        // The incoming population i was the outgoing population j = -i.
        let j = lat.opposite[i];
        for y in 0..g.ny {
            for x in 0..g.nx {
                if let PullSource::Wall { first, second } = pull_source(g, bc, lat, x, y, i) {
                    let mut v = wall_term(first, j);
                    if let Some(second) = second {
                        v += wall_term(second, j);
                    }
                    values[g.index_unchecked(x, y, i)] = v;
                }
            }
        }
    }
    AffineCorrection {
        kind: CorrectionKind::MovingWall,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::d2q9;

    #[test]
    fn stationary_walls_give_zero() {
        let lat = d2q9();
        let g = GridSpec::new(4, 5).unwrap();
        assert!(moving_wall_correction(&g, &BcSpec::channel(0.0), &lat).is_zero());
        assert!(moving_wall_correction(&g, &BcSpec::cavity(0.0), &lat).is_zero());
        assert!(moving_wall_correction(&g, &BcSpec::periodic(), &lat).is_zero());
    }

    #[test]
    fn lid_term_value_and_locality() {
        let lat = d2q9();
        let g = GridSpec::new(4, 5).unwrap();
        let c = moving_wall_correction(&g, &BcSpec::channel(0.1), &lat);
        for x in 0..4 {
            let idx = g.flat_index(x, 4, lat.opposite[5]).unwrap();
            assert!((c.values[idx] + 1.0 / 60.0).abs() < 1e-15);
            let idx = g.flat_index(x, 4, lat.opposite[7]).unwrap();
            assert!((c.values[idx] - 1.0 / 60.0).abs() < 1e-15);
            let idx = g.flat_index(x, 4, 3).unwrap();
            assert_eq!(c.values[idx], 0.0);
        }
        for (idx, &v) in c.values.iter().enumerate() {
            if v != 0.0 {
                let (_, y, _) = g.coords_of(idx).unwrap();
                assert_eq!(y, 4);
            }
        }
    }

    #[test]
    fn cavity_lid_corners_get_term() {
        let lat = d2q9();
        let g = GridSpec::new(4, 4).unwrap();
        let c = moving_wall_correction(&g, &BcSpec::cavity(0.1), &lat);
        // Top-left corner: f_7 = (-1,1) leaves through lid and left wall.
        let idx = g.flat_index(0, 3, lat.opposite[7]).unwrap();
        assert!((c.values[idx] - 1.0 / 60.0).abs() < 1e-15);
        // Mass-neutral: the lid adds momentum only.
        assert!(c.values.iter().sum::<f64>().abs() < 1e-15);
    }

    #[test]
    fn forcing_values() {
        let lat = d2q9();
        let g = GridSpec::new(3, 8).unwrap();
        assert!(forcing_vector(&g, &lat, [0.0, 0.0]).is_zero());
        let f = forcing_vector(&g, &lat, [0.001, 0.0]);
        let idx = g.flat_index(1, 1, 2).unwrap();
        assert!((f.values[idx] - 1.0 / 3000.0).abs() < 1e-18);
        let n_g = g.n_g();
        for site in 0..n_g {
            let s: f64 = (0..Q).map(|i| f.values[i * n_g + site]).sum();
            assert!(s.abs() < 1e-18);
        }
    }
}
