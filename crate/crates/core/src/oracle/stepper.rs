// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::grid::GridSpec;
use crate::lattice::{LatticeModel, Q};
use crate::operators::{BcSpec, EdgeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdfForm {
    /// Drops the velocity-quadratic terms.
    Linear,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum EquilibriumModel {
    /// Velocity from the local momentum.
    Fluid,
    /// Passive scalar carried by a fixed velocity.
    AdvectionDiffusion { velocity: [f64; 2] },
}

pub fn equilibrium(rho: f64, u: [f64; 2], lat: &LatticeModel, form: EdfForm) -> [f64; Q] {
    let w = lat.weights_f64();
    let e = lat.velocities_f64();
    let inv_cs2 = 1.0 / lat.cs2_f64();
    let uu = u[0] * u[0] + u[1] * u[1];
    std::array::from_fn(|i| {
        let eu = e[i][0] * u[0] + e[i][1] * u[1];
        let mut bracket = 1.0 + eu * inv_cs2;
        if form == EdfForm::Full {
            bracket += 0.5 * eu * eu * inv_cs2 * inv_cs2 - 0.5 * uu * inv_cs2;
        }
        w[i] * rho * bracket
    })
}

/// BGK collide-and-stream over explicit loops, with push streaming.
#[derive(Clone, Debug)]
pub struct ClassicalStepper {
    pub grid: GridSpec,
    pub bc: BcSpec,
    pub lat: LatticeModel,
    pub tau: f64,
    pub model: EquilibriumModel,
    pub form: EdfForm,
    pub force: [f64; 2],
}

impl ClassicalStepper {
    fn site_equilibrium(&self, f: &[f64; Q]) -> [f64; Q] {
        let e = self.lat.velocities_f64();
        let rho: f64 = f.iter().sum();
        match (self.model, self.form) {
            (EquilibriumModel::AdvectionDiffusion { velocity }, form) => {
                equilibrium(rho, velocity, &self.lat, form)
            }
            (EquilibriumModel::Fluid, EdfForm::Linear) => {
                // w_i (ρ + 3 e_i·j): linear in f, no division by ρ.
                let w = self.lat.weights_f64();
                let j = (0..Q).fold([0.0, 0.0], |acc, i| {
                    [acc[0] + e[i][0] * f[i], acc[1] + e[i][1] * f[i]]
                });
                let inv_cs2 = 1.0 / self.lat.cs2_f64();
                std::array::from_fn(|i| w[i] * (rho + inv_cs2 * (e[i][0] * j[0] + e[i][1] * j[1])))
            }
            (EquilibriumModel::Fluid, EdfForm::Full) => {
                let j = (0..Q).fold([0.0, 0.0], |acc, i| {
                    [acc[0] + e[i][0] * f[i], acc[1] + e[i][1] * f[i]]
                });
                equilibrium(rho, [j[0] / rho, j[1] / rho], &self.lat, EdfForm::Full)
            }
        }
    }

    /// Post-collision populations including the force source.
    fn collide(&self, df: &[f64]) -> Vec<f64> {
        let g = &self.grid;
        let n_g = g.n_g();
        let w = self.lat.weights_f64();
        let e = self.lat.velocities_f64();
        let inv_cs2 = 1.0 / self.lat.cs2_f64();
        let source: [f64; Q] = std::array::from_fn(|i| {
            w[i] * inv_cs2 * (e[i][0] * self.force[0] + e[i][1] * self.force[1])
        });
        let omega = 1.0 / self.tau;
        let mut post = vec![0.0; g.n_f()];
        for site in 0..n_g {
            let f: [f64; Q] = std::array::from_fn(|i| df[site + i * n_g]);
            let feq = self.site_equilibrium(&f);
            for i in 0..Q {
                post[site + i * n_g] = f[i] - omega * (f[i] - feq[i]) + source[i];
            }
        }
        post
    }

    pub fn step(&self, df: &[f64]) -> Vec<f64> {
        let g = &self.grid;
        let (nx, ny) = (g.nx as i64, g.ny as i64);
        let n_g = g.n_g();
        let post = self.collide(df);
        let w = self.lat.weights_f64();
        let e = self.lat.velocities_f64();
        let inv_cs2 = 1.0 / self.lat.cs2_f64();
        let wall_term = |edge: EdgeKind, i: usize| match edge {
            EdgeKind::Wall { velocity, density } => {
                -2.0 * w[i] * density * (e[i][0] * velocity[0] + e[i][1] * velocity[1]) * inv_cs2
            }
            EdgeKind::Periodic => 0.0,
        };
        let mut next = vec![0.0; g.n_f()];
        for y in 0..ny {
            for x in 0..nx {
                let site = (x + y * nx) as usize;
                next[site] = post[site];
                for i in 1..Q {
                    let [ex, ey] = self.lat.velocities[i];
                    let (mut tx, mut ty) = (x + ex, y + ey);
                    let mut hit: [Option<EdgeKind>; 2] = [None, None];
                    if tx < 0 || tx >= nx {
                        let edge = if tx < 0 { self.bc.left } else { self.bc.right };
                        if edge.is_periodic() {
                            tx = tx.rem_euclid(nx);
                        } else {
                            hit[0] = Some(edge);
                        }
                    }
                    if ty < 0 || ty >= ny {
                        let edge = if ty < 0 { self.bc.bottom } else { self.bc.top };
                        if edge.is_periodic() {
                            ty = ty.rem_euclid(ny);
                        } else {
                            hit[1] = Some(edge);
                        }
                    }
                    let f = post[site + i * n_g];
                    if hit.iter().any(Option::is_some) {
                        let extra: f64 = hit.iter().flatten().map(|&edge| wall_term(edge, i)).sum();
                        next[site + self.lat.opposite[i] * n_g] = f + extra;
                    } else {
                        next[(tx + ty * nx) as usize + i * n_g] = f;
                    }
                }
            }
        }
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::d2q9;
    use crate::oracle::FlowFields;

    #[test]
    fn equilibrium_examples() {
        let lat = d2q9();
        let w = lat.weights_f64();
        for form in [EdfForm::Linear, EdfForm::Full] {
            let f = equilibrium(1.3, [0.0, 0.0], &lat, form);
            for i in 0..Q {
                assert!((f[i] - w[i] * 1.3).abs() < 1e-16);
            }
        }
        let lin = equilibrium(1.0, [0.1, 0.0], &lat, EdfForm::Linear);
        assert!((lin[2] - 0.144_444_444_444_444_45).abs() < 1e-15);
        let full = equilibrium(1.0, [0.1, 0.0], &lat, EdfForm::Full);
        assert!((full[2] - 0.147_777_777_777_777_8).abs() < 1e-15);
    }

    fn stepper(bc: BcSpec, form: EdfForm) -> ClassicalStepper {
        ClassicalStepper {
            grid: GridSpec::new(5, 4).unwrap(),
            bc,
            lat: d2q9(),
            tau: 0.8,
            model: EquilibriumModel::Fluid,
            form,
            force: [0.0, 0.0],
        }
    }

    #[test]
    fn rest_state_is_fixed() {
        for bc in [
            BcSpec::periodic(),
            BcSpec::channel(0.0),
            BcSpec::cavity(0.0),
        ] {
            for form in [EdfForm::Linear, EdfForm::Full] {
                let s = stepper(bc, form);
                let rest = FlowFields::at_rest(s.grid, &s.lat);
                let next = s.step(&rest.df);
                for (a, b) in next.iter().zip(&rest.df) {
                    assert!((a - b).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn stationary_walls_conserve_mass() {
        let s = stepper(BcSpec::cavity(0.0), EdfForm::Linear);
        let df: Vec<f64> = (0..s.grid.n_f())
            .map(|k| 0.1 + ((k * 37) % 17) as f64 * 0.01)
            .collect();
        let m0: f64 = df.iter().sum();
        let next = s.step(&df);
        assert!((next.iter().sum::<f64>() - m0).abs() < 1e-12);
    }
}
