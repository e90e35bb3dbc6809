// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Classical reference: a loop-based LBM stepper written independently of
//! the operator matrices, and the analytic benchmark solutions.

mod analytic;
mod stepper;

pub use analytic::{
    analytic_couette, analytic_gaussian, analytic_gaussian_periodic, analytic_poiseuille,
    l2_relative_error, GaussianForm, GaussianParams,
};
pub use stepper::{equilibrium, ClassicalStepper, EdfForm, EquilibriumModel};

use crate::grid::GridSpec;
use crate::lattice::LatticeModel;
use crate::operators::{moments, Moments};

/// Distribution vector of length `n_f` plus the grid it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowFields {
    pub grid: GridSpec,
    pub df: Vec<f64>,
}

impl FlowFields {
    /// `f_i = w_i ρ (1 + 3 e_i·u)` at every node.
    pub fn from_equilibrium(
        grid: GridSpec,
        lat: &LatticeModel,
        mut rho_u: impl FnMut(usize, usize) -> (f64, [f64; 2]),
    ) -> Self {
        let n_g = grid.n_g();
        let mut df = vec![0.0; grid.n_f()];
        for y in 0..grid.ny {
            for x in 0..grid.nx {
                let (rho, u) = rho_u(x, y);
                let feq = equilibrium(rho, u, lat, EdfForm::Linear);
                for (i, f) in feq.iter().enumerate() {
                    df[x + y * grid.nx + i * n_g] = *f;
                }
            }
        }
        FlowFields { grid, df }
    }

    pub fn at_rest(grid: GridSpec, lat: &LatticeModel) -> Self {
        Self::from_equilibrium(grid, lat, |_, _| (1.0, [0.0, 0.0]))
    }

    pub fn moments(&self, lat: &LatticeModel) -> Moments {
        moments(&self.grid, lat, &self.df)
    }

    pub fn total_mass(&self) -> f64 {
        self.df.iter().sum()
    }
}
