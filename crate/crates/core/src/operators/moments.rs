// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;

use crate::grid::GridSpec;
use crate::lattice::{LatticeModel, Q};

/// Density and momentum extraction as `n_g × n_f` matrices.
#[derive(Clone, Debug)]
pub struct MomentMatrices {
    pub m0: DMatrix<f64>,
    pub m1x: DMatrix<f64>,
    pub m1y: DMatrix<f64>,
}

pub fn moment_matrices(g: &GridSpec, lat: &LatticeModel) -> MomentMatrices {
    let (n_g, n_f) = (g.n_g(), g.n_f());
    let e = lat.velocities_f64();
    let block = |weight: &dyn Fn(usize) -> f64| {
        DMatrix::from_fn(
            n_g,
            n_f,
            |r, c| {
                if c % n_g == r {
                    weight(c / n_g)
                } else {
                    0.0
                }
            },
        )
    };
    MomentMatrices {
        m0: block(&|_| 1.0),
        m1x: block(&|i| e[i][0]),
        m1y: block(&|i| e[i][1]),
    }
}

/// Per-node density and momentum `ρu`.
#[derive(Clone, Debug, PartialEq)]
pub struct Moments {
    pub rho: Vec<f64>,
    pub jx: Vec<f64>,
    pub jy: Vec<f64>,
}

impl Moments {
    pub fn ux(&self) -> Vec<f64> {
        self.jx.iter().zip(&self.rho).map(|(j, r)| j / r).collect()
    }

    pub fn uy(&self) -> Vec<f64> {
        self.jy.iter().zip(&self.rho).map(|(j, r)| j / r).collect()
    }
}

/// Same result as the moment matrices, without materializing them. Only the
/// first `n_f` entries of `df` are read.
pub fn moments(g: &GridSpec, lat: &LatticeModel, df: &[f64]) -> Moments {
    let n_g = g.n_g();
    let e = lat.velocities_f64();
    let mut m = Moments {
        rho: vec![0.0; n_g],
        jx: vec![0.0; n_g],
        jy: vec![0.0; n_g],
    };
    for i in 0..Q {
        let block = &df[i * n_g..(i + 1) * n_g];
        for (s, &f) in block.iter().enumerate() {
            m.rho[s] += f;
            m.jx[s] += e[i][0] * f;
            m.jy[s] += e[i][1] * f;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::d2q9;
    use nalgebra::DVector;

    #[test]
    fn single_site_examples() {
        let lat = d2q9();
        let g = GridSpec::new(1, 1).unwrap();
        let mm = moment_matrices(&g, &lat);
        let rest = DVector::from(lat.weights_f64().to_vec());
        assert!(((&mm.m0 * &rest)[0] - 1.0).abs() < 1e-15);
        assert!((&mm.m1x * &rest)[0].abs() < 1e-16);
        assert!((&mm.m1y * &rest)[0].abs() < 1e-16);

        let mut f = DVector::zeros(9);
        f[2] = 1.0;
        assert_eq!((&mm.m0 * &f)[0], 1.0);
        assert_eq!((&mm.m1x * &f)[0], 1.0);
        assert_eq!((&mm.m1y * &f)[0], 0.0);

        let w = lat.weights_f64();
        let e = lat.velocities_f64();
        let feq = DVector::from_fn(9, |i, _| w[i] * (1.0 + 3.0 * e[i][0] * 0.1));
        assert!(((&mm.m0 * &feq)[0] - 1.0).abs() < 1e-15);
        assert!(((&mm.m1x * &feq)[0] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn direct_matches_matrices() {
        let lat = d2q9();
        let g = GridSpec::new(3, 4).unwrap();
        let df: Vec<f64> = (0..g.n_f()).map(|i| ((i * 7) % 11) as f64 * 0.1).collect();
        let mm = moment_matrices(&g, &lat);
        let v = DVector::from(df.clone());
        let m = moments(&g, &lat, &df);
        for s in 0..g.n_g() {
            assert!(((&mm.m0 * &v)[s] - m.rho[s]).abs() < 1e-13);
            assert!(((&mm.m1x * &v)[s] - m.jx[s]).abs() < 1e-13);
            assert!(((&mm.m1y * &v)[s] - m.jy[s]).abs() < 1e-13);
        }
    }
}
