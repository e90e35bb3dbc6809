// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Linear LBM operators on the padded distribution vector.
//!
//! Every operator acts on vectors of length `padded_len` and is the identity
//! on the zero padding. Operators remember how they were built so the
//! factorization and the statevector engine can take structured fast paths;
//! the dense matrix is only materialized on request.

mod collision;
mod corrections;
mod moments;
mod streaming;

use std::ops::{Add, Mul};

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Q;

pub use collision::{
    advection_diffusion_kernel, build_collision_operator, collision_kernel, CollisionKernel,
};
pub use corrections::{forcing_vector, moving_wall_correction, AffineCorrection, CorrectionKind};
pub use moments::{moment_matrices, moments, MomentMatrices, Moments};
pub use streaming::{build_streaming_operator, BcSpec, EdgeKind};

pub type Kernel = SMatrix<f64, Q, Q>;

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Structure {
    /// Arbitrary dense matrix.
    Generic(DMatrix<f64>),
    /// `kernel ⊗ I_{n_g}` on the first `9 n_g` rows and columns.
    KronLocal { kernel: Kernel, n_g: usize },
    /// Row `r` has its single 1 in column `map[r]`.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbOperator {
    dim: usize,
    structure: Structure,
}

impl LbOperator {
    pub fn identity(dim: usize) -> Self {
        LbOperator {
            dim,
            structure: Structure::Permutation((0..dim).collect()),
        }
    }

    pub fn generic(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        Ok(LbOperator {
            dim: m.nrows(),
            structure: Structure::Generic(m),
        })
    }

    pub fn kron_local(kernel: Kernel, n_g: usize, dim: usize) -> Result<Self> {
        if Q * n_g > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: Q * n_g,
            });
        }
        Ok(LbOperator {
            dim,
            structure: Structure::KronLocal { kernel, n_g },
        })
    }

    pub fn permutation(map: Vec<usize>) -> Result<Self> {
        let dim = map.len();
        let mut hit = vec![false; dim];
        for &c in &map {
            if c >= dim || std::mem::replace(&mut hit[c], true) {
                return Err(Error::InvalidBoundary(format!(
                    "index map is not a permutation (column {c})"
                )));
            }
        }
        Ok(LbOperator {
            dim,
            structure: Structure::Permutation(map),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.structure, Structure::Permutation(_))
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        match &self.structure {
            Structure::Generic(m) => m[(row, col)],
            Structure::KronLocal { kernel, n_g } => {
                let n_f = Q * n_g;
                if row >= n_f || col >= n_f {
                    return if row == col { 1.0 } else { 0.0 };
                }
                if row % n_g != col % n_g {
                    return 0.0;
                }
                kernel[(row / n_g, col / n_g)]
            }
            Structure::Permutation(map) => {
                if map[row] == col {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `out = A v`. Works for real and complex vectors.
    pub fn apply_into<T>(&self, v: &[T], out: &mut [T]) -> Result<()>
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if out.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: out.len(),
            });
        }
        match &self.structure {
            Structure::Generic(m) => {
                out.fill(T::default());
                for (c, col) in m.column_iter().enumerate() {
                    let vc = v[c];
                    for (o, &a) in out.iter_mut().zip(col.iter()) {
                        if a != 0.0 {
                            *o = *o + vc * a;
                        }
                    }
                }
            }
            Structure::KronLocal { kernel, n_g } => {
                let n_g = *n_g;
                let n_f = Q * n_g;
                for i in 0..Q {
                    let dst = &mut out[i * n_g..(i + 1) * n_g];
                    dst.fill(T::default());
                    for k in 0..Q {
                        let a = kernel[(i, k)];
                        if a == 0.0 {
                            continue;
                        }
                        let src = &v[k * n_g..(k + 1) * n_g];
                        for (d, &s) in dst.iter_mut().zip(src) {
                            *d = *d + s * a;
                        }
                    }
                }
                out[n_f..].copy_from_slice(&v[n_f..]);
            }
            Structure::Permutation(map) => {
                for (o, &c) in out.iter_mut().zip(map) {
                    *o = v[c];
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    pub fn apply_complex(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::default(); self.dim];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    pub fn transpose(&self) -> LbOperator {
        let structure = match &self.structure {
            Structure::Generic(m) => Structure::Generic(m.transpose()),
            Structure::KronLocal { kernel, n_g } => Structure::KronLocal {
                kernel: kernel.transpose(),
                n_g: *n_g,
            },
            Structure::Permutation(map) => {
                let mut inv = vec![0; map.len()];
                for (r, &c) in map.iter().enumerate() {
                    inv[c] = r;
                }
                Structure::Permutation(inv)
            }
        };
        LbOperator {
            dim: self.dim,
            structure,
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.structure {
            Structure::Generic(m) => m.clone(),
            _ => {
                let mut m = DMatrix::zeros(self.dim, self.dim);
                for (r, c, v) in self.triplets() {
                    m[(r, c)] = v;
                }
                m
            }
        }
    }

    /// Drops the structure tag, keeping the same matrix.
    pub fn to_generic(&self) -> LbOperator {
        LbOperator {
            dim: self.dim,
            structure: Structure::Generic(self.to_dense()),
        }
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        match &self.structure {
            Structure::Generic(m) => {
                let mut out = Vec::new();
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        let v = m[(r, c)];
                        if v != 0.0 {
                            out.push((r, c, v));
                        }
                    }
                }
                out
            }
            Structure::KronLocal { kernel, n_g } => {
                let n_f = Q * n_g;
                let mut out = Vec::new();
                for r in 0..n_f {
                    let (i, site) = (r / n_g, r % n_g);
                    for k in 0..Q {
                        let v = kernel[(i, k)];
                        if v != 0.0 {
                            out.push((r, k * n_g + site, v));
                        }
                    }
                }
                out.extend((n_f..self.dim).map(|r| (r, r, 1.0)));
                out
            }
            Structure::Permutation(map) => {
                map.iter().enumerate().map(|(r, &c)| (r, c, 1.0)).collect()
            }
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.structure {
            Structure::Permutation(map) => map.len(),
            _ => self.triplets().len(),
        }
    }

    /// `max |AᵀA − I|`, computed on the structure where possible.
    pub fn orthogonality_defect(&self) -> f64 {
        match &self.structure {
            Structure::Permutation(_) => 0.0,
            Structure::KronLocal { kernel, .. } => {
                max_abs(&(kernel.transpose() * kernel - Kernel::identity()))
            }
            Structure::Generic(m) => {
                let n = m.nrows();
                max_abs(&(m.transpose() * m - DMatrix::<f64>::identity(n, n)))
            }
        }
    }
}

pub(crate) fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S>(
    m: &nalgebra::Matrix<f64, R, C, S>,
) -> f64
where
    S: nalgebra::RawStorage<f64, R, C>,
{
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_kernel() -> Kernel {
        Kernel::from_fn(|i, k| (i * Q + k) as f64 * 0.01 - 0.3)
    }

    #[test]
    fn kron_dense_matches_entries() {
        let op = LbOperator::kron_local(sample_kernel(), 3, 32).unwrap();
        let d = op.to_dense();
        for r in 0..32 {
            for c in 0..32 {
                assert_eq!(d[(r, c)], op.entry(r, c));
            }
        }
        for r in 27..32 {
            assert_eq!(d[(r, r)], 1.0);
        }
    }

    #[test]
    fn structured_apply_matches_dense() {
        let v: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).sin()).collect();
        let ops = [
            LbOperator::kron_local(sample_kernel(), 3, 32).unwrap(),
            LbOperator::permutation((0..32).map(|i| (i * 5 + 3) % 32).collect()).unwrap(),
        ];
        for op in ops {
            let fast = op.apply(&v).unwrap();
            let dense = op.to_generic().apply(&v).unwrap();
            for (a, b) in fast.iter().zip(&dense) {
                assert!((a - b).abs() < 1e-14);
            }
            let t = op.transpose().to_dense();
            assert_eq!(t, op.to_dense().transpose());
        }
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(LbOperator::permutation(vec![0, 0, 1]).is_err());
        assert!(LbOperator::permutation(vec![0, 3, 1]).is_err());
        assert!(LbOperator::generic(DMatrix::zeros(2, 3)).is_err());
        let op = LbOperator::identity(4);
        assert!(matches!(
            op.apply(&[1.0; 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 3
            })
        ));
    }
}
