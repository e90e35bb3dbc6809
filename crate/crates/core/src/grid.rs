// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Flat indexing of the distribution vector.
//!
//! The vector is direction-major: all sites of direction 0, then direction 1
//! and so on, with sites in row-major order inside each block. The length is
//! padded with zeros up to the next power of two so it fits a qubit register.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::EmptyGrid { nx, ny });
        }
        Ok(GridSpec { nx, ny })
    }

    /// Number of lattice sites.
    pub fn n_g(&self) -> usize {
        self.nx * self.ny
    }

    /// Number of distribution functions.
    pub fn n_f(&self) -> usize {
        Q * self.n_g()
    }

    /// Qubits in the computational register.
    pub fn n_q(&self) -> usize {
        self.n_f().next_power_of_two().trailing_zeros() as usize
    }

    /// Qubits including the ancilla.
    pub fn n_qa(&self) -> usize {
        self.n_q() + 1
    }

    pub fn padded_len(&self) -> usize {
        1 << self.n_q()
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, x: usize, y: usize, dir: usize) -> usize {
        x + y * self.nx + dir * self.n_g()
    }

    pub fn flat_index(&self, x: usize, y: usize, dir: usize) -> Result<usize> {
        if x >= self.nx || y >= self.ny || dir >= Q {
            return Err(Error::CoordinateOutOfRange {
                x,
                y,
                dir,
                nx: self.nx,
                ny: self.ny,
            });
        }
        Ok(self.index_unchecked(x, y, dir))
    }

    /// Inverse of [`flat_index`](Self::flat_index). Indices in the zero
    /// padding have no lattice coordinates.
    pub fn coords_of(&self, index: usize) -> Result<(usize, usize, usize)> {
        let (n_f, padded_len) = (self.n_f(), self.padded_len());
        if index >= padded_len {
            return Err(Error::IndexOutOfRange { index, padded_len });
        }
        if index >= n_f {
            return Err(Error::PaddingIndex {
                index,
                n_f,
                padded_len,
            });
        }
        let n_g = self.n_g();
        let site = index % n_g;
        Ok((site % self.nx, site / self.nx, index / n_g))
    }

    /// Copies `df` into a zero vector of `padded_len`.
    pub fn pad(&self, df: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.padded_len()];
        let n = df.len().min(out.len());
        out[..n].copy_from_slice(&df[..n]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        let g = GridSpec::new(3, 8).unwrap();
        assert_eq!(g.flat_index(0, 0, 0).unwrap(), 0);
        assert_eq!(g.flat_index(2, 1, 0).unwrap(), 5);
        assert_eq!(g.flat_index(0, 0, 2).unwrap(), 48);
        assert_eq!(g.coords_of(0).unwrap(), (0, 0, 0));
        assert_eq!(g.coords_of(5).unwrap(), (2, 1, 0));
        assert_eq!(g.coords_of(48).unwrap(), (0, 0, 2));
    }

    #[test]
    fn sizes() {
        let g = GridSpec::new(3, 8).unwrap();
        assert_eq!(g.n_f(), 216);
        assert_eq!(g.n_q(), 8);
        assert_eq!(g.n_qa(), 9);
        assert_eq!(g.padded_len(), 256);
        let g = GridSpec::new(10, 10).unwrap();
        assert_eq!((g.n_f(), g.n_q(), g.n_qa()), (900, 10, 11));
        let g = GridSpec::new(9, 24).unwrap();
        assert_eq!(g.n_qa(), 12);
        for (nx, ny) in [(1, 1), (3, 8), (5, 10), (7, 16), (2, 2)] {
            let g = GridSpec::new(nx, ny).unwrap();
            assert!(g.padded_len() >= g.n_f());
            if !g.n_f().is_power_of_two() {
                assert!(g.padded_len() < 2 * g.n_f());
            }
        }
    }

    #[test]
    fn rejects_bad_coordinates() {
        let g = GridSpec::new(3, 8).unwrap();
        assert!(matches!(
            g.flat_index(3, 0, 0),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(g.flat_index(0, 8, 0).is_err());
        assert!(g.flat_index(0, 0, 9).is_err());
        assert!(matches!(g.coords_of(216), Err(Error::PaddingIndex { .. })));
        assert!(matches!(g.coords_of(255), Err(Error::PaddingIndex { .. })));
        assert!(matches!(
            g.coords_of(256),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(GridSpec::new(0, 4).is_err());
    }

    #[test]
    fn roundtrip_exhaustive() {
        for (nx, ny) in [(1, 1), (3, 8), (4, 4), (5, 10)] {
            let g = GridSpec::new(nx, ny).unwrap();
            let mut seen = vec![false; g.n_f()];
            for dir in 0..Q {
                for y in 0..ny {
                    for x in 0..nx {
                        let idx = g.flat_index(x, y, dir).unwrap();
                        assert!(!seen[idx]);
                        seen[idx] = true;
                        assert_eq!(g.coords_of(idx).unwrap(), (x, y, dir));
                    }
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }
}
