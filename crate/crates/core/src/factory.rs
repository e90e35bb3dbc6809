// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Factorization of a non-unitary operator into unitaries.
//!
//! `A = U Σ V` by SVD; `Σ / α` with `α = max σ` is split as
//! `D = (D₁ + D₂) / 2`, `D₁,₂ = D ± i√(I − D²)`. On the ancilla the LCU
//! becomes the dilation `[[D, i√(I−D²)], [i√(I−D²), D]]`, and `U`, `V` are
//! dilated block-diagonally. Six dilated blocks per step; counting the two
//! diagonal unitaries inside each LCU instead of the dilation gives eight.
//!
//! SVD factors are only unique up to sign and ordering, so nothing here
//! canonicalizes them; compare actions or reconstructed products.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Q;
use crate::operators::{LbOperator, Structure};

const NORMALIZATION_SLACK: f64 = 1e-12;
const ORTHOGONALITY_TOL: f64 = 1e-10;

/// `A = U diag(σ) V` with the LCU split of the normalized diagonal.
#[derive(Clone, Debug)]
pub struct UnitaryTriple {
    pub u: LbOperator,
    pub v: LbOperator,
    pub sigma: Vec<f64>,
    /// Largest singular value.
    pub alpha: f64,
    /// `σ / α`, entries in `[0, 1]`.
    pub d: Vec<f64>,
    /// `√(1 − d²)`.
    pub leak: Vec<f64>,
    pub d1: Vec<Complex64>,
    pub d2: Vec<Complex64>,
}

impl UnitaryTriple {
    fn new(u: LbOperator, sigma: Vec<f64>, v: LbOperator) -> Result<Self> {
        let alpha = sigma.iter().copied().fold(0.0_f64, f64::max);
        let d: Vec<f64> = if alpha > 0.0 {
            sigma.iter().map(|s| s / alpha).collect()
        } else {
            vec![0.0; sigma.len()]
        };
        let leak = leak_of(&d)?;
        let (d1, d2) = split(&d, &leak);
        Ok(UnitaryTriple {
            u,
            v,
            sigma,
            alpha: if alpha > 0.0 { alpha } else { 1.0 },
            d,
            leak,
            d1,
            d2,
        })
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    /// `U diag(σ) V x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = self.v.apply(x)?;
        for (yi, s) in y.iter_mut().zip(&self.sigma) {
            *yi *= s;
        }
        self.u.apply(&y)
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut v = self.v.to_dense();
        for (r, s) in self.sigma.iter().enumerate() {
            v.row_mut(r).scale_mut(*s);
        }
        self.u.to_dense() * v
    }
}

fn leak_of(d: &[f64]) -> Result<Vec<f64>> {
    d.iter()
        .map(|&x| {
            if !(0.0..=1.0 + NORMALIZATION_SLACK).contains(&x) {
                return Err(Error::SingularValueAboveOne(x));
            }
            let c = 1.0 - x * x;
            Ok(if c < 0.0 { 0.0 } else { c.sqrt() })
        })
        .collect()
}

fn split(d: &[f64], leak: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
    d.iter()
        .zip(leak)
        .map(|(&a, &b)| (Complex64::new(a, b), Complex64::new(a, -b)))
        .unzip()
}

/// The LCU pair `D ± i√(I − D²)` for a normalized diagonal.
pub fn lcu_split(d: &[f64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let leak = leak_of(d)?;
    Ok(split(d, &leak))
}

pub fn lcu_diagonal(t: &UnitaryTriple) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    lcu_split(&t.d)
}

/// SVD with structured fast paths. Permutations are already orthogonal;
/// Kronecker-lifted kernels only need the SVD of the 9×9 kernel.
pub fn svd_decompose(a: &LbOperator) -> Result<UnitaryTriple> {
    let dim = a.dim();
    match a.structure() {
        Structure::Permutation(_) => {
            UnitaryTriple::new(a.clone(), vec![1.0; dim], LbOperator::identity(dim))
        }
        Structure::KronLocal { kernel, n_g } => {
            let n_g = *n_g;
            let (uk, sk, vk) = dense_svd(Q, |r, c| kernel[(r, c)])?;
            let uk = SMatrix::<f64, Q, Q>::from_fn(|r, c| uk[(r, c)]);
            let vk = SMatrix::<f64, Q, Q>::from_fn(|r, c| vk[(r, c)]);
            let n_f = Q * n_g;
            let sigma = (0..dim)
                .map(|r| if r < n_f { sk[r / n_g] } else { 1.0 })
                .collect();
            UnitaryTriple::new(
                LbOperator::kron_local(uk, n_g, dim)?,
                sigma,
                LbOperator::kron_local(vk, n_g, dim)?,
            )
        }
        Structure::Generic(m) => {
            if m.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
            let (u, sigma, v_t) = dense_svd(dim, |r, c| m[(r, c)])?;
            UnitaryTriple::new(LbOperator::generic(u)?, sigma, LbOperator::generic(v_t)?)
        }
    }
}

/// `A = U diag(σ) Vᵀ` of a square matrix, returned as `(U, σ, Vᵀ)`.
fn dense_svd(
    n: usize,
    a: impl Fn(usize, usize) -> f64,
) -> Result<(DMatrix<f64>, Vec<f64>, DMatrix<f64>)> {
    let m = faer::Mat::<f64>::from_fn(n, n, a);
    let svd = m.svd().map_err(|_| Error::SvdNotConverged(n))?;
    let (u, v) = (svd.U(), svd.V());
    let sigma: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    Ok((
        DMatrix::from_fn(n, n, |r, c| u[(r, c)]),
        sigma,
        DMatrix::from_fn(n, n, |r, c| v[(c, r)]),
    ))
}

/// A unitary on the ancilla-doubled space; the ancilla is the most
/// significant qubit, so the state is `[top; bottom]`.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum DilatedOperator {
    /// `diag(W, W)` for orthogonal `W`.
    BlockDiagonal(LbOperator),
    /// `[[D, iL], [iL, D]]` with `L = √(I − D²)`.
    Lcu { d: Vec<f64>, leak: Vec<f64> },
}

impl DilatedOperator {
    /// Half the dimension: the size of one ancilla block.
    pub fn block_dim(&self) -> usize {
        match self {
            DilatedOperator::BlockDiagonal(w) => w.dim(),
            DilatedOperator::Lcu { d, .. } => d.len(),
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.block_dim()
    }

    /// `amps ← M amps`, using `scratch` (same length) as workspace.
    pub fn apply_in_place(&self, amps: &mut [Complex64], scratch: &mut [Complex64]) -> Result<()> {
        if amps.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: amps.len(),
            });
        }
        let n = self.block_dim();
        match self {
            DilatedOperator::BlockDiagonal(w) => {
                let scratch = &mut scratch[..2 * n];
                let (s_top, s_bot) = scratch.split_at_mut(n);
                let (top, bot) = amps.split_at(n);
                w.apply_into(top, s_top)?;
                w.apply_into(bot, s_bot)?;
                amps.copy_from_slice(scratch);
            }
            DilatedOperator::Lcu { d, leak } => {
                let (top, bot) = amps.split_at_mut(n);
                let i = Complex64::i();
                for k in 0..n {
                    let (t, b) = (top[k], bot[k]);
                    top[k] = t * d[k] + i * b * leak[k];
                    bot[k] = i * t * leak[k] + b * d[k];
                }
            }
        }
        Ok(())
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.block_dim();
        let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
        match self {
            DilatedOperator::BlockDiagonal(w) => {
                for (r, c, v) in w.triplets() {
                    m[(r, c)] = Complex64::new(v, 0.0);
                    m[(r + n, c + n)] = Complex64::new(v, 0.0);
                }
            }
            DilatedOperator::Lcu { d, leak } => {
                for k in 0..n {
                    m[(k, k)] = Complex64::new(d[k], 0.0);
                    m[(k + n, k + n)] = Complex64::new(d[k], 0.0);
                    m[(k, k + n)] = Complex64::new(0.0, leak[k]);
                    m[(k + n, k)] = Complex64::new(0.0, leak[k]);
                }
            }
        }
        m
    }

    /// `max |M†M − I|` evaluated on the block structure.
    pub fn unitarity_defect(&self) -> f64 {
        match self {
            DilatedOperator::BlockDiagonal(w) => w.orthogonality_defect(),
            // M†M = diag(D² + L², D² + L²); the off-diagonal blocks cancel.
            DilatedOperator::Lcu { d, leak } => d
                .iter()
                .zip(leak)
                .map(|(a, b)| (a * a + b * b - 1.0).abs())
                .fold(0.0, f64::max),
        }
    }
}

pub fn dilate_orthogonal(w: &LbOperator) -> Result<DilatedOperator> {
    let defect = w.orthogonality_defect();
    if !(defect <= ORTHOGONALITY_TOL) {
        return Err(Error::NotOrthogonal(defect));
    }
    Ok(DilatedOperator::BlockDiagonal(w.clone()))
}

pub fn dilate_diagonal(t: &UnitaryTriple) -> DilatedOperator {
    DilatedOperator::Lcu {
        d: t.d.clone(),
        leak: t.leak.clone(),
    }
}

/// One operator as the three dilated blocks `U_dil · D_dil · V_dil`.
#[derive(Clone, Debug)]
pub struct DecomposedOperator {
    pub v: DilatedOperator,
    pub d: DilatedOperator,
    pub u: DilatedOperator,
    pub alpha: f64,
    pub triple: UnitaryTriple,
}

impl DecomposedOperator {
    pub fn block_dim(&self) -> usize {
        self.triple.dim()
    }

    /// Blocks in application order.
    pub fn blocks(&self) -> [&DilatedOperator; 3] {
        [&self.v, &self.d, &self.u]
    }

    /// True when `D = I`, i.e. the LCU leaks nothing.
    pub fn is_orthogonal(&self) -> bool {
        self.triple.leak.iter().all(|&l| l == 0.0)
    }
}

pub fn decompose_operator(a: &LbOperator) -> Result<DecomposedOperator> {
    let triple = svd_decompose(a)?;
    Ok(DecomposedOperator {
        v: dilate_orthogonal(&triple.v)?,
        d: dilate_diagonal(&triple),
        u: dilate_orthogonal(&triple.u)?,
        alpha: triple.alpha,
        triple,
    })
}

/// Complex-matrix helper for tests and diagnostics.
pub fn max_abs_complex(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use crate::lattice::d2q9;
    use crate::operators::{
        build_collision_operator, build_streaming_operator, collision_kernel, BcSpec,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lcu_examples() {
        let (d1, d2) = lcu_split(&[1.0, 0.0, 0.6]).unwrap();
        assert_eq!(d1[0], c(1.0, 0.0));
        assert_eq!(d2[0], c(1.0, 0.0));
        assert_eq!(d1[1], c(0.0, 1.0));
        assert_eq!(d2[1], c(0.0, -1.0));
        assert!((d1[2] - c(0.6, 0.8)).norm() < 1e-15);
        assert!((d1[2].norm() - 1.0).abs() < 1e-15);
        assert!(matches!(
            lcu_split(&[1.0 + 1e-9]),
            Err(Error::SingularValueAboveOne(_))
        ));
        // Within the rounding guard: clamped, not rejected.
        let (d1, _) = lcu_split(&[1.0 + 1e-13]).unwrap();
        assert_eq!(d1[0].im, 0.0);
    }

    #[test]
    fn identity_decomposition() {
        let dec = decompose_operator(&LbOperator::identity(8)).unwrap();
        assert_eq!(dec.alpha, 1.0);
        assert!(dec.is_orthogonal());
        for b in dec.blocks() {
            let m = b.to_dense();
            assert!(max_abs_complex(&(m - DMatrix::identity(16, 16))) == 0.0);
        }
    }

    #[test]
    fn periodic_streaming_is_trivially_factored() {
        let lat = d2q9();
        let g = GridSpec::new(3, 8).unwrap();
        let s = build_streaming_operator(&g, &BcSpec::periodic(), &lat).unwrap();
        let dec = decompose_operator(&s).unwrap();
        assert_eq!(dec.alpha, 1.0);
        assert!(dec.triple.sigma.iter().all(|&x| x == 1.0));
        assert!(dec.triple.d1.iter().all(|&z| z == c(1.0, 0.0)));
        assert!(dec.triple.d2.iter().all(|&z| z == c(1.0, 0.0)));
        assert!(
            matches!(dec.v, DilatedOperator::BlockDiagonal(ref w) if w == &LbOperator::identity(256))
        );
        assert!(matches!(dec.u, DilatedOperator::BlockDiagonal(ref w) if w == &s));
    }

    #[test]
    fn dilate_orthogonal_rejects_non_orthogonal() {
        let lat = d2q9();
        let g = GridSpec::new(1, 1).unwrap();
        let c = build_collision_operator(&collision_kernel(&lat, 0.8).unwrap(), &g);
        assert!(matches!(
            dilate_orthogonal(&c),
            Err(Error::NotOrthogonal(_))
        ));
        let id = dilate_orthogonal(&LbOperator::identity(4)).unwrap();
        assert!(max_abs_complex(&(id.to_dense() - DMatrix::identity(8, 8))) == 0.0);
    }

    #[test]
    fn lcu_dilation_extremes() {
        let t = UnitaryTriple::new(
            LbOperator::identity(4),
            vec![1.0; 4],
            LbOperator::identity(4),
        )
        .unwrap();
        let m = dilate_diagonal(&t).to_dense();
        assert!(max_abs_complex(&(m - DMatrix::identity(8, 8))) == 0.0);

        let m = DilatedOperator::Lcu {
            d: vec![0.0; 4],
            leak: vec![1.0; 4],
        }
        .to_dense();
        for r in 0..8 {
            for col in 0..8 {
                let expect = if (r + 4 == col) || (col + 4 == r) {
                    c(0.0, 1.0)
                } else {
                    c(0.0, 0.0)
                };
                assert_eq!(m[(r, col)], expect);
            }
        }
    }

    #[test]
    fn in_place_matches_dense() {
        let lat = d2q9();
        let g = GridSpec::new(1, 2).unwrap();
        let dec = decompose_operator(&build_collision_operator(
            &collision_kernel(&lat, 0.8).unwrap(),
            &g,
        ))
        .unwrap();
        let n = 2 * g.padded_len();
        let x: Vec<Complex64> = (0..n)
            .map(|k| c((k as f64).sin(), (k as f64 * 0.3).cos()))
            .collect();
        for b in dec.blocks() {
            let mut y = x.clone();
            let mut scratch = vec![Complex64::default(); n];
            b.apply_in_place(&mut y, &mut scratch).unwrap();
            let dense = b.to_dense() * nalgebra::DVector::from(x.clone());
            for k in 0..n {
                assert!((y[k] - dense[k]).norm() < 1e-13);
            }
        }
    }
}
