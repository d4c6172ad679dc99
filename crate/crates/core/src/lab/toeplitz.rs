//! Toeplitz compression of loop symbols onto the half line and the windowed
//! trace-commutator index.
//!
//! A finite-dimensional honest trace of a commutator vanishes, so the index
//! lives in the semi-infinite compression: we truncate at mode K but only
//! trace over a window W chosen so the truncation corner cannot contribute.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::mat::Mat;
use super::scalar::{GaussRational, LabScalar};
use super::symbol::LoopSymbol;
use crate::error::{Error, Result};

/// Band matrix acting on C^size-valued sequences over modes 0..=K.
#[derive(Clone, Debug)]
pub struct HalfLineOperator<T> {
    pub block_size: usize,
    pub cutoff: usize,
    pub bandwidth: usize,
    mat: Mat<T>,
}

impl<T: LabScalar> HalfLineOperator<T> {
    pub fn matrix(&self) -> &Mat<T> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.block_size * (self.cutoff + 1)
    }
}

/// Compression: block entry (m, n) is the Fourier coefficient a_{m-n},
/// modes 0..=K. Requires K >= 4 * bandwidth.
pub fn toeplitz_compress<T: LabScalar>(
    symbol: &LoopSymbol<T>,
    cutoff: usize,
) -> Result<HalfLineOperator<T>> {
    let bw = symbol.bandwidth();
    if cutoff < 4 * bw {
        return Err(Error::CutoffTooSmall {
            k: cutoff,
            need: 4 * bw,
            bandwidth: bw,
        });
    }
    let n = symbol.size();
    let dim = n * (cutoff + 1);
    let mut mat = Mat::zeros(dim, dim);
    for (freq, block) in symbol.coeffs() {
        for m in 0..=cutoff as i64 {
            let col = m - freq;
            if !(0..=cutoff as i64).contains(&col) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    mat[(m as usize * n + i, col as usize * n + j)] = block[(i, j)].clone();
                }
            }
        }
    }
    Ok(HalfLineOperator {
        block_size: n,
        cutoff,
        bandwidth: bw,
        mat,
    })
}

/// Exact parametrix for a single-monomial symbol c e^{ik theta}:
/// the compression of c^{-1} e^{-ik theta}.
pub fn parametrix_exact(
    symbol: &LoopSymbol<GaussRational>,
    cutoff: usize,
) -> Result<HalfLineOperator<GaussRational>> {
    let (freq, coeff) = symbol
        .as_monomial()
        .ok_or_else(|| Error::NotMonomial(symbol.coeffs().len()))?;
    let inv = coeff.inverse().ok_or(Error::SingularCoefficient(freq))?;
    toeplitz_compress(&LoopSymbol::monomial(-freq, inv), cutoff)
}

/// Numeric parametrix: compress the degree-M Fourier truncation of the
/// pointwise inverse a(theta)^{-1}, sampled on a uniform grid. Also returns
/// the sup-norm residuals of b_M a - Id and a b_M - Id on the grid, from
/// which the windowed trace's truncation bound is formed.
pub fn parametrix_numeric(
    symbol: &LoopSymbol<Complex64>,
    order: usize,
    cutoff: usize,
) -> Result<(HalfLineOperator<Complex64>, f64)> {
    let n = symbol.size();
    let grid = (8 * (order + symbol.bandwidth() + 1)).next_power_of_two();
    let mut inverses = Vec::with_capacity(grid);
    for j in 0..grid {
        let theta = TAU * j as f64 / grid as f64;
        let a = symbol.eval(theta);
        let inv = a.inverse().ok_or(Error::NotElliptic {
            min_det: 0.0,
            depth: 0,
        })?;
        inverses.push(inv);
    }
    let mut coeffs = std::collections::BTreeMap::new();
    for k in -(order as i64)..=(order as i64) {
        let mut block = Mat::zeros(n, n);
        for (j, inv) in inverses.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -(k as f64) * TAU * j as f64 / grid as f64);
            for r in 0..n {
                for c in 0..n {
                    block[(r, c)] += inv[(r, c)] * phase;
                }
            }
        }
        let scale = Complex64::new(1.0 / grid as f64, 0.0);
        coeffs.insert(k, block.scale(&scale));
    }
    let b = LoopSymbol::new(n, coeffs);
    // residual of the truncated inverse, on a staggered grid
    let mut residual: f64 = 0.0;
    for j in 0..grid {
        let theta = TAU * (j as f64 + 0.5) / grid as f64;
        let a = symbol.eval(theta);
        let bm = b.eval(theta);
        let id = Mat::identity(n);
        residual = residual
            .max(bm.matmul(&a).sub(&id).max_abs())
            .max(a.matmul(&bm).sub(&id).max_abs());
    }
    Ok((toeplitz_compress(&b, cutoff)?, residual))
}

/// Tr(AB - Id) - Tr(BA - Id) over the leading window of modes 0..=W.
///
/// The window must satisfy W <= K - 2*(bandwidth(A) + bandwidth(B)) so the
/// truncation boundary cannot reach the traced block. For monomial symbols
/// and their exact parametrices this value is exact.
pub fn trace_commutator_index<T: LabScalar>(
    a: &HalfLineOperator<T>,
    b: &HalfLineOperator<T>,
    window: usize,
) -> Result<T> {
    assert_eq!(a.block_size, b.block_size);
    assert_eq!(a.cutoff, b.cutoff);
    let combined = a.bandwidth + b.bandwidth;
    let k = a.cutoff;
    if window + 2 * combined > k {
        return Err(Error::WindowTooLarge {
            w: window,
            max: k.saturating_sub(2 * combined),
            k,
            bandwidth: combined,
        });
    }
    let n = a.block_size;
    let block = n * (window + 1);
    let ab = a.matrix().matmul(b.matrix());
    let ba = b.matrix().matmul(a.matrix());
    let tr_ab = ab.trace_window(block);
    let tr_ba = ba.trace_window(block);
    // the Id parts cancel between the two traces over equal windows
    Ok(tr_ab.sub(&tr_ba))
}
