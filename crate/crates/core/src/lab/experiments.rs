//! The index-definition experiments: ellipticity certification, winding,
//! trace-commutator index, homotopy sweeps, composition additivity and the
//! adjoint/rotation checks.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::mat::Mat;
use super::scalar::{GaussRational, LabScalar};
use super::symbol::LoopSymbol;
use super::toeplitz::{parametrix_exact, parametrix_numeric, toeplitz_compress, trace_commutator_index};
use crate::error::{Error, Result};
use crate::rational::format_rational;

/// Maximum dyadic refinement depth for certification grids.
const MAX_REFINE_DEPTH: u32 = 16;

/// Lab truncation parameters: mode cutoff K, parametrix Fourier order M and
/// trace window W.
#[derive(Clone, Copy, Debug)]
pub struct LabParams {
    pub cutoff: usize,
    pub order: usize,
    pub window: usize,
}

impl Default for LabParams {
    fn default() -> Self {
        LabParams {
            cutoff: 128,
            order: 32,
            window: 16,
        }
    }
}

impl LabParams {
    /// Shrink the window (never the cutoff) until the window inequality
    /// W <= K - 2*(bw + M) holds; returns whether an adjustment was made.
    pub fn auto_adjust(&mut self, symbol_bandwidth: usize) -> bool {
        let combined = symbol_bandwidth + self.order.max(symbol_bandwidth);
        let max_w = self.cutoff.saturating_sub(2 * combined);
        if self.window > max_w {
            self.window = max_w;
            true
        } else {
            false
        }
    }
}

/// A symbol in one of the lab's two numeric modes.
#[derive(Clone, Debug)]
pub enum LabSymbol {
    Exact(LoopSymbol<GaussRational>),
    Numeric(LoopSymbol<Complex64>),
}

impl LabSymbol {
    pub fn size(&self) -> usize {
        match self {
            LabSymbol::Exact(s) => s.size(),
            LabSymbol::Numeric(s) => s.size(),
        }
    }

    pub fn bandwidth(&self) -> usize {
        match self {
            LabSymbol::Exact(s) => s.bandwidth(),
            LabSymbol::Numeric(s) => s.bandwidth(),
        }
    }

    pub fn to_numeric(&self) -> LoopSymbol<Complex64> {
        match self {
            LabSymbol::Exact(s) => s.to_numeric(),
            LabSymbol::Numeric(s) => s.clone(),
        }
    }

    pub fn adjoint(&self) -> LabSymbol {
        match self {
            LabSymbol::Exact(s) => LabSymbol::Exact(s.adjoint()),
            LabSymbol::Numeric(s) => LabSymbol::Numeric(s.adjoint()),
        }
    }

    /// Operator-order product: `self` after `other`, i.e. a_self * a_other.
    pub fn compose(&self, other: &LabSymbol) -> Result<LabSymbol> {
        match (self, other) {
            (LabSymbol::Exact(a), LabSymbol::Exact(b)) => Ok(LabSymbol::Exact(a.mul(b)?)),
            _ => Ok(LabSymbol::Numeric(self.to_numeric().mul(&other.to_numeric())?)),
        }
    }
}

/// An index value: exact for monomial symbols, numeric with an a priori
/// truncation bound otherwise.
#[derive(Clone, Debug)]
pub enum LabIndex {
    Exact(GaussRational),
    Numeric { value: Complex64, bound: f64 },
}

impl LabIndex {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            LabIndex::Exact(g) => g.to_c64(),
            LabIndex::Numeric { value, .. } => *value,
        }
    }

    pub fn bound(&self) -> f64 {
        match self {
            LabIndex::Exact(_) => 0.0,
            LabIndex::Numeric { bound, .. } => *bound,
        }
    }

    pub fn add(&self, other: &LabIndex) -> LabIndex {
        match (self, other) {
            (LabIndex::Exact(a), LabIndex::Exact(b)) => LabIndex::Exact(a.add(b)),
            _ => LabIndex::Numeric {
                value: self.to_c64() + other.to_c64(),
                bound: self.bound() + other.bound(),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LabIndex::Exact(g) if g.is_real() => format_rational(&g.re),
            LabIndex::Exact(g) => g.to_string(),
            LabIndex::Numeric { value, .. } => {
                if value.im.abs() < 1e-12 {
                    format!("{:.12}", value.re)
                } else {
                    format!("{:.12}{:+.12}i", value.re, value.im)
                }
            }
        }
    }
}

fn min_max_abs_det(symbol: &LoopSymbol<Complex64>, grid: usize) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max: f64 = 0.0;
    for j in 0..grid {
        let theta = TAU * j as f64 / grid as f64;
        let d = symbol.eval(theta).determinant().norm();
        min = min.min(d);
        max = max.max(d);
    }
    (min, max)
}

/// Ellipticity certificate: |det a(theta)| bounded away from zero on a
/// dyadically refined sampling grid (exact nonvanishing of the coefficient
/// determinant for monomial symbols). Failure is an error, never silent.
pub fn certify_elliptic(symbol: &LabSymbol) -> Result<()> {
    if let LabSymbol::Exact(s) = symbol {
        if let Some((freq, coeff)) = s.as_monomial() {
            if coeff.determinant().is_zero() {
                return Err(Error::SingularCoefficient(freq));
            }
            return Ok(());
        }
    }
    let s = symbol.to_numeric();
    let mut grid = 64usize.max(8 * s.bandwidth());
    let mut prev_min = f64::INFINITY;
    for depth in 0..=MAX_REFINE_DEPTH {
        let (min, max) = min_max_abs_det(&s, grid);
        if max == 0.0 || min <= 1e-12 * max {
            return Err(Error::NotElliptic { min_det: min, depth });
        }
        if depth > 0 && (prev_min - min).abs() <= 0.25 * prev_min {
            return Ok(());
        }
        prev_min = min;
        grid *= 2;
    }
    Ok(())
}

/// Winding number of det a(theta) around the origin: frequency bookkeeping
/// for monomial symbols, refinement-controlled argument tracking otherwise.
pub fn winding_number(symbol: &LabSymbol) -> Result<i64> {
    if let LabSymbol::Exact(s) = symbol {
        if let Some((freq, coeff)) = s.as_monomial() {
            if coeff.determinant().is_zero() {
                return Err(Error::SingularCoefficient(freq));
            }
            // det(c e^{ik theta}) = det(c) e^{i k n theta}
            return Ok(freq * s.size() as i64);
        }
    }
    let s = symbol.to_numeric();
    let mut grid = 64usize.max(8 * s.bandwidth());
    for depth in 0..=MAX_REFINE_DEPTH {
        let dets: Vec<Complex64> = (0..grid)
            .map(|j| s.eval(TAU * j as f64 / grid as f64).determinant())
            .collect();
        let max = dets.iter().map(|d| d.norm()).fold(0.0, f64::max);
        let min = dets.iter().map(|d| d.norm()).fold(f64::INFINITY, f64::min);
        if max == 0.0 || min <= 1e-12 * max {
            return Err(Error::NotElliptic { min_det: min, depth });
        }
        let mut total = 0.0;
        let mut certified = true;
        for j in 0..grid {
            let step = (dets[(j + 1) % grid] / dets[j]).arg();
            if step.abs() >= std::f64::consts::FRAC_PI_2 {
                certified = false;
                break;
            }
            total += step;
        }
        if certified {
            let w = total / TAU;
            let rounded = w.round();
            if (w - rounded).abs() < 1e-6 {
                return Ok(rounded as i64);
            }
        }
        grid *= 2;
    }
    Err(Error::WindingUncertified)
}

/// The analytic index Tr(AB - Id) - Tr(BA - Id) of the compressed symbol
/// with its parametrix, over the boundary-excluded window.
pub fn symbol_index(symbol: &LabSymbol, params: &LabParams) -> Result<LabIndex> {
    certify_elliptic(symbol)?;
    match symbol {
        LabSymbol::Exact(s) if s.as_monomial().is_some() => {
            let a = toeplitz_compress(s, params.cutoff)?;
            let b = parametrix_exact(s, params.cutoff)?;
            Ok(LabIndex::Exact(trace_commutator_index(&a, &b, params.window)?))
        }
        _ => {
            let s = symbol.to_numeric();
            let a = toeplitz_compress(&s, params.cutoff)?;
            let (b, residual) = parametrix_numeric(&s, params.order, params.cutoff)?;
            let value = trace_commutator_index(&a, &b, params.window)?;
            let bound = 2.0 * (params.window + 1) as f64 * s.size() as f64 * residual;
            Ok(LabIndex::Numeric { value, bound })
        }
    }
}

/// Index at each step of a 1-parameter family; errors with the failing t
/// when ellipticity is lost along the path.
pub fn homotopy_sweep_with(
    path: impl Fn(f64) -> Result<LoopSymbol<Complex64>>,
    steps: usize,
    params: &LabParams,
) -> Result<Vec<(f64, LabIndex)>> {
    assert!(steps >= 2);
    let mut out = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let sym = LabSymbol::Numeric(path(t)?);
        let ind = symbol_index(&sym, params).map_err(|e| match e {
            Error::NotElliptic { .. } | Error::SingularCoefficient(_) => {
                Error::PathNotElliptic { t }
            }
            other => other,
        })?;
        out.push((t, ind));
    }
    Ok(out)
}

/// Linear-interpolation homotopy between two symbols.
pub fn homotopy_sweep(
    start: &LabSymbol,
    end: &LabSymbol,
    steps: usize,
    params: &LabParams,
) -> Result<Vec<(f64, LabIndex)>> {
    let a = start.to_numeric();
    let b = end.to_numeric();
    homotopy_sweep_with(|t| a.lerp(&b, t), steps, params)
}

/// Multiplicativity of the index: returns (index of a2 a1, ind a1 + ind a2).
pub fn composition_additivity_check(
    a1: &LabSymbol,
    a2: &LabSymbol,
    params: &LabParams,
) -> Result<(LabIndex, LabIndex)> {
    if a1.size() != a2.size() {
        return Err(Error::SizeMismatch(a1.size(), a2.size()));
    }
    let product = a2.compose(a1)?;
    let lhs = symbol_index(&product, params)?;
    let rhs = symbol_index(a1, params)?.add(&symbol_index(a2, params)?);
    Ok((lhs, rhs))
}

/// Result of the adjoint/reality experiment.
#[derive(Clone, Debug)]
pub struct AdjointReport {
    pub index: LabIndex,
    pub index_adjoint: LabIndex,
    /// (angle, index) for the rotation family; all indices should vanish.
    pub rotation_sweep: Vec<(f64, LabIndex)>,
}

/// Build the 2n x 2n rotation-family symbol
/// [[sin(phi) I, cos(phi) a*], [-cos(phi) a, sin(phi) I]].
fn rotation_symbol(a: &LoopSymbol<Complex64>, phi: f64) -> LoopSymbol<Complex64> {
    let n = a.size();
    let (sin, cos) = phi.sin_cos();
    let mut coeffs: std::collections::BTreeMap<i64, Mat<Complex64>> = std::collections::BTreeMap::new();
    let adj = a.adjoint();
    for (k, block) in adj.coeffs() {
        let entry = coeffs.entry(*k).or_insert_with(|| Mat::zeros(2 * n, 2 * n));
        for i in 0..n {
            for j in 0..n {
                entry[(i, n + j)] += block[(i, j)] * cos;
            }
        }
    }
    for (k, block) in a.coeffs() {
        let entry = coeffs.entry(*k).or_insert_with(|| Mat::zeros(2 * n, 2 * n));
        for i in 0..n {
            for j in 0..n {
                entry[(n + i, j)] -= block[(i, j)] * cos;
            }
        }
    }
    {
        let entry = coeffs.entry(0).or_insert_with(|| Mat::zeros(2 * n, 2 * n));
        for i in 0..2 * n {
            entry[(i, i)] += Complex64::new(sin, 0.0);
        }
    }
    LoopSymbol::new(2 * n, coeffs)
}

/// Verifies ind(A*) = -ind(A), sweeps the rotation family (index 0 at every
/// sampled angle) and exposes the values for the reality check.
pub fn adjoint_index_check(symbol: &LabSymbol, params: &LabParams) -> Result<AdjointReport> {
    let index = symbol_index(symbol, params)?;
    let index_adjoint = symbol_index(&symbol.adjoint(), params)?;
    let a = symbol.to_numeric();
    let angles = [0.0, TAU / 16.0, TAU / 8.0, 3.0 * TAU / 16.0, TAU / 4.0];
    let mut rotation_sweep = Vec::new();
    for phi in angles {
        let fam = LabSymbol::Numeric(rotation_symbol(&a, phi));
        rotation_sweep.push((phi, symbol_index(&fam, params)?));
    }
    Ok(AdjointReport {
        index,
        index_adjoint,
        rotation_sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::symbol::parse_symbol_expr;

    fn exact(expr: &str) -> LabSymbol {
        LabSymbol::Exact(parse_symbol_expr(expr).unwrap())
    }

    fn numeric(expr: &str) -> LabSymbol {
        LabSymbol::Numeric(parse_symbol_expr(expr).unwrap().to_numeric())
    }

    #[test]
    fn winding_of_monomials() {
        for k in -3i64..=3 {
            assert_eq!(winding_number(&exact(&format!("e^{{{k}it}}"))).unwrap(), k);
        }
    }

    #[test]
    fn winding_avoiding_origin_is_zero() {
        assert_eq!(winding_number(&numeric("2+e^{it}")).unwrap(), 0);
    }

    #[test]
    fn winding_of_constant_determinant_matrix() {
        // diag(e^{it}, e^{-it}) has constant determinant 1
        use crate::lab::mat::Mat;
        use num_complex::Complex64;
        let mut up = Mat::zeros(2, 2);
        up[(0, 0)] = Complex64::new(1.0, 0.0);
        let mut down = Mat::zeros(2, 2);
        down[(1, 1)] = Complex64::new(1.0, 0.0);
        let s = LoopSymbol::new(2, [(1, up), (-1, down)].into_iter().collect());
        assert_eq!(winding_number(&LabSymbol::Numeric(s)).unwrap(), 0);
    }

    #[test]
    fn vanishing_symbol_fails_certificate() {
        // 1/2 + (1/2)e^{it} hits zero at theta = pi
        let s = numeric("1/2+1/2*e^{it}");
        assert!(matches!(
            certify_elliptic(&s),
            Err(Error::NotElliptic { .. })
        ));
    }

    #[test]
    fn index_equals_minus_winding_for_monomials() {
        let params = LabParams {
            cutoff: 64,
            order: 16,
            window: 16,
        };
        for k in -3i64..=3 {
            let s = exact(&format!("e^{{{k}it}}"));
            match symbol_index(&s, &params).unwrap() {
                LabIndex::Exact(g) => assert_eq!(g, GaussRational::from_int(-k)),
                _ => panic!("monomial index should be exact"),
            }
        }
    }

    #[test]
    fn numeric_index_matches_winding() {
        let params = LabParams::default();
        let s = numeric("2+e^{it}");
        let ind = symbol_index(&s, &params).unwrap();
        assert!((ind.to_c64() - Complex64::new(0.0, 0.0)).norm() < 1e-9);
        let s = numeric("1/4+e^{it}");
        let ind = symbol_index(&s, &params).unwrap();
        assert!((ind.to_c64() - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn parametrix_independence_across_orders() {
        let s = numeric("1/5+e^{2it}");
        let base = LabParams::default();
        let more = LabParams {
            order: 48,
            cutoff: 256,
            ..base
        };
        let i1 = symbol_index(&s, &base).unwrap();
        let i2 = symbol_index(&s, &more).unwrap();
        let diff = (i1.to_c64() - i2.to_c64()).norm();
        assert!(diff <= i1.bound() + i2.bound(), "diff {diff} above bounds");
        assert!(diff < 1e-9);
    }

    #[test]
    fn homotopy_constant_along_elliptic_path() {
        // a_t = e^{it} + 0.5t stays elliptic
        let params = LabParams {
            cutoff: 192,
            order: 48,
            window: 16,
        };
        let start = exact("e^{it}");
        let end = exact("e^{it}+1/2");
        let sweep = homotopy_sweep(&start, &end, 11, &params).unwrap();
        let values: Vec<f64> = sweep.iter().map(|(_, v)| v.to_c64().re).collect();
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max - min < 1e-9, "spread {}", max - min);
        assert!((values[0] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn homotopy_reports_failing_parameter() {
        // a_t = (1-t) + t e^{it} loses ellipticity at t = 1/2
        let start = exact("1");
        let end = exact("e^{it}");
        let err = homotopy_sweep(&start, &end, 11, &LabParams::default()).unwrap_err();
        match err {
            Error::PathNotElliptic { t } => assert!((t - 0.5).abs() < 1e-12),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn composition_is_additive() {
        let params = LabParams {
            cutoff: 64,
            order: 16,
            window: 8,
        };
        let (lhs, rhs) =
            composition_additivity_check(&exact("e^{it}"), &exact("e^{2it}"), &params).unwrap();
        match (&lhs, &rhs) {
            (LabIndex::Exact(a), LabIndex::Exact(b)) => {
                assert_eq!(a, &GaussRational::from_int(-3));
                assert_eq!(b, &GaussRational::from_int(-3));
            }
            _ => panic!("monomial composition should stay exact"),
        }
        let (lhs, rhs) =
            composition_additivity_check(&numeric("2+e^{it}"), &numeric("e^{it}"), &LabParams::default())
                .unwrap();
        assert!((lhs.to_c64() - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        assert!((lhs.to_c64() - rhs.to_c64()).norm() < 1e-9);
    }

    #[test]
    fn adjoint_antisymmetry_and_rotation_family() {
        let params = LabParams {
            cutoff: 64,
            order: 16,
            window: 8,
        };
        let report = adjoint_index_check(&exact("e^{it}"), &params).unwrap();
        assert!((report.index.to_c64() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((report.index_adjoint.to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for (phi, v) in &report.rotation_sweep {
            assert!(v.to_c64().norm() < 1e-9, "phi={phi}: {}", v.to_c64());
        }
    }

    #[test]
    fn self_adjoint_symbol_has_zero_index() {
        // 5/2 + cos(theta) = 5/2 + (e^{it}+e^{-it})/2, self-adjoint with margin
        let params = LabParams::default();
        let s = numeric("5/2+1/2*e^{it}+1/2*e^{-it}");
        let ind = symbol_index(&s, &params).unwrap();
        assert!(ind.to_c64().norm() < 1e-9);
    }
}
