//! Finite-dimensional McKean-Singer: the supertrace of the heat operator of
//! a graded operator is constant in t and equals the kernel-dimension
//! difference.

use nalgebra::DMatrix;

/// A graded operator given by its positive part D+ : E -> F (rows index F,
/// columns index E; inner products are the standard ones).
#[derive(Clone, Debug)]
pub struct GradedOperator {
    d_plus: DMatrix<f64>,
}

impl GradedOperator {
    pub fn new(d_plus: DMatrix<f64>) -> Self {
        GradedOperator { d_plus }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        GradedOperator {
            d_plus: DMatrix::from_fn(r, c, |i, j| rows[i][j]),
        }
    }

    pub fn dim_e(&self) -> usize {
        self.d_plus.ncols()
    }

    pub fn dim_f(&self) -> usize {
        self.d_plus.nrows()
    }

    pub fn d_plus(&self) -> &DMatrix<f64> {
        &self.d_plus
    }
}

#[derive(Clone, Debug)]
pub struct McKeanSingerReport {
    /// (t, Str exp(-t D^2)) per grid point.
    pub supertraces: Vec<(f64, f64)>,
    /// dim ker D+ - dim ker D+^*, an exact integer.
    pub kernel_difference: i64,
    pub dim_ker_d_plus: usize,
    pub dim_ker_d_plus_adjoint: usize,
}

pub const DEFAULT_T_GRID: [f64; 3] = [0.1, 1.0, 10.0];

/// Str(exp(-t D^2)) = Tr exp(-t D+^* D+) - Tr exp(-t D+ D+^*), computed by
/// eigendecomposition of the two nonnegative square blocks independently.
pub fn mckean_singer_check(d: &GradedOperator, t_grid: &[f64]) -> McKeanSingerReport {
    let dp = &d.d_plus;
    let h_e = dp.transpose() * dp; // on E
    let h_f = dp * dp.transpose(); // on F
    let eig_e = h_e.symmetric_eigen().eigenvalues;
    let eig_f = h_f.symmetric_eigen().eigenvalues;

    let supertraces = t_grid
        .iter()
        .map(|&t| {
            assert!(t > 0.0, "t grid values must be positive");
            let tr_e: f64 = eig_e.iter().map(|&l| (-t * l.max(0.0)).exp()).sum();
            let tr_f: f64 = eig_f.iter().map(|&l| (-t * l.max(0.0)).exp()).sum();
            (t, tr_e - tr_f)
        })
        .collect();

    // numerical rank from singular values of D+
    let svd = dp.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > tol).count();
    let ker_e = d.dim_e() - rank;
    let ker_f = d.dim_f() - rank;

    McKeanSingerReport {
        supertraces,
        kernel_difference: ker_e as i64 - ker_f as i64,
        dim_ker_d_plus: ker_e,
        dim_ker_d_plus_adjoint: ker_f,
    }
}
