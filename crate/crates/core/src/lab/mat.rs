//! Small dense matrices over a lab scalar.

use super::scalar::LabScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: LabScalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.mul(&o[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Trace of the leading `block` x `block` principal submatrix.
    pub fn trace_window(&self, block: usize) -> T {
        let mut acc = T::zero();
        for i in 0..block {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    /// Determinant by Gaussian elimination (pivot by magnitude; exact
    /// division for the rational scalar).
    pub fn determinant(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .abs_f64()
                        .partial_cmp(&m[(b, col)].abs_f64())
                        .unwrap()
                })
                .unwrap();
            if m[(pivot, col)].is_zero() {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    let t = m[(pivot, j)].clone();
                    m[(pivot, j)] = m[(col, j)].clone();
                    m[(col, j)] = t;
                }
                det = det.neg();
            }
            let p = m[(col, col)].clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for row in col + 1..n {
                let f = m[(row, col)].mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(&m[(col, j)]);
                    m[(row, j)] = m[(row, j)].sub(&t);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; None when singular (a zero pivot).
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .abs_f64()
                        .partial_cmp(&m[(b, col)].abs_f64())
                        .unwrap()
                })
                .unwrap();
            let pinv = m[(pivot, col)].inv()?;
            if pivot != col {
                for j in 0..n {
                    m.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            for j in 0..n {
                m[(col, j)] = m[(col, j)].mul(&pinv);
                inv[(col, j)] = inv[(col, j)].mul(&pinv);
            }
            for row in 0..n {
                if row == col || m[(row, col)].is_zero() {
                    continue;
                }
                let f = m[(row, col)].clone();
                for j in 0..n {
                    let t = f.mul(&m[(col, j)]);
                    m[(row, j)] = m[(row, j)].sub(&t);
                    let t = f.mul(&inv[(col, j)]);
                    inv[(row, j)] = inv[(row, j)].sub(&t);
                }
            }
        }
        Some(inv)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
