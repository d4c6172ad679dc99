//! Matrix-valued loop symbols a(theta) = sum_k a_k e^{ik theta}.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::mat::Mat;
use super::scalar::{parse_complex_rational, GaussRational, LabScalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LoopSymbol<T> {
    size: usize,
    coeffs: BTreeMap<i64, Mat<T>>,
}

impl<T: LabScalar> LoopSymbol<T> {
    pub fn new(size: usize, coeffs: BTreeMap<i64, Mat<T>>) -> Self {
        let coeffs: BTreeMap<i64, Mat<T>> = coeffs
            .into_iter()
            .filter(|(_, m)| {
                assert_eq!((m.rows, m.cols), (size, size));
                m.max_abs() != 0.0
            })
            .collect();
        LoopSymbol { size, coeffs }
    }

    /// Scalar (1x1) symbol from frequency -> coefficient pairs.
    pub fn scalar(coeffs: impl IntoIterator<Item = (i64, T)>) -> Self {
        let map = coeffs
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Mat::from_rows(vec![vec![c]])))
            .collect();
        LoopSymbol {
            size: 1,
            coeffs: map,
        }
    }

    /// The monomial c * e^{ik theta} with a constant matrix coefficient.
    pub fn monomial(k: i64, coeff: Mat<T>) -> Self {
        assert!(coeff.is_square());
        let size = coeff.rows;
        LoopSymbol::new(size, BTreeMap::from([(k, coeff)]))
    }

    pub fn identity(size: usize) -> Self {
        LoopSymbol::monomial(0, Mat::identity(size))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Mat<T>> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Mat<T> {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.size, self.size))
    }

    /// Largest |k| carrying a nonzero Fourier coefficient.
    pub fn bandwidth(&self) -> usize {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// If the symbol is a single monomial c e^{ik theta}, its (k, c).
    pub fn as_monomial(&self) -> Option<(i64, &Mat<T>)> {
        if self.coeffs.len() == 1 {
            let (k, m) = self.coeffs.iter().next().unwrap();
            Some((*k, m))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(self.size, other.size));
        }
        let mut coeffs = self.coeffs.clone();
        for (k, m) in &other.coeffs {
            coeffs
                .entry(*k)
                .and_modify(|e| *e = e.add(m))
                .or_insert_with(|| m.clone());
        }
        Ok(LoopSymbol::new(self.size, coeffs))
    }

    /// Pointwise product (self applied after other in operator order is
    /// `self.mul(other)` = a_self(theta) * a_other(theta)): Fourier
    /// coefficients convolve with matrix multiplication.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(self.size, other.size));
        }
        let mut coeffs: BTreeMap<i64, Mat<T>> = BTreeMap::new();
        for (k1, m1) in &self.coeffs {
            for (k2, m2) in &other.coeffs {
                let prod = m1.matmul(m2);
                coeffs
                    .entry(k1 + k2)
                    .and_modify(|e| *e = e.add(&prod))
                    .or_insert(prod);
            }
        }
        Ok(LoopSymbol::new(self.size, coeffs))
    }

    /// Pointwise adjoint a*(theta): coefficient at k is (a_{-k})^H.
    pub fn adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, m)| (-k, m.adjoint()))
            .collect();
        LoopSymbol {
            size: self.size,
            coeffs,
        }
    }

    /// Evaluate at theta in double precision.
    pub fn eval(&self, theta: f64) -> Mat<Complex64> {
        let mut acc = Mat::zeros(self.size, self.size);
        for (k, m) in &self.coeffs {
            let phase = Complex64::from_polar(1.0, *k as f64 * theta);
            for i in 0..self.size {
                for j in 0..self.size {
                    acc[(i, j)] += m[(i, j)].to_c64() * phase;
                }
            }
        }
        acc
    }

    pub fn to_numeric(&self) -> LoopSymbol<Complex64> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, m)| {
                let mut out = Mat::zeros(self.size, self.size);
                for i in 0..self.size {
                    for j in 0..self.size {
                        out[(i, j)] = m[(i, j)].to_c64();
                    }
                }
                (*k, out)
            })
            .collect();
        LoopSymbol {
            size: self.size,
            coeffs,
        }
    }
}

impl LoopSymbol<Complex64> {
    /// Linear interpolation (1-t) self + t other, for homotopy paths.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self> {
        let a = LoopSymbol::new(
            self.size,
            self.coeffs
                .iter()
                .map(|(k, m)| (*k, m.scale(&Complex64::new(1.0 - t, 0.0))))
                .collect(),
        );
        let b = LoopSymbol::new(
            other.size,
            other
                .coeffs
                .iter()
                .map(|(k, m)| (*k, m.scale(&Complex64::new(t, 0.0))))
                .collect(),
        );
        a.add(&b)
    }
}

/// Parse the CLI mini-grammar: sums of `c*e^{kit}` terms with
/// complex-rational `c`, e.g. `e^{3it}`, `2+e^{it}`, `1/2*e^{-2it}+3i`.
pub fn parse_symbol_expr(expr: &str) -> Result<LoopSymbol<GaussRational>> {
    let bad = |reason: &str| Error::BadSymbol {
        expr: expr.to_string(),
        reason: reason.to_string(),
    };
    let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad("empty expression"));
    }
    // split into signed terms at top level (not inside braces)
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in cleaned.chars() {
        match c {
            '{' | '(' => {
                depth += 1;
                cur.push(c);
            }
            '}' | ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            '+' | '-'
                if depth == 0
                    && !cur.is_empty()
                    && !cur.ends_with('/')
                    && !cur.ends_with('*')
                    && !cur.ends_with('^')
                    && !cur.ends_with('e') =>
            {
                terms.push(std::mem::take(&mut cur));
                if c == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(c),
        }
    }
    if !cur.is_empty() {
        terms.push(cur);
    }

    let mut coeffs: BTreeMap<i64, GaussRational> = BTreeMap::new();
    for raw in terms {
        let term = raw.as_str();
        if term.is_empty() {
            continue;
        }
        let (coeff_str, freq) = match term.find("e^{") {
            None => (term.to_string(), 0i64),
            Some(pos) => {
                let rest = &term[pos + 3..];
                let end = rest.find('}').ok_or_else(|| bad("unclosed e^{...}"))?;
                let inside = &rest[..end];
                let k_str = inside
                    .strip_suffix("it")
                    .or_else(|| inside.strip_suffix("i*t"))
                    .ok_or_else(|| bad("exponent must end in `it`"))?;
                let k: i64 = match k_str {
                    "" => 1,
                    "-" => -1,
                    s => s.parse().map_err(|_| bad("bad frequency"))?,
                };
                let mut c = term[..pos].to_string();
                if c.ends_with('*') {
                    c.pop();
                }
                let c = match c.as_str() {
                    "" => "1".to_string(),
                    "-" => "-1".to_string(),
                    other => other.to_string(),
                };
                (c, k)
            }
        };
        let c = parse_complex_rational(&coeff_str)?;
        let entry = coeffs.entry(freq).or_insert_with(GaussRational::zero);
        *entry = entry.add(&c);
    }
    Ok(LoopSymbol::scalar(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn gr(n: i64, d: i64) -> GaussRational {
        GaussRational::new(rat(n, d), rat(0, 1))
    }

    #[test]
    fn parse_monomials() {
        let s = parse_symbol_expr("e^{3it}").unwrap();
        assert_eq!(s.as_monomial().unwrap().0, 3);
        let s = parse_symbol_expr("e^{-it}").unwrap();
        assert_eq!(s.as_monomial().unwrap().0, -1);
        let s = parse_symbol_expr("2*e^{it}").unwrap();
        assert_eq!(s.coeff(1)[(0, 0)], gr(2, 1));
    }

    #[test]
    fn parse_sums() {
        let s = parse_symbol_expr("2+e^{it}").unwrap();
        assert_eq!(s.coeff(0)[(0, 0)], gr(2, 1));
        assert_eq!(s.coeff(1)[(0, 0)], gr(1, 1));
        let s = parse_symbol_expr("1/2*e^{-2it}-3i").unwrap();
        assert_eq!(s.coeff(-2)[(0, 0)], gr(1, 2));
        assert_eq!(s.coeff(0)[(0, 0)], GaussRational::new(rat(0, 1), rat(-3, 1)));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_symbol_expr("e^{it").is_err());
        assert!(parse_symbol_expr("e^{3is}").is_err());
        assert!(parse_symbol_expr("").is_err());
    }

    #[test]
    fn symbol_product_convolves() {
        let a = parse_symbol_expr("e^{it}").unwrap();
        let b = parse_symbol_expr("e^{2it}").unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.as_monomial().unwrap().0, 3);
        let q = parse_symbol_expr("2+e^{it}")
            .unwrap()
            .mul(&parse_symbol_expr("2-e^{it}").unwrap())
            .unwrap();
        assert_eq!(q.coeff(0)[(0, 0)], gr(4, 1));
        assert_eq!(q.coeff(2)[(0, 0)], gr(-1, 1));
        assert!(q.coeffs().get(&1).is_none());
    }

    #[test]
    fn adjoint_flips_frequency_and_conjugates() {
        let s = parse_symbol_expr("2i*e^{it}").unwrap();
        let adj = s.adjoint();
        assert_eq!(adj.coeff(-1)[(0, 0)], GaussRational::new(rat(0, 1), rat(-2, 1)));
    }

    #[test]
    fn eval_matches_fourier_sum() {
        let s = parse_symbol_expr("2+e^{it}").unwrap().to_numeric();
        let v = s.eval(std::f64::consts::PI)[(0, 0)];
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
