//! Truncated one-variable power series with exact rational coefficients.

use num_traits::{One, Zero};

use crate::rational::{factorial, rat_i64, Rational};

/// Coefficients `[a0, a1, ..., a_order]` of a series truncated at `x^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![Rational::zero(); order + 1];
        c[0] = Rational::one();
        PowerSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Rational::zero());
        PowerSeries { coeffs: c }
    }

    pub fn add(&self, other: &PowerSeries) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn mul(&self, other: &PowerSeries) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let order = self.order();
        let a0 = &self.coeffs[0];
        assert!(!a0.is_zero(), "series has no inverse: zero constant term");
        let inv0 = a0.clone().recip();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out[n] = -acc * &inv0;
        }
        PowerSeries { coeffs: out }
    }

    /// Exact series division `self / other`.
    pub fn div(&self, other: &PowerSeries) -> Self {
        self.mul(&other.inverse())
    }

    /// `log` of a series with constant term 1, via log(1+u) = sum (-1)^{k+1} u^k / k.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log requires constant term 1");
        let order = self.order();
        let mut u = self.clone();
        u.coeffs[0] = Rational::zero();
        let mut acc = PowerSeries::new(vec![Rational::zero(); order + 1]);
        let mut upow = PowerSeries::one(order);
        for k in 1..=order {
            upow = upow.mul(&u);
            if upow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            let sign = if k % 2 == 1 { rat_i64(1) } else { rat_i64(-1) };
            let factor = sign / rat_i64(k as i64);
            let term: Vec<Rational> = upow.coeffs.iter().map(|c| c * &factor).collect();
            acc = acc.add(&PowerSeries::new(term));
        }
        acc
    }
}

/// `sinh(x)/x = sum x^{2k} / (2k+1)!` truncated.
pub fn sinh_over_x(order: usize) -> PowerSeries {
    let mut c = vec![Rational::zero(); order + 1];
    let mut k = 0;
    while 2 * k <= order {
        c[2 * k] = factorial(2 * k as u32 + 1).recip();
        k += 1;
    }
    PowerSeries::new(c)
}

/// `cosh(x) = sum x^{2k} / (2k)!` truncated.
pub fn cosh(order: usize) -> PowerSeries {
    let mut c = vec![Rational::zero(); order + 1];
    let mut k = 0;
    while 2 * k <= order {
        c[2 * k] = factorial(2 * k as u32).recip();
        k += 1;
    }
    PowerSeries::new(c)
}

/// `(1 - e^{-x})/x = sum (-1)^k x^k / (k+1)!` truncated.
pub fn one_minus_exp_neg_over_x(order: usize) -> PowerSeries {
    let mut c = vec![Rational::zero(); order + 1];
    for (k, ck) in c.iter_mut().enumerate() {
        let sign = if k % 2 == 0 { rat_i64(1) } else { rat_i64(-1) };
        *ck = sign * factorial(k as u32 + 1).recip();
    }
    PowerSeries::new(c)
}
