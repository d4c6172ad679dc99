//! Scalar types for the operator laboratory: exact Gaussian rationals for
//! monomial/Laurent symbols and complex doubles for everything else.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational {
            re: crate::rational::rat_i64(n),
            im: Rational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl std::fmt::Display for GaussRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", format_rational(&self.im))
        } else if self.im < Rational::zero() {
            write!(
                f,
                "{}{}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        } else {
            write!(
                f,
                "{}+{}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` with rational (or decimal) parts.
pub fn parse_complex_rational(s: &str) -> Result<GaussRational> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    let bad = |reason: &str| Error::BadSymbol {
        expr: s.to_string(),
        reason: reason.to_string(),
    };
    let parse_part = |p: &str| -> Result<Rational> {
        let p = p.trim();
        if p.contains('.') {
            let f: f64 = p.parse().map_err(|_| bad("bad decimal literal"))?;
            BigRational::from_float(f).ok_or_else(|| bad("non-finite decimal"))
        } else {
            parse_rational(p)
        }
    };
    // split at the last top-level '+' or '-' that is not a leading sign and
    // not inside a fraction's numerator sign
    let bytes = s.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && bytes[i - 1] as char != '/' && bytes[i - 1] as char != 'e' {
            split = Some(i);
            break;
        }
    }
    if let Some(i) = split {
        let (a, b) = (&s[..i], &s[i..]);
        if let Some(bi) = b.strip_suffix('i') {
            let im_str = match bi {
                "+" | "-" => format!("{bi}1"),
                other => other.to_string(),
            };
            return Ok(GaussRational::new(parse_part(a)?, parse_part(&im_str)?));
        }
    }
    if let Some(im) = s.strip_suffix('i') {
        let im_str = match im {
            "" => "1".to_string(),
            "-" => "-1".to_string(),
            other => other.to_string(),
        };
        return Ok(GaussRational::new(Rational::zero(), parse_part(&im_str)?));
    }
    Ok(GaussRational::new(parse_part(s)?, Rational::zero()))
}

/// The field operations the lab needs, implemented both exactly and in
/// double precision.
pub trait LabScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// None when the scalar is zero (or numerically negligible).
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> Complex64;
}

impl LabScalar for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        GaussRational::from_int(1)
    }

    fn add(&self, o: &Self) -> Self {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn neg(&self) -> Self {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }

    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRational::new(&self.re / &n, -&self.im / &n))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl LabScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}
