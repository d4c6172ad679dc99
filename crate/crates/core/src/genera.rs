//! Multiplicative sequences (A-hat, Todd, L), the Chern character and
//! Chern-to-Pontryagin conversion.
//!
//! A genus is evaluated through formal roots: for a characteristic power
//! series Q(x) with Q(0)=1, the class of a bundle is prod_i Q(x_i). We take
//! log Q, sum it over roots via power sums (Newton's identities turn the
//! elementary symmetric functions c_i into power sums without ever splitting
//! roots), and exponentiate back in the ring.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, rat_i64, Rational};
use crate::ring::{CohClass, RingModel};
use crate::series::{cosh, one_minus_exp_neg_over_x, sinh_over_x, PowerSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusKind {
    AHat,
    Todd,
    L,
}

impl GenusKind {
    pub fn name(self) -> &'static str {
        match self {
            GenusKind::AHat => "a-hat",
            GenusKind::Todd => "todd",
            GenusKind::L => "l",
        }
    }
}

impl FromStr for GenusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a-hat" | "ahat" | "â" => Ok(GenusKind::AHat),
            "todd" | "td" => Ok(GenusKind::Todd),
            "l" => Ok(GenusKind::L),
            other => Err(Error::UnknownGenus(other.to_string())),
        }
    }
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Taylor coefficients of a characteristic power series Q(x), Q(0)=1.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSeries {
    pub name: String,
    pub coefficients: Vec<Rational>,
}

impl GenusSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Exact Taylor expansion of the defining series:
/// A-hat uses (x/2)/sinh(x/2), Todd uses x/(1-e^{-x}), L uses x/tanh(x).
pub fn genus_series(kind: GenusKind, order: usize) -> GenusSeries {
    let series = match kind {
        GenusKind::AHat => {
            // sinh(x/2)/(x/2) = sum x^{2k} / (4^k (2k+1)!)
            let mut denom = sinh_over_x(order);
            let mut scale = Rational::one();
            let quarter = Rational::new(1.into(), 4.into());
            for k in 0..=order {
                if k > 0 && k % 2 == 0 {
                    scale *= &quarter;
                }
                denom.coeffs[k] *= &scale;
            }
            denom.inverse()
        }
        GenusKind::Todd => one_minus_exp_neg_over_x(order).inverse(),
        GenusKind::L => cosh(order).div(&sinh_over_x(order)),
    };
    GenusSeries {
        name: kind.name().to_string(),
        coefficients: series.coeffs,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharMode {
    Chern,
    Pontryagin,
}

impl CharMode {
    fn as_str(self) -> &'static str {
        match self {
            CharMode::Chern => "chern",
            CharMode::Pontryagin => "pontryagin",
        }
    }

    /// Topological degree of the k-th class (1-based).
    pub fn class_degree(self, k: usize) -> u32 {
        match self {
            CharMode::Chern => 2 * k as u32,
            CharMode::Pontryagin => 4 * k as u32,
        }
    }
}

/// Characteristic-class data of a bundle: its rank and the list c_1..c_r
/// (Chern mode) or p_1..p_k (Pontryagin mode), all living in one ring model.
#[derive(Clone, Debug, PartialEq)]
pub struct CharData {
    ring: Arc<RingModel>,
    rank: u32,
    classes: Vec<CohClass>,
    mode: CharMode,
}

impl CharData {
    pub fn chern(ring: &Arc<RingModel>, rank: u32, classes: Vec<CohClass>) -> Result<Self> {
        Self::new(ring, rank, classes, CharMode::Chern)
    }

    pub fn pontryagin(ring: &Arc<RingModel>, rank: u32, classes: Vec<CohClass>) -> Result<Self> {
        Self::new(ring, rank, classes, CharMode::Pontryagin)
    }

    fn new(
        ring: &Arc<RingModel>,
        rank: u32,
        mut classes: Vec<CohClass>,
        mode: CharMode,
    ) -> Result<Self> {
        for (i, c) in classes.iter().enumerate() {
            let deg = mode.class_degree(i + 1);
            if c != &c.component(deg) {
                return Err(Error::Schema(format!(
                    "class {} must be homogeneous of degree {}",
                    i + 1,
                    deg
                )));
            }
        }
        while classes.last().is_some_and(|c| c.is_zero()) {
            classes.pop();
        }
        Ok(CharData {
            ring: ring.clone(),
            rank,
            classes,
            mode,
        })
    }

    /// Trivial complex bundle of the given rank.
    pub fn trivial(ring: &Arc<RingModel>, rank: u32) -> Self {
        CharData {
            ring: ring.clone(),
            rank,
            classes: Vec::new(),
            mode: CharMode::Chern,
        }
    }

    /// Complex line bundle with the given first Chern class.
    pub fn line(c1: CohClass) -> Result<Self> {
        let ring = c1.ring().clone();
        Self::chern(&ring, 1, vec![c1])
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn mode(&self) -> CharMode {
        self.mode
    }

    pub fn classes(&self) -> &[CohClass] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> CohClass {
        if k == 0 {
            CohClass::one(&self.ring)
        } else if k <= self.classes.len() {
            self.classes[k - 1].clone()
        } else {
            CohClass::zero(&self.ring)
        }
    }

    pub fn c1(&self) -> CohClass {
        self.class(1)
    }

    /// Total class 1 + c_1 + c_2 + ... (or 1 + p_1 + ...).
    pub fn total_class(&self) -> CohClass {
        let mut acc = CohClass::one(&self.ring);
        for c in &self.classes {
            acc = acc.add(c).expect("classes share the ring");
        }
        acc
    }

    /// Whitney sum: total classes multiply, ranks add.
    pub fn direct_sum(&self, other: &CharData) -> Result<CharData> {
        if self.mode != other.mode {
            return Err(Error::CharModeMismatch {
                expected: self.mode.as_str(),
                got: other.mode.as_str(),
            });
        }
        let total = self.total_class().mul(&other.total_class())?;
        let classes = split_total_class(&total, self.mode);
        Self::new(&self.ring, self.rank + other.rank, classes, self.mode)
    }
}

/// Extract c_1, c_2, ... from a total class with constant term 1.
fn split_total_class(total: &CohClass, mode: CharMode) -> Vec<CohClass> {
    let top = total.ring().top_degree();
    let mut out = Vec::new();
    let mut k = 1;
    while mode.class_degree(k) <= top {
        out.push(total.component(mode.class_degree(k)));
        k += 1;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Power sums of the formal roots from elementary symmetric functions via
/// Newton's identities: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k.
fn power_sums(data: &CharData, max_k: usize) -> Result<Vec<CohClass>> {
    let ring = &data.ring;
    let mut p: Vec<CohClass> = Vec::with_capacity(max_k + 1);
    p.push(CohClass::constant(ring, rat_i64(data.rank as i64)));
    for k in 1..=max_k {
        let mut acc = data.class(k).scale(&rat_i64(if k % 2 == 1 {
            k as i64
        } else {
            -(k as i64)
        }));
        for i in 1..k {
            let term = data.class(i).mul(&p[k - i])?;
            if i % 2 == 1 {
                acc = acc.add(&term)?;
            } else {
                acc = acc.sub(&term)?;
            }
        }
        p.push(acc);
    }
    Ok(p)
}

/// Evaluate the multiplicative sequence of `series` on the bundle:
/// exp( sum_j (log Q)_j * p_j ), truncated at the ring's top degree.
pub fn genus_class(series: &GenusSeries, data: &CharData) -> Result<CohClass> {
    let ring = &data.ring;
    let top = ring.top_degree() as usize;
    let need = top / 2;
    if series.order() < need {
        return Err(Error::InsufficientOrder {
            name: series.name.clone(),
            have: series.order(),
            need,
        });
    }
    let q = PowerSeries::new(series.coefficients[..=need].to_vec());
    let logq = q.log();

    match data.mode {
        CharMode::Chern => {
            let p = power_sums(data, need)?;
            let mut arg = CohClass::zero(ring);
            for j in 1..=need {
                if logq.coeffs[j].is_zero() {
                    continue;
                }
                arg = arg.add(&p[j].scale(&logq.coeffs[j]))?;
            }
            arg.exp()
        }
        CharMode::Pontryagin => {
            // Q must be even; evaluate R(y) = Q(sqrt(y)) on the Pontryagin
            // variables, which are the elementary symmetric functions of the
            // squared roots.
            for (j, c) in logq.coeffs.iter().enumerate() {
                if j % 2 == 1 && !c.is_zero() {
                    return Err(Error::OddSeriesOnPontryagin(series.name.clone()));
                }
            }
            let p = power_sums(data, top / 4)?;
            let mut arg = CohClass::zero(ring);
            for j in 1..=top / 4 {
                if 2 * j > need || logq.coeffs[2 * j].is_zero() {
                    continue;
                }
                arg = arg.add(&p[j].scale(&logq.coeffs[2 * j]))?;
            }
            arg.exp()
        }
    }
}

/// Convenience: expand the series to the order the ring needs and evaluate.
pub fn genus_of(kind: GenusKind, data: &CharData) -> Result<CohClass> {
    let series = genus_series(kind, data.ring.top_degree() as usize / 2);
    genus_class(&series, data)
}

/// ch(E) = rank + sum_k p_k / k! over formal Chern roots.
pub fn chern_character(data: &CharData) -> Result<CohClass> {
    if data.mode != CharMode::Chern {
        return Err(Error::CharModeMismatch {
            expected: "chern",
            got: data.mode.as_str(),
        });
    }
    let ring = &data.ring;
    let max_k = ring.top_degree() as usize / 2;
    let p = power_sums(data, max_k)?;
    let mut acc = CohClass::constant(ring, rat_i64(data.rank as i64));
    for (k, pk) in p.iter().enumerate().skip(1) {
        acc = acc.add(&pk.scale(&factorial(k as u32).recip()))?;
    }
    Ok(acc)
}

/// Pontryagin classes of the underlying real bundle from
/// c(E) * c(conj E): p_k = (-1)^k [c(E) c(conj E)]_{4k}.
pub fn pontryagin_from_chern(data: &CharData) -> Result<CharData> {
    if data.mode != CharMode::Chern {
        return Err(Error::CharModeMismatch {
            expected: "chern",
            got: data.mode.as_str(),
        });
    }
    let ring = &data.ring;
    let mut conj = CohClass::one(ring);
    for (i, c) in data.classes.iter().enumerate() {
        let signed = if (i + 1) % 2 == 1 { c.scale(&rat_i64(-1)) } else { c.clone() };
        conj = conj.add(&signed)?;
    }
    let prod = data.total_class().mul(&conj)?;
    let mut classes = Vec::new();
    let mut k = 1;
    while 4 * k <= ring.top_degree() as usize {
        let sign = if k % 2 == 1 { rat_i64(-1) } else { rat_i64(1) };
        classes.push(prod.component(4 * k as u32).scale(&sign));
        k += 1;
    }
    CharData::pontryagin(ring, 2 * data.rank, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::ring::Generator;

    fn cp2_ring() -> Arc<RingModel> {
        RingModel::truncated_polynomial(
            "CP^2",
            vec![Generator {
                name: "x".into(),
                degree: 2,
            }],
            vec![2],
            4,
            &[(crate::ring::Monomial(vec![2]), rat_i64(1))],
        )
        .unwrap()
    }

    fn xk(ring: &Arc<RingModel>, c: Rational) -> CohClass {
        CohClass::generator(ring, "x", c).unwrap()
    }

    #[test]
    fn todd_series_coefficients() {
        let s = genus_series(GenusKind::Todd, 2);
        assert_eq!(s.coefficients, vec![rat_i64(1), rat(1, 2), rat(1, 12)]);
    }

    #[test]
    fn ahat_series_coefficients() {
        let s = genus_series(GenusKind::AHat, 2);
        assert_eq!(s.coefficients, vec![rat_i64(1), rat_i64(0), rat(-1, 24)]);
        assert_eq!(genus_series(GenusKind::AHat, 0).coefficients, vec![rat_i64(1)]);
    }

    #[test]
    fn l_series_coefficients() {
        // x/tanh(x) = 1 + x^2/3 - x^4/45 + ...
        let s = genus_series(GenusKind::L, 4);
        assert_eq!(
            s.coefficients,
            vec![rat_i64(1), rat_i64(0), rat(1, 3), rat_i64(0), rat(-1, 45)]
        );
    }

    #[test]
    fn series_satisfy_defining_products() {
        // Q(x) * (defining denominator) == numerator, as a series identity.
        let order = 8;
        let todd = PowerSeries::new(genus_series(GenusKind::Todd, order).coefficients);
        assert_eq!(
            todd.mul(&one_minus_exp_neg_over_x(order)),
            PowerSeries::one(order)
        );
        let l = PowerSeries::new(genus_series(GenusKind::L, order).coefficients);
        assert_eq!(l.mul(&sinh_over_x(order)), cosh(order));
    }

    fn cp2_tangent(ring: &Arc<RingModel>) -> CharData {
        // c(T CP^2) = (1+x)^3 = 1 + 3x + 3x^2
        CharData::chern(
            ring,
            2,
            vec![xk(ring, rat_i64(3)), xk(ring, rat_i64(1)).pow(2).unwrap().scale(&rat_i64(3))],
        )
        .unwrap()
    }

    #[test]
    fn ahat_of_cp2_tangent() {
        let ring = cp2_ring();
        let a = genus_of(GenusKind::AHat, &cp2_tangent(&ring)).unwrap();
        // 1 - p1/24 with p1 = 3x^2, i.e. 1 - x^2/8
        let expect = CohClass::from_coeffs(&ring, vec![rat_i64(1), rat_i64(0), rat(-1, 8)]);
        assert_eq!(a, expect);
        assert_eq!(a.integrate(), rat(-1, 8));
    }

    #[test]
    fn ahat_on_pontryagin_data_matches() {
        let ring = cp2_ring();
        let pont = pontryagin_from_chern(&cp2_tangent(&ring)).unwrap();
        // p1 = c1^2 - 2 c2 = 9x^2 - 6x^2 = 3x^2
        assert_eq!(
            pont.classes()[0],
            CohClass::from_coeffs(&ring, vec![rat_i64(0), rat_i64(0), rat_i64(3)])
        );
        let a = genus_of(GenusKind::AHat, &pont).unwrap();
        assert_eq!(a, genus_of(GenusKind::AHat, &cp2_tangent(&ring)).unwrap());
    }

    #[test]
    fn todd_degree_one_part() {
        let ring = cp2_ring();
        let td = genus_of(GenusKind::Todd, &cp2_tangent(&ring)).unwrap();
        // degree-2 part is c1/2 = 3x/2
        assert_eq!(td.component(2), xk(&ring, rat(3, 2)));
    }

    #[test]
    fn ahat_of_trivial_is_one() {
        let ring = cp2_ring();
        let t = CharData::trivial(&ring, 0);
        assert_eq!(genus_of(GenusKind::AHat, &t).unwrap(), CohClass::one(&ring));
    }

    #[test]
    fn insufficient_order_is_an_error() {
        let ring = cp2_ring();
        let short = genus_series(GenusKind::AHat, 1);
        assert!(matches!(
            genus_class(&short, &cp2_tangent(&ring)),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn todd_rejected_on_pontryagin_data() {
        let ring = cp2_ring();
        let pont = pontryagin_from_chern(&cp2_tangent(&ring)).unwrap();
        assert!(matches!(
            genus_of(GenusKind::Todd, &pont),
            Err(Error::OddSeriesOnPontryagin(_))
        ));
    }

    #[test]
    fn chern_character_examples() {
        let ring = cp2_ring();
        // trivial bundle of rank r
        let t = CharData::trivial(&ring, 7);
        assert_eq!(
            chern_character(&t).unwrap(),
            CohClass::constant(&ring, rat_i64(7))
        );
        // line bundle with c1 = x: ch = e^x = 1 + x + x^2/2
        let l = CharData::line(xk(&ring, rat_i64(1))).unwrap();
        assert_eq!(
            chern_character(&l).unwrap(),
            CohClass::from_coeffs(&ring, vec![rat_i64(1), rat_i64(1), rat(1, 2)])
        );
    }

    #[test]
    fn chern_character_rank_two_newton() {
        // degree-4 component of ch is (c1^2 - 2 c2)/2
        let ring = cp2_ring();
        let c1 = xk(&ring, rat_i64(2));
        let c2 = xk(&ring, rat_i64(1)).pow(2).unwrap().scale(&rat_i64(5));
        let e = CharData::chern(&ring, 2, vec![c1.clone(), c2.clone()]).unwrap();
        let ch = chern_character(&e).unwrap();
        let expect = c1
            .pow(2)
            .unwrap()
            .sub(&c2.scale(&rat_i64(2)))
            .unwrap()
            .scale(&rat(1, 2));
        assert_eq!(ch.component(4), expect);
    }

    #[test]
    fn pontryagin_of_line_and_trivial() {
        let ring = cp2_ring();
        let l = CharData::line(xk(&ring, rat_i64(1))).unwrap();
        let p = pontryagin_from_chern(&l).unwrap();
        assert_eq!(p.classes().len(), 1);
        assert_eq!(p.classes()[0], xk(&ring, rat_i64(1)).pow(2).unwrap());
        let t = pontryagin_from_chern(&CharData::trivial(&ring, 3)).unwrap();
        assert!(t.classes().is_empty());
    }

    #[test]
    fn ch_is_additive_and_tensor_on_lines() {
        let ring = cp2_ring();
        let a = CharData::line(xk(&ring, rat_i64(1))).unwrap();
        let b = CharData::line(xk(&ring, rat(1, 3))).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        assert_eq!(
            chern_character(&sum).unwrap(),
            chern_character(&a)
                .unwrap()
                .add(&chern_character(&b).unwrap())
                .unwrap()
        );
        // tensor of lines: c1 adds, ch multiplies
        let tensor = CharData::line(xk(&ring, rat_i64(1)).add(&xk(&ring, rat(1, 3))).unwrap()).unwrap();
        assert_eq!(
            chern_character(&tensor).unwrap(),
            chern_character(&a)
                .unwrap()
                .mul(&chern_character(&b).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn genus_is_multiplicative_under_direct_sum() {
        let ring = cp2_ring();
        let a = CharData::line(xk(&ring, rat_i64(2))).unwrap();
        let b = CharData::line(xk(&ring, rat(-1, 2))).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        for kind in [GenusKind::AHat, GenusKind::Todd, GenusKind::L] {
            let lhs = genus_of(kind, &sum).unwrap();
            let rhs = genus_of(kind, &a)
                .unwrap()
                .mul(&genus_of(kind, &b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{kind} not multiplicative");
        }
    }
}
