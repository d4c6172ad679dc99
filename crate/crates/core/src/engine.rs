//! Exact evaluation of the index formulas and fractionality reporting.
//!
//! Everything here is a pairing of characteristic classes against the
//! fundamental class of a ring model; no floating point is involved and no
//! value is ever rounded.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::genera::{chern_character, genus_of, CharData, GenusKind};
use crate::catalog::ManifoldModel;
use crate::rational::{format_rational, is_integer, Rational};
use crate::ring::CohClass;

/// Optional line-bundle twists of the spin^c formula: a half-weight class
/// c1(L') and an N-th-root class c1(L)/N.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    l_prime_c1: Option<CohClass>,
    l_c1: Option<CohClass>,
    root_order: u32,
}

impl TwistSpec {
    pub fn new(
        l_prime_c1: Option<CohClass>,
        l_c1: Option<CohClass>,
        root_order: u32,
    ) -> Result<Self> {
        if root_order == 0 {
            return Err(Error::ZeroRootOrder);
        }
        for c in l_prime_c1.iter().chain(l_c1.iter()) {
            if c != &c.component(2) {
                return Err(Error::Schema(
                    "twist classes must be homogeneous of degree 2".into(),
                ));
            }
        }
        Ok(TwistSpec {
            l_prime_c1,
            l_c1,
            root_order,
        })
    }

    pub fn none() -> Self {
        TwistSpec {
            l_prime_c1: None,
            l_c1: None,
            root_order: 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.l_prime_c1.is_none() && self.l_c1.is_none()
    }

    fn describe(&self) -> String {
        let fmt = |c: &Option<CohClass>| match c {
            None => "0".to_string(),
            Some(c) => c.to_string(),
        };
        format!(
            "L'={}; L={}; N={}",
            fmt(&self.l_prime_c1),
            fmt(&self.l_c1),
            self.root_order
        )
    }
}

/// One evaluated index: the exact value, its integrality, a formula tag and
/// a digest of the inputs it came from.
#[derive(Clone, Debug)]
pub struct IndexReport {
    pub value: Rational,
    pub is_integer: bool,
    pub inputs_digest: String,
    pub formula: String,
}

impl IndexReport {
    fn new(value: Rational, formula: &str, digest: String) -> Self {
        let int = is_integer(&value);
        IndexReport {
            value,
            is_integer: int,
            inputs_digest: digest,
            formula: formula.to_string(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        self.value.denom().clone()
    }
}

fn bundle_digest(e: &CharData) -> String {
    let classes: Vec<String> = e.classes().iter().map(|c| c.to_string()).collect();
    format!("rank={}; c=[{}]", e.rank(), classes.join(", "))
}

/// ind = integral of A-hat(Z) wedge ch(E), exact.
pub fn dirac_index(m: &ManifoldModel, e: &CharData) -> Result<IndexReport> {
    let ahat = genus_of(GenusKind::AHat, m.tangent())?;
    let ch = chern_character(e)?;
    let value = ahat.mul(&ch)?.integrate();
    Ok(IndexReport::new(
        value,
        "dirac",
        format!("manifold={}; bundle={}", m.label(), bundle_digest(e)),
    ))
}

/// ind = integral of A-hat(Z) wedge exp(c1(L')/2) wedge ch(E) wedge
/// exp(c1(L)/N), exact.
pub fn spinc_index(m: &ManifoldModel, e: &CharData, twist: &TwistSpec) -> Result<IndexReport> {
    let mut acc = genus_of(GenusKind::AHat, m.tangent())?;
    if let Some(lp) = &twist.l_prime_c1 {
        acc = acc.mul(&lp.scale(&Rational::new(1.into(), 2.into())).exp()?)?;
    }
    acc = acc.mul(&chern_character(e)?)?;
    if let Some(l) = &twist.l_c1 {
        let frac = Rational::new(1.into(), BigInt::from(twist.root_order));
        acc = acc.mul(&l.scale(&frac).exp()?)?;
    }
    Ok(IndexReport::new(
        acc.integrate(),
        "spinc",
        format!(
            "manifold={}; bundle={}; twist=({})",
            m.label(),
            bundle_digest(e),
            twist.describe()
        ),
    ))
}

/// Dolbeault index: integral of A-hat(Z) exp(c1/2), cross-checked against
/// the integral of the Todd class of the tangent data.
pub fn dolbeault_index(m: &ManifoldModel) -> Result<IndexReport> {
    if !m.is_complex() {
        return Err(Error::NotComplex(m.label().to_string()));
    }
    let ahat = genus_of(GenusKind::AHat, m.tangent())?;
    let half_c1 = m.c1().scale(&Rational::new(1.into(), 2.into()));
    let value = ahat.mul(&half_c1.exp()?)?.integrate();
    let todd = genus_of(GenusKind::Todd, m.tangent())?.integrate();
    assert_eq!(
        value, todd,
        "A-hat * exp(c1/2) disagrees with the Todd integral on {}",
        m.label()
    );
    Ok(IndexReport::new(
        value,
        "dolbeault",
        format!("manifold={}", m.label()),
    ))
}

/// One row of the fractionality table.
#[derive(Clone, Debug)]
pub struct FractionRow {
    pub digest: String,
    pub formula: String,
    pub value: String,
    pub denominator: String,
    pub is_integer: bool,
}

/// Tabulate values, reduced denominators and integrality flags.
pub fn fractionality_report(reports: &[IndexReport]) -> Vec<FractionRow> {
    reports
        .iter()
        .map(|r| FractionRow {
            digest: r.inputs_digest.clone(),
            formula: r.formula.clone(),
            value: format_rational(&r.value),
            denominator: r.denominator().to_string(),
            is_integer: r.is_integer,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cp, hypersurface};
    use crate::rational::{rat, rat_i64};
    use crate::ring::CohClass;

    fn trivial_line(m: &ManifoldModel) -> CharData {
        CharData::trivial(m.ring(), 1)
    }

    #[test]
    fn dirac_cp2_is_minus_one_eighth() {
        let m = cp(2);
        let r = dirac_index(&m, &trivial_line(&m)).unwrap();
        assert_eq!(r.value, rat(-1, 8));
        assert!(!r.is_integer);
        assert_eq!(r.formula, "dirac");
    }

    #[test]
    fn dirac_cp4_is_three_over_128() {
        let m = cp(4);
        let r = dirac_index(&m, &trivial_line(&m)).unwrap();
        assert_eq!(r.value, rat(3, 128));
    }

    #[test]
    fn dirac_on_sphere_twisted_by_degree_k() {
        // On CP^1, A-hat = 1 so the Dirac index is the degree of the line
        // bundle (exact ring evaluation).
        let m = cp(1);
        for k in -3i64..=3 {
            let c1 = CohClass::generator(m.ring(), "x", rat_i64(k)).unwrap();
            let e = CharData::line(c1).unwrap();
            let r = dirac_index(&m, &e).unwrap();
            assert_eq!(r.value, rat_i64(k));
        }
    }

    #[test]
    fn dirac_is_additive_in_the_bundle() {
        let m = cp(2);
        let a = CharData::line(CohClass::generator(m.ring(), "x", rat_i64(2)).unwrap()).unwrap();
        let b = CharData::line(CohClass::generator(m.ring(), "x", rat_i64(-1)).unwrap()).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let lhs = dirac_index(&m, &sum).unwrap().value;
        let rhs = dirac_index(&m, &a).unwrap().value + dirac_index(&m, &b).unwrap().value;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_mismatch_reported() {
        let m = cp(2);
        let other = cp(3);
        let e = trivial_line(&other);
        assert!(matches!(
            dirac_index(&m, &e),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn spinc_with_anticanonical_half_twist_gives_todd_genus() {
        let m = cp(2);
        let twist = TwistSpec::new(
            Some(CohClass::generator(m.ring(), "x", rat_i64(3)).unwrap()),
            None,
            1,
        )
        .unwrap();
        let r = spinc_index(&m, &trivial_line(&m), &twist).unwrap();
        assert_eq!(r.value, rat_i64(1));
    }

    #[test]
    fn spinc_with_trivial_twist_is_dirac() {
        for m in [cp(2), cp(3), hypersurface(1, 4)] {
            let e = trivial_line(&m);
            let d = dirac_index(&m, &e).unwrap();
            let s = spinc_index(&m, &e, &TwistSpec::none()).unwrap();
            assert_eq!(d.value, s.value);
        }
    }

    #[test]
    fn spinc_nth_root_twist_is_fractional() {
        // CP^1, trivial E, L with c1 = x and N = 2: integral of 1 + x/2 is 1/2
        let m = cp(1);
        let twist = TwistSpec::new(
            None,
            Some(CohClass::generator(m.ring(), "x", rat_i64(1)).unwrap()),
            2,
        )
        .unwrap();
        let r = spinc_index(&m, &trivial_line(&m), &twist).unwrap();
        assert_eq!(r.value, rat(1, 2));
        assert!(!r.is_integer);
    }

    #[test]
    fn zero_root_order_rejected() {
        assert!(matches!(
            TwistSpec::new(None, None, 0),
            Err(Error::ZeroRootOrder)
        ));
    }

    #[test]
    fn dolbeault_examples() {
        assert_eq!(dolbeault_index(&cp(1)).unwrap().value, rat_i64(1));
        assert_eq!(dolbeault_index(&cp(2)).unwrap().value, rat_i64(1));
        assert_eq!(dolbeault_index(&hypersurface(1, 4)).unwrap().value, rat_i64(2));
    }

    #[test]
    fn dolbeault_rejects_non_complex() {
        let hop = crate::catalog::hopkins_surgery();
        assert!(matches!(
            dolbeault_index(&hop),
            Err(Error::NotComplex(_))
        ));
    }

    #[test]
    fn fractionality_rows() {
        let m2 = cp(2);
        let k3 = hypersurface(1, 4);
        let rows = fractionality_report(&[
            dirac_index(&m2, &trivial_line(&m2)).unwrap(),
            dirac_index(&k3, &trivial_line(&k3)).unwrap(),
        ]);
        assert_eq!(rows[0].denominator, "8");
        assert!(!rows[0].is_integer);
        assert_eq!(rows[1].denominator, "1");
        assert!(rows[1].is_integer);
        assert!(fractionality_report(&[]).is_empty());
    }
}
