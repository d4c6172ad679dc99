//! Truncated graded-commutative ring models of rational cohomology.
//!
//! A `RingModel` is a finite monomial basis with a precomputed product table
//! and a fundamental-class pairing on the top degree. All tracked classes have
//! even degree, so the graded product is plain commutative. Products landing
//! above `top_degree` are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Exponent vector over the ring's generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(n_gens: usize) -> Self {
        Monomial(vec![0; n_gens])
    }

    pub fn degree(&self, generators: &[Generator]) -> u32 {
        self.0
            .iter()
            .zip(generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Even positive topological degree (c1 has degree 2).
    pub degree: u32,
}

/// Linear combination of basis monomials, by basis index.
pub type Combination = Vec<(usize, Rational)>;

#[derive(Debug)]
pub struct RingModel {
    label: String,
    generators: Vec<Generator>,
    basis: Vec<Monomial>,
    degrees: Vec<u32>,
    index_of: HashMap<Monomial, usize>,
    top_degree: u32,
    /// `products[i][j]` = expansion of basis[i] * basis[j].
    products: Vec<Vec<Combination>>,
    /// Fundamental-class pairing; nonzero only on top-degree monomials.
    pairing: Vec<Rational>,
}

impl PartialEq for RingModel {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.basis == other.basis
            && self.top_degree == other.top_degree
            && self.products == other.products
            && self.pairing == other.pairing
    }
}

impl RingModel {
    /// Free truncated model: basis is every monomial with per-generator
    /// exponent caps and total degree <= `top_degree`; products are exponent
    /// addition, zero past a cap or past the top degree. Covers every catalog
    /// ring (CP^n, hypersurfaces, Kuenneth products).
    ///
    /// `pairing` assigns the fundamental-class value of each top-degree
    /// monomial, keyed by exponent vector.
    pub fn truncated_polynomial(
        label: impl Into<String>,
        generators: Vec<Generator>,
        exponent_caps: Vec<u32>,
        top_degree: u32,
        pairing: &[(Monomial, Rational)],
    ) -> Result<Arc<Self>> {
        assert_eq!(generators.len(), exponent_caps.len());
        for g in &generators {
            if g.degree == 0 || g.degree % 2 != 0 {
                return Err(Error::Schema(format!(
                    "generator `{}` has degree {}, must be even and positive",
                    g.name, g.degree
                )));
            }
        }
        let mut basis = Vec::new();
        let mut cur = vec![0u32; generators.len()];
        loop {
            let m = Monomial(cur.clone());
            if m.degree(&generators) <= top_degree {
                basis.push(m);
            }
            // odometer over capped exponents
            let mut pos = 0;
            loop {
                if pos == cur.len() {
                    break;
                }
                cur[pos] += 1;
                if cur[pos] <= exponent_caps[pos] {
                    break;
                }
                cur[pos] = 0;
                pos += 1;
            }
            if pos == cur.len() {
                break;
            }
        }
        basis.sort_by_key(|m| (m.degree(&generators), m.0.clone()));

        let degrees: Vec<u32> = basis.iter().map(|m| m.degree(&generators)).collect();
        let index_of: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        let mut products = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let sum: Vec<u32> = basis[i]
                    .0
                    .iter()
                    .zip(&basis[j].0)
                    .map(|(a, b)| a + b)
                    .collect();
                if let Some(&k) = index_of.get(&Monomial(sum)) {
                    products[i][j] = vec![(k, Rational::from_integer(1.into()))];
                }
            }
        }

        let mut pair = vec![Rational::zero(); basis.len()];
        for (m, v) in pairing {
            let k = index_of
                .get(m)
                .copied()
                .ok_or_else(|| Error::Schema(format!("pairing monomial {:?} not in basis", m.0)))?;
            pair[k] = v.clone();
        }

        let ring = Arc::new(RingModel {
            label: label.into(),
            generators,
            basis,
            degrees,
            index_of,
            top_degree,
            products,
            pairing: pair,
        });
        ring.validate()?;
        Ok(ring)
    }

    /// Model from an explicit product table (user documents go through here).
    pub fn from_table(
        label: impl Into<String>,
        generators: Vec<Generator>,
        basis: Vec<Monomial>,
        top_degree: u32,
        products: Vec<Vec<Combination>>,
        pairing: Vec<Rational>,
    ) -> Result<Arc<Self>> {
        let degrees: Vec<u32> = basis.iter().map(|m| m.degree(&generators)).collect();
        let index_of = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let ring = Arc::new(RingModel {
            label: label.into(),
            generators,
            basis,
            degrees,
            index_of,
            top_degree,
            products,
            pairing,
        });
        ring.validate()?;
        Ok(ring)
    }

    /// Kuenneth tensor product of two models. Generators are concatenated
    /// (second factor's names get a prime on collision), the basis is all
    /// pairs, products act componentwise and the pairing multiplies.
    pub fn tensor(a: &Arc<RingModel>, b: &Arc<RingModel>, basis_cap: usize) -> Result<Arc<Self>> {
        let n = a.basis.len() * b.basis.len();
        if n > basis_cap {
            return Err(Error::BasisOverflow(n, basis_cap));
        }
        let mut generators = a.generators.clone();
        for g in &b.generators {
            let mut name = g.name.clone();
            while generators.iter().any(|h| h.name == name) {
                name.push('\'');
            }
            generators.push(Generator {
                name,
                degree: g.degree,
            });
        }
        let pair_index = |i: usize, j: usize| i * b.basis.len() + j;
        let mut basis = Vec::with_capacity(n);
        for ma in &a.basis {
            for mb in &b.basis {
                let mut exps = ma.0.clone();
                exps.extend_from_slice(&mb.0);
                basis.push(Monomial(exps));
            }
        }
        let mut products = vec![vec![Vec::new(); n]; n];
        for i1 in 0..a.basis.len() {
            for j1 in 0..b.basis.len() {
                for i2 in 0..a.basis.len() {
                    for j2 in 0..b.basis.len() {
                        let mut comb = Vec::new();
                        for (ka, ca) in &a.products[i1][i2] {
                            for (kb, cb) in &b.products[j1][j2] {
                                comb.push((pair_index(*ka, *kb), ca * cb));
                            }
                        }
                        products[pair_index(i1, j1)][pair_index(i2, j2)] = comb;
                    }
                }
            }
        }
        let mut pairing = vec![Rational::zero(); n];
        for (i, pa) in a.pairing.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (j, pb) in b.pairing.iter().enumerate() {
                if pb.is_zero() {
                    continue;
                }
                pairing[pair_index(i, j)] = pa * pb;
            }
        }
        let degrees: Vec<u32> = basis.iter().map(|m| m.degree(&generators)).collect();
        let index_of = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let ring = Arc::new(RingModel {
            label: format!("{} x {}", a.label, b.label),
            generators,
            basis,
            degrees,
            index_of,
            top_degree: a.top_degree + b.top_degree,
            products,
            pairing,
        });
        ring.validate()?;
        Ok(ring)
    }

    /// Structural invariants: even degrees, degree-additive-or-zero products,
    /// commutativity and associativity on the basis, truncation above top
    /// degree, pairing supported (and nonzero somewhere) in the top degree.
    pub fn validate(&self) -> Result<()> {
        if self.top_degree % 2 != 0 {
            return Err(Error::Schema(format!(
                "top degree {} is odd",
                self.top_degree
            )));
        }
        for g in &self.generators {
            if g.degree == 0 || g.degree % 2 != 0 {
                return Err(Error::Schema(format!(
                    "generator `{}` has odd or zero degree {}",
                    g.name, g.degree
                )));
            }
        }
        let n = self.basis.len();
        if self.index_of.get(&Monomial::unit(self.generators.len())) != Some(&0) {
            return Err(Error::Schema("basis must start with the unit monomial 1".into()));
        }
        for i in 0..n {
            if self.degrees[i] > self.top_degree {
                return Err(Error::Schema(format!(
                    "basis monomial {} has degree {} above top degree {}",
                    self.monomial_name(i),
                    self.degrees[i],
                    self.top_degree
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expect = self.degrees[i] + self.degrees[j];
                for (k, c) in &self.products[i][j] {
                    if c.is_zero() {
                        continue;
                    }
                    if self.degrees[*k] != expect {
                        return Err(Error::Schema(format!(
                            "product {}*{} is not degree-additive",
                            self.monomial_name(i),
                            self.monomial_name(j)
                        )));
                    }
                }
                if expect > self.top_degree && !self.products[i][j].is_empty() {
                    return Err(Error::Schema(format!(
                        "product {}*{} must vanish above the top degree",
                        self.monomial_name(i),
                        self.monomial_name(j)
                    )));
                }
                if combination_normal(&self.products[i][j]) != combination_normal(&self.products[j][i]) {
                    return Err(Error::Schema(format!(
                        "product table is not commutative at {}*{}",
                        self.monomial_name(i),
                        self.monomial_name(j)
                    )));
                }
            }
        }
        // associativity on basis triples
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul_combination(&self.products[i][j], k);
                    let rhs = self.mul_combination_left(i, &self.products[j][k]);
                    if combination_normal(&lhs) != combination_normal(&rhs) {
                        return Err(Error::Schema(format!(
                            "product table not associative at ({},{},{})",
                            self.monomial_name(i),
                            self.monomial_name(j),
                            self.monomial_name(k)
                        )));
                    }
                }
            }
        }
        let top_ok = self
            .pairing
            .iter()
            .enumerate()
            .all(|(i, v)| v.is_zero() || self.degrees[i] == self.top_degree);
        if !top_ok {
            return Err(Error::Schema(
                "pairing must be supported on the top degree".into(),
            ));
        }
        if self.pairing.iter().all(|v| v.is_zero()) {
            return Err(Error::Schema(
                "fundamental pairing vanishes identically on the top degree".into(),
            ));
        }
        Ok(())
    }

    fn mul_combination(&self, c: &Combination, k: usize) -> Combination {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (b, coeff) in c {
            for (t, c2) in &self.products[*b][k] {
                *out.entry(*t).or_insert_with(Rational::zero) += coeff * c2;
            }
        }
        out.into_iter().collect()
    }

    fn mul_combination_left(&self, i: usize, c: &Combination) -> Combination {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (b, coeff) in c {
            for (t, c2) in &self.products[i][*b] {
                *out.entry(*t).or_insert_with(Rational::zero) += coeff * c2;
            }
        }
        out.into_iter().collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn pairing(&self) -> &[Rational] {
        &self.pairing
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index_of.get(m).copied()
    }

    /// Human-readable monomial, e.g. `1`, `x`, `x^2*y`.
    pub fn monomial_name(&self, i: usize) -> String {
        let m = &self.basis[i];
        let mut parts = Vec::new();
        for (e, g) in m.0.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn combination_normal(c: &Combination) -> BTreeMap<usize, Rational> {
    let mut out = BTreeMap::new();
    for (k, v) in c {
        if !v.is_zero() {
            *out.entry(*k).or_insert_with(Rational::zero) += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// An even-degree cohomology class in a `RingModel`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    ring: Arc<RingModel>,
    coeffs: Vec<Rational>,
}

impl CohClass {
    pub fn zero(ring: &Arc<RingModel>) -> Self {
        CohClass {
            ring: ring.clone(),
            coeffs: vec![Rational::zero(); ring.basis.len()],
        }
    }

    pub fn one(ring: &Arc<RingModel>) -> Self {
        Self::constant(ring, Rational::from_integer(1.into()))
    }

    pub fn constant(ring: &Arc<RingModel>, c: Rational) -> Self {
        let mut z = Self::zero(ring);
        z.coeffs[0] = c;
        z
    }

    /// Class `c * basis[i]`.
    pub fn basis_element(ring: &Arc<RingModel>, i: usize, c: Rational) -> Self {
        let mut z = Self::zero(ring);
        z.coeffs[i] = c;
        z
    }

    /// Class `c * g` for the named generator.
    pub fn generator(ring: &Arc<RingModel>, name: &str, c: Rational) -> Result<Self> {
        let pos = ring
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Schema(format!("no generator named `{name}`")))?;
        let mut exps = vec![0u32; ring.generators.len()];
        exps[pos] = 1;
        let idx = ring
            .basis_index(&Monomial(exps))
            .ok_or_else(|| Error::Schema(format!("generator `{name}` not in basis")))?;
        Ok(Self::basis_element(ring, idx, c))
    }

    pub fn from_coeffs(ring: &Arc<RingModel>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), ring.basis.len());
        CohClass {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Homogeneous components, degree -> coefficient vector over that
    /// degree's basis monomials (basis order).
    pub fn components(&self) -> BTreeMap<u32, Vec<Rational>> {
        let mut out: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.entry(self.ring.degrees[i])
                .or_default()
                .push(c.clone());
        }
        out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        out
    }

    /// Projection onto one homogeneous degree.
    pub fn component(&self, degree: u32) -> CohClass {
        let mut z = Self::zero(&self.ring);
        for i in 0..self.coeffs.len() {
            if self.ring.degrees[i] == degree {
                z.coeffs[i] = self.coeffs[i].clone();
            }
        }
        z
    }

    pub fn degree_zero_part(&self) -> Rational {
        self.coeffs[0].clone()
    }

    fn same_ring(&self, other: &CohClass) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.label.clone(),
                right: other.ring.label.clone(),
            })
        }
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CohClass {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CohClass {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> CohClass {
        CohClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Graded product, truncated above the top degree.
    pub fn mul(&self, other: &CohClass) -> Result<CohClass> {
        self.same_ring(other)?;
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.ring.products[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(CohClass {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    pub fn pow(&self, n: u32) -> Result<CohClass> {
        let mut acc = CohClass::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(a) = sum a^k / k!`, finite by nilpotency of positive-degree
    /// classes. The degree-0 part of `a` must vanish.
    pub fn exp(&self) -> Result<CohClass> {
        if !self.degree_zero_part().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = CohClass::one(&self.ring);
        let mut power = CohClass::one(&self.ring);
        let max_k = self.ring.top_degree / 2; // minimal positive degree is 2
        for k in 1..=max_k {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&factorial(k).recip()))?;
        }
        Ok(acc)
    }

    /// Fundamental-class pairing of the top-degree component.
    pub fn integrate(&self) -> Rational {
        self.coeffs
            .iter()
            .zip(&self.ring.pairing)
            .map(|(c, p)| c * p)
            .sum()
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, self.ring.monomial_name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
