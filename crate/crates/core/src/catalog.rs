//! Ready-made manifold models (CP^n, hypersurfaces, products, cobordism
//! records) and the JSON document format for user-defined models.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genera::{CharData, CharMode};
use crate::rational::{format_rational, parse_rational, rat_i64, Rational};
use crate::ring::{CohClass, Generator, Monomial, RingModel};

/// Default cap on the basis size of product rings.
pub const PRODUCT_BASIS_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct ManifoldModel {
    label: String,
    real_dimension: u32,
    ring: Arc<RingModel>,
    tangent: CharData,
    is_complex: bool,
    /// For complex models: true iff every coefficient of c1 in the integral
    /// basis is even (the spin test). Absent for non-complex models.
    c1_parity_even: Option<bool>,
    annotations: BTreeMap<String, String>,
}

impl ManifoldModel {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn real_dimension(&self) -> u32 {
        self.real_dimension
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn tangent(&self) -> &CharData {
        &self.tangent
    }

    pub fn is_complex(&self) -> bool {
        self.is_complex
    }

    pub fn c1_parity_even(&self) -> Option<bool> {
        self.c1_parity_even
    }

    pub fn annotations(&self) -> &BTreeMap<String, String> {
        &self.annotations
    }

    /// c1 of the tangent bundle (zero class for non-complex models).
    pub fn c1(&self) -> CohClass {
        if self.is_complex {
            self.tangent.c1()
        } else {
            CohClass::zero(&self.ring)
        }
    }
}

fn c1_parity(c1: &CohClass) -> bool {
    c1.coeffs().iter().all(|c| {
        c.is_zero() || (c.denom() == &num_bigint::BigInt::from(1) && c.numer().is_even())
    })
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = rat_i64(1);
    for i in 0..k {
        acc = acc * rat_i64((n - i) as i64) / rat_i64((i + 1) as i64);
    }
    acc
}

/// Complex projective space CP^n: ring Q[x]/(x^{n+1}) with integral of x^n
/// equal to 1, tangent total Chern class (1+x)^{n+1}, c1 = (n+1)x.
pub fn cp(n: u32) -> ManifoldModel {
    assert!(n >= 1);
    let ring = RingModel::truncated_polynomial(
        format!("CP^{n}"),
        vec![Generator {
            name: "x".into(),
            degree: 2,
        }],
        vec![n],
        2 * n,
        &[(Monomial(vec![n]), rat_i64(1))],
    )
    .expect("CP^n model is well formed");
    let x = CohClass::generator(&ring, "x", rat_i64(1)).expect("x exists");
    let classes: Vec<CohClass> = (1..=n)
        .map(|i| x.pow(i).expect("in ring").scale(&binomial(n + 1, i)))
        .collect();
    let tangent = CharData::chern(&ring, n, classes).expect("tangent classes homogeneous");
    let parity = c1_parity(&tangent.c1());
    ManifoldModel {
        label: format!("CP^{n}"),
        real_dimension: 2 * n,
        ring,
        tangent,
        is_complex: true,
        c1_parity_even: Some(parity),
        annotations: BTreeMap::new(),
    }
}

/// A point (real dimension 0); the unit of `product`.
pub fn point() -> ManifoldModel {
    let ring = RingModel::truncated_polynomial(
        "point",
        Vec::new(),
        Vec::new(),
        0,
        &[(Monomial(Vec::new()), rat_i64(1))],
    )
    .expect("point model is well formed");
    let tangent = CharData::trivial(&ring, 0);
    ManifoldModel {
        label: "point".into(),
        real_dimension: 0,
        ring,
        tangent,
        is_complex: true,
        c1_parity_even: Some(true),
        annotations: BTreeMap::new(),
    }
}

/// Smooth degree-d hypersurface V^{2n}(d) in CP^{2n+1} (complex dimension
/// 2n). Ring Q[h]/(h^{2n+1}) with integral of h^{2n} equal to d; tangent
/// total Chern class (1+h)^{2n+2}/(1+dh) by exact truncated division;
/// c1 = (2n+2-d)h. The c1-parity (spin) flag is even iff d is even.
pub fn hypersurface(n: u32, d: u32) -> ManifoldModel {
    assert!(n >= 1 && d >= 1);
    let cx_dim = 2 * n;
    let ring = RingModel::truncated_polynomial(
        format!("V^{}({d})", cx_dim),
        vec![Generator {
            name: "h".into(),
            degree: 2,
        }],
        vec![cx_dim],
        2 * cx_dim,
        &[(Monomial(vec![cx_dim]), rat_i64(d as i64))],
    )
    .expect("hypersurface model is well formed");
    let h = CohClass::generator(&ring, "h", rat_i64(1)).expect("h exists");

    // (1+h)^{2n+2}
    let mut numer = CohClass::one(&ring);
    for i in 1..=cx_dim {
        let c = binomial(cx_dim + 2, i);
        numer = numer.add(&h.pow(i).expect("in ring").scale(&c)).expect("same ring");
    }
    // (1+dh)^{-1} = sum (-d)^k h^k
    let mut inv = CohClass::one(&ring);
    let mut coeff = rat_i64(1);
    for i in 1..=cx_dim {
        coeff = coeff * rat_i64(-(d as i64));
        inv = inv.add(&h.pow(i).expect("in ring").scale(&coeff)).expect("same ring");
    }
    let total = numer.mul(&inv).expect("same ring");
    let classes: Vec<CohClass> = (1..=cx_dim).map(|i| total.component(2 * i)).collect();
    let tangent = CharData::chern(&ring, cx_dim, classes).expect("tangent classes homogeneous");
    let parity = c1_parity(&tangent.c1());
    ManifoldModel {
        label: format!("V^{}({d})", cx_dim),
        real_dimension: 2 * cx_dim,
        ring,
        tangent,
        is_complex: true,
        c1_parity_even: Some(parity),
        annotations: BTreeMap::new(),
    }
}

/// Kuenneth product model: tensor ring, Whitney-sum tangent data,
/// multiplied fundamental pairings.
pub fn product(m1: &ManifoldModel, m2: &ManifoldModel) -> Result<ManifoldModel> {
    if !m1.is_complex || !m2.is_complex {
        return Err(Error::NotComplex(
            if m1.is_complex { &m2.label } else { &m1.label }.clone(),
        ));
    }
    let ring = RingModel::tensor(&m1.ring, &m2.ring, PRODUCT_BASIS_CAP)?;
    let t1 = pull_back(&m1.tangent, &m1.ring, &m2.ring, &ring, true)?;
    let t2 = pull_back(&m2.tangent, &m1.ring, &m2.ring, &ring, false)?;
    let tangent = t1.direct_sum(&t2)?;
    let parity = c1_parity(&tangent.c1());
    Ok(ManifoldModel {
        label: format!("{} x {}", m1.label, m2.label),
        real_dimension: m1.real_dimension + m2.real_dimension,
        ring,
        tangent,
        is_complex: true,
        c1_parity_even: Some(parity),
        annotations: BTreeMap::new(),
    })
}

/// Map characteristic data of one factor into the tensor ring.
fn pull_back(
    data: &CharData,
    left: &Arc<RingModel>,
    right: &Arc<RingModel>,
    tensor: &Arc<RingModel>,
    from_left: bool,
) -> Result<CharData> {
    let map_class = |c: &CohClass| -> CohClass {
        let mut out = CohClass::zero(tensor);
        for (i, coeff) in c.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let k = if from_left {
                i * right.basis().len()
            } else {
                i
            };
            out = out
                .add(&CohClass::basis_element(tensor, k, coeff.clone()))
                .expect("same ring");
        }
        out
    };
    let _ = left;
    let classes = data.classes().iter().map(map_class).collect();
    CharData::chern(tensor, data.rank(), classes)
}

/// A manifold known only through cobordism: it reuses the reference model's
/// characteristic numbers (hence its A-hat integral) under a new label, with
/// the spin flag cleared and the given annotations attached as metadata.
pub fn cobordism_record(
    label: impl Into<String>,
    reference: &ManifoldModel,
    annotations: BTreeMap<String, String>,
) -> ManifoldModel {
    let mut notes = annotations;
    notes.insert("cobordant_to".into(), reference.label.clone());
    ManifoldModel {
        label: label.into(),
        real_dimension: reference.real_dimension,
        ring: reference.ring.clone(),
        tangent: reference.tangent.clone(),
        is_complex: false,
        c1_parity_even: None,
        annotations: notes,
    }
}

/// The surgery example: oriented-cobordant to CP^4, not spin, H^2(Z;Z)=0 and
/// W_3(Z) != 0 recorded as unverified annotations only.
pub fn hopkins_surgery() -> ManifoldModel {
    let mut notes = BTreeMap::new();
    notes.insert("w2".into(), "nonzero (not spin)".into());
    notes.insert("H^2(Z;Z)".into(), "0 (unverified annotation)".into());
    notes.insert("W_3".into(), "nonzero (unverified annotation)".into());
    cobordism_record("Hopkins-surgery", &cp(4), notes)
}

// ---------------------------------------------------------------------------
// JSON document format
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TangentDoc {
    pub mode: String,
    #[serde(default)]
    pub rank: Option<u32>,
    pub classes: Vec<BTreeMap<String, String>>,
}

/// On-disk manifold document. Rationals are `"p/q"` strings; products and
/// pairing are keyed by monomial strings like `"x^2*y"`. Unit products are
/// implied and symmetric pairs may be listed once.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifoldDoc {
    pub label: String,
    pub real_dimension: u32,
    pub generators: Vec<GeneratorDoc>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: BTreeMap<String, BTreeMap<String, String>>,
    pub pairing: BTreeMap<String, String>,
    pub tangent: TangentDoc,
    pub complex: bool,
    #[serde(default)]
    pub annotations: BTreeMap<String, String>,
}

fn parse_monomial(s: &str, generators: &[Generator]) -> Result<Monomial> {
    let s = s.trim();
    let mut exps = vec![0u32; generators.len()];
    if s == "1" {
        return Ok(Monomial(exps));
    }
    for part in s.split('*') {
        let part = part.trim();
        let (name, exp) = match part.split_once('^') {
            None => (part, 1u32),
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad exponent in monomial `{s}`")))?,
            ),
        };
        let idx = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Schema(format!("unknown generator `{name}` in monomial `{s}`")))?;
        exps[idx] += exp;
    }
    Ok(Monomial(exps))
}

/// Parse a class given as monomial -> "p/q" against a ring's basis.
pub fn parse_class(
    doc: &BTreeMap<String, String>,
    ring: &Arc<RingModel>,
) -> Result<CohClass> {
    let mut out = CohClass::zero(ring);
    for (mono, coeff) in doc {
        let m = parse_monomial(mono, ring.generators())?;
        let idx = ring
            .basis_index(&m)
            .ok_or_else(|| Error::Schema(format!("class monomial `{mono}` not in basis")))?;
        out = out
            .add(&CohClass::basis_element(ring, idx, parse_rational(coeff)?))
            .expect("same ring");
    }
    Ok(out)
}

/// Validate a document and build the model. Every structural invariant is
/// checked (even degrees, degree additivity, truncation, associativity,
/// nonzero pairing); violations carry distinct diagnostics.
pub fn load_manifold(doc: &ManifoldDoc) -> Result<ManifoldModel> {
    if doc.real_dimension % 2 != 0 {
        return Err(Error::Schema(format!(
            "real_dimension {} is odd",
            doc.real_dimension
        )));
    }
    let generators: Vec<Generator> = doc
        .generators
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect();
    let basis: Vec<Monomial> = doc
        .basis
        .iter()
        .map(|s| parse_monomial(s, &generators))
        .collect::<Result<_>>()?;
    let n = basis.len();
    let index_of = |m: &Monomial| basis.iter().position(|b| b == m);

    let mut products = vec![vec![Vec::new(); n]; n];
    // unit row/column is implied
    for i in 0..n {
        products[0][i] = vec![(i, rat_i64(1))];
        products[i][0] = vec![(i, rat_i64(1))];
    }
    for (key, expansion) in &doc.products {
        let (lhs, rhs) = key
            .split_once('*')
            .ok_or_else(|| Error::Schema(format!("product key `{key}` is not of the form m1*m2")))?;
        // a product key may itself use powers, e.g. "x^2*x"; re-split at the
        // top-level '*' only works for single-factor monomials, so parse both
        // sides as monomials directly.
        let lm = parse_monomial(lhs, &generators)?;
        let rm = parse_monomial(rhs, &generators)?;
        let i = index_of(&lm)
            .ok_or_else(|| Error::Schema(format!("product key `{key}`: left factor not in basis")))?;
        let j = index_of(&rm)
            .ok_or_else(|| Error::Schema(format!("product key `{key}`: right factor not in basis")))?;
        let mut comb = Vec::new();
        for (mono, coeff) in expansion {
            let m = parse_monomial(mono, &generators)?;
            let k = index_of(&m).ok_or_else(|| {
                Error::Schema(format!("product `{key}` expands over `{mono}` not in basis"))
            })?;
            comb.push((k, parse_rational(coeff)?));
        }
        products[i][j] = comb.clone();
        products[j][i] = comb;
    }
    let mut pairing = vec![Rational::zero(); n];
    for (mono, coeff) in &doc.pairing {
        let m = parse_monomial(mono, &generators)?;
        let k = index_of(&m)
            .ok_or_else(|| Error::Schema(format!("pairing monomial `{mono}` not in basis")))?;
        pairing[k] = parse_rational(coeff)?;
    }
    let ring = RingModel::from_table(
        doc.label.clone(),
        generators,
        basis,
        doc.real_dimension,
        products,
        pairing,
    )?;

    let mode = match doc.tangent.mode.as_str() {
        "chern" => CharMode::Chern,
        "pontryagin" => CharMode::Pontryagin,
        other => {
            return Err(Error::Schema(format!(
                "tangent mode `{other}` (expected chern or pontryagin)"
            )))
        }
    };
    let rank = doc.tangent.rank.unwrap_or(match mode {
        CharMode::Chern => doc.real_dimension / 2,
        CharMode::Pontryagin => doc.real_dimension,
    });
    let classes: Vec<CohClass> = doc
        .tangent
        .classes
        .iter()
        .map(|c| parse_class(c, &ring))
        .collect::<Result<_>>()?;
    let tangent = match mode {
        CharMode::Chern => CharData::chern(&ring, rank, classes)?,
        CharMode::Pontryagin => CharData::pontryagin(&ring, rank, classes)?,
    };
    if doc.complex && mode != CharMode::Chern {
        return Err(Error::Schema(
            "complex models must carry Chern-mode tangent data".into(),
        ));
    }
    let parity = if doc.complex {
        Some(c1_parity(&tangent.c1()))
    } else {
        None
    };
    Ok(ManifoldModel {
        label: doc.label.clone(),
        real_dimension: doc.real_dimension,
        ring,
        tangent,
        is_complex: doc.complex,
        c1_parity_even: parity,
        annotations: doc.annotations.clone(),
    })
}

/// Serialize a model back to the document format (lossless for rationals).
pub fn to_document(m: &ManifoldModel) -> ManifoldDoc {
    let ring = &m.ring;
    let basis: Vec<String> = (0..ring.basis().len())
        .map(|i| ring.monomial_name(i))
        .collect();
    let mut products = BTreeMap::new();
    for i in 1..ring.basis().len() {
        for j in i..ring.basis().len() {
            let comb = ring_product(ring, i, j);
            if comb.is_empty() {
                continue;
            }
            let key = format!("{}*{}", ring.monomial_name(i), ring.monomial_name(j));
            let expansion: BTreeMap<String, String> = comb
                .into_iter()
                .map(|(k, c)| (ring.monomial_name(k), format_rational(&c)))
                .collect();
            products.insert(key, expansion);
        }
    }
    let pairing: BTreeMap<String, String> = ring
        .pairing()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (ring.monomial_name(i), format_rational(c)))
        .collect();
    let classes = m
        .tangent
        .classes()
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (ring.monomial_name(i), format_rational(v)))
                .collect()
        })
        .collect();
    ManifoldDoc {
        label: m.label.clone(),
        real_dimension: m.real_dimension,
        generators: ring
            .generators()
            .iter()
            .map(|g| GeneratorDoc {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        basis,
        products,
        pairing,
        tangent: TangentDoc {
            mode: match m.tangent.mode() {
                CharMode::Chern => "chern".into(),
                CharMode::Pontryagin => "pontryagin".into(),
            },
            rank: Some(m.tangent.rank()),
            classes,
        },
        complex: m.is_complex,
        annotations: m.annotations.clone(),
    }
}

fn ring_product(ring: &Arc<RingModel>, i: usize, j: usize) -> Vec<(usize, Rational)> {
    let a = CohClass::basis_element(ring, i, rat_i64(1));
    let b = CohClass::basis_element(ring, j, rat_i64(1));
    let p = a.mul(&b).expect("same ring");
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// On-disk bundle document: rank plus Chern (or Pontryagin) classes keyed by
/// monomials of a host ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleDoc {
    pub rank: u32,
    #[serde(default = "default_chern")]
    pub mode: String,
    pub classes: Vec<BTreeMap<String, String>>,
}

fn default_chern() -> String {
    "chern".into()
}

/// Resolve a bundle document against a manifold's ring.
pub fn load_bundle(doc: &BundleDoc, ring: &Arc<RingModel>) -> Result<CharData> {
    let classes: Vec<CohClass> = doc
        .classes
        .iter()
        .map(|c| parse_class(c, ring))
        .collect::<Result<_>>()?;
    match doc.mode.as_str() {
        "chern" => CharData::chern(ring, doc.rank, classes),
        "pontryagin" => CharData::pontryagin(ring, doc.rank, classes),
        other => Err(Error::Schema(format!(
            "bundle mode `{other}` (expected chern or pontryagin)"
        ))),
    }
}

pub fn load_manifold_json(json: &str) -> Result<ManifoldModel> {
    let doc: ManifoldDoc =
        serde_json::from_str(json).map_err(|e| Error::Schema(format!("JSON parse: {e}")))?;
    load_manifold(&doc)
}

/// Resolve a built-in model name: `cpN`, `vD_d` (V^D(d), D even), `k3`,
/// `quintic4`, `hopkins`, `point`.
pub fn builtin(name: &str) -> Option<ManifoldModel> {
    let name = name.to_ascii_lowercase();
    if let Some(n) = name.strip_prefix("cp") {
        if let Ok(n) = n.parse::<u32>() {
            if (1..=8).contains(&n) {
                return Some(cp(n));
            }
        }
        return None;
    }
    if let Some(rest) = name.strip_prefix('v') {
        if let Some((dim, deg)) = rest.split_once('_') {
            if let (Ok(dim), Ok(deg)) = (dim.parse::<u32>(), deg.parse::<u32>()) {
                if dim >= 2 && dim % 2 == 0 && deg >= 1 {
                    return Some(hypersurface(dim / 2, deg));
                }
            }
        }
        return None;
    }
    match name.as_str() {
        "k3" => Some(hypersurface(1, 4)),
        "quintic4" => Some(hypersurface(2, 5)),
        "hopkins" => Some(hopkins_surgery()),
        "point" => Some(point()),
        _ => None,
    }
}

/// Names shown by `catalog list`, with one-line descriptions.
pub fn builtin_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("cp1 .. cp8", "complex projective spaces CP^n"),
        ("v<2n>_<d>", "degree-d hypersurface V^{2n}(d) in CP^{2n+1}, e.g. v4_5"),
        ("k3", "quartic surface in CP^3 (alias of v2_4)"),
        ("quintic4", "quintic fourfold in CP^5 (alias of v4_5)"),
        ("hopkins", "surgery example, cobordism record of CP^4"),
        ("point", "the one-point model (unit of products)"),
    ]
}
