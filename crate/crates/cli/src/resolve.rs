//! Resolution of command-line specs: manifold names or JSON paths, bundle
//! and twist mini-grammars, and lab symbols (expression or Fourier-table
//! JSON).

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use fracindex::catalog::{builtin, load_bundle, load_manifold_json, parse_class, BundleDoc};
use fracindex::genera::CharData;
use fracindex::lab::{parse_symbol_expr, LabSymbol, SymbolDoc};
use fracindex::rational::parse_rational;
use fracindex::ring::CohClass;
use fracindex::{ManifoldModel, TwistSpec};

pub fn manifold(spec: &str) -> Result<ManifoldModel> {
    if let Some(m) = builtin(spec) {
        return Ok(m);
    }
    if Path::new(spec).exists() {
        let json = std::fs::read_to_string(spec)
            .with_context(|| format!("reading manifold file `{spec}`"))?;
        return Ok(load_manifold_json(&json)?);
    }
    bail!("`{spec}` is neither a built-in manifold name nor an existing file");
}

/// First degree-2 generator of the ring, scaled; the `line:` grammar pins
/// classes to it.
fn degree_two_class(m: &ManifoldModel, coeff: &str) -> Result<CohClass> {
    let gen = m
        .ring()
        .generators()
        .iter()
        .find(|g| g.degree == 2)
        .ok_or_else(|| anyhow!("manifold {} has no degree-2 generator", m.label()))?;
    Ok(CohClass::generator(m.ring(), &gen.name, parse_rational(coeff)?)?)
}

/// Bundle spec: `trivial`, `trivial:<rank>`, `line:<p/q>`, sums of those
/// joined with `+`, or a path to a bundle JSON document.
pub fn bundle(spec: &str, m: &ManifoldModel) -> Result<CharData> {
    if Path::new(spec).exists() {
        let json = std::fs::read_to_string(spec)
            .with_context(|| format!("reading bundle file `{spec}`"))?;
        let doc: BundleDoc = serde_json::from_str(&json)
            .with_context(|| format!("parsing bundle file `{spec}`"))?;
        return Ok(load_bundle(&doc, m.ring())?);
    }
    let mut acc: Option<CharData> = None;
    for term in spec.split('+') {
        let term = term.trim();
        let part = if term == "trivial" {
            CharData::trivial(m.ring(), 1)
        } else if let Some(rank) = term.strip_prefix("trivial:") {
            CharData::trivial(m.ring(), rank.parse().context("trivial rank")?)
        } else if let Some(coeff) = term.strip_prefix("line:") {
            CharData::line(degree_two_class(m, coeff)?)?
        } else {
            bail!("bundle term `{term}` (expected trivial[:rank], line:<p/q>, or a file path)");
        };
        acc = Some(match acc {
            None => part,
            Some(prev) => prev.direct_sum(&part)?,
        });
    }
    acc.ok_or_else(|| anyhow!("empty bundle spec"))
}

#[derive(Deserialize)]
struct TwistDoc {
    #[serde(default)]
    l_prime: Option<BTreeMap<String, String>>,
    #[serde(default)]
    l: Option<BTreeMap<String, String>>,
    #[serde(default = "one")]
    root_order: u32,
}

fn one() -> u32 {
    1
}

/// Twist spec: `lp=<p/q>`, `l=<p/q>`, `n=<N>` joined with commas (classes
/// are multiples of the first degree-2 generator), or a path to a twist
/// JSON document with explicit classes.
pub fn twist(spec: Option<&str>, m: &ManifoldModel) -> Result<TwistSpec> {
    let Some(spec) = spec else {
        return Ok(TwistSpec::none());
    };
    if Path::new(spec).exists() {
        let json = std::fs::read_to_string(spec)
            .with_context(|| format!("reading twist file `{spec}`"))?;
        let doc: TwistDoc = serde_json::from_str(&json)
            .with_context(|| format!("parsing twist file `{spec}`"))?;
        let lp = doc
            .l_prime
            .as_ref()
            .map(|c| parse_class(c, m.ring()))
            .transpose()?;
        let l = doc.l.as_ref().map(|c| parse_class(c, m.ring())).transpose()?;
        return Ok(TwistSpec::new(lp, l, doc.root_order)?);
    }
    let mut lp = None;
    let mut l = None;
    let mut n = 1u32;
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("twist term `{part}` is not key=value"))?;
        match key.trim() {
            "lp" => lp = Some(degree_two_class(m, value.trim())?),
            "l" => l = Some(degree_two_class(m, value.trim())?),
            "n" => n = value.trim().parse().context("twist root order")?,
            other => bail!("unknown twist key `{other}` (expected lp, l, n)"),
        }
    }
    Ok(TwistSpec::new(lp, l, n)?)
}

/// Symbol spec: an expression in the `c*e^{kit}` mini-grammar, or a path to
/// a Fourier-table JSON document.
pub fn symbol(spec: &str) -> Result<LabSymbol> {
    if Path::new(spec).exists() {
        let json = std::fs::read_to_string(spec)
            .with_context(|| format!("reading symbol file `{spec}`"))?;
        let doc: SymbolDoc = serde_json::from_str(&json)
            .with_context(|| format!("parsing symbol file `{spec}`"))?;
        return Ok(doc.to_symbol()?);
    }
    Ok(LabSymbol::Exact(parse_symbol_expr(spec)?))
}
