//! JSON and inline text formats for set functions, distributions and marginals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{Distribution, MarginalVector};
use crate::rational::Rational;
use crate::setfn::{self, SetFunction, MAX_GROUND};
use crate::subset::Subset;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFunctionDoc {
    n: usize,
    values: Vec<Rational>,
    #[serde(default)]
    order: Option<String>,
}

#[derive(Serialize)]
struct SetFunctionOut<'a> {
    n: usize,
    values: &'a [Rational],
    order: &'static str,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomDoc {
    set: Subset,
    p: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionDoc {
    n: usize,
    atoms: Vec<AtomDoc>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MarginalsDoc {
    List(Vec<Rational>),
    Object { x: Vec<Rational> },
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses `{"n": 3, "values": [...], "order": "bitmask"}`. Values may be
/// `"p/q"` strings or JSON numbers; decimals convert exactly.
pub fn parse_set_function(text: &str) -> Result<SetFunction> {
    let doc: SetFunctionDoc = serde_json::from_str(text).map_err(json_error)?;
    match doc.order.as_deref() {
        None | Some("bitmask") => {}
        Some(other) => return Err(Error::Parse(format!("unsupported order {other:?}; expected \"bitmask\""))),
    }
    setfn::make_setfn(doc.n, doc.values)
}

pub fn set_function_to_json(f: &SetFunction) -> String {
    let out = SetFunctionOut { n: f.n(), values: f.values(), order: "bitmask" };
    serde_json::to_string(&out).expect("set function serializes")
}

/// Parses `{"n": .., "atoms": [{"set": bitmask, "p": "p/q"}, ..]}`.
/// Repeated sets are rejected.
pub fn parse_distribution(text: &str) -> Result<Distribution> {
    let doc: DistributionDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.n == 0 {
        return Err(Error::OutOfRange("a distribution needs n >= 1".into()));
    }
    if doc.n > MAX_GROUND {
        return Err(Error::CapExceeded { n: doc.n, cap: MAX_GROUND });
    }
    let mut seen = std::collections::BTreeSet::new();
    for a in &doc.atoms {
        if !seen.insert(a.set) {
            return Err(Error::Parse(format!("set {} listed twice", a.set)));
        }
    }
    Distribution::new(doc.n, doc.atoms.into_iter().map(|a| (a.set, a.p)))
}

pub fn distribution_to_json(d: &Distribution) -> String {
    serde_json::to_string(d).expect("distribution serializes")
}

/// Parses marginals given inline as `1/2,1/3,0.25`, as a JSON array, or
/// as `{"x": [...]}`.
pub fn parse_marginals(text: &str) -> Result<MarginalVector> {
    let trimmed = text.trim();
    let values = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        match serde_json::from_str(trimmed).map_err(json_error)? {
            MarginalsDoc::List(v) | MarginalsDoc::Object { x: v } => v,
        }
    } else {
        trimmed
            .split(',')
            .map(|tok| tok.trim().parse::<Rational>().map_err(Error::from))
            .collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(Error::Parse("no marginals given".into()));
    }
    if values.len() > MAX_GROUND {
        return Err(Error::CapExceeded { n: values.len(), cap: MAX_GROUND });
    }
    MarginalVector::new(values)
}

/// Pretty JSON with rationals as `"p/q"` strings.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}
