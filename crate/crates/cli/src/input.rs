use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pairgap::gap::Generator;
use pairgap::{io, MarginalVector, Rational, SetFunction};
use serde_json::Value;

pub fn read_setfn(path: &Path) -> Result<SetFunction> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(io::parse_set_function(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// Inline list, or a file holding a list or JSON.
pub fn read_marginals(arg: &str) -> Result<MarginalVector> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Ok(io::parse_marginals(&text).with_context(|| format!("parsing {arg}"))?);
    }
    Ok(io::parse_marginals(arg).with_context(|| format!("parsing marginals {arg:?}"))?)
}

pub fn rational(arg: &str) -> std::result::Result<Rational, String> {
    Rational::parse(arg).map_err(|e| e.to_string())
}

fn two_params(rest: &str) -> Option<(usize, usize)> {
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix(':'))?;
    let (a, b) = inner.split_once([',', ':'])?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// `extremal-mix-n3`, `coverage-random(n,m)`, `matroid-rank(n,k)` (or the
/// `name:a:b` spelling), and `corpus:PATH`.
pub fn generator(name: &str) -> Result<Generator> {
    if name == "extremal-mix-n3" {
        return Ok(Generator::ExtremalMixN3);
    }
    if let Some(path) = name.strip_prefix("corpus:") {
        return read_corpus(Path::new(path));
    }
    if let Some(rest) = name.strip_prefix("coverage-random") {
        if let Some((n, m)) = two_params(rest) {
            return Ok(Generator::CoverageRandom { n, m });
        }
    }
    if let Some(rest) = name.strip_prefix("matroid-rank") {
        if let Some((n, k)) = two_params(rest) {
            return Ok(Generator::MatroidRank { n, k });
        }
    }
    bail!("unknown generator {name:?}; expected extremal-mix-n3, coverage-random(n,m), matroid-rank(n,k) or corpus:PATH")
}

/// A JSON array of `{"fn": <set function>, "x": <marginals>}`.
fn read_corpus(path: &Path) -> Result<Generator> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: Vec<Value> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut items = Vec::with_capacity(doc.len());
    for (i, entry) in doc.iter().enumerate() {
        let (Some(f), Some(x)) = (entry.get("fn"), entry.get("x")) else {
            bail!("corpus entry {i} needs \"fn\" and \"x\"");
        };
        let f = io::parse_set_function(&f.to_string()).with_context(|| format!("corpus entry {i}"))?;
        let x = io::parse_marginals(&x.to_string()).with_context(|| format!("corpus entry {i}"))?;
        items.push((f, x));
    }
    Ok(Generator::Corpus(items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_spellings() {
        assert_eq!(generator("coverage-random(4,3)").unwrap(), Generator::CoverageRandom { n: 4, m: 3 });
        assert_eq!(generator("coverage-random:4:3").unwrap(), Generator::CoverageRandom { n: 4, m: 3 });
        assert_eq!(generator("matroid-rank(5, 2)").unwrap(), Generator::MatroidRank { n: 5, k: 2 });
        assert!(generator("coverage-random(4)").is_err());
        assert!(generator("random").is_err());
    }
}
