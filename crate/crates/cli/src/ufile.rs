//! `n M u` triples, one per line. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context};

/// Keyed by `(n, M)`; `M` must be an integer.
pub type UList = BTreeMap<(u32, u64), f64>;

pub fn parse(text: &str) -> anyhow::Result<UList> {
    let mut out = UList::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [n, m, u] = fields[..] else {
            bail!("line {lineno}: expected \"n M u\", got {raw:?}");
        };
        let n: u32 = n
            .parse()
            .with_context(|| format!("line {lineno}: bad n {n:?}"))?;
        let m: u64 = m
            .parse()
            .with_context(|| format!("line {lineno}: bad M {m:?}"))?;
        let u: f64 = u
            .parse()
            .with_context(|| format!("line {lineno}: bad u {u:?}"))?;
        if !(u > -1.0 && u < 1.0) {
            bail!("line {lineno}: u = {u} must lie in (-1, 1)");
        }
        if out.insert((n, m), u).is_some() {
            return Err(anyhow!(
                "line {lineno}: duplicate entry for n = {n}, M = {m}"
            ));
        }
    }
    Ok(out)
}
