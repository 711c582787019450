use std::path::Path;

use rowfin_core::rowfin::sparse::parse_sparse;
use rowfin_core::{BaseRing, FinVec, RowFiniteMap};

use crate::CliError;

/// `k` or `k:c` terms separated by commas; `0` or the empty string is the
/// zero vector.
pub fn vector(ring: &BaseRing, text: &str) -> Result<FinVec, CliError> {
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(FinVec::zero(ring));
    }
    let mut v = FinVec::zero(ring);
    for term in text.split(',') {
        let (k, c) = match term.split_once(':') {
            Some((k, c)) => (k, ring.parse_elem(c.trim())?),
            None => (term, ring.one()),
        };
        let k: u64 = k.trim().parse().map_err(|_| CliError::Usage(format!("bad coordinate `{k}` in vector `{text}`")))?;
        if k == 0 {
            return Err(CliError::Usage(format!("coordinates start at 1 in vector `{text}`")));
        }
        v.add_at(k, &c);
    }
    Ok(v)
}

/// `shift`, `back` (its transpose), `unit:i:j`, `proj:k`, or a sparse file.
pub fn generator(ring: &BaseRing, spec: &str) -> Result<RowFiniteMap, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let index = |s: &str| -> Result<u64, CliError> {
        s.parse().ok().filter(|&k| k >= 1).ok_or_else(|| CliError::Usage(format!("bad index `{s}` in generator `{spec}`")))
    };
    match parts.as_slice() {
        ["shift"] => Ok(RowFiniteMap::shift(ring)),
        ["back"] => {
            let r = ring.clone();
            Ok(RowFiniteMap::from_fn(ring, "back", move |k| if k == 1 { FinVec::zero(&r) } else { FinVec::unit(&r, k - 1) }))
        }
        ["unit", i, j] => Ok(RowFiniteMap::matrix_unit(ring, index(i)?, index(j)?)),
        ["proj", k] => Ok(RowFiniteMap::matrix_unit(ring, index(k)?, index(k)?)),
        _ if Path::new(spec).is_file() => {
            let f = matrix_file(Path::new(spec))?;
            ring.ensure_same(f.ring())?;
            Ok(f)
        }
        _ => Err(CliError::Usage(format!("unknown generator `{spec}`"))),
    }
}

/// `name=spec`.
pub fn named_generator(ring: &BaseRing, text: &str) -> Result<(String, RowFiniteMap), CliError> {
    let (name, spec) =
        text.split_once('=').ok_or_else(|| CliError::Usage(format!("generator `{text}` is not of the form name=spec")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(CliError::Usage(format!("bad generator name `{name}`")));
    }
    Ok((name.to_string(), generator(ring, spec.trim())?))
}

pub fn matrix_file(path: &Path) -> Result<RowFiniteMap, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_sparse(&text)?)
}

/// `seed=<k>` or `<k>`.
pub fn seed_spec(text: &str) -> Result<u64, CliError> {
    let v = text.strip_prefix("seed=").unwrap_or(text);
    v.trim().parse().map_err(|_| CliError::Usage(format!("bad seed `{text}`")))
}
