pub mod classify;
pub mod fear;
pub mod maltsev;
pub mod oracle;
pub mod sandwich;
pub mod simple_full;
pub mod two_gen;
pub mod witness;

use std::collections::BTreeMap;

use rowfin_core::constructions::check::Check;
use rowfin_core::{BaseRing, Error, Window};
use serde_json::Value;

use crate::report::Report;
use crate::{CliError, Common};

pub fn ring(common: &Common, default: &str) -> Result<BaseRing, CliError> {
    Ok(BaseRing::parse(common.ring.as_deref().unwrap_or(default))?)
}

pub fn window(common: &Common, default: u64) -> Result<Window, CliError> {
    match common.window.unwrap_or(default) {
        0 => Err(CliError::Usage("--window must be at least 1".into())),
        n => Ok(Window::new(n)),
    }
}

/// Whether `--corrupt` is set, rejecting names the subcommand does not know.
pub fn corrupt(common: &Common, allowed: &[&str]) -> Result<bool, CliError> {
    match common.corrupt.as_deref() {
        None => Ok(false),
        Some(c) if allowed.contains(&c) => Ok(true),
        Some(c) => Err(CliError::Usage(format!("unknown --corrupt `{c}`; expected one of {}", allowed.join(", ")))),
    }
}

/// Echo of the effective configuration.
pub fn config(common: &Common, ring: &BaseRing, window: Option<Window>, extra: &[(&str, Value)]) -> BTreeMap<String, Value> {
    let mut c = BTreeMap::new();
    c.insert("ring".into(), Value::from(ring.to_string()));
    if let Some(w) = window {
        c.insert("window".into(), Value::from(w.n()));
    }
    c.insert("seed".into(), Value::from(common.seed));
    if let Some(p) = &common.preorder {
        c.insert("preorder".into(), Value::from(p.clone()));
    }
    if !common.input.is_empty() {
        c.insert("in".into(), Value::from(common.input.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()));
    }
    if let Some(b) = common.bound {
        c.insert("bound".into(), Value::from(b));
    }
    if let Some(k) = &common.corrupt {
        c.insert("corrupt".into(), Value::from(k.clone()));
    }
    for (k, v) in extra {
        c.insert((*k).to_string(), v.clone());
    }
    c
}

/// Turns a resource cap into a bound-exceeded verdict; other errors abort.
pub fn bounded<T>(report: &mut Report, name: &str, r: rowfin_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BoundExceeded(m)) => {
            report.push(Check::bound_exceeded(name, m));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}
