//! Named rules available without a rule file.

use std::fs;
use std::path::Path;

use crate::circuit::{one_shot_wire_ca, reference_wire_ca};
use crate::constructions::{rule110, signed_majority, toy_rules, zigzag};
use crate::error::{CaError, Result};
use crate::rule::CaRule;

use super::text::parse_rule;

pub const BUILTIN_NAMES: &[&str] = &[
    "rule110",
    "zigzag:<rule>",
    "signed-majority",
    "identity",
    "shift",
    "not",
    "or-spread",
    "xor",
    "wire-ca",
    "wire-ca-one-shot",
];

pub fn builtin_rule(name: &str) -> Option<Result<CaRule>> {
    let t = toy_rules();
    Some(Ok(match name {
        "rule110" => rule110(),
        "signed-majority" => signed_majority(),
        "identity" => t.identity,
        "shift" => t.shift,
        "not" => t.not,
        "or-spread" => t.or_spread,
        "xor" => t.xor,
        "wire-ca" => reference_wire_ca().0,
        "wire-ca-one-shot" => one_shot_wire_ca().0,
        _ => {
            let inner = name.strip_prefix("zigzag:")?;
            return Some(resolve_rule(inner).and_then(|r| zigzag(&r)));
        }
    }))
}

/// A builtin name or the path of a rule file.
pub fn resolve_rule(spec: &str) -> Result<CaRule> {
    resolve_rule_in(spec, None)
}

/// Like [`resolve_rule`], with relative paths taken from `base`.
pub fn resolve_rule_in(spec: &str, base: Option<&Path>) -> Result<CaRule> {
    if let Some(r) = builtin_rule(spec) {
        return r;
    }
    let path = match base {
        Some(b) if Path::new(spec).is_relative() => b.join(spec),
        _ => Path::new(spec).to_path_buf(),
    };
    let text = fs::read_to_string(&path).map_err(|e| {
        CaError::input(format!(
            "{spec:?} is neither a builtin ({}) nor a readable rule file: {e}",
            BUILTIN_NAMES.join(", ")
        ))
    })?;
    parse_rule(&text).map_err(|e| match e {
        CaError::Parse { line, column, message } => CaError::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}
