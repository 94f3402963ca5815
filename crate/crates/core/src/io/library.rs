//! Block library directories.
//!
//! `meta` holds `N: <side>`, `delta: <steps>` and `alphabet: <rule>`, where
//! the rule is a builtin name or a rule file path relative to the
//! directory. Every other `*.block` file holds `gate: <kind>`, `u: <4 bits>`
//! and then `N` rows of state names, north first. Blocks are read in file
//! name order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::circuit::{format_bits, parse_bits, Block, BlockLibrary, GateType};
use crate::error::{CaError, Result};
use crate::rule::CaRule;

use super::builtins::resolve_rule_in;
use super::text::parse_word;

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.trim().strip_prefix(key).and_then(|r| r.strip_prefix(':')).map(str::trim)
}

/// Reads a library directory, returning the rule named in `meta` and the
/// library.
pub fn parse_library(dir: &Path) -> Result<(CaRule, BlockLibrary)> {
    let meta = fs::read_to_string(dir.join("meta"))
        .map_err(|e| CaError::Io(format!("{}: {e}", dir.join("meta").display())))?;
    let (mut n, mut delta, mut alphabet) = (None, None, None);
    for (i, raw) in meta.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let num = |v: &str| v.parse::<usize>().map_err(|_| CaError::parse(i + 1, 1, format!("bad number {v:?} in meta")));
        if let Some(v) = field(line, "N") {
            n = Some(num(v)?);
        } else if let Some(v) = field(line, "delta") {
            delta = Some(num(v)?);
        } else if let Some(v) = field(line, "alphabet") {
            alphabet = Some(v.to_string());
        } else {
            return Err(CaError::parse(i + 1, 1, format!("unexpected line {:?} in meta", line.trim())));
        }
    }
    let n = n.ok_or_else(|| CaError::input("meta is missing `N:`"))?;
    let delta = delta.ok_or_else(|| CaError::input("meta is missing `delta:`"))?;
    let alphabet = alphabet.ok_or_else(|| CaError::input("meta is missing `alphabet:`"))?;
    let rule = resolve_rule_in(&alphabet, Some(dir))?;
    let mut files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "block"))
        .collect();
    files.sort();
    let mut blocks = Vec::new();
    for f in files {
        let text = fs::read_to_string(&f)?;
        let b = parse_block(&text, &rule, n).map_err(|e| CaError::input(format!("{}: {e}", f.display())))?;
        blocks.push(b);
    }
    let lib = BlockLibrary::new(n, delta, blocks)?;
    lib.check_alphabet(&rule)?;
    Ok((rule, lib))
}

pub fn parse_block(text: &str, rule: &CaRule, n: usize) -> Result<Block> {
    let mut gate = None;
    let mut u = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(v) = field(line, "gate") {
            gate = Some(v.parse::<GateType>()?);
        } else if let Some(v) = field(line, "u") {
            u = Some(parse_bits(v)?);
        } else {
            let row = parse_word(line, rule, i + 1, 1)?;
            if row.len() != n {
                return Err(CaError::parse(i + 1, 1, format!("row has {} cells, expected {n}", row.len())));
            }
            rows.push(row);
        }
    }
    if rows.len() != n {
        return Err(CaError::input(format!("block has {} rows, expected {n}", rows.len())));
    }
    let pattern = rows.into_iter().rev().flatten().collect();
    Ok(Block {
        gate: gate.ok_or_else(|| CaError::input("block is missing `gate:`"))?,
        u: u.ok_or_else(|| CaError::input("block is missing `u:`"))?,
        pattern,
    })
}

pub fn serialize_block(b: &Block, rule: &CaRule, n: usize) -> String {
    let mut s = format!("gate: {}\nu: {}\n", b.gate, format_bits(b.u));
    for y in (0..n).rev() {
        let row: Vec<&str> = b.pattern[y * n..(y + 1) * n].iter().map(|&x| rule.state_name(x)).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// Writes `meta` and one numbered `.block` file per block.
pub fn write_library(dir: &Path, alphabet: &str, rule: &CaRule, lib: &BlockLibrary) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join("meta"),
        format!("N: {}\ndelta: {}\nalphabet: {alphabet}\n", lib.n(), lib.delta()),
    )?;
    for (i, b) in lib.blocks().iter().enumerate() {
        fs::write(dir.join(format!("{i:04}.block")), serialize_block(b, rule, lib.n()))?;
    }
    Ok(())
}
