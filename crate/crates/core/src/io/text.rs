//! Line-oriented rule and configuration files.
//!
//! Rule files:
//! ```text
//! dimension 1
//! states 0 1
//! neighborhood -1 0 1
//! rule 1 1 0 -> 1
//! default -> 0
//! ```
//! 2D offsets are written `dx,dy`. `default -> unchanged` keeps the center
//! state and needs the offset 0 in the neighborhood. Without a default,
//! every window must have a `rule` line.
//!
//! Configuration files hold one of: `left:`/`mid:`/`right:`/`origin:`
//! lines (bi-periodic), a `period:` line (1D periodic), `grid:` followed
//! by rows listed from the north (2D periodic), `window:` (centered 1D
//! pattern) or `pattern:` followed by rows (centered 2D pattern). Words
//! are space-separated state names, or unseparated when every name is a
//! single character. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::config::{BiPeriodicConfig, Config, FinitePattern, PeriodicConfig};
use crate::error::{CaError, Result};
use crate::limits::Limits;
use crate::rule::{format_offset, CaRule, Offset, State};

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_offset(tok: &str, dimension: usize, line: usize, col: usize) -> Result<Offset> {
    let bad = || CaError::parse(line, col, format!("bad offset {tok:?}"));
    if dimension == 1 {
        let dx: i32 = tok.parse().map_err(|_| bad())?;
        Ok(Offset::d1(dx))
    } else {
        let (a, b) = tok.split_once(',').ok_or_else(bad)?;
        Ok(Offset::d2(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
    }
}

enum Default {
    State(State),
    Unchanged,
}

pub fn parse_rule(text: &str) -> Result<CaRule> {
    parse_rule_with_limits(text, &Limits::default())
}

pub fn parse_rule_with_limits(text: &str, limits: &Limits) -> Result<CaRule> {
    let mut dimension: Option<usize> = None;
    let mut states: Option<Vec<String>> = None;
    let mut nb: Option<Vec<Offset>> = None;
    let mut rules: HashMap<Vec<State>, (State, usize)> = HashMap::new();
    let mut default: Option<Default> = None;
    let mut index: HashMap<String, State> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokens(strip_comment(raw));
        let Some(&(_, head)) = toks.first() else {
            continue;
        };
        match head {
            "dimension" => {
                let &(c, v) = toks.get(1).ok_or_else(|| CaError::parse(ln, 1, "missing dimension"))?;
                let d: usize = v.parse().map_err(|_| CaError::parse(ln, c, format!("bad dimension {v:?}")))?;
                if d != 1 && d != 2 {
                    return Err(CaError::parse(ln, c, format!("dimension must be 1 or 2, got {d}")));
                }
                dimension = Some(d);
            }
            "states" => {
                let names: Vec<String> = toks[1..].iter().map(|(_, t)| t.to_string()).collect();
                if names.is_empty() {
                    return Err(CaError::parse(ln, 1, "empty state list"));
                }
                for (k, (c, n)) in toks[1..].iter().enumerate() {
                    if index.insert(n.to_string(), k as State).is_some() {
                        return Err(CaError::parse(ln, *c, format!("duplicate state {n:?}")));
                    }
                }
                states = Some(names);
            }
            "neighborhood" => {
                let d = dimension.ok_or_else(|| CaError::parse(ln, 1, "`dimension` must come before `neighborhood`"))?;
                let offs = toks[1..]
                    .iter()
                    .map(|&(c, t)| parse_offset(t, d, ln, c))
                    .collect::<Result<Vec<_>>>()?;
                if offs.is_empty() {
                    return Err(CaError::parse(ln, 1, "empty neighborhood"));
                }
                nb = Some(offs);
            }
            "rule" | "default" => {
                let k = nb.as_ref().ok_or_else(|| CaError::parse(ln, 1, "`neighborhood` must come before rules"))?.len();
                if states.is_none() {
                    return Err(CaError::parse(ln, 1, "`states` must come before rules"));
                }
                let arrow = toks
                    .iter()
                    .position(|&(_, t)| t == "->")
                    .ok_or_else(|| CaError::parse(ln, 1, "missing `->`"))?;
                if arrow + 2 != toks.len() {
                    return Err(CaError::parse(ln, 1, "expected exactly one state after `->`"));
                }
                let (oc, out) = toks[arrow + 1];
                let look = |c: usize, t: &str| {
                    index
                        .get(t)
                        .copied()
                        .ok_or_else(|| CaError::parse(ln, c, format!("undefined state {t:?}")))
                };
                if head == "default" {
                    if arrow != 1 {
                        return Err(CaError::parse(ln, 1, "expected `default -> <state|unchanged>`"));
                    }
                    default = Some(if out == "unchanged" {
                        Default::Unchanged
                    } else {
                        Default::State(look(oc, out)?)
                    });
                    continue;
                }
                if arrow - 1 != k {
                    return Err(CaError::parse(ln, 1, format!("rule has {} states, neighborhood has {k}", arrow - 1)));
                }
                let w = toks[1..arrow].iter().map(|&(c, t)| look(c, t)).collect::<Result<Vec<_>>>()?;
                let img = look(oc, out)?;
                if let Some(&(prev, pl)) = rules.get(&w) {
                    if prev != img {
                        return Err(CaError::parse(ln, 1, format!("window conflicts with the rule on line {pl}")));
                    }
                }
                rules.insert(w, (img, ln));
            }
            other => return Err(CaError::parse(ln, 1, format!("unknown keyword {other:?}"))),
        }
    }
    let dimension = dimension.ok_or_else(|| CaError::parse(1, 1, "missing `dimension`"))?;
    let states = states.ok_or_else(|| CaError::parse(1, 1, "missing `states`"))?;
    let nb = nb.ok_or_else(|| CaError::parse(1, 1, "missing `neighborhood`"))?;
    let center = nb.iter().position(|o| *o == Offset::ORIGIN);
    if matches!(default, Some(Default::Unchanged)) && center.is_none() {
        return Err(CaError::input("`default -> unchanged` needs offset 0 in the neighborhood"));
    }
    let mut missing: Option<Vec<State>> = None;
    let rule = CaRule::tabulate(dimension, states.clone(), nb, limits, |w| {
        if let Some(&(s, _)) = rules.get(w) {
            return s;
        }
        match default {
            Some(Default::State(s)) => s,
            Some(Default::Unchanged) => w[center.unwrap()],
            None => {
                if missing.is_none() {
                    missing = Some(w.to_vec());
                }
                0
            }
        }
    })?;
    if let Some(w) = missing {
        let names: Vec<&str> = w.iter().map(|&s| states[s as usize].as_str()).collect();
        return Err(CaError::input(format!(
            "no rule for window {} and no default",
            names.join(" ")
        )));
    }
    Ok(rule)
}

/// Writes the rule with `default -> <s>` for the most frequent image and a
/// `rule` line for every other window.
pub fn serialize_rule(rule: &CaRule, limits: &Limits) -> Result<String> {
    let table_rule = rule.to_table(limits)?;
    let table = table_rule.table().expect("tabulated");
    let mut counts = vec![0usize; rule.num_states()];
    for &s in table {
        counts[s as usize] += 1;
    }
    let common = (0..counts.len()).max_by_key(|&s| (counts[s], std::cmp::Reverse(s))).unwrap() as State;
    let mut s = format!("dimension {}\nstates {}\nneighborhood", rule.dimension(), rule.states().join(" "));
    for o in rule.neighborhood() {
        let _ = write!(s, " {}", format_offset(*o, rule.dimension()));
    }
    s.push('\n');
    let mut odo = crate::rule::Odometer::new(rule.num_states() as State, rule.neighborhood().len());
    let mut i = 0;
    while let Some(w) = odo.next_word() {
        if table[i] != common {
            s.push_str("rule");
            for &x in w {
                let _ = write!(s, " {}", rule.state_name(x));
            }
            let _ = writeln!(s, " -> {}", rule.state_name(table[i]));
        }
        i += 1;
    }
    let _ = writeln!(s, "default -> {}", rule.state_name(common));
    Ok(s)
}

/// Parses a word of state names. Without spaces, a token that is not a
/// state name is split into characters when every name is one character.
pub fn parse_word(text: &str, rule: &CaRule, line: usize, col0: usize) -> Result<Vec<State>> {
    let single = rule.states().iter().all(|s| s.chars().count() == 1);
    let mut out = Vec::new();
    for (c, tok) in tokens(text) {
        if let Some(s) = rule.state_index(tok) {
            out.push(s);
        } else if single {
            for (k, ch) in tok.chars().enumerate() {
                let s = rule
                    .state_index(&ch.to_string())
                    .ok_or_else(|| CaError::parse(line, col0 + c - 1 + k, format!("undefined state {ch:?}")))?;
                out.push(s);
            }
        } else {
            return Err(CaError::parse(line, col0 + c - 1, format!("undefined state {tok:?}")));
        }
    }
    Ok(out)
}

fn format_word(rule: &CaRule, w: &[State]) -> String {
    w.iter().map(|&s| rule.state_name(s)).collect::<Vec<_>>().join(" ")
}

type NumberedRow = (usize, Vec<State>);

pub fn parse_config(text: &str, rule: &CaRule) -> Result<Config> {
    let mut left = None;
    let mut mid = None;
    let mut right = None;
    let mut origin = None;
    let mut period = None;
    let mut window = None;
    // (is a pattern, numbered rows)
    let mut rows: Option<(bool, Vec<NumberedRow>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col0 = line.len() - trimmed.len();
        let key_val = trimmed.split_once(':');
        let key = key_val.map(|(k, _)| k.trim());
        let value = |k: &str| {
            let v = &trimmed[k.len() + 1..];
            (v, col0 + k.len() + 2)
        };
        match key {
            Some(k @ ("left" | "mid" | "right" | "period" | "window")) => {
                let (v, c) = value(k);
                let w = parse_word(v, rule, ln, c)?;
                match k {
                    "left" => left = Some(w),
                    "mid" => mid = Some(w),
                    "right" => right = Some(w),
                    "period" => period = Some(w),
                    _ => window = Some(w),
                }
            }
            Some("origin") => {
                let (v, c) = value("origin");
                origin = Some(
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| CaError::parse(ln, c, format!("bad origin {:?}", v.trim())))?,
                );
            }
            Some(k @ ("grid" | "pattern")) => {
                if !value(k).0.trim().is_empty() {
                    return Err(CaError::parse(ln, 1, format!("rows of `{k}:` go on the following lines")));
                }
                rows = Some((k == "grid", Vec::new()));
            }
            _ => match rows.as_mut() {
                Some((_, r)) => r.push((ln, parse_word(line, rule, ln, 1)?)),
                None => return Err(CaError::parse(ln, col0 + 1, format!("unexpected line {:?}", trimmed.trim()))),
            },
        }
    }
    let kinds = [left.is_some() || right.is_some() || mid.is_some(), period.is_some(), window.is_some(), rows.is_some()];
    if kinds.iter().filter(|&&k| k).count() != 1 {
        return Err(CaError::parse(1, 1, "expected exactly one of bi-periodic tails, `period:`, `window:`, `grid:` or `pattern:`"));
    }
    let c: Config = if let Some(p) = period {
        PeriodicConfig::new_1d(p)?.into()
    } else if let Some(w) = window {
        FinitePattern::new_1d(w)?.into()
    } else if let Some((is_grid, rows)) = rows {
        let h = rows.len();
        let w = rows.first().map(|r| r.1.len()).unwrap_or(0);
        if let Some((ln, r)) = rows.iter().find(|r| r.1.len() != w) {
            return Err(CaError::parse(*ln, 1, format!("row has {} cells, expected {w}", r.len())));
        }
        // rows are listed north first
        let cells: Vec<State> = rows.iter().rev().flat_map(|r| r.1.iter().copied()).collect();
        if is_grid {
            PeriodicConfig::new_2d(w, h, cells)?.into()
        } else {
            if w != h || w % 2 == 0 {
                return Err(CaError::input(format!("pattern must be an odd square, got {w}x{h}")));
            }
            FinitePattern::new_2d(w / 2, cells)?.into()
        }
    } else {
        let left = left.ok_or_else(|| CaError::parse(1, 1, "missing `left:`"))?;
        let right = right.ok_or_else(|| CaError::parse(1, 1, "missing `right:`"))?;
        BiPeriodicConfig::new(left, mid.unwrap_or_default(), right, origin.unwrap_or(0))?.into()
    };
    match &c {
        Config::Periodic(p) => p.check_alphabet(rule)?,
        Config::BiPeriodic(b) => b.check_alphabet(rule)?,
        Config::Finite(f) => f.check_alphabet(rule)?,
    }
    Ok(c)
}

pub fn serialize_config(c: &Config, rule: &CaRule) -> String {
    let rows = |w: usize, h: usize, cells: &[State]| {
        let mut s = String::new();
        for y in (0..h).rev() {
            let _ = writeln!(s, "{}", format_word(rule, &cells[y * w..(y + 1) * w]));
        }
        s
    };
    match c {
        Config::Periodic(p) if p.dimension() == 1 => format!("period: {}\n", format_word(rule, p.cells())),
        Config::Periodic(p) => format!("grid:\n{}", rows(p.width(), p.height(), p.cells())),
        Config::BiPeriodic(b) => format!(
            "left: {}\nmid: {}\nright: {}\norigin: {}\n",
            format_word(rule, b.left()),
            format_word(rule, b.mid()),
            format_word(rule, b.right()),
            b.origin()
        ),
        Config::Finite(f) if f.dimension() == 1 => format!("window: {}\n", format_word(rule, f.cells())),
        Config::Finite(f) => format!("pattern:\n{}", rows(f.side(), f.side(), f.cells())),
    }
}
