//! Freezing automata: order synthesis, verification and change audits.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::config::Config;
use crate::decision::DecisionReport;
use crate::engine::{step_biperiodic_unchecked, step_periodic_unchecked};
use crate::error::{CaError, Result};
use crate::limits::{saturating_pow, Limits};
use crate::rule::{CaRule, Odometer, State};

/// A partial order on `0..n`, stored as its reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOrder {
    n: usize,
    leq: Vec<bool>,
}

/// Result of [`find_freezing_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreezingSynthesis {
    Freezing(StateOrder),
    /// States `s0 ≤ s1 ≤ … ≤ s0` forced by the constraints; the first and
    /// last entries are equal.
    NotFreezing { cycle: Vec<State> },
}

impl FreezingSynthesis {
    pub fn order(&self) -> Option<&StateOrder> {
        match self {
            FreezingSynthesis::Freezing(o) => Some(o),
            FreezingSynthesis::NotFreezing { .. } => None,
        }
    }
}

fn closure(n: usize, pairs: &[(State, State)]) -> Vec<bool> {
    let mut m = vec![false; n * n];
    for i in 0..n {
        m[i * n + i] = true;
    }
    for &(a, b) in pairs {
        m[a as usize * n + b as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i * n + k] {
                for j in 0..n {
                    if m[k * n + j] {
                        m[i * n + j] = true;
                    }
                }
            }
        }
    }
    m
}

fn antisymmetry_violation(n: usize, m: &[bool]) -> Option<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| m[a * n + b] && m[b * n + a])
}

/// Shortest path `from → to` along generator pairs.
fn path(n: usize, pairs: &[(State, State)], from: usize, to: usize) -> Vec<State> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        if a != b {
            adj[a as usize].push(b as usize);
        }
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut out = vec![to as State];
    let mut v = to;
    while v != from {
        v = prev[v];
        out.push(v as State);
    }
    out.reverse();
    out
}

impl StateOrder {
    /// The discrete order: `a ≤ b` iff `a = b`.
    pub fn equality(n: usize) -> Self {
        StateOrder {
            n,
            leq: closure(n, &[]),
        }
    }

    /// Closure of the generators `a ≤ b`; rejects cycles.
    pub fn from_pairs(n: usize, pairs: &[(State, State)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a as usize >= n || *b as usize >= n) {
            return Err(CaError::input(format!("pair ({a}, {b}) out of range for {n} states")));
        }
        let leq = closure(n, pairs);
        if let Some((a, b)) = antisymmetry_violation(n, &leq) {
            return Err(CaError::input(format!(
                "states {a} and {b} are related both ways, not a partial order"
            )));
        }
        Ok(StateOrder { n, leq })
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: State, b: State) -> bool {
        self.leq[a as usize * self.n + b as usize]
    }

    /// All related pairs, reflexive ones included.
    pub fn pairs(&self) -> Vec<(State, State)> {
        let n = self.n;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq[a * n + b])
            .map(|(a, b)| (a as State, b as State))
            .collect()
    }

    /// Transitive reduction: `a < b` with nothing strictly between.
    pub fn generators(&self) -> Vec<(State, State)> {
        let n = self.n;
        let lt = |a: usize, b: usize| a != b && self.leq[a * n + b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a as State, b as State));
                }
            }
        }
        out
    }

    /// One `a <= b` line per generator, using the rule's state names.
    pub fn to_text(&self, rule: &CaRule) -> String {
        let mut s = String::new();
        for (a, b) in self.generators() {
            let _ = writeln!(s, "{} <= {}", rule.state_name(a), rule.state_name(b));
        }
        s
    }

    /// Parses `a <= b` lines; `#` starts a comment.
    pub fn from_text(text: &str, rule: &CaRule) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((a, b)) = line.split_once("<=") else {
                return Err(CaError::parse(i + 1, 1, "expected `<state> <= <state>`"));
            };
            let look = |name: &str, col: usize| {
                rule.state_index(name.trim())
                    .ok_or_else(|| CaError::parse(i + 1, col, format!("unknown state {:?}", name.trim())))
            };
            let col_b = raw.find("<=").unwrap_or(0) + 3;
            pairs.push((look(a, 1)?, look(b, col_b)?));
        }
        Self::from_pairs(rule.num_states(), &pairs)
    }
}

fn centered(rule: &CaRule, limits: &Limits) -> Result<CaRule> {
    let count = saturating_pow(rule.num_states() as u64, rule.neighborhood().len() + 1);
    if rule.center_index().is_none() && count > limits.max_windows {
        return Err(CaError::resource(format!(
            "{count} windows exceed limit {}",
            limits.max_windows
        )));
    }
    rule.with_center(limits)
}

/// Calls `visit(window, image, center)` for every window of `rule`.
fn for_each_window(
    rule: &CaRule,
    limits: &Limits,
    mut visit: impl FnMut(&[State], State, State) -> bool,
) -> Result<()> {
    let rule = centered(rule, limits)?;
    let count = rule.window_count();
    if count > limits.max_windows {
        return Err(CaError::resource(format!(
            "{count} windows exceed limit {}",
            limits.max_windows
        )));
    }
    let center = rule.center_index().expect("centered");
    let mut odo = Odometer::new(rule.num_states() as State, rule.neighborhood().len());
    while let Some(w) = odo.next_word() {
        if !visit(w, rule.eval(w), w[center]) {
            break;
        }
    }
    Ok(())
}

/// Synthesizes the least order with `f(w) ≤ w₀` for all windows, or
/// reports a cycle of forced relations that breaks antisymmetry.
pub fn find_freezing_order(rule: &CaRule, limits: &Limits) -> Result<FreezingSynthesis> {
    let n = rule.num_states();
    let mut seen = vec![false; n * n];
    for_each_window(rule, limits, |_, img, c| {
        seen[img as usize * n + c as usize] = true;
        true
    })?;
    let pairs: Vec<(State, State)> = (0..n * n)
        .filter(|&i| seen[i] && i / n != i % n)
        .map(|i| ((i / n) as State, (i % n) as State))
        .collect();
    let leq = closure(n, &pairs);
    Ok(match antisymmetry_violation(n, &leq) {
        None => FreezingSynthesis::Freezing(StateOrder { n, leq }),
        Some((a, b)) => {
            let mut cycle = path(n, &pairs, a, b);
            cycle.extend_from_slice(&path(n, &pairs, b, a)[1..]);
            FreezingSynthesis::NotFreezing { cycle }
        }
    })
}

/// Checks `f(w) ≤ w₀` on every window.
pub fn check_freezing(rule: &CaRule, order: &StateOrder, limits: &Limits) -> Result<DecisionReport> {
    if order.num_states() != rule.num_states() {
        return Err(CaError::input(format!(
            "order covers {} states, rule has {}",
            order.num_states(),
            rule.num_states()
        )));
    }
    if let Some((a, b)) = antisymmetry_violation(order.n, &order.leq) {
        return Err(CaError::input(format!("order relates {a} and {b} both ways")));
    }
    let mut bad: Option<(Vec<State>, State, State)> = None;
    for_each_window(rule, limits, |w, img, c| {
        if order.leq(img, c) {
            true
        } else {
            bad = Some((w.to_vec(), img, c));
            false
        }
    })?;
    let nb_len = rule.neighborhood().len();
    Ok(match bad {
        None => DecisionReport::yes("every image is below the center state"),
        Some((w, img, c)) => {
            let names: Vec<&str> = w[..nb_len].iter().map(|&s| rule.state_name(s)).collect();
            DecisionReport::no(format!(
                "window ({}) maps to {} which is not below center {}",
                names.join(","),
                rule.state_name(img),
                rule.state_name(c)
            ))
        }
    })
}

/// Largest number of state changes of any tracked cell over `steps` steps.
/// Periodic configurations track every cell; bi-periodic ones the middle
/// section and one period of each tail; finite patterns the cells whose
/// light cone stays inside the pattern.
pub fn change_count_audit(rule: &CaRule, c: &Config, steps: usize) -> Result<usize> {
    if c.dimension() != rule.dimension() {
        return Err(CaError::Dimension {
            expected: rule.dimension(),
            found: c.dimension(),
        });
    }
    let mut counts: Vec<usize>;
    match c {
        Config::Periodic(p) => {
            p.check_alphabet(rule)?;
            counts = vec![0; p.cells().len()];
            let mut cur = p.clone();
            for _ in 0..steps {
                let next = step_periodic_unchecked(rule, &cur);
                for (k, (a, b)) in cur.cells().iter().zip(next.cells()).enumerate() {
                    counts[k] += (a != b) as usize;
                }
                cur = next;
            }
        }
        Config::BiPeriodic(b) => {
            b.check_alphabet(rule)?;
            let canon = b.canonical();
            let lo = -canon.origin() - canon.left().len() as i64;
            let hi = -canon.origin() + (canon.mid().len() + canon.right().len()) as i64;
            counts = vec![0; (hi - lo) as usize];
            let mut cur = canon;
            for _ in 0..steps {
                let next = step_biperiodic_unchecked(rule, &cur);
                for (k, z) in (lo..hi).enumerate() {
                    counts[k] += (cur.cell(z) != next.cell(z)) as usize;
                }
                cur = next;
            }
        }
        Config::Finite(u) => {
            u.check_alphabet(rule)?;
            let reach = rule.radius() * steps;
            let Some(keep) = u.radius().checked_sub(reach) else {
                return Ok(0);
            };
            let keep = keep as i64;
            let two_d = u.dimension() == 2;
            let ys: Vec<i64> = if two_d { (-keep..=keep).collect() } else { vec![0] };
            let cells: Vec<(i64, i64)> = ys
                .iter()
                .flat_map(|&y| (-keep..=keep).map(move |x| (x, y)))
                .collect();
            counts = vec![0; cells.len()];
            let mut prev: Vec<State> = cells.iter().map(|&(x, y)| u.get(x, y)).collect();
            let mut cur = u.clone();
            for _ in 0..steps {
                cur = crate::engine::evolve_window(rule, &cur, 1)?;
                for (k, &(x, y)) in cells.iter().enumerate() {
                    let s = cur.get(x, y);
                    counts[k] += (s != prev[k]) as usize;
                    prev[k] = s;
                }
            }
        }
    }
    Ok(counts.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PeriodicConfig;
    use crate::constructions::toy_rules;

    #[test]
    fn synthesis_examples() {
        let t = toy_rules();
        let lim = Limits::default();
        let id = find_freezing_order(&t.identity, &lim).unwrap();
        assert_eq!(id.order(), Some(&StateOrder::equality(2)));
        let or = find_freezing_order(&t.or_spread, &lim).unwrap();
        let o = or.order().unwrap();
        assert!(o.leq(1, 0) && !o.leq(0, 1));
        assert_eq!(o.generators(), vec![(1, 0)]);
        for r in [&t.not, &t.xor] {
            match find_freezing_order(r, &lim).unwrap() {
                FreezingSynthesis::NotFreezing { cycle } => {
                    assert_eq!(cycle.first(), cycle.last());
                    assert!(cycle.len() >= 3);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn check_examples() {
        let t = toy_rules();
        let lim = Limits::default();
        assert!(check_freezing(&t.identity, &StateOrder::equality(2), &lim).unwrap().is_yes());
        let down = StateOrder::from_pairs(2, &[(1, 0)]).unwrap();
        assert!(check_freezing(&t.or_spread, &down, &lim).unwrap().is_yes());
        let up = StateOrder::from_pairs(2, &[(0, 1)]).unwrap();
        let rep = check_freezing(&t.or_spread, &up, &lim).unwrap();
        assert!(!rep.is_yes());
        assert!(rep.note.contains("(0,0,1)"), "{}", rep.note);
    }

    #[test]
    fn rejects_cyclic_orders() {
        assert!(StateOrder::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(StateOrder::from_pairs(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn shift_is_reexpressed_with_center() {
        let t = toy_rules();
        let lim = Limits::default();
        assert!(find_freezing_order(&t.shift, &lim).unwrap().order().is_none());
    }

    #[test]
    fn text_roundtrip() {
        let t = toy_rules();
        let o = StateOrder::from_pairs(2, &[(1, 0)]).unwrap();
        let text = o.to_text(&t.or_spread);
        assert_eq!(text, "1 <= 0\n");
        assert_eq!(StateOrder::from_text(&text, &t.or_spread).unwrap(), o);
        assert!(StateOrder::from_text("1 < 0", &t.or_spread).is_err());
    }

    #[test]
    fn audit_examples() {
        let t = toy_rules();
        let c: Config = PeriodicConfig::new_1d(vec![0, 1, 1, 0]).unwrap().into();
        assert_eq!(change_count_audit(&t.identity, &c, 10).unwrap(), 0);
        let mut cells = vec![0; 8];
        cells[3] = 1;
        let c: Config = PeriodicConfig::new_1d(cells).unwrap().into();
        assert!(change_count_audit(&t.or_spread, &c, 16).unwrap() <= 1);
        assert_eq!(change_count_audit(&t.not, &c, 5).unwrap(), 5);
    }
}
