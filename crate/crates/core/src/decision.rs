//! Prediction, reachability, cycle-length and column-language problems.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;

use crate::config::{BiPeriodicConfig, FinitePattern, PeriodicConfig};
use crate::constructions::{forbidden_pair, zigzag, ZigzagAlphabet, ZigzagState};
use crate::engine::{evolve_window, step_biperiodic_unchecked, step_periodic_unchecked};
use crate::error::{CaError, Result};
use crate::limits::{saturating_pow, Limits};
use crate::phi::PhiSpec;
use crate::rule::{CaRule, Odometer, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    /// Command-line exit code: 0 yes, 1 no, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleInfo {
    pub transient: u64,
    pub cycle: u64,
}

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub witness_time: Option<u64>,
    pub note: String,
    pub measured: Option<CycleInfo>,
}

impl DecisionReport {
    pub fn yes(note: impl Into<String>) -> Self {
        Self::new(Verdict::Yes, note)
    }

    pub fn no(note: impl Into<String>) -> Self {
        Self::new(Verdict::No, note)
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        Self::new(Verdict::Unknown, note)
    }

    fn new(verdict: Verdict, note: impl Into<String>) -> Self {
        DecisionReport {
            verdict,
            witness_time: None,
            note: note.into(),
            measured: None,
        }
    }

    pub fn at(mut self, t: u64) -> Self {
        self.witness_time = Some(t);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    /// Line-oriented rendering: `verdict:`, then `witness_time:`,
    /// `transient:`, `cycle:` and `note:` when present.
    pub fn to_text(&self) -> String {
        let mut s = format!("verdict: {}\n", self.verdict);
        if let Some(t) = self.witness_time {
            s.push_str(&format!("witness_time: {t}\n"));
        }
        if let Some(m) = self.measured {
            s.push_str(&format!("transient: {}\ncycle: {}\n", m.transient, m.cycle));
        }
        for line in self.note.lines().filter(|l| !l.is_empty()) {
            s.push_str(&format!("note: {line}\n"));
        }
        s
    }
}

/// `F^t(u)` at the center, for `u` over exactly `B(r·t)`.
pub fn pred(rule: &CaRule, t: usize, u: &FinitePattern) -> Result<State> {
    if t == 0 {
        return Err(CaError::input("prediction needs t > 0"));
    }
    let need = rule.radius() * t;
    if u.radius() != need {
        return Err(CaError::input(format!(
            "pattern radius is {}, prediction over {t} steps needs exactly {need}",
            u.radius()
        )));
    }
    Ok(evolve_window(rule, u, t)?.center())
}

fn check_state(rule: &CaRule, q: State) -> Result<()> {
    if q as usize >= rule.num_states() {
        return Err(CaError::input(format!(
            "state {q} out of range for alphabet of size {}",
            rule.num_states()
        )));
    }
    Ok(())
}

/// States of cell 0 at times `0..=steps`. Stepping stops once the
/// configuration is a fixed point; the remaining entries repeat its value.
pub fn cell_zero_history(
    rule: &CaRule,
    c: &BiPeriodicConfig,
    steps: u64,
    limits: &Limits,
) -> Result<Vec<State>> {
    c.check_alphabet(rule)?;
    let mut cur = c.trimmed();
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(cur.cell(0));
    for t in 0..steps {
        let next = step_biperiodic_unchecked(rule, &cur);
        if next.mid().len() > limits.max_cells {
            return Err(CaError::resource(format!(
                "middle section reached {} cells at step {}, limit is {}",
                next.mid().len(),
                t + 1,
                limits.max_cells
            )));
        }
        if next == cur {
            out.resize(steps as usize + 1, cur.cell(0));
            break;
        }
        cur = next;
        out.push(cur.cell(0));
    }
    Ok(out)
}

fn first_visits(history: &[State], num_states: usize) -> Vec<Option<u64>> {
    let mut first = vec![None; num_states];
    for (t, &s) in history.iter().enumerate() {
        first[s as usize].get_or_insert(t as u64);
    }
    first
}

/// Bounded search for `t ≤ horizon` with `F^t(c)_0 = q` (`t = 0` included).
/// Answers yes with the first such `t`, otherwise unknown.
pub fn ubpred_bounded(
    rule: &CaRule,
    c: &BiPeriodicConfig,
    q: State,
    horizon: u64,
    limits: &Limits,
) -> Result<DecisionReport> {
    check_state(rule, q)?;
    Ok(ubpred_bounded_all(rule, c, horizon, limits)?.swap_remove(q as usize))
}

/// [`ubpred_bounded`] for every state at once, indexed by state.
pub fn ubpred_bounded_all(
    rule: &CaRule,
    c: &BiPeriodicConfig,
    horizon: u64,
    limits: &Limits,
) -> Result<Vec<DecisionReport>> {
    let history = cell_zero_history(rule, c, horizon, limits)?;
    Ok(first_visits(&history, rule.num_states())
        .into_iter()
        .enumerate()
        .map(|(q, first)| match first {
            Some(t) => DecisionReport::yes(format!(
                "cell 0 is in state {} at time {t}",
                rule.state_name(q as State)
            ))
            .at(t),
            None => DecisionReport::unknown(format!(
                "{} not observed at cell 0 up to horizon {horizon}",
                rule.state_name(q as State)
            )),
        })
        .collect())
}

/// Stabilization horizon `9L² + 10L + 10` for a description of length `L`.
pub fn zigzag_horizon(description_length: usize) -> u64 {
    let l = description_length as u64;
    9 * l * l + 10 * l + 10
}

/// Structural situation of cell 0 in a configuration of `Z_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZigzagCase {
    /// The configuration shows the error state or a forbidden pattern.
    Invalid,
    /// Cell 0 lies in a working zone bounded on both sides.
    FiniteZone { len: usize },
    /// Cell 0 lies in a working zone unbounded on at least one side.
    InfiniteZone,
    /// Cell 0 is not in a working zone.
    OutsideZone,
}

impl fmt::Display for ZigzagCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagCase::Invalid => write!(f, "invalid configuration"),
            ZigzagCase::FiniteZone { len } => write!(f, "cell 0 in a finite working zone of length {len}"),
            ZigzagCase::InfiniteZone => write!(f, "cell 0 in an infinite working zone"),
            ZigzagCase::OutsideZone => write!(f, "cell 0 outside any working zone"),
        }
    }
}

/// Classifies cell 0 of a `Z_F` configuration into the four structural
/// cases that bound how long its state can keep changing.
pub fn classify_zigzag(inner_states: usize, c: &BiPeriodicConfig) -> ZigzagCase {
    let alpha = ZigzagAlphabet::new(inner_states);
    let c = c.canonical();
    let (l, m, r) = (c.left().len() as i64, c.mid().len() as i64, c.right().len() as i64);
    // Cells spanning two periods of each tail and the middle see every
    // adjacent pair that occurs anywhere.
    let from = -c.origin() - 2 * l;
    let to = -c.origin() + m + 2 * r;
    let dec = |z: i64| alpha.decode(c.cell(z));
    for z in from..to {
        if dec(z) == ZigzagState::Error || forbidden_pair(dec(z), dec(z + 1)) {
            return ZigzagCase::Invalid;
        }
    }
    let is_zone = |z: i64| matches!(dec(z), ZigzagState::Cell { .. });
    if !is_zone(0) {
        return ZigzagCase::OutsideZone;
    }
    let mut lo = 0;
    while is_zone(lo - 1) {
        lo -= 1;
        if lo < from {
            return ZigzagCase::InfiniteZone;
        }
    }
    let mut hi = 0;
    while is_zone(hi + 1) {
        hi += 1;
        if hi > to {
            return ZigzagCase::InfiniteZone;
        }
    }
    ZigzagCase::FiniteZone {
        len: (hi - lo + 1) as usize,
    }
}

/// Exact reachability for `Z_F`: simulates `9L² + 10L + 10` steps, after
/// which the state of cell 0 no longer changes.
pub fn ubpred_zigzag(
    inner: &CaRule,
    c: &BiPeriodicConfig,
    q: State,
    limits: &Limits,
) -> Result<DecisionReport> {
    let z = zigzag(inner)?;
    check_state(&z, q)?;
    Ok(zigzag_reports(inner, &z, c, limits)?.swap_remove(q as usize))
}

/// [`ubpred_zigzag`] for every state at once, indexed by state.
pub fn ubpred_zigzag_all(
    inner: &CaRule,
    c: &BiPeriodicConfig,
    limits: &Limits,
) -> Result<Vec<DecisionReport>> {
    let z = zigzag(inner)?;
    zigzag_reports(inner, &z, c, limits)
}

fn zigzag_reports(
    inner: &CaRule,
    z: &CaRule,
    c: &BiPeriodicConfig,
    limits: &Limits,
) -> Result<Vec<DecisionReport>> {
    c.check_alphabet(z)?;
    let canon = c.canonical();
    let l = canon.description_length();
    let horizon = zigzag_horizon(l);
    let case = classify_zigzag(inner.num_states(), &canon);
    let history = cell_zero_history(z, &canon, horizon, limits)?;
    let note = format!("{case}; L = {l}, horizon {horizon}");
    Ok(first_visits(&history, z.num_states())
        .into_iter()
        .map(|first| match first {
            Some(t) => DecisionReport::yes(note.clone()).at(t),
            None => DecisionReport::no(note.clone()),
        })
        .collect())
}

/// Exact transient length and cycle length of the orbit of a periodic
/// configuration, found by remembering every configuration visited.
pub fn cycle_structure(rule: &CaRule, c: &PeriodicConfig, limits: &Limits) -> Result<CycleInfo> {
    c.check_alphabet(rule)?;
    let mut seen: HashMap<PeriodicConfig, u64> = HashMap::new();
    let mut cur = c.clone();
    let mut t = 0u64;
    loop {
        if let Some(&first) = seen.get(&cur) {
            return Ok(CycleInfo {
                transient: first,
                cycle: t - first,
            });
        }
        if seen.len() >= limits.max_orbit_states {
            return Err(CaError::resource(format!(
                "no repetition after {t} steps ({} configurations stored)",
                seen.len()
            )));
        }
        let next = step_periodic_unchecked(rule, &cur);
        seen.insert(cur, t);
        cur = next;
        t += 1;
    }
}

/// Decides whether the cycle reached from `c` is strictly longer than
/// `φ(n)`, where `n` is the period (1D) or the side of the square torus (2D).
pub fn cycle_gt_phi(
    rule: &CaRule,
    c: &PeriodicConfig,
    phi: &PhiSpec,
    limits: &Limits,
) -> Result<DecisionReport> {
    let n = match c.dimension() {
        1 => c.width(),
        _ if c.width() == c.height() => c.width(),
        _ => {
            return Err(CaError::input(format!(
                "expected a square period, got {}x{}",
                c.width(),
                c.height()
            )))
        }
    };
    let info = cycle_structure(rule, c, limits)?;
    let bound = phi.eval(n as u64);
    let longer = BigUint::from(info.cycle) > bound;
    let note = format!("n = {n}, phi(n) = {bound}");
    let mut report = if longer {
        DecisionReport::yes(note)
    } else {
        DecisionReport::no(note)
    };
    report.measured = Some(info);
    Ok(report)
}

/// A column word: `k` consecutive rows of `n` cells, stored time-major.
pub type ColumnWord = Vec<State>;

/// Every `k`-step column word of width `n` (cells `1..=n`) occurring in a
/// space-time diagram, by enumerating all initial windows of width
/// `n + 2r(k-1)`.
pub fn column_language(
    rule: &CaRule,
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<BTreeSet<ColumnWord>> {
    if rule.dimension() != 1 {
        return Err(CaError::Dimension {
            expected: 1,
            found: rule.dimension(),
        });
    }
    if n == 0 || k == 0 {
        return Err(CaError::input("column width and depth must be positive"));
    }
    let r = rule.radius();
    let width = n + 2 * r * (k - 1);
    let count = saturating_pow(rule.num_states() as u64, width);
    if count > limits.max_windows {
        return Err(CaError::resource(format!(
            "{count} initial windows exceed limit {}",
            limits.max_windows
        )));
    }
    let nb = rule.neighborhood();
    let mut odo = Odometer::new(rule.num_states() as State, width);
    let mut words = BTreeSet::new();
    let mut rowbuf: Vec<State> = Vec::with_capacity(width);
    let mut next: Vec<State> = Vec::with_capacity(width);
    let mut window = vec![0 as State; nb.len()];
    while let Some(init) = odo.next_word() {
        let mut word = Vec::with_capacity(n * k);
        rowbuf.clear();
        rowbuf.extend_from_slice(init);
        for step in 0..k {
            let margin = r * (k - 1 - step);
            word.extend_from_slice(&rowbuf[margin..margin + n]);
            if step + 1 == k {
                break;
            }
            next.clear();
            for i in r..rowbuf.len() - r {
                for (j, o) in nb.iter().enumerate() {
                    window[j] = rowbuf[(i as i64 + o.dx as i64) as usize];
                }
                next.push(rule.eval(&window));
            }
            std::mem::swap(&mut rowbuf, &mut next);
        }
        words.insert(word);
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{rule110, toy_rules};

    fn pattern(cells: &[State]) -> FinitePattern {
        FinitePattern::new_1d(cells.to_vec()).unwrap()
    }

    #[test]
    fn pred_examples() {
        assert_eq!(pred(&rule110(), 1, &pattern(&[1, 1, 0])).unwrap(), 1);
        assert_eq!(pred(&rule110(), 2, &pattern(&[0, 0, 1, 0, 0])).unwrap(), 1);
        let id = toy_rules().identity;
        assert_eq!(pred(&id, 2, &pattern(&[0, 1, 1, 0, 1])).unwrap(), 1);
        assert!(pred(&rule110(), 2, &pattern(&[0, 1, 0])).is_err());
        assert!(pred(&rule110(), 0, &pattern(&[0])).is_err());
    }

    #[test]
    fn ubpred_bounded_examples() {
        let r = rule110();
        let limits = Limits::default();
        let c = BiPeriodicConfig::new(vec![0], vec![1], vec![0], 0).unwrap();
        let rep = ubpred_bounded(&r, &c, 1, 5, &limits).unwrap();
        assert_eq!((rep.verdict, rep.witness_time), (Verdict::Yes, Some(0)));
        let zero = BiPeriodicConfig::uniform(0);
        assert_eq!(ubpred_bounded(&r, &zero, 1, 100, &limits).unwrap().verdict, Verdict::Unknown);
        assert!(ubpred_bounded(&r, &zero, 2, 100, &limits).is_err());
    }

    #[test]
    fn cycle_examples() {
        let t = toy_rules();
        let limits = Limits::default();
        let c = PeriodicConfig::new_1d(vec![0, 1, 1]).unwrap();
        assert_eq!(
            cycle_structure(&t.identity, &c, &limits).unwrap(),
            CycleInfo { transient: 0, cycle: 1 }
        );
        let z = PeriodicConfig::new_1d(vec![0]).unwrap();
        assert_eq!(
            cycle_structure(&t.not, &z, &limits).unwrap(),
            CycleInfo { transient: 0, cycle: 2 }
        );
        let one = PhiSpec::constant(1);
        assert_eq!(cycle_gt_phi(&t.identity, &c, &one, &limits).unwrap().verdict, Verdict::No);
        assert_eq!(cycle_gt_phi(&t.not, &z, &one, &limits).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn cycle_budget() {
        let t = toy_rules();
        let limits = Limits {
            max_orbit_states: 1,
            ..Limits::default()
        };
        let z = PeriodicConfig::new_1d(vec![0]).unwrap();
        assert!(matches!(cycle_structure(&t.not, &z, &limits), Err(CaError::Resource(_))));
    }

    #[test]
    fn cycle_gt_phi_needs_square() {
        let t = toy_rules();
        let c = PeriodicConfig::new_2d(2, 3, vec![0; 6]).unwrap();
        let phi = PhiSpec::constant(1);
        let r = crate::constructions::signed_majority();
        assert!(cycle_gt_phi(&r, &c, &phi, &Limits::default()).is_err());
        let _ = t;
    }

    #[test]
    fn column_language_examples() {
        let t = toy_rules();
        let limits = Limits::default();
        let id = column_language(&t.identity, 1, 2, &limits).unwrap();
        assert_eq!(id, BTreeSet::from([vec![0, 0], vec![1, 1]]));
        let all: BTreeSet<ColumnWord> = BTreeSet::from([vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(column_language(&t.shift, 1, 2, &limits).unwrap(), all);
        assert_eq!(column_language(&rule110(), 1, 2, &limits).unwrap(), all);
        assert_eq!(column_language(&t.not, 2, 2, &limits).unwrap().len(), 4);
    }

    #[test]
    fn column_language_budget() {
        let limits = Limits {
            max_windows: 100,
            ..Limits::default()
        };
        assert!(matches!(
            column_language(&rule110(), 3, 3, &limits),
            Err(CaError::Resource(_))
        ));
    }

    #[test]
    fn report_text() {
        let mut r = DecisionReport::yes("found").at(3);
        r.measured = Some(CycleInfo { transient: 1, cycle: 2 });
        assert_eq!(
            r.to_text(),
            "verdict: yes\nwitness_time: 3\ntransient: 1\ncycle: 2\nnote: found\n"
        );
        assert_eq!(Verdict::Unknown.exit_code(), 2);
    }
}
