//! Local rules: alphabet, neighborhood and transition map.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{CaError, Result};
use crate::limits::{saturating_pow, Limits};

/// Index of a state in a rule's alphabet.
pub type State = u32;

/// Neighborhood offset. In dimension 1 only `dx` is used and `dy` is 0.
/// In dimension 2, `dy > 0` points north.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset {
    pub dx: i32,
    pub dy: i32,
}

impl Offset {
    pub const ORIGIN: Offset = Offset { dx: 0, dy: 0 };

    pub const fn d1(dx: i32) -> Self {
        Offset { dx, dy: 0 }
    }

    pub const fn d2(dx: i32, dy: i32) -> Self {
        Offset { dx, dy }
    }

    pub fn norm(&self) -> usize {
        self.dx.unsigned_abs().max(self.dy.unsigned_abs()) as usize
    }

    pub fn neg(&self) -> Offset {
        Offset {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// 1D elementary neighborhood `(-1, 0, +1)`.
pub fn elementary_neighborhood() -> Vec<Offset> {
    vec![Offset::d1(-1), Offset::d1(0), Offset::d1(1)]
}

/// Von Neumann neighborhood in the order center, north, east, south, west.
pub fn von_neumann() -> Vec<Offset> {
    vec![
        Offset::d2(0, 0),
        Offset::d2(0, 1),
        Offset::d2(1, 0),
        Offset::d2(0, -1),
        Offset::d2(-1, 0),
    ]
}

pub type LocalFn = Arc<dyn Fn(&[State]) -> State + Send + Sync>;

#[derive(Clone)]
enum LocalMap {
    /// Dense table indexed by the window read as a base-|Q| number, first
    /// neighborhood offset most significant.
    Table(Arc<[State]>),
    /// Local map evaluated on demand, for alphabets whose table would not fit.
    Computed(LocalFn),
}

/// A cellular automaton given by a local rule.
#[derive(Clone)]
pub struct CaRule {
    dimension: usize,
    states: Arc<[String]>,
    neighborhood: Arc<[Offset]>,
    map: LocalMap,
    radius: usize,
    center: Option<usize>,
}

impl fmt::Debug for CaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaRule")
            .field("dimension", &self.dimension)
            .field("states", &self.states.len())
            .field("neighborhood", &self.neighborhood)
            .field("tabulated", &self.table().is_some())
            .finish()
    }
}

fn validate_header(dimension: usize, states: &[String], neighborhood: &[Offset]) -> Result<()> {
    if dimension != 1 && dimension != 2 {
        return Err(CaError::input(format!(
            "dimension must be 1 or 2, got {dimension}"
        )));
    }
    if states.is_empty() {
        return Err(CaError::input("alphabet is empty"));
    }
    let mut seen = HashSet::new();
    for s in states {
        if s.is_empty() || s.chars().any(char::is_whitespace) || s == "->" || s == "<=" {
            return Err(CaError::input(format!("illegal state name {s:?}")));
        }
        if !seen.insert(s.as_str()) {
            return Err(CaError::input(format!("duplicate state name {s:?}")));
        }
    }
    if states.len() > State::MAX as usize {
        return Err(CaError::input("alphabet too large"));
    }
    if neighborhood.is_empty() {
        return Err(CaError::input("neighborhood is empty"));
    }
    let mut seen = HashSet::new();
    for o in neighborhood {
        if dimension == 1 && o.dy != 0 {
            return Err(CaError::input(format!(
                "offset ({},{}) is not one-dimensional",
                o.dx, o.dy
            )));
        }
        if !seen.insert(*o) {
            return Err(CaError::input(format!(
                "duplicate neighborhood offset {}",
                format_offset(*o, dimension)
            )));
        }
    }
    Ok(())
}

pub(crate) fn format_offset(o: Offset, dimension: usize) -> String {
    if dimension == 1 {
        o.dx.to_string()
    } else {
        format!("{},{}", o.dx, o.dy)
    }
}

impl CaRule {
    /// Builds a rule from a dense table.
    pub fn from_table(
        dimension: usize,
        states: Vec<String>,
        neighborhood: Vec<Offset>,
        table: Vec<State>,
    ) -> Result<Self> {
        validate_header(dimension, &states, &neighborhood)?;
        let q = states.len() as u64;
        let expected = saturating_pow(q, neighborhood.len());
        if table.len() as u64 != expected {
            return Err(CaError::input(format!(
                "table has {} entries, expected {}",
                table.len(),
                expected
            )));
        }
        if let Some((i, s)) = table.iter().enumerate().find(|(_, &s)| s as u64 >= q) {
            return Err(CaError::input(format!(
                "table entry {i} maps to state {s}, alphabet has {q} states"
            )));
        }
        Ok(Self::assemble(dimension, states, neighborhood, LocalMap::Table(table.into())))
    }

    /// Builds a rule whose local map is evaluated on demand. The closure must
    /// return a valid state index for every window over the alphabet.
    pub fn from_fn(
        dimension: usize,
        states: Vec<String>,
        neighborhood: Vec<Offset>,
        f: impl Fn(&[State]) -> State + Send + Sync + 'static,
    ) -> Result<Self> {
        validate_header(dimension, &states, &neighborhood)?;
        Ok(Self::assemble(
            dimension,
            states,
            neighborhood,
            LocalMap::Computed(Arc::new(f)),
        ))
    }

    /// Builds a dense-table rule by evaluating `f` on every window.
    pub fn tabulate(
        dimension: usize,
        states: Vec<String>,
        neighborhood: Vec<Offset>,
        limits: &Limits,
        mut f: impl FnMut(&[State]) -> State,
    ) -> Result<Self> {
        validate_header(dimension, &states, &neighborhood)?;
        let q = states.len() as State;
        let entries = saturating_pow(q as u64, neighborhood.len());
        if entries > limits.max_table_entries {
            return Err(CaError::resource(format!(
                "transition table needs {entries} entries, limit is {}",
                limits.max_table_entries
            )));
        }
        let mut table = Vec::with_capacity(entries as usize);
        let mut odo = Odometer::new(q, neighborhood.len());
        while let Some(w) = odo.next_word() {
            let s = f(w);
            if s >= q {
                return Err(CaError::input(format!("local map produced invalid state {s}")));
            }
            table.push(s);
        }
        Ok(Self::assemble(dimension, states, neighborhood, LocalMap::Table(table.into())))
    }

    fn assemble(
        dimension: usize,
        states: Vec<String>,
        neighborhood: Vec<Offset>,
        map: LocalMap,
    ) -> Self {
        let radius = neighborhood.iter().map(Offset::norm).max().unwrap_or(0);
        let center = neighborhood.iter().position(|o| *o == Offset::ORIGIN);
        CaRule {
            dimension,
            states: states.into(),
            neighborhood: neighborhood.into(),
            map,
            radius,
            center,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn neighborhood(&self) -> &[Offset] {
        &self.neighborhood
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Position of the zero offset in the neighborhood, if present.
    pub fn center_index(&self) -> Option<usize> {
        self.center
    }

    pub fn state_name(&self, s: State) -> &str {
        &self.states[s as usize]
    }

    pub fn state_index(&self, name: &str) -> Option<State> {
        self.states.iter().position(|n| n == name).map(|i| i as State)
    }

    /// The dense table, when the rule is tabulated.
    pub fn table(&self) -> Option<&[State]> {
        match &self.map {
            LocalMap::Table(t) => Some(t),
            LocalMap::Computed(_) => None,
        }
    }

    /// Number of distinct windows, `|Q|^|V|`, saturating.
    pub fn window_count(&self) -> u64 {
        saturating_pow(self.states.len() as u64, self.neighborhood.len())
    }

    /// Evaluates the local map, validating the window.
    pub fn apply_local(&self, window: &[State]) -> Result<State> {
        if window.len() != self.neighborhood.len() {
            return Err(CaError::input(format!(
                "window has {} states, neighborhood has {} offsets",
                window.len(),
                self.neighborhood.len()
            )));
        }
        let q = self.states.len() as State;
        if let Some(&s) = window.iter().find(|&&s| s >= q) {
            return Err(CaError::input(format!(
                "state index {s} out of range for alphabet of size {q}"
            )));
        }
        Ok(self.eval(window))
    }

    /// Evaluates the local map without validation. The caller guarantees the
    /// window length and state range.
    #[inline]
    pub fn eval(&self, window: &[State]) -> State {
        match &self.map {
            LocalMap::Table(t) => {
                let q = self.states.len();
                let mut idx = 0usize;
                for &s in window {
                    idx = idx * q + s as usize;
                }
                t[idx]
            }
            LocalMap::Computed(f) => f(window),
        }
    }

    /// Returns a tabulated copy of this rule.
    pub fn to_table(&self, limits: &Limits) -> Result<CaRule> {
        if self.table().is_some() {
            return Ok(self.clone());
        }
        CaRule::tabulate(
            self.dimension,
            self.states.to_vec(),
            self.neighborhood.to_vec(),
            limits,
            |w| self.eval(w),
        )
    }

    /// True when both rules share dimension, alphabet and neighborhood and
    /// agree on every window.
    pub fn same_behavior(&self, other: &CaRule, limits: &Limits) -> Result<bool> {
        if self.dimension != other.dimension
            || self.states != other.states
            || self.neighborhood != other.neighborhood
        {
            return Ok(false);
        }
        if let (Some(a), Some(b)) = (self.table(), other.table()) {
            return Ok(a == b);
        }
        let count = self.window_count();
        if count > limits.max_windows {
            return Err(CaError::resource(format!(
                "comparing {count} windows exceeds limit {}",
                limits.max_windows
            )));
        }
        let mut odo = Odometer::new(self.num_states() as State, self.neighborhood.len());
        while let Some(w) = odo.next_word() {
            if self.eval(w) != other.eval(w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-expresses the rule over `V ∪ {0}` so a center value is available.
    /// Returns the rule unchanged when the center offset is already present.
    pub fn with_center(&self, limits: &Limits) -> Result<CaRule> {
        if self.center.is_some() {
            return Ok(self.clone());
        }
        let mut nb = self.neighborhood.to_vec();
        nb.push(Offset::ORIGIN);
        let k = self.neighborhood.len();
        let inner = self.clone();
        if self.table().is_some() {
            CaRule::tabulate(self.dimension, self.states.to_vec(), nb, limits, |w| {
                inner.eval(&w[..k])
            })
        } else {
            CaRule::from_fn(self.dimension, self.states.to_vec(), nb, move |w| {
                inner.eval(&w[..k])
            })
        }
    }
}

/// Enumerates all words of a given length over `0..base` in lexicographic
/// order (last position fastest).
pub struct Odometer {
    base: State,
    word: Vec<State>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(base: State, len: usize) -> Self {
        Odometer {
            base,
            word: vec![0; len],
            started: false,
            done: base == 0,
        }
    }

    pub fn next_word(&mut self) -> Option<&[State]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        for i in (0..self.word.len()).rev() {
            self.word[i] += 1;
            if self.word[i] < self.base {
                return Some(&self.word);
            }
            self.word[i] = 0;
        }
        self.done = true;
        None
    }
}
