//! Configuration representations.

use crate::error::{CaError, Result};
use crate::rule::{CaRule, State};

/// A spatially periodic configuration: a word (1D) or a torus grid (2D).
///
/// 2D cells are stored row by row with `y` growing northward, so the cell
/// `(x, y)` lives at `cells[y * width + x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicConfig {
    dimension: usize,
    width: usize,
    height: usize,
    cells: Vec<State>,
}

impl PeriodicConfig {
    pub fn new_1d(cells: Vec<State>) -> Result<Self> {
        if cells.is_empty() {
            return Err(CaError::input("period must be at least 1"));
        }
        Ok(PeriodicConfig {
            dimension: 1,
            width: cells.len(),
            height: 1,
            cells,
        })
    }

    pub fn new_2d(width: usize, height: usize, cells: Vec<State>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(CaError::input("period must be at least 1 in each direction"));
        }
        if cells.len() != width * height {
            return Err(CaError::input(format!(
                "grid {width}x{height} needs {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(PeriodicConfig {
            dimension: 2,
            width,
            height,
            cells,
        })
    }

    pub fn uniform(dimension: usize, width: usize, height: usize, state: State) -> Result<Self> {
        match dimension {
            1 => Self::new_1d(vec![state; width]),
            2 => Self::new_2d(width, height, vec![state; width * height]),
            d => Err(CaError::input(format!("unsupported dimension {d}"))),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Height of the grid; always 1 in dimension 1.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Period vector: `[p]` in 1D, `[width, height]` in 2D.
    pub fn period(&self) -> Vec<usize> {
        if self.dimension == 1 {
            vec![self.width]
        } else {
            vec![self.width, self.height]
        }
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<State> {
        self.cells
    }

    /// State at `(x, y)`, wrapping around the torus.
    pub fn get(&self, x: i64, y: i64) -> State {
        let xi = x.rem_euclid(self.width as i64) as usize;
        let yi = y.rem_euclid(self.height as i64) as usize;
        self.cells[yi * self.width + xi]
    }

    pub(crate) fn check_alphabet(&self, rule: &CaRule) -> Result<()> {
        if self.dimension != rule.dimension() {
            return Err(CaError::Dimension {
                expected: rule.dimension(),
                found: self.dimension,
            });
        }
        let q = rule.num_states() as State;
        if let Some(&s) = self.cells.iter().find(|&&s| s >= q) {
            return Err(CaError::input(format!(
                "configuration uses state {s}, alphabet has {q} states"
            )));
        }
        Ok(())
    }
}

/// A 1D eventually bi-periodic configuration `^∞left · mid · right^∞`.
///
/// `mid` occupies positions `0..mid.len()` of its own coordinate frame; the
/// left tail fills negative positions (position -1 holds the last letter of
/// `left`), the right tail fills positions from `mid.len()` on. Cell 0 of
/// the configuration sits at frame position `origin`, which may lie outside
/// the middle section.
#[derive(Clone, Debug, Eq)]
pub struct BiPeriodicConfig {
    left: Vec<State>,
    mid: Vec<State>,
    right: Vec<State>,
    origin: i64,
}

impl PartialEq for BiPeriodicConfig {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.left == b.left && a.mid == b.mid && a.right == b.right && a.origin == b.origin
    }
}

impl std::hash::Hash for BiPeriodicConfig {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        let c = self.canonical();
        (c.left, c.mid, c.right, c.origin).hash(h);
    }
}

fn primitive_root(w: &[State]) -> Vec<State> {
    let n = w.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

impl BiPeriodicConfig {
    pub fn new(left: Vec<State>, mid: Vec<State>, right: Vec<State>, origin: i64) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(CaError::input("periodic tails must be non-empty"));
        }
        Ok(BiPeriodicConfig {
            left,
            mid,
            right,
            origin,
        })
    }

    /// The spatially uniform configuration.
    pub fn uniform(state: State) -> Self {
        BiPeriodicConfig {
            left: vec![state],
            mid: vec![],
            right: vec![state],
            origin: 0,
        }
    }

    pub fn left(&self) -> &[State] {
        &self.left
    }

    pub fn mid(&self) -> &[State] {
        &self.mid
    }

    pub fn right(&self) -> &[State] {
        &self.right
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// `|left| + |mid| + |right|`.
    pub fn description_length(&self) -> usize {
        self.left.len() + self.mid.len() + self.right.len()
    }

    /// State at frame position `p`.
    fn at(&self, p: i64) -> State {
        let m = self.mid.len() as i64;
        if p < 0 {
            self.left[p.rem_euclid(self.left.len() as i64) as usize]
        } else if p >= m {
            self.right[(p - m).rem_euclid(self.right.len() as i64) as usize]
        } else {
            self.mid[p as usize]
        }
    }

    /// State of cell `z`.
    pub fn cell(&self, z: i64) -> State {
        self.at(z + self.origin)
    }

    /// Absolute coordinates `[first, last]` covered by the middle section,
    /// or `None` if it is empty.
    pub fn mid_span(&self) -> Option<(i64, i64)> {
        if self.mid.is_empty() {
            None
        } else {
            Some((-self.origin, -self.origin + self.mid.len() as i64 - 1))
        }
    }

    /// Translates the configuration: the result's cell `z` is this one's
    /// cell `z + k`.
    pub fn shifted(&self, k: i64) -> Self {
        BiPeriodicConfig {
            origin: self.origin + k,
            ..self.clone()
        }
    }

    /// Re-frames so that the middle section covers frame positions `lo..hi`
    /// of the current frame (`lo <= 0`, `hi >= mid.len()`). Tail lengths
    /// are kept.
    fn reframe(&self, lo: i64, hi: i64) -> Self {
        let l = self.left.len() as i64;
        let r = self.right.len() as i64;
        BiPeriodicConfig {
            left: (0..l).map(|j| self.at(lo - l + j)).collect(),
            mid: (lo..hi).map(|p| self.at(p)).collect(),
            right: (0..r).map(|j| self.at(hi + j)).collect(),
            origin: self.origin - lo,
        }
    }

    /// Middle section extended to cover absolute cells `from..=to`.
    pub fn expanded_to(&self, from: i64, to: i64) -> Self {
        let lo = (from + self.origin).min(0);
        let hi = (to + self.origin + 1).max(self.mid.len() as i64);
        self.reframe(lo, hi)
    }

    /// Absorbs middle letters that continue a tail, keeping tail lengths.
    pub fn trimmed(&self) -> Self {
        let n = self.mid.len();
        let l = self.left.len();
        let r = self.right.len();
        let mut k = 0;
        while k < n && self.mid[k] == self.left[k % l] {
            k += 1;
        }
        let mut j = 0;
        while j < n - k && self.mid[n - 1 - j] == self.right[(r - 1 - (j % r)) % r] {
            j += 1;
        }
        if k == 0 && j == 0 {
            return self.clone();
        }
        // Shrinking the frame works like reframe with lo > 0: the tails are
        // read through the periodic extension, which the absorbed letters match.
        let lo = k as i64;
        let hi = (n - j) as i64;
        let ll = l as i64;
        let rl = r as i64;
        BiPeriodicConfig {
            left: (0..ll).map(|i| self.left[(lo - ll + i).rem_euclid(ll) as usize]).collect(),
            mid: self.mid[k..n - j].to_vec(),
            right: (0..rl)
                .map(|i| {
                    let p = hi + i;
                    if p < n as i64 {
                        self.mid[p as usize]
                    } else {
                        self.at(p)
                    }
                })
                .collect(),
            origin: self.origin - lo,
        }
    }

    /// Canonical representative: primitive tails, maximal left tail, minimal
    /// middle subject to containing cell 0. Two descriptions denote the same
    /// configuration iff their canonical forms are identical.
    pub fn canonical(&self) -> Self {
        let mut c = BiPeriodicConfig {
            left: primitive_root(&self.left),
            mid: self.mid.clone(),
            right: primitive_root(&self.right),
            origin: self.origin,
        }
        .trimmed();
        if c.mid.is_empty() {
            if c.left == c.right {
                // Purely periodic: pin the boundary at cell 0.
                c = c.reframe(c.origin, c.origin);
            } else {
                while c.left[0] == c.right[0] {
                    c = c.reframe(1, 1);
                }
            }
        }
        let m = c.mid.len() as i64;
        if c.origin < 0 || c.origin >= m {
            let lo = c.origin.min(0);
            let hi = (c.origin + 1).max(m);
            c = c.reframe(lo, hi);
        }
        c
    }

    /// True if both have identical descriptions (not just equal meaning).
    pub fn same_description(&self, other: &Self) -> bool {
        self.left == other.left
            && self.mid == other.mid
            && self.right == other.right
            && self.origin == other.origin
    }

    pub(crate) fn check_alphabet(&self, rule: &CaRule) -> Result<()> {
        if rule.dimension() != 1 {
            return Err(CaError::Dimension {
                expected: 1,
                found: rule.dimension(),
            });
        }
        let q = rule.num_states() as State;
        let bad = self
            .left
            .iter()
            .chain(&self.mid)
            .chain(&self.right)
            .find(|&&s| s >= q);
        if let Some(&s) = bad {
            return Err(CaError::input(format!(
                "configuration uses state {s}, alphabet has {q} states"
            )));
        }
        Ok(())
    }
}

/// A finite pattern over the ball of radius `n` centered on cell 0: a word
/// of length `2n+1` in 1D, a `(2n+1)x(2n+1)` square in 2D (row-major,
/// `y` northward, starting at `(-n, -n)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePattern {
    dimension: usize,
    radius: usize,
    cells: Vec<State>,
}

impl FinitePattern {
    pub fn new_1d(cells: Vec<State>) -> Result<Self> {
        if cells.len().is_multiple_of(2) {
            return Err(CaError::input(format!(
                "a centered 1D pattern needs odd length, got {}",
                cells.len()
            )));
        }
        Ok(FinitePattern {
            dimension: 1,
            radius: cells.len() / 2,
            cells,
        })
    }

    pub fn new_2d(radius: usize, cells: Vec<State>) -> Result<Self> {
        let side = 2 * radius + 1;
        if cells.len() != side * side {
            return Err(CaError::input(format!(
                "a radius-{radius} square needs {} cells, got {}",
                side * side,
                cells.len()
            )));
        }
        Ok(FinitePattern {
            dimension: 2,
            radius,
            cells,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    /// State at `(x, y)` relative to the center; `y` is ignored in 1D.
    pub fn get(&self, x: i64, y: i64) -> State {
        let n = self.radius as i64;
        let side = self.side();
        if self.dimension == 1 {
            self.cells[(x + n) as usize]
        } else {
            self.cells[(y + n) as usize * side + (x + n) as usize]
        }
    }

    pub fn center(&self) -> State {
        self.get(0, 0)
    }

    pub(crate) fn check_alphabet(&self, rule: &CaRule) -> Result<()> {
        if self.dimension != rule.dimension() {
            return Err(CaError::Dimension {
                expected: rule.dimension(),
                found: self.dimension,
            });
        }
        let q = rule.num_states() as State;
        if let Some(&s) = self.cells.iter().find(|&&s| s >= q) {
            return Err(CaError::input(format!(
                "pattern uses state {s}, alphabet has {q} states"
            )));
        }
        Ok(())
    }
}

/// Any supported configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Config {
    Periodic(PeriodicConfig),
    BiPeriodic(BiPeriodicConfig),
    Finite(FinitePattern),
}

impl Config {
    pub fn dimension(&self) -> usize {
        match self {
            Config::Periodic(c) => c.dimension(),
            Config::BiPeriodic(_) => 1,
            Config::Finite(p) => p.dimension(),
        }
    }
}

impl From<PeriodicConfig> for Config {
    fn from(c: PeriodicConfig) -> Self {
        Config::Periodic(c)
    }
}

impl From<BiPeriodicConfig> for Config {
    fn from(c: BiPeriodicConfig) -> Self {
        Config::BiPeriodic(c)
    }
}

impl From<FinitePattern> for Config {
    fn from(c: FinitePattern) -> Self {
        Config::Finite(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(l: &[State], m: &[State], r: &[State], o: i64) -> BiPeriodicConfig {
        BiPeriodicConfig::new(l.to_vec(), m.to_vec(), r.to_vec(), o).unwrap()
    }

    #[test]
    fn cell_reads_tails_and_middle() {
        let c = bp(&[1, 2], &[5, 6], &[7, 8, 9], 0);
        assert_eq!(c.cell(0), 5);
        assert_eq!(c.cell(1), 6);
        assert_eq!(c.cell(2), 7);
        assert_eq!(c.cell(4), 9);
        assert_eq!(c.cell(5), 7);
        assert_eq!(c.cell(-1), 2);
        assert_eq!(c.cell(-2), 1);
        assert_eq!(c.cell(-3), 2);
    }

    #[test]
    fn canonical_contains_cell_zero() {
        let c = bp(&[0], &[], &[0], 0).canonical();
        assert_eq!(c.mid(), &[0]);
        assert_eq!(c.origin(), 0);
        let c = bp(&[0], &[1], &[0], 0).canonical();
        assert_eq!((c.left(), c.mid(), c.right(), c.origin()), (&[0][..], &[1][..], &[0][..], 0));
    }

    #[test]
    fn canonical_identifies_equal_configs() {
        let a = bp(&[0, 0], &[0, 1, 0], &[0], 1);
        let b = bp(&[0], &[1], &[0, 0, 0], 0);
        assert_eq!(a, b);
        let c = bp(&[0], &[1], &[0], 1);
        assert_ne!(a, c);
        // boundary ambiguity between different tails
        let d = bp(&[0], &[], &[1, 0], 0);
        let e = bp(&[0], &[], &[0, 1], 1);
        assert_eq!(d, e);
    }

    #[test]
    fn trimmed_keeps_tail_lengths() {
        let c = bp(&[0, 1], &[0, 1, 1, 0, 1], &[1, 0, 1], 2);
        let t = c.trimmed();
        assert_eq!(t.left().len(), 2);
        assert_eq!(t.right().len(), 3);
        assert!(t.mid().len() <= c.mid().len());
        for z in -10..10 {
            assert_eq!(c.cell(z), t.cell(z), "cell {z}");
        }
    }

    #[test]
    fn expanded_preserves_cells() {
        let c = bp(&[0, 1], &[3], &[2, 1, 1], 0);
        let e = c.expanded_to(-5, 7);
        assert_eq!(e.mid().len(), 13);
        for z in -20..20 {
            assert_eq!(c.cell(z), e.cell(z));
        }
    }

    #[test]
    fn finite_pattern_shapes() {
        assert!(FinitePattern::new_1d(vec![0, 1]).is_err());
        let p = FinitePattern::new_1d(vec![0, 1, 2]).unwrap();
        assert_eq!(p.radius(), 1);
        assert_eq!(p.center(), 1);
        assert!(FinitePattern::new_2d(1, vec![0; 8]).is_err());
        let p = FinitePattern::new_2d(1, (0..9).collect()).unwrap();
        assert_eq!(p.get(0, 0), 4);
        assert_eq!(p.get(0, 1), 7);
        assert_eq!(p.get(-1, -1), 0);
    }

    #[test]
    fn periodic_wraps() {
        let c = PeriodicConfig::new_2d(2, 3, (0..6).collect()).unwrap();
        assert_eq!(c.get(0, 0), 0);
        assert_eq!(c.get(1, 2), 5);
        assert_eq!(c.get(-1, -1), 5);
        assert_eq!(c.period(), vec![2, 3]);
        assert!(PeriodicConfig::new_1d(vec![]).is_err());
    }
}
