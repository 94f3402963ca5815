//! The shrinking-zone wrapper `Z_F`.
//!
//! A working zone is a maximal run of cells carrying a pair `(x, y)` of
//! inner states and a mode. At most one cell per zone is a head (`<` or
//! `>`); cells left of it are marked `l`, cells right of it `r`. The head
//! sweeps the zone, applying the inner local map on left-to-right passes
//! only, and each bounce on a zone boundary deletes one boundary cell.

use crate::error::{CaError, Result};
use crate::limits::Limits;
use crate::rule::{elementary_neighborhood, CaRule, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Head moving left (`<`).
    HeadLeft,
    /// Head moving right (`>`).
    HeadRight,
    /// Cell to the left of the head (`l`).
    Left,
    /// Cell to the right of the head (`r`).
    Right,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::HeadLeft, Mode::HeadRight, Mode::Left, Mode::Right];

    pub fn is_head(self) -> bool {
        matches!(self, Mode::HeadLeft | Mode::HeadRight)
    }

    fn symbol(self) -> char {
        match self {
            Mode::HeadLeft => '<',
            Mode::HeadRight => '>',
            Mode::Left => 'l',
            Mode::Right => 'r',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZigzagState {
    Blank,
    BlankPlus,
    Error,
    Cell { x: State, y: State, mode: Mode },
}

impl ZigzagState {
    fn cell(self) -> Option<(State, State, Mode)> {
        match self {
            ZigzagState::Cell { x, y, mode } => Some((x, y, mode)),
            _ => None,
        }
    }

    fn is_blankish(self) -> bool {
        matches!(self, ZigzagState::Blank | ZigzagState::BlankPlus)
    }
}

/// Index layout of the alphabet `{b, b+, e} ∪ Q×Q×{<,>,l,r}`:
/// `b = 0`, `b+ = 1`, `e = 2`, and `(x, y, mode)` at `3 + 4·(x·|Q| + y) + mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZigzagAlphabet {
    inner: usize,
}

impl ZigzagAlphabet {
    pub fn new(inner_states: usize) -> Self {
        ZigzagAlphabet {
            inner: inner_states,
        }
    }

    pub fn inner_states(&self) -> usize {
        self.inner
    }

    /// `3 + 4·|Q|²`.
    pub fn len(&self) -> usize {
        3 + 4 * self.inner * self.inner
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self, s: ZigzagState) -> State {
        match s {
            ZigzagState::Blank => 0,
            ZigzagState::BlankPlus => 1,
            ZigzagState::Error => 2,
            ZigzagState::Cell { x, y, mode } => {
                let m = Mode::ALL.iter().position(|&k| k == mode).unwrap() as State;
                3 + 4 * (x * self.inner as State + y) + m
            }
        }
    }

    pub fn decode(&self, s: State) -> ZigzagState {
        match s {
            0 => ZigzagState::Blank,
            1 => ZigzagState::BlankPlus,
            2 => ZigzagState::Error,
            _ => {
                let k = s - 3;
                let pair = k / 4;
                ZigzagState::Cell {
                    x: pair / self.inner as State,
                    y: pair % self.inner as State,
                    mode: Mode::ALL[(k % 4) as usize],
                }
            }
        }
    }

    fn names(&self, inner: &CaRule) -> Vec<String> {
        (0..self.len() as State)
            .map(|s| match self.decode(s) {
                ZigzagState::Blank => "b".to_string(),
                ZigzagState::BlankPlus => "b+".to_string(),
                ZigzagState::Error => "e".to_string(),
                ZigzagState::Cell { x, y, mode } => format!(
                    "{}.{}.{}",
                    inner.state_name(x),
                    inner.state_name(y),
                    mode.symbol()
                ),
            })
            .collect()
    }
}

pub(crate) fn forbidden_pair(a: ZigzagState, b: ZigzagState) -> bool {
    use Mode::*;
    let (Some((_, _, ma)), Some((_, _, mb))) = (a.cell(), b.cell()) else {
        return false;
    };
    matches!(
        (ma, mb),
        (Right, Left) | (Left, Right) | (Right, HeadLeft) | (Right, HeadRight) | (HeadLeft, Left) | (HeadRight, Left)
    ) || (ma.is_head() && mb.is_head())
}

/// Local map of `Z_F` on the window `(left, center, right)`, given the inner
/// local map `delta` on `(x_{-1}, x_0, x_{+1})`.
///
/// Rules apply in priority order: error spreading, forbidden-pattern
/// detection, blank dynamics, head transitions, then no change.
pub fn zigzag_transition(
    delta: impl Fn(State, State, State) -> State,
    a: ZigzagState,
    c: ZigzagState,
    d: ZigzagState,
) -> ZigzagState {
    use Mode::*;
    use ZigzagState::*;

    if a == Error || c == Error || d == Error {
        return Error;
    }
    if forbidden_pair(a, c) || forbidden_pair(c, d) {
        return Error;
    }
    let (x1, y1, m1) = match c {
        Blank | BlankPlus => return Blank,
        Error => unreachable!(),
        Cell { x, y, mode } => (x, y, mode),
    };
    let cell = |x, y, mode| Cell { x, y, mode };

    match (a.cell(), d.cell()) {
        (Some((_, y0, m0)), Some((x2, _, m2))) => match (m0, m1, m2) {
            (Left, HeadLeft, Right) => cell(x1, y1, Right),
            (Left, Left, HeadLeft) => cell(x1, y1, HeadLeft),
            (Left, HeadRight, Right) => cell(x1, y1, Left),
            (HeadRight, Right, Right) => cell(delta(y0, x1, x2), x1, HeadRight),
            _ => c,
        },
        (None, Some((_, _, m2))) if a == Blank => match (m1, m2) {
            (Left, HeadLeft) => cell(x1, y1, HeadLeft),
            (HeadLeft, Right) => cell(x1, y1, HeadRight),
            (HeadRight, Right) => cell(y1, x1, Left),
            (Left, HeadRight) => BlankPlus,
            _ => c,
        },
        (Some((_, _, m0)), None) if d == Blank => match (m0, m1) {
            (HeadRight, Right) => cell(x1, y1, HeadRight),
            (Left, HeadRight) => cell(x1, y1, HeadLeft),
            (Left, HeadLeft) => cell(x1, y1, Right),
            (HeadLeft, Right) => BlankPlus,
            _ => c,
        },
        (None, None) if a.is_blankish() && d.is_blankish() => cell(x1, y1, Right),
        _ => c,
    }
}

/// Builds `Z_F` for a one-dimensional inner rule of radius at most 1. The
/// result has the elementary neighborhood and a dense table of `|R|³`
/// entries.
pub fn zigzag(inner: &CaRule) -> Result<CaRule> {
    zigzag_with_limits(inner, &Limits::default())
}

pub fn zigzag_with_limits(inner: &CaRule, limits: &Limits) -> Result<CaRule> {
    if inner.dimension() != 1 {
        return Err(CaError::input("zigzag needs a one-dimensional inner rule"));
    }
    if inner.radius() > 1 {
        return Err(CaError::input(format!(
            "zigzag needs an inner rule of radius 1, got radius {}",
            inner.radius()
        )));
    }
    let alpha = ZigzagAlphabet::new(inner.num_states());
    let positions: Vec<usize> = inner
        .neighborhood()
        .iter()
        .map(|o| (o.dx + 1) as usize)
        .collect();
    let mut buf = vec![0 as State; positions.len()];
    let mut delta = |l: State, c: State, r: State| {
        let triple = [l, c, r];
        for (k, &p) in positions.iter().enumerate() {
            buf[k] = triple[p];
        }
        inner.eval(&buf)
    };
    let delta_table: Vec<State> = {
        let q = inner.num_states() as State;
        let mut t = Vec::with_capacity((q * q * q) as usize);
        for l in 0..q {
            for c in 0..q {
                for r in 0..q {
                    t.push(delta(l, c, r));
                }
            }
        }
        t
    };
    let q = inner.num_states() as State;
    let delta = |l: State, c: State, r: State| delta_table[((l * q + c) * q + r) as usize];
    CaRule::tabulate(
        1,
        alpha.names(inner),
        elementary_neighborhood(),
        limits,
        |w| {
            let out = zigzag_transition(
                delta,
                alpha.decode(w[0]),
                alpha.decode(w[1]),
                alpha.decode(w[2]),
            );
            alpha.encode(out)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::rule110;
    use crate::rule::Offset;
    use Mode::*;
    use ZigzagState::*;

    fn cell(x: State, y: State, mode: Mode) -> ZigzagState {
        Cell { x, y, mode }
    }

    fn d110(x: State, y: State, z: State) -> State {
        (1 - x * y * z) * y.max(z)
    }

    #[test]
    fn alphabet_size_and_roundtrip() {
        let a = ZigzagAlphabet::new(2);
        assert_eq!(a.len(), 19);
        for s in 0..a.len() as State {
            assert_eq!(a.encode(a.decode(s)), s);
        }
        let z = zigzag(&rule110()).unwrap();
        assert_eq!(z.num_states(), 19);
        assert_eq!(z.state_name(0), "b");
        assert_eq!(z.state_name(1), "b+");
        assert_eq!(z.state_name(2), "e");
        assert_eq!(z.state_name(3), "0.0.<");
    }

    #[test]
    fn error_spreads() {
        for s in [Blank, BlankPlus, cell(1, 0, Left), cell(0, 1, HeadRight)] {
            assert_eq!(zigzag_transition(d110, Error, s, s), Error);
            assert_eq!(zigzag_transition(d110, s, s, Error), Error);
        }
    }

    #[test]
    fn forbidden_patterns_raise_error() {
        let pairs = [
            (cell(0, 0, Right), cell(1, 1, Left)),
            (cell(0, 0, Left), cell(1, 1, Right)),
            (cell(0, 0, HeadLeft), cell(1, 1, HeadRight)),
            (cell(0, 0, HeadRight), cell(1, 1, HeadRight)),
            (cell(0, 0, Right), cell(1, 1, HeadLeft)),
            (cell(0, 0, HeadLeft), cell(1, 1, Left)),
        ];
        for (p, q) in pairs {
            // both members of the pair, and the cells next to it
            assert_eq!(zigzag_transition(d110, Blank, p, q), Error);
            assert_eq!(zigzag_transition(d110, p, q, Blank), Error);
        }
        // permitted neighbors
        assert_ne!(
            zigzag_transition(d110, cell(0, 0, Left), cell(0, 0, HeadLeft), cell(0, 0, Right)),
            Error
        );
    }

    #[test]
    fn blanks() {
        assert_eq!(zigzag_transition(d110, cell(0, 0, Right), Blank, Blank), Blank);
        assert_eq!(zigzag_transition(d110, Blank, BlankPlus, Blank), Blank);
    }

    #[test]
    fn interior_moves() {
        let (l, h, r) = (cell(1, 0, Left), cell(0, 1, HeadLeft), cell(1, 1, Right));
        assert_eq!(zigzag_transition(d110, l, h, r), cell(0, 1, Right));
        assert_eq!(zigzag_transition(d110, l, l, h), cell(1, 0, HeadLeft));
        let h = cell(0, 1, HeadRight);
        assert_eq!(zigzag_transition(d110, l, h, r), cell(0, 1, Left));
        // (x,y,>),(x',y',r),(x'',y'',r) with y=1, x'=1, x''=0 -> (δ(1,1,0), 1, >)
        let out = zigzag_transition(d110, cell(0, 1, HeadRight), cell(1, 0, Right), cell(0, 1, Right));
        assert_eq!(out, cell(1, 1, HeadRight));
    }

    #[test]
    fn bounces() {
        let x = |m| cell(1, 0, m);
        let y = |m| cell(0, 1, m);
        assert_eq!(zigzag_transition(d110, Blank, x(Left), y(HeadLeft)), x(HeadLeft));
        assert_eq!(zigzag_transition(d110, Blank, x(HeadLeft), y(Right)), x(HeadRight));
        assert_eq!(zigzag_transition(d110, Blank, x(HeadRight), y(Right)), cell(0, 1, Left));
        assert_eq!(zigzag_transition(d110, Blank, x(Left), y(HeadRight)), BlankPlus);
        assert_eq!(zigzag_transition(d110, x(HeadRight), y(Right), Blank), y(HeadRight));
        assert_eq!(zigzag_transition(d110, x(Left), y(HeadRight), Blank), y(HeadLeft));
        assert_eq!(zigzag_transition(d110, x(Left), y(HeadLeft), Blank), y(Right));
        assert_eq!(zigzag_transition(d110, x(HeadLeft), y(Right), Blank), BlankPlus);
    }

    #[test]
    fn size_one_zone_loses_head() {
        for m in Mode::ALL {
            for (a, d) in [(Blank, Blank), (BlankPlus, Blank), (Blank, BlankPlus), (BlankPlus, BlankPlus)] {
                assert_eq!(zigzag_transition(d110, a, cell(1, 0, m), d), cell(1, 0, Right));
            }
        }
    }

    #[test]
    fn unlisted_windows_are_unchanged() {
        let s = cell(1, 1, Right);
        assert_eq!(zigzag_transition(d110, cell(0, 0, Right), s, cell(0, 0, Right)), s);
        let h = cell(1, 0, HeadLeft);
        assert_eq!(zigzag_transition(d110, BlankPlus, h, cell(0, 0, Right)), h);
    }

    #[test]
    fn table_matches_transition_function() {
        let z = zigzag(&rule110()).unwrap();
        let a = ZigzagAlphabet::new(2);
        assert_eq!(z.table().unwrap().len(), 19 * 19 * 19);
        let w = [
            a.encode(Blank),
            a.encode(cell(1, 0, HeadLeft)),
            a.encode(cell(0, 0, Right)),
        ];
        assert_eq!(a.decode(z.eval(&w)), cell(1, 0, HeadRight));
    }

    #[test]
    fn inner_radius_checked() {
        let wide = CaRule::from_table(
            1,
            vec!["0".into(), "1".into()],
            vec![Offset::d1(2)],
            vec![0, 1],
        )
        .unwrap();
        assert!(zigzag(&wide).is_err());
        let plane = crate::constructions::signed_majority();
        assert!(zigzag(&plane).is_err());
    }
}
