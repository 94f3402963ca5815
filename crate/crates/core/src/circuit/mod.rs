//! Boolean gate blocks and checkers for transient and repeatable circuit
//! simulation by 2D automata.
//!
//! Both checkers are falsifiers: they test finitely many torus or
//! blank-padded assemblies, never the infinite valid configurations.

mod wire;

pub use wire::{corrupted_and_library, one_shot_wire_ca, reference_wire_ca, WIRE_BLANK};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::PeriodicConfig;
use crate::decision::DecisionReport;
use crate::engine::iterate_periodic;
use crate::error::{CaError, Result};
use crate::rule::{CaRule, State};

/// Side values in the order north, east, south, west.
pub type Bits = [u8; 4];

pub const NORTH: usize = 0;
pub const EAST: usize = 1;
pub const SOUTH: usize = 2;
pub const WEST: usize = 3;

pub fn opposite(side: usize) -> usize {
    (side + 2) % 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateType {
    And,
    Or,
    Cross,
    Nop,
    Fork,
    /// Reads side `i`, writes side `o`.
    Wire { i: u8, o: u8 },
}

impl GateType {
    /// The 17 gates: AND, OR, CROSS, NOP, FORK, then the twelve wires.
    pub fn all() -> Vec<GateType> {
        let mut v = vec![GateType::And, GateType::Or, GateType::Cross, GateType::Nop, GateType::Fork];
        for i in 0..4 {
            for o in 0..4 {
                if i != o {
                    v.push(GateType::Wire { i, o });
                }
            }
        }
        v
    }

    pub fn wire(i: u8, o: u8) -> Result<Self> {
        if i == o || i > 3 || o > 3 {
            return Err(CaError::input(format!("invalid wire sides ({i},{o})")));
        }
        Ok(GateType::Wire { i, o })
    }

    /// Input sides. NOP counts every side as both input and output.
    pub fn inputs(self) -> [bool; 4] {
        match self {
            GateType::And | GateType::Or | GateType::Cross => [true, false, false, true],
            GateType::Nop => [true; 4],
            GateType::Fork => [false, false, false, true],
            GateType::Wire { i, .. } => side_mask(i),
        }
    }

    pub fn outputs(self) -> [bool; 4] {
        match self {
            GateType::And | GateType::Or => [false, true, false, false],
            GateType::Cross | GateType::Fork => [false, true, true, false],
            GateType::Nop => [true; 4],
            GateType::Wire { o, .. } => side_mask(o),
        }
    }
}

fn side_mask(s: u8) -> [bool; 4] {
    let mut m = [false; 4];
    m[s as usize] = true;
    m
}

impl fmt::Display for GateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateType::And => f.write_str("AND"),
            GateType::Or => f.write_str("OR"),
            GateType::Cross => f.write_str("CROSS"),
            GateType::Nop => f.write_str("NOP"),
            GateType::Fork => f.write_str("FORK"),
            GateType::Wire { i, o } => write!(f, "WIRE({i},{o})"),
        }
    }
}

impl FromStr for GateType {
    type Err = CaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "AND" => return Ok(GateType::And),
            "OR" => return Ok(GateType::Or),
            "CROSS" => return Ok(GateType::Cross),
            "NOP" => return Ok(GateType::Nop),
            "FORK" => return Ok(GateType::Fork),
            _ => {}
        }
        let inner = s
            .to_ascii_uppercase()
            .strip_prefix("WIRE(")
            .and_then(|r| r.strip_suffix(')'))
            .map(str::to_string)
            .ok_or_else(|| CaError::input(format!("unknown gate {s:?}")))?;
        let (i, o) = inner
            .split_once(',')
            .ok_or_else(|| CaError::input(format!("unknown gate {s:?}")))?;
        let p = |x: &str| x.trim().parse::<u8>().map_err(|_| CaError::input(format!("bad wire side in {s:?}")));
        GateType::wire(p(i)?, p(o)?)
    }
}

pub fn format_bits(b: Bits) -> String {
    b.iter().map(|x| if *x != 0 { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Bits> {
    let digits: Vec<u8> = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CaError::input(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect::<Result<_>>()?;
    digits
        .try_into()
        .map_err(|_| CaError::input(format!("expected 4 bits, got {s:?}")))
}

/// The gate functions on `(north, east, south, west)`; bits on non-input
/// sides are ignored.
pub fn gate_eval(g: GateType, io: Bits) -> Bits {
    let (x, y) = (io[NORTH], io[WEST]);
    match g {
        GateType::And => [0, x.min(y), 0, 0],
        GateType::Or => [0, x.max(y), 0, 0],
        GateType::Cross => [0, y, x, 0],
        GateType::Nop => [0; 4],
        GateType::Fork => [0, y, y, 0],
        GateType::Wire { i, o } => {
            let mut out = [0; 4];
            out[o as usize] = io[i as usize];
            out
        }
    }
}

/// `Img(g)`, sorted.
pub fn img(g: GateType) -> Vec<Bits> {
    let mut out: Vec<Bits> = (0..16u8)
        .map(|k| gate_eval(g, [(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A valid block of type `gate_u`; the pattern is `N×N`, stored row by row
/// from the southern row, like [`PeriodicConfig`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub gate: GateType,
    pub u: Bits,
    pub pattern: Vec<State>,
}

#[derive(Clone, Debug)]
pub struct BlockLibrary {
    n: usize,
    delta: usize,
    blocks: Vec<Block>,
    by_pattern: HashMap<Vec<State>, Vec<usize>>,
}

impl BlockLibrary {
    /// Checks pattern sizes, `u ∈ Img(gate)` and that every type `f_u` has
    /// at least one block.
    pub fn new(n: usize, delta: usize, blocks: Vec<Block>) -> Result<Self> {
        if n == 0 || delta == 0 {
            return Err(CaError::input("block side and delay must be positive"));
        }
        for b in &blocks {
            if b.pattern.len() != n * n {
                return Err(CaError::input(format!(
                    "block {}_{} has {} cells, expected {}",
                    b.gate,
                    format_bits(b.u),
                    b.pattern.len(),
                    n * n
                )));
            }
            if !img(b.gate).contains(&b.u) {
                return Err(CaError::input(format!(
                    "{} is not an image of {}",
                    format_bits(b.u),
                    b.gate
                )));
            }
        }
        for g in GateType::all() {
            for u in img(g) {
                if !blocks.iter().any(|b| b.gate == g && b.u == u) {
                    return Err(CaError::input(format!("library has no block of type {g}_{}", format_bits(u))));
                }
            }
        }
        let mut by_pattern: HashMap<Vec<State>, Vec<usize>> = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            by_pattern.entry(b.pattern.clone()).or_default().push(i);
        }
        Ok(BlockLibrary {
            n,
            delta,
            blocks,
            by_pattern,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// First block of type `gate_u` in library order.
    pub fn find(&self, gate: GateType, u: Bits) -> Option<&Block> {
        self.blocks.iter().find(|b| b.gate == gate && b.u == u)
    }

    /// Types of all blocks with this exact pattern.
    pub fn types_of(&self, pattern: &[State]) -> Vec<(GateType, Bits)> {
        self.by_pattern
            .get(pattern)
            .map(|ids| ids.iter().map(|&i| (self.blocks[i].gate, self.blocks[i].u)).collect())
            .unwrap_or_default()
    }

    pub fn check_alphabet(&self, rule: &CaRule) -> Result<()> {
        if rule.dimension() != 2 {
            return Err(CaError::Dimension {
                expected: 2,
                found: rule.dimension(),
            });
        }
        for b in &self.blocks {
            if let Some(&s) = b.pattern.iter().find(|&&s| s as usize >= rule.num_states()) {
                return Err(CaError::input(format!("block {}_{} uses state {s} outside the alphabet", b.gate, format_bits(b.u))));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub gate: GateType,
    pub u: Bits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Torus,
    /// A ring of blank tiles around the layout.
    Padded,
}

/// Grid of tile types, row by row from the south, `tiles[y * width + x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub width: usize,
    pub height: usize,
    pub tiles: Vec<Tile>,
}

impl Layout {
    pub fn new(width: usize, height: usize, tiles: Vec<Tile>) -> Result<Self> {
        if width == 0 || height == 0 || tiles.len() != width * height {
            return Err(CaError::input(format!(
                "layout of {width}x{height} needs {} tiles, got {}",
                width * height,
                tiles.len()
            )));
        }
        Ok(Layout { width, height, tiles })
    }

    pub fn get(&self, x: usize, y: usize) -> Tile {
        self.tiles[y * self.width + x]
    }

    /// Neighbor across `side`, or `None` past the edge of a padded layout.
    fn neighbor(&self, x: usize, y: usize, side: usize, boundary: Boundary) -> Option<(usize, usize)> {
        let (dx, dy) = SIDE_DIRS[side];
        let nx = x as i64 + dx;
        let ny = y as i64 + dy;
        let (w, h) = (self.width as i64, self.height as i64);
        match boundary {
            Boundary::Torus => Some((nx.rem_euclid(w) as usize, ny.rem_euclid(h) as usize)),
            Boundary::Padded if (0..w).contains(&nx) && (0..h).contains(&ny) => Some((nx as usize, ny as usize)),
            Boundary::Padded => None,
        }
    }

    /// Values `(n, e, s, w)` read by the tile at `(x, y)` from its neighbors.
    pub fn inputs_of(&self, x: usize, y: usize, boundary: Boundary) -> Bits {
        let mut io = [0; 4];
        for (side, v) in io.iter_mut().enumerate() {
            if let Some((nx, ny)) = self.neighbor(x, y, side, boundary) {
                *v = self.get(nx, ny).u[opposite(side)];
            }
        }
        io
    }
}

const SIDE_DIRS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];
const SIDE_NAMES: [&str; 4] = ["north", "east", "south", "west"];

/// True when an output on `side` of `a` may face `b`. NOP outputs are
/// always zero and never constrain their neighbors.
fn edge_ok(a: GateType, side: usize, b: Option<GateType>) -> bool {
    let out_a = a.outputs()[side] && a != GateType::Nop;
    match b {
        None => !out_a,
        Some(b) => {
            let out_b = b.outputs()[opposite(side)] && b != GateType::Nop;
            (!out_a || b.inputs()[opposite(side)]) && (!out_b || a.inputs()[side])
        }
    }
}

/// Checks the facing rule on every edge; names the first offending edge.
pub fn check_layout(layout: &Layout, boundary: Boundary) -> Result<()> {
    for y in 0..layout.height {
        for x in 0..layout.width {
            let a = layout.get(x, y).gate;
            for (side, side_name) in SIDE_NAMES.iter().enumerate() {
                let b = layout.neighbor(x, y, side, boundary).map(|(nx, ny)| layout.get(nx, ny).gate);
                if !edge_ok(a, side, b) {
                    let other = match layout.neighbor(x, y, side, boundary) {
                        Some((nx, ny)) => format!("{} at ({nx},{ny})", layout.get(nx, ny).gate),
                        None => "the blank border".to_string(),
                    };
                    return Err(CaError::input(format!(
                        "adjacency violation: {} side of {a} at ({x},{y}) faces {other}",
                        side_name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A layout together with its configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub layout: Layout,
    pub boundary: Boundary,
    pub config: PeriodicConfig,
}

impl Assembly {
    /// Tile offset of the layout inside the configuration.
    fn margin(&self) -> usize {
        match self.boundary {
            Boundary::Torus => 0,
            Boundary::Padded => 1,
        }
    }
}

fn extract(c: &PeriodicConfig, n: usize, tx: usize, ty: usize) -> Vec<State> {
    let mut p = Vec::with_capacity(n * n);
    for dy in 0..n {
        for dx in 0..n {
            p.push(c.get((tx * n + dx) as i64, (ty * n + dy) as i64));
        }
    }
    p
}

/// Tiles the chosen blocks into a configuration; padded assemblies get a
/// ring of `blank` tiles.
pub fn assemble(lib: &BlockLibrary, layout: &Layout, boundary: Boundary, blank: State) -> Result<Assembly> {
    check_layout(layout, boundary)?;
    let n = lib.n();
    let m = if boundary == Boundary::Padded { 1 } else { 0 };
    let (tw, th) = (layout.width + 2 * m, layout.height + 2 * m);
    let (w, h) = (tw * n, th * n);
    let mut cells = vec![blank; w * h];
    for y in 0..layout.height {
        for x in 0..layout.width {
            let t = layout.get(x, y);
            let b = lib.find(t.gate, t.u).ok_or_else(|| {
                CaError::input(format!("library has no block of type {}_{}", t.gate, format_bits(t.u)))
            })?;
            for dy in 0..n {
                for dx in 0..n {
                    cells[((y + m) * n + dy) * w + (x + m) * n + dx] = b.pattern[dy * n + dx];
                }
            }
        }
    }
    Ok(Assembly {
        layout: layout.clone(),
        boundary,
        config: PeriodicConfig::new_2d(w, h, cells)?,
    })
}

/// Seeded generator of random adjacency-consistent assemblies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblySpec {
    pub count: usize,
    pub min_side: usize,
    pub max_side: usize,
    /// `None` alternates torus and padded assemblies.
    pub boundary: Option<Boundary>,
    pub seed: u64,
}

impl AssemblySpec {
    pub fn new(count: usize, seed: u64) -> Self {
        AssemblySpec {
            count,
            min_side: 1,
            max_side: 4,
            boundary: None,
            seed,
        }
    }
}

/// A random layout: tiles are placed one by one, each drawn uniformly among
/// the types compatible with the neighbors already placed. NOP fits
/// everywhere, so placement never gets stuck.
pub fn random_layout(rng: &mut impl Rng, width: usize, height: usize, boundary: Boundary) -> Layout {
    let types: Vec<Tile> = GateType::all()
        .into_iter()
        .flat_map(|g| img(g).into_iter().map(move |u| Tile { gate: g, u }))
        .collect();
    let mut placed: Vec<Option<Tile>> = vec![None; width * height];
    let probe = Layout {
        width,
        height,
        tiles: vec![
            Tile {
                gate: GateType::Nop,
                u: [0; 4]
            };
            width * height
        ],
    };
    for y in 0..height {
        for x in 0..width {
            let fits = |cand: &Tile| {
                (0..4).all(|side| match probe.neighbor(x, y, side, boundary) {
                    None => edge_ok(cand.gate, side, None),
                    Some((nx, ny)) if (nx, ny) == (x, y) => edge_ok(cand.gate, side, Some(cand.gate)),
                    Some((nx, ny)) => match placed[ny * width + nx] {
                        Some(t) => edge_ok(cand.gate, side, Some(t.gate)),
                        None => true,
                    },
                })
            };
            let ok: Vec<&Tile> = types.iter().filter(|t| fits(t)).collect();
            placed[y * width + x] = Some(**ok.choose(rng).expect("NOP always fits"));
        }
    }
    Layout {
        width,
        height,
        tiles: placed.into_iter().map(Option::unwrap).collect(),
    }
}

/// The assemblies described by `spec`, deterministic in its seed.
pub fn generate_assemblies(lib: &BlockLibrary, spec: &AssemblySpec, blank: State) -> Result<Vec<Assembly>> {
    if spec.min_side == 0 || spec.min_side > spec.max_side {
        return Err(CaError::input("assembly sides must satisfy 1 <= min <= max"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|i| {
            let boundary = spec.boundary.unwrap_or(if i % 2 == 0 { Boundary::Torus } else { Boundary::Padded });
            let w = rng.gen_range(spec.min_side..=spec.max_side);
            let h = rng.gen_range(spec.min_side..=spec.max_side);
            let layout = random_layout(&mut rng, w, h, boundary);
            assemble(lib, &layout, boundary, blank)
        })
        .collect()
}

fn show_pattern(rule: &CaRule, n: usize, p: &[State]) -> String {
    (0..n)
        .rev()
        .map(|y| {
            p[y * n..(y + 1) * n]
                .iter()
                .map(|&s| rule.state_name(s))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" / ")
}

/// Steps one assembly `rounds` times by `Δ`, checking validity of every
/// tile and the transition of the tiles selected by `check_tile(round, tile)`.
fn run_assembly(
    rule: &CaRule,
    lib: &BlockLibrary,
    asm: &Assembly,
    rounds: usize,
    check_tile: impl Fn(usize, Tile) -> bool,
) -> Result<Option<String>> {
    let n = lib.n();
    let m = asm.margin();
    let mut layout = asm.layout.clone();
    let mut config = asm.config.clone();
    let border: Vec<State> = if asm.boundary == Boundary::Padded {
        extract(&config, n, 0, 0)
    } else {
        Vec::new()
    };
    let tiles_w = config.width() / n;
    let tiles_h = config.height() / n;
    for round in 1..=rounds {
        let next = iterate_periodic(rule, &config, lib.delta())?;
        let mut new_tiles = layout.tiles.clone();
        for ty in 0..tiles_h {
            for tx in 0..tiles_w {
                let after = extract(&next, n, tx, ty);
                let inside = tx >= m && ty >= m && tx < m + layout.width && ty < m + layout.height;
                if !inside {
                    if after != border {
                        return Ok(Some(format!(
                            "round {round}: border tile ({tx},{ty}) changed to [{}]",
                            show_pattern(rule, n, &after)
                        )));
                    }
                    continue;
                }
                let (x, y) = (tx - m, ty - m);
                let tile = layout.get(x, y);
                let types = lib.types_of(&after);
                let before = || show_pattern(rule, n, &extract(&config, n, tx, ty));
                if types.is_empty() {
                    return Ok(Some(format!(
                        "round {round}: tile ({x},{y}) of type {}_{} became an invalid block [{}] (was [{}])",
                        tile.gate,
                        format_bits(tile.u),
                        show_pattern(rule, n, &after),
                        before()
                    )));
                }
                let inputs = layout.inputs_of(x, y, asm.boundary);
                let v = gate_eval(tile.gate, inputs);
                if check_tile(round, tile) && !types.contains(&(tile.gate, v)) {
                    let got: Vec<String> = types.iter().map(|(g, b)| format!("{g}_{}", format_bits(*b))).collect();
                    return Ok(Some(format!(
                        "round {round}: tile ({x},{y}) of type {}_{} with inputs {} should become {}_{} but became {} [{}] (was [{}])",
                        tile.gate,
                        format_bits(tile.u),
                        format_bits(inputs),
                        tile.gate,
                        format_bits(v),
                        got.join("|"),
                        show_pattern(rule, n, &after),
                        before()
                    )));
                }
                let (gate, u) = if types.contains(&(tile.gate, v)) { (tile.gate, v) } else { types[0] };
                new_tiles[y * layout.width + x] = Tile { gate, u };
            }
        }
        layout.tiles = new_tiles;
        config = next;
    }
    Ok(None)
}

fn check_all(
    rule: &CaRule,
    lib: &BlockLibrary,
    assemblies: &[Assembly],
    rounds: usize,
    check_tile: impl Fn(usize, Tile) -> bool + Copy,
) -> Result<DecisionReport> {
    lib.check_alphabet(rule)?;
    for (i, asm) in assemblies.iter().enumerate() {
        if asm.config.width() % lib.n() != 0 || asm.config.height() % lib.n() != 0 || asm.config.dimension() != 2 {
            return Err(CaError::input(format!("assembly {i} is not made of {}x{} tiles", lib.n(), lib.n())));
        }
        if let Some(msg) = run_assembly(rule, lib, asm, rounds, check_tile)? {
            return Ok(DecisionReport::no(format!(
                "assembly {i} ({}x{}, {:?}): {msg}",
                asm.layout.width, asm.layout.height, asm.boundary
            )));
        }
    }
    Ok(DecisionReport::yes(format!(
        "{} assemblies, {rounds} round(s) of {} steps",
        assemblies.len(),
        lib.delta()
    )))
}

/// Transient mode on given assemblies: after `Δ` steps every tile is a
/// valid block and every tile of type `f_(0,0,0,0)` made the correct
/// transition.
pub fn check_transient_on(rule: &CaRule, lib: &BlockLibrary, assemblies: &[Assembly]) -> Result<DecisionReport> {
    check_all(rule, lib, assemblies, 1, |_, t| t.u == [0; 4])
}

/// Repeatable mode on given assemblies: every tile makes the correct
/// transition in each of `rounds` rounds.
pub fn check_repeatable_on(
    rule: &CaRule,
    lib: &BlockLibrary,
    assemblies: &[Assembly],
    rounds: usize,
) -> Result<DecisionReport> {
    if rounds == 0 {
        return Err(CaError::input("at least one round is needed"));
    }
    check_all(rule, lib, assemblies, rounds, |_, _| true)
}

/// [`check_transient_on`] over the assemblies generated from `spec`.
pub fn check_transient(rule: &CaRule, lib: &BlockLibrary, spec: &AssemblySpec, blank: State) -> Result<DecisionReport> {
    let asms = generate_assemblies(lib, spec, blank)?;
    check_transient_on(rule, lib, &asms)
}

/// [`check_repeatable_on`] over the assemblies generated from `spec`.
pub fn check_repeatable(
    rule: &CaRule,
    lib: &BlockLibrary,
    spec: &AssemblySpec,
    rounds: usize,
    blank: State,
) -> Result<DecisionReport> {
    let asms = generate_assemblies(lib, spec, blank)?;
    check_repeatable_on(rule, lib, &asms, rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_functions() {
        assert_eq!(gate_eval(GateType::And, [1, 0, 0, 1]), [0, 1, 0, 0]);
        assert_eq!(gate_eval(GateType::And, [1, 0, 0, 0]), [0, 0, 0, 0]);
        assert_eq!(gate_eval(GateType::Or, [1, 0, 0, 0]), [0, 1, 0, 0]);
        assert_eq!(gate_eval(GateType::Cross, [1, 0, 0, 0]), [0, 0, 1, 0]);
        assert_eq!(gate_eval(GateType::Cross, [0, 1, 1, 1]), [0, 1, 0, 0]);
        assert_eq!(gate_eval(GateType::Fork, [0, 0, 0, 1]), [0, 1, 1, 0]);
        assert_eq!(gate_eval(GateType::Nop, [1; 4]), [0; 4]);
        assert_eq!(gate_eval(GateType::Wire { i: 3, o: 1 }, [0, 0, 0, 1]), [0, 1, 0, 0]);
        for g in GateType::all() {
            assert_eq!(gate_eval(g, [0; 4]), [0; 4], "{g}");
        }
    }

    #[test]
    fn image_sizes() {
        assert_eq!(GateType::all().len(), 17);
        let size = |g| img(g).len();
        assert_eq!(size(GateType::And), 2);
        assert_eq!(size(GateType::Or), 2);
        assert_eq!(size(GateType::Cross), 4);
        assert_eq!(size(GateType::Nop), 1);
        assert_eq!(size(GateType::Fork), 2);
        for g in GateType::all() {
            if let GateType::Wire { .. } = g {
                assert_eq!(size(g), 2);
            }
        }
    }

    #[test]
    fn gate_names_roundtrip() {
        for g in GateType::all() {
            assert_eq!(g.to_string().parse::<GateType>().unwrap(), g);
        }
        assert!("WIRE(1,1)".parse::<GateType>().is_err());
        assert_eq!(parse_bits("0101").unwrap(), [0, 1, 0, 1]);
        assert!(parse_bits("012").is_err());
    }

    #[test]
    fn facing_rule() {
        let wire = |i, o| Tile {
            gate: GateType::Wire { i, o },
            u: [0; 4],
        };
        let l = Layout::new(2, 1, vec![wire(3, 1), wire(3, 1)]).unwrap();
        check_layout(&l, Boundary::Torus).unwrap();
        let bad = Layout::new(2, 1, vec![wire(3, 1), wire(0, 1)]).unwrap();
        let err = check_layout(&bad, Boundary::Torus).unwrap_err().to_string();
        assert!(err.contains("east side of WIRE(3,1) at (0,0)"), "{err}");
        assert!(check_layout(&l, Boundary::Padded).is_err());
        let nop = Layout::new(1, 1, vec![Tile { gate: GateType::Nop, u: [0; 4] }]).unwrap();
        check_layout(&nop, Boundary::Padded).unwrap();
    }

    #[test]
    fn random_layouts_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..200 {
            let b = if k % 2 == 0 { Boundary::Torus } else { Boundary::Padded };
            let l = random_layout(&mut rng, 1 + k % 4, 1 + k % 3, b);
            check_layout(&l, b).unwrap();
        }
    }
}
