//! A small signal-propagation automaton with hand-built 3×3 blocks for
//! every gate, plus two faulty variants used to exercise the checkers.
//!
//! A block has blank corners, a center cell holding `(gate, phase, out)`
//! and four side cells holding `(side, bit)`. Over three steps the center
//! goes through phases 0, 1, 2 and back to 0:
//! - phase 0: input side cells copy the bit of the cell they face;
//! - phase 1: the center computes `out = gate(inputs)`;
//! - phase 2: output side cells take their bit of `out`, input side cells
//!   reset to 0.

use super::{gate_eval, img, opposite, Bits, Block, BlockLibrary, GateType};
use crate::rule::{von_neumann, CaRule, State};

/// Index of the blank state in the wire automata.
pub const WIRE_BLANK: State = 0;

const SIDE_BASE: State = 1;
const CENTER_BASE: State = 9;
const N: usize = 3;
const DELTA: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Blank,
    Side { side: usize, bit: u8 },
    Center { gate: usize, phase: u8, spent: bool, out: Bits },
}

#[derive(Clone)]
struct Codec {
    gates: Vec<GateType>,
    one_shot: bool,
}

fn bits_index(b: Bits) -> State {
    b.iter().fold(0, |acc, &x| acc * 2 + x as State)
}

fn index_bits(mut k: State) -> Bits {
    let mut b = [0; 4];
    for i in (0..4).rev() {
        b[i] = (k & 1) as u8;
        k >>= 1;
    }
    b
}

impl Codec {
    fn new(one_shot: bool) -> Self {
        Codec {
            gates: GateType::all(),
            one_shot,
        }
    }

    fn flags(&self) -> State {
        if self.one_shot {
            2
        } else {
            1
        }
    }

    fn len(&self) -> usize {
        CENTER_BASE as usize + self.gates.len() * 3 * self.flags() as usize * 16
    }

    fn encode(&self, c: Cell) -> State {
        match c {
            Cell::Blank => WIRE_BLANK,
            Cell::Side { side, bit } => SIDE_BASE + side as State * 2 + bit as State,
            Cell::Center { gate, phase, spent, out } => {
                let k = (gate as State * 3 + phase as State) * self.flags() + spent as State;
                CENTER_BASE + k * 16 + bits_index(out)
            }
        }
    }

    fn decode(&self, s: State) -> Cell {
        if s == WIRE_BLANK {
            Cell::Blank
        } else if s < CENTER_BASE {
            let k = s - SIDE_BASE;
            Cell::Side {
                side: (k / 2) as usize,
                bit: (k % 2) as u8,
            }
        } else {
            let k = s - CENTER_BASE;
            let out = index_bits(k % 16);
            let rest = k / 16;
            let spent = self.one_shot && rest % 2 == 1;
            let rest = rest / self.flags();
            Cell::Center {
                gate: (rest / 3) as usize,
                phase: (rest % 3) as u8,
                spent,
                out,
            }
        }
    }

    fn name(&self, s: State) -> String {
        match self.decode(s) {
            Cell::Blank => ".".into(),
            Cell::Side { side, bit } => format!("{}{bit}", ['n', 'e', 's', 'w'][side]),
            Cell::Center { gate, phase, spent, out } => format!(
                "{}.{phase}.{}{}",
                self.gates[gate],
                super::format_bits(out),
                if spent { "*" } else { "" }
            ),
        }
    }

    fn step(&self, w: &[State]) -> State {
        match self.decode(w[0]) {
            Cell::Blank => WIRE_BLANK,
            Cell::Side { side, bit } => {
                let Cell::Center { gate, phase, out, .. } = self.decode(w[1 + opposite(side)]) else {
                    return w[0];
                };
                let g = self.gates[gate];
                let bit = match phase {
                    0 if g.inputs()[side] => match self.decode(w[1 + side]) {
                        Cell::Side { side: s2, bit: b2 } if s2 == opposite(side) => b2,
                        _ => 0,
                    },
                    2 if g.outputs()[side] => out[side],
                    2 if g.inputs()[side] => 0,
                    _ => bit,
                };
                self.encode(Cell::Side { side, bit })
            }
            Cell::Center { gate, phase, spent, out } => {
                let next = match phase {
                    0 => Cell::Center { gate, phase: 1, spent, out },
                    1 => {
                        let g = self.gates[gate];
                        let mut io = [0; 4];
                        for (s, v) in io.iter_mut().enumerate() {
                            if let Cell::Side { side, bit } = self.decode(w[1 + s]) {
                                if side == s && g.inputs()[s] {
                                    *v = bit;
                                }
                            }
                        }
                        let out = if spent { [0; 4] } else { gate_eval(g, io) };
                        Cell::Center {
                            gate,
                            phase: 2,
                            spent: self.one_shot,
                            out,
                        }
                    }
                    _ => Cell::Center { gate, phase: 0, spent, out },
                };
                self.encode(next)
            }
        }
    }

    fn rule(&self) -> CaRule {
        let names = (0..self.len() as State).map(|s| self.name(s)).collect();
        let me = self.clone();
        CaRule::from_fn(2, names, von_neumann(), move |w| me.step(w)).expect("valid alphabet")
    }

    /// Pattern of type `g_u`, displayed with center gate `shown`.
    fn pattern(&self, shown: GateType, u: Bits, spent: bool) -> Vec<State> {
        let gate = self.gates.iter().position(|&x| x == shown).unwrap();
        let mut p = vec![WIRE_BLANK; N * N];
        p[N + 1] = self.encode(Cell::Center { gate, phase: 0, spent, out: u });
        // Side cells at north (1,2), east (2,1), south (1,0), west (0,1).
        let pos = [(1, 2), (2, 1), (1, 0), (0, 1)];
        for (side, (x, y)) in pos.into_iter().enumerate() {
            let bit = if shown.outputs()[side] { u[side] } else { 0 };
            p[y * N + x] = self.encode(Cell::Side { side, bit });
        }
        p
    }

    fn library(&self, shown: impl Fn(GateType) -> GateType) -> BlockLibrary {
        let mut blocks = Vec::new();
        let spent_flags: &[bool] = if self.one_shot { &[false, true] } else { &[false] };
        for &spent in spent_flags {
            for g in GateType::all() {
                for u in img(g) {
                    blocks.push(Block {
                        gate: g,
                        u,
                        pattern: self.pattern(shown(g), u, spent),
                    });
                }
            }
        }
        BlockLibrary::new(N, DELTA, blocks).expect("complete library")
    }
}

/// The reference automaton and its block library (`N = 3`, `Δ = 3`).
pub fn reference_wire_ca() -> (CaRule, BlockLibrary) {
    let c = Codec::new(false);
    (c.rule(), c.library(|g| g))
}

/// The reference library with every AND block built on an OR center.
pub fn corrupted_and_library() -> BlockLibrary {
    Codec::new(false).library(|g| if g == GateType::And { GateType::Or } else { g })
}

/// A variant whose gates compute once: after its first evaluation a
/// center is marked spent and outputs zeros forever. Fresh blocks come
/// first in the library so assemblies start fresh.
pub fn one_shot_wire_ca() -> (CaRule, BlockLibrary) {
    let c = Codec::new(true);
    (c.rule(), c.library(|g| g))
}
