#![allow(dead_code)]

use cellauto::constructions::{Mode, ZigzagAlphabet, ZigzagState};
use cellauto::rule::elementary_neighborhood;
use cellauto::{BiPeriodicConfig, CaRule, PeriodicConfig, State};
use rand::seq::SliceRandom;
use rand::Rng;

pub const ZIGZAG_STATES: State = 19;

fn zcell(rng: &mut impl Rng, mode: Mode) -> State {
    ZigzagAlphabet::new(2).encode(ZigzagState::Cell {
        x: rng.gen_range(0..2),
        y: rng.gen_range(0..2),
        mode,
    })
}

fn blanks(rng: &mut impl Rng, n: usize) -> Vec<State> {
    (0..n).map(|_| if rng.gen_bool(0.8) { 0 } else { 1 }).collect()
}

/// `l^i H r^j`, or `l^i r^j` without a head.
fn zone(rng: &mut impl Rng, max_len: usize) -> Vec<State> {
    let len = rng.gen_range(1..=max_len);
    let head = rng.gen_bool(0.8);
    let split = rng.gen_range(0..len);
    (0..len)
        .map(|k| {
            let mode = match k.cmp(&split) {
                std::cmp::Ordering::Less => Mode::Left,
                std::cmp::Ordering::Equal if head => *[Mode::HeadLeft, Mode::HeadRight].choose(rng).unwrap(),
                _ => Mode::Right,
            };
            zcell(rng, mode)
        })
        .collect()
}

fn raw_zigzag(rng: &mut impl Rng) -> BiPeriodicConfig {
    let (left, mid, right) = match rng.gen_range(0..5) {
        // Uniform noise, mostly invalid.
        0 => {
            let (a, b, c) = (rng.gen_range(1..=2), rng.gen_range(0..=7), rng.gen_range(1..=2));
            let mut w = |n| (0..n).map(|_| rng.gen_range(0..ZIGZAG_STATES)).collect::<Vec<_>>();
            (w(a), w(b), w(c))
        }
        // A bounded zone between blank tails.
        1 | 2 => {
            let pre = rng.gen_range(0..=2);
            let post = rng.gen_range(0..=2);
            let mut mid = blanks(rng, pre);
            mid.extend(zone(rng, 8));
            mid.extend(blanks(rng, post));
            let ll = rng.gen_range(1..=2);
            let rl = rng.gen_range(1..=2);
            (blanks(rng, ll), mid, blanks(rng, rl))
        }
        // A zone unbounded on the left.
        3 => {
            let ll = rng.gen_range(1..=2);
            let left = (0..ll).map(|_| zcell(rng, Mode::Left)).collect();
            let mut mid = zone(rng, 6);
            if !rng.gen_bool(0.3) {
                mid.extend(blanks(rng, 1));
            }
            let right = if rng.gen_bool(0.5) {
                vec![0]
            } else {
                vec![zcell(rng, Mode::Right)]
            };
            (left, mid, right)
        }
        // A zone unbounded on the right.
        _ => {
            let mut mid = blanks(rng, 1);
            mid.extend(zone(rng, 6));
            let rl = rng.gen_range(1..=2);
            let right = (0..rl).map(|_| zcell(rng, Mode::Right)).collect();
            (vec![0], mid, right)
        }
    };
    let mut mid = mid;
    // Occasional single-cell corruption.
    if !mid.is_empty() && rng.gen_bool(0.15) {
        let k = rng.gen_range(0..mid.len());
        mid[k] = rng.gen_range(0..ZIGZAG_STATES);
    }
    let origin = rng.gen_range(-1..=mid.len() as i64);
    BiPeriodicConfig::new(left, mid, right, origin).unwrap()
}

/// A random configuration of the zigzag automaton over a 2-state inner
/// rule whose canonical description has length at most `max_len`.
pub fn random_zigzag_config(rng: &mut impl Rng, max_len: usize) -> BiPeriodicConfig {
    loop {
        let c = raw_zigzag(rng);
        if c.canonical().description_length() <= max_len {
            return c;
        }
    }
}

pub fn random_periodic(rng: &mut impl Rng, q: State, len: usize) -> PeriodicConfig {
    PeriodicConfig::new_1d((0..len).map(|_| rng.gen_range(0..q)).collect()).unwrap()
}

/// A random radius-1 rule on `q` states.
pub fn random_rule(rng: &mut impl Rng, q: usize) -> CaRule {
    let names = (0..q).map(|s| s.to_string()).collect();
    let table = (0..q * q * q).map(|_| rng.gen_range(0..q as State)).collect();
    CaRule::from_table(1, names, elementary_neighborhood(), table).unwrap()
}
