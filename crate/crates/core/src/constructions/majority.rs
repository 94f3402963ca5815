//! Symmetric signed majority on the von Neumann neighborhood.
//!
//! A state is an inner value `I ∈ {-1, +1}` plus a sign vector
//! `S ∈ {-1, +1}^V`. The weight between neighbors `z` and `z'` is
//! `S(c_z)(z'-z) · S(c_z')(z-z')`, which is symmetric in `z, z'`; the
//! new inner value is `+1` iff the weighted sum over `z + V` is positive.
//! Sign vectors never change.

use crate::rule::{von_neumann, CaRule, State};

/// Position of `-v` in the von Neumann order (center, N, E, S, W).
const OPPOSITE: [usize; 5] = [0, 3, 4, 1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMajorityState {
    pub inner: i8,
    /// Signs for the offsets center, north, east, south, west.
    pub signs: [i8; 5],
}

fn bit(v: i8) -> State {
    (v > 0) as State
}

fn sign(b: State) -> i8 {
    if b != 0 {
        1
    } else {
        -1
    }
}

impl SignedMajorityState {
    /// Index: bit 5 holds the inner value, bits 4..0 the signs in
    /// neighborhood order (center in bit 4); `+1` encodes as 1.
    pub fn encode(&self) -> State {
        let mut s = bit(self.inner) << 5;
        for (k, &v) in self.signs.iter().enumerate() {
            s |= bit(v) << (4 - k);
        }
        s
    }

    pub fn decode(s: State) -> Self {
        let mut signs = [0i8; 5];
        for (k, v) in signs.iter_mut().enumerate() {
            *v = sign((s >> (4 - k)) & 1);
        }
        SignedMajorityState {
            inner: sign((s >> 5) & 1),
            signs,
        }
    }

    fn name(&self) -> String {
        let c = |v: i8| if v > 0 { '+' } else { '-' };
        let mut n = String::with_capacity(7);
        n.push(c(self.inner));
        n.push(':');
        n.extend(self.signs.iter().map(|&v| c(v)));
        n
    }
}

/// Weighted sum `Σ_{z' ∈ z+V} w_{zz'} I(c_{z'})` for a window in von
/// Neumann order. Always odd, so never zero.
pub fn signed_majority_sum(window: &[State]) -> i32 {
    let center = SignedMajorityState::decode(window[0]);
    window
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let other = SignedMajorityState::decode(s);
            let w = center.signs[k] as i32 * other.signs[OPPOSITE[k]] as i32;
            w * other.inner as i32
        })
        .sum()
}

/// The symmetric signed majority automaton on 64 states.
pub fn signed_majority() -> CaRule {
    let names = (0..64)
        .map(|s| SignedMajorityState::decode(s).name())
        .collect();
    CaRule::from_fn(2, names, von_neumann(), |w| {
        let center = SignedMajorityState::decode(w[0]);
        let alpha = if signed_majority_sum(w) > 0 { 1 } else { -1 };
        SignedMajorityState {
            inner: alpha,
            signs: center.signs,
        }
        .encode()
    })
    .expect("valid alphabet")
}
