//! Concrete automata.

mod majority;
mod zigzag;

pub(crate) use zigzag::forbidden_pair;

pub use majority::{signed_majority, signed_majority_sum, SignedMajorityState};
pub use zigzag::{zigzag, zigzag_transition, Mode, ZigzagAlphabet, ZigzagState};

use crate::error::{CaError, Result};
use crate::limits::Limits;
use crate::rule::{elementary_neighborhood, CaRule, Offset, State};

fn binary() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

fn tabulate_binary(neighborhood: Vec<Offset>, f: impl FnMut(&[State]) -> State) -> CaRule {
    CaRule::tabulate(1, binary(), neighborhood, &Limits::default(), f)
        .expect("tiny binary rule")
}

/// Elementary rule 110: `δ(x,y,z) = (1 - xyz)·max(y,z)`.
pub fn rule110() -> CaRule {
    tabulate_binary(elementary_neighborhood(), |w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        (1 - x * y * z) * y.max(z)
    })
}

/// Small binary rules used as fixtures.
#[derive(Clone, Debug)]
pub struct ToyRules {
    /// Radius 1, returns the center.
    pub identity: CaRule,
    /// Neighborhood `{+1}`, copies the right neighbor.
    pub shift: CaRule,
    /// Radius 0, flips the bit.
    pub not: CaRule,
    /// Radius 1 maximum.
    pub or_spread: CaRule,
    /// Radius 1 sum modulo 2.
    pub xor: CaRule,
}

pub fn toy_rules() -> ToyRules {
    ToyRules {
        identity: tabulate_binary(elementary_neighborhood(), |w| w[1]),
        shift: tabulate_binary(vec![Offset::d1(1)], |w| w[0]),
        not: tabulate_binary(vec![Offset::d1(0)], |w| 1 - w[0]),
        or_spread: tabulate_binary(elementary_neighborhood(), |w| w[0].max(w[1]).max(w[2])),
        xor: tabulate_binary(elementary_neighborhood(), |w| (w[0] + w[1] + w[2]) % 2),
    }
}

/// Cartesian product `F × G` acting componentwise. The state `(a, b)` has
/// index `a·|Q_G| + b` and name `a/b`; the neighborhood is `V_F` followed
/// by the offsets of `V_G` not already in `V_F`.
pub fn product(f: &CaRule, g: &CaRule, limits: &Limits) -> Result<CaRule> {
    if f.dimension() != g.dimension() {
        return Err(CaError::Dimension {
            expected: f.dimension(),
            found: g.dimension(),
        });
    }
    let qg = g.num_states() as State;
    let mut states = Vec::with_capacity(f.num_states() * g.num_states());
    for a in f.states() {
        for b in g.states() {
            states.push(format!("{a}/{b}"));
        }
    }
    let mut nb = f.neighborhood().to_vec();
    for o in g.neighborhood() {
        if !nb.contains(o) {
            nb.push(*o);
        }
    }
    let f_pos: Vec<usize> = f.neighborhood().iter().map(|o| nb.iter().position(|p| p == o).unwrap()).collect();
    let g_pos: Vec<usize> = g.neighborhood().iter().map(|o| nb.iter().position(|p| p == o).unwrap()).collect();
    let (fc, gc) = (f.clone(), g.clone());
    let local = move |w: &[State]| {
        let wf: Vec<State> = f_pos.iter().map(|&i| w[i] / qg).collect();
        let wg: Vec<State> = g_pos.iter().map(|&i| w[i] % qg).collect();
        fc.eval(&wf) * qg + gc.eval(&wg)
    };
    let entries = crate::limits::saturating_pow(states.len() as u64, nb.len());
    if entries <= limits.max_table_entries {
        CaRule::tabulate(f.dimension(), states, nb, limits, local)
    } else {
        CaRule::from_fn(f.dimension(), states, nb, local)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent evaluation of the printed rule 110 formula.
    fn formula(x: u32, y: u32, z: u32) -> u32 {
        (1 - x * y * z) * y.max(z)
    }

    #[test]
    fn rule110_truth_table() {
        let r = rule110();
        let expected = [
            ([1, 1, 1], 0),
            ([1, 1, 0], 1),
            ([1, 0, 1], 1),
            ([1, 0, 0], 0),
            ([0, 1, 1], 1),
            ([0, 1, 0], 1),
            ([0, 0, 1], 1),
            ([0, 0, 0], 0),
        ];
        for (w, out) in expected {
            assert_eq!(formula(w[0], w[1], w[2]), out);
            assert_eq!(r.apply_local(&w).unwrap(), out, "window {w:?}");
        }
        assert_eq!(r.radius(), 1);
    }

    #[test]
    fn toy_examples() {
        let t = toy_rules();
        for w in [[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, 1]] {
            assert_eq!(t.identity.eval(&w), w[1]);
        }
        assert_eq!(t.not.eval(&[0]), 1);
        assert_eq!(t.not.eval(&[1]), 0);
        assert_eq!(t.not.radius(), 0);
        assert_eq!(t.or_spread.eval(&[0, 0, 1]), 1);
        assert_eq!(t.xor.eval(&[1, 1, 1]), 1);
        assert_eq!(t.xor.eval(&[1, 0, 1]), 0);
        assert_eq!(t.shift.eval(&[1]), 1);
    }

    #[test]
    fn product_acts_componentwise() {
        let t = toy_rules();
        let p = product(&rule110(), &t.shift, &Limits::default()).unwrap();
        assert_eq!(p.num_states(), 4);
        assert_eq!(p.neighborhood().len(), 3);
        // window over (-1,0,1): states (1,0),(1,1),(0,1) -> (δ(1,1,0), 1)
        let w = [2, 3, 1];
        assert_eq!(p.eval(&w), 2 + 1);
        assert_eq!(p.state_name(3), "1/1");
    }
}
