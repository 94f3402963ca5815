//! Block recoding, rescaling and sub-automaton/projection simulations.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::config::PeriodicConfig;
use crate::decision::DecisionReport;
use crate::error::{CaError, Result};
use crate::limits::{saturating_pow, Limits};
use crate::rule::{CaRule, Odometer, Offset, State};

/// Block shape `m⃗` and time factor `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockShape {
    pub m: Vec<usize>,
    pub t: usize,
}

impl BlockShape {
    pub fn new(m: Vec<usize>, t: usize) -> Result<Self> {
        if m.is_empty() || m.len() > 2 {
            return Err(CaError::input(format!("block shape needs 1 or 2 components, got {}", m.len())));
        }
        if m.contains(&0) || t == 0 {
            return Err(CaError::input("block sizes and time factor must be positive"));
        }
        Ok(BlockShape { m, t })
    }

    pub fn trivial(dimension: usize) -> Self {
        BlockShape {
            m: vec![1; dimension],
            t: 1,
        }
    }

    pub fn dimension(&self) -> usize {
        self.m.len()
    }

    /// Cells per block, `m₁·…·m_d`.
    pub fn volume(&self) -> usize {
        self.m.iter().product()
    }

    fn mx(&self) -> usize {
        self.m[0]
    }

    fn my(&self) -> usize {
        self.m.get(1).copied().unwrap_or(1)
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(|k| k.to_string()).collect();
        write!(f, "m=({}) t={}", m.join(","), self.t)
    }
}

/// Block state index of a tuple; the first component is most significant.
/// Tuple component `k` holds the cell at `(k mod m₁, k div m₁)` of the block.
fn pack(q: usize, tuple: &[State]) -> State {
    tuple.iter().fold(0u64, |acc, &s| acc * q as u64 + s as u64) as State
}

fn unpack(q: usize, k: usize, mut idx: State, out: &mut [State]) {
    for i in (0..k).rev() {
        out[i] = idx % q as State;
        idx /= q as State;
    }
    debug_assert_eq!(out.len(), k);
}

/// Block tuple of a block state, e.g. `[a, b]`.
pub fn block_tuple(q: usize, shape_volume: usize, block: State) -> Vec<State> {
    let mut out = vec![0; shape_volume];
    unpack(q, shape_volume, block, &mut out);
    out
}

/// Block state for a tuple of cell states.
pub fn block_index(q: usize, tuple: &[State]) -> State {
    pack(q, tuple)
}

/// Names `(a,b,…)` of every block state.
pub fn block_names(states: &[String], volume: usize) -> Vec<String> {
    let q = states.len();
    let n = q.pow(volume as u32);
    let mut tuple = vec![0; volume];
    (0..n)
        .map(|i| {
            unpack(q, volume, i as State, &mut tuple);
            let parts: Vec<&str> = tuple.iter().map(|&s| states[s as usize].as_str()).collect();
            format!("({})", parts.join(","))
        })
        .collect()
}

fn block_alphabet_size(q: usize, volume: usize) -> Result<usize> {
    let n = saturating_pow(q as u64, volume);
    if n > State::MAX as u64 {
        return Err(CaError::resource(format!("block alphabet of {q}^{volume} states is too large")));
    }
    Ok(n as usize)
}

fn check_divisible(m: &[usize], c: &PeriodicConfig) -> Result<()> {
    if m.len() != c.dimension() {
        return Err(CaError::Dimension {
            expected: c.dimension(),
            found: m.len(),
        });
    }
    let period = c.period();
    for (p, k) in period.iter().zip(m) {
        if *k == 0 || p % k != 0 {
            return Err(CaError::input(format!(
                "period {period:?} is not divisible by block shape {m:?}"
            )));
        }
    }
    Ok(())
}

/// Recodes a periodic configuration over `q` states into `m⃗`-blocks.
pub fn block_encode(q: usize, m: &[usize], c: &PeriodicConfig) -> Result<PeriodicConfig> {
    check_divisible(m, c)?;
    block_alphabet_size(q, m.iter().product())?;
    let (mx, my) = (m[0], m.get(1).copied().unwrap_or(1));
    let (bw, bh) = (c.width() / mx, c.height() / my);
    let mut tuple = vec![0; mx * my];
    let mut out = Vec::with_capacity(bw * bh);
    for by in 0..bh {
        for bx in 0..bw {
            for dy in 0..my {
                for dx in 0..mx {
                    tuple[dx + mx * dy] = c.get((bx * mx + dx) as i64, (by * my + dy) as i64);
                }
            }
            out.push(pack(q, &tuple));
        }
    }
    if c.dimension() == 1 {
        PeriodicConfig::new_1d(out)
    } else {
        PeriodicConfig::new_2d(bw, bh, out)
    }
}

/// Inverse of [`block_encode`].
pub fn block_decode(q: usize, m: &[usize], c: &PeriodicConfig) -> Result<PeriodicConfig> {
    if m.len() != c.dimension() || m.contains(&0) {
        return Err(CaError::input(format!("block shape {m:?} does not fit the configuration")));
    }
    let volume: usize = m.iter().product();
    let n = block_alphabet_size(q, volume)?;
    if let Some(&s) = c.cells().iter().find(|&&s| s as usize >= n) {
        return Err(CaError::input(format!("block state {s} out of range")));
    }
    let (mx, my) = (m[0], m.get(1).copied().unwrap_or(1));
    let (w, h) = (c.width() * mx, c.height() * my);
    let mut cells = vec![0; w * h];
    let mut tuple = vec![0; volume];
    for by in 0..c.height() {
        for bx in 0..c.width() {
            unpack(q, volume, c.get(bx as i64, by as i64), &mut tuple);
            for dy in 0..my {
                for dx in 0..mx {
                    cells[(by * my + dy) * w + bx * mx + dx] = tuple[dx + mx * dy];
                }
            }
        }
    }
    if c.dimension() == 1 {
        PeriodicConfig::new_1d(cells)
    } else {
        PeriodicConfig::new_2d(w, h, cells)
    }
}

/// One step of `rule` on a rectangle; the result loses `r` cells on each
/// side (and top and bottom in dimension 2).
fn shrink_rect(rule: &CaRule, w: usize, h: usize, cells: &[State], window: &mut [State]) -> (usize, usize, Vec<State>) {
    let r = rule.radius();
    let ry = if rule.dimension() == 2 { r } else { 0 };
    let (nw, nh) = (w - 2 * r, h - 2 * ry);
    let mut out = Vec::with_capacity(nw * nh);
    for y in 0..nh {
        for x in 0..nw {
            for (k, o) in rule.neighborhood().iter().enumerate() {
                let xx = (x + r) as i64 + o.dx as i64;
                let yy = (y + ry) as i64 + o.dy as i64;
                window[k] = cells[yy as usize * w + xx as usize];
            }
            out.push(rule.eval(window));
        }
    }
    (nw, nh, out)
}

/// The rescaled automaton `G^[m⃗,t] = bloc ∘ G^t ∘ bloc⁻¹`, tabulated over
/// a box neighborhood of radius `⌈r·t/mᵢ⌉` in each direction. The trivial
/// shape returns `G` unchanged.
pub fn rescale(g: &CaRule, shape: &BlockShape, limits: &Limits) -> Result<CaRule> {
    if shape.dimension() != g.dimension() {
        return Err(CaError::Dimension {
            expected: g.dimension(),
            found: shape.dimension(),
        });
    }
    if shape.volume() == 1 && shape.t == 1 {
        return Ok(g.clone());
    }
    let q = g.num_states();
    let volume = shape.volume();
    let nstates = block_alphabet_size(q, volume)?;
    let reach = g.radius() * shape.t;
    let (mx, my) = (shape.mx(), shape.my());
    let rx = reach.div_ceil(mx);
    let ry = if g.dimension() == 2 { reach.div_ceil(my) } else { 0 };
    let mut nb = Vec::new();
    for dy in -(ry as i32)..=ry as i32 {
        for dx in -(rx as i32)..=rx as i32 {
            nb.push(Offset { dx, dy });
        }
    }
    let entries = saturating_pow(nstates as u64, nb.len());
    if entries > limits.max_table_entries {
        return Err(CaError::resource(format!(
            "rescaled table needs {entries} entries, limit is {}",
            limits.max_table_entries
        )));
    }
    let names = block_names(g.states(), volume);
    let (bw, bh) = (2 * rx + 1, 2 * ry + 1);
    let (w, h) = (bw * mx, bh * my);
    let mut grid = vec![0 as State; w * h];
    let mut tuple = vec![0 as State; volume];
    let mut gwin = vec![0 as State; g.neighborhood().len()];
    let step_ry = if g.dimension() == 2 { g.radius() } else { 0 };
    CaRule::tabulate(g.dimension(), names, nb, limits, |win| {
        for by in 0..bh {
            for bx in 0..bw {
                unpack(q, volume, win[by * bw + bx], &mut tuple);
                for dy in 0..my {
                    for dx in 0..mx {
                        grid[(by * my + dy) * w + bx * mx + dx] = tuple[dx + mx * dy];
                    }
                }
            }
        }
        let (mut cw, mut ch, mut cur) = (w, h, grid.clone());
        for _ in 0..shape.t {
            let (nw, nh, next) = shrink_rect(g, cw, ch, &cur, &mut gwin);
            cw = nw;
            ch = nh;
            cur = next;
        }
        let _ = ch;
        let (ox, oy) = (rx * mx - reach, ry * my - step_ry * shape.t);
        for dy in 0..my {
            for dx in 0..mx {
                tuple[dx + mx * dy] = cur[(oy + dy) * cw + ox + dx];
            }
        }
        pack(q, &tuple)
    })
}

/// A strong simulation witness: shape plus projection `π`, whose domain is
/// the sub-alphabet of block states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationWitness {
    pub shape: BlockShape,
    pub pi: BTreeMap<State, State>,
}

impl SimulationWitness {
    pub fn sub_alphabet(&self) -> Vec<State> {
        self.pi.keys().copied().collect()
    }

    /// `m:`, `t:`, `blocks:` and `pi:` lines, blocks written as tuples of
    /// `g`'s state names.
    pub fn to_text(&self, f: &CaRule, g: &CaRule) -> String {
        let q = g.num_states();
        let v = self.shape.volume();
        let name = |b: State| {
            let parts: Vec<&str> = block_tuple(q, v, b).iter().map(|&s| g.state_name(s)).collect();
            format!("({})", parts.join(","))
        };
        let m: Vec<String> = self.shape.m.iter().map(|k| k.to_string()).collect();
        let mut s = format!("m: {}\nt: {}\n", m.join(" "), self.shape.t);
        let blocks: Vec<String> = self.pi.keys().map(|&b| name(b)).collect();
        let _ = writeln!(s, "blocks: {}", blocks.join(" "));
        s.push_str("pi:\n");
        for (&b, &x) in &self.pi {
            let _ = writeln!(s, "{} -> {}", name(b), f.state_name(x));
        }
        s
    }

    pub fn from_text(text: &str, f: &CaRule, g: &CaRule) -> Result<Self> {
        let q = g.num_states();
        let mut m: Option<Vec<usize>> = None;
        let mut t: Option<usize> = None;
        let mut blocks: Option<Vec<State>> = None;
        let mut pi = BTreeMap::new();
        let mut in_pi = false;
        let parse_block = |tok: &str, line: usize, vol: usize| -> Result<State> {
            let inner = tok
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| CaError::parse(line, 1, format!("expected a block tuple, got {tok:?}")))?;
            let tuple = inner
                .split(',')
                .map(|n| {
                    g.state_index(n.trim())
                        .ok_or_else(|| CaError::parse(line, 1, format!("unknown state {:?}", n.trim())))
                })
                .collect::<Result<Vec<State>>>()?;
            if tuple.len() != vol {
                return Err(CaError::parse(line, 1, format!("block has {} cells, shape has {vol}", tuple.len())));
            }
            Ok(pack(q, &tuple))
        };
        let volume = |m: &Option<Vec<usize>>, line: usize| {
            m.as_ref()
                .map(|v| v.iter().product::<usize>())
                .ok_or_else(|| CaError::parse(line, 1, "`m:` must come first"))
        };
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("m:") {
                let v = rest
                    .split_whitespace()
                    .map(|x| x.parse::<usize>().map_err(|_| CaError::parse(ln, 4, format!("bad block size {x:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                m = Some(v);
                in_pi = false;
            } else if let Some(rest) = line.strip_prefix("t:") {
                t = Some(rest.trim().parse().map_err(|_| CaError::parse(ln, 4, "bad time factor"))?);
                in_pi = false;
            } else if let Some(rest) = line.strip_prefix("blocks:") {
                let vol = volume(&m, ln)?;
                blocks = Some(
                    rest.split_whitespace()
                        .map(|b| parse_block(b, ln, vol))
                        .collect::<Result<Vec<_>>>()?,
                );
                in_pi = false;
            } else if line == "pi:" {
                in_pi = true;
            } else if in_pi {
                let (b, x) = line
                    .split_once("->")
                    .ok_or_else(|| CaError::parse(ln, 1, "expected `<block> -> <state>`"))?;
                let vol = volume(&m, ln)?;
                let b = parse_block(b, ln, vol)?;
                let x = f
                    .state_index(x.trim())
                    .ok_or_else(|| CaError::parse(ln, 1, format!("unknown state {:?}", x.trim())))?;
                if pi.insert(b, x).is_some() {
                    return Err(CaError::parse(ln, 1, "block mapped twice"));
                }
            } else {
                return Err(CaError::parse(ln, 1, format!("unexpected line {line:?}")));
            }
        }
        let m = m.ok_or_else(|| CaError::parse(1, 1, "missing `m:`"))?;
        let t = t.ok_or_else(|| CaError::parse(1, 1, "missing `t:`"))?;
        if let Some(bs) = blocks {
            let mut a = bs.clone();
            a.sort_unstable();
            a.dedup();
            let keys: Vec<State> = pi.keys().copied().collect();
            if a != keys {
                return Err(CaError::input("`blocks:` does not match the domain of `pi:`"));
            }
        }
        Ok(SimulationWitness {
            shape: BlockShape::new(m, t)?,
            pi,
        })
    }
}

fn union_neighborhood(g: &CaRule, f: &CaRule) -> (Vec<Offset>, Vec<usize>, Vec<usize>) {
    let mut nb = g.neighborhood().to_vec();
    for o in f.neighborhood() {
        if !nb.contains(o) {
            nb.push(*o);
        }
    }
    let pos = |r: &CaRule| -> Vec<usize> {
        r.neighborhood().iter().map(|o| nb.iter().position(|p| p == o).unwrap()).collect()
    };
    let (gp, fp) = (pos(g), pos(f));
    (nb, gp, fp)
}

fn validate_projection(f: &CaRule, gblock: &CaRule, pi: &BTreeMap<State, State>) -> Result<()> {
    if f.dimension() != gblock.dimension() {
        return Err(CaError::Dimension {
            expected: f.dimension(),
            found: gblock.dimension(),
        });
    }
    if pi.is_empty() {
        return Err(CaError::input("projection has an empty domain"));
    }
    if let Some((&b, _)) = pi.iter().find(|(&b, _)| b as usize >= gblock.num_states()) {
        return Err(CaError::input(format!("block state {b} out of range")));
    }
    if let Some((_, &x)) = pi.iter().find(|(_, &x)| x as usize >= f.num_states()) {
        return Err(CaError::input(format!("projection value {x} out of range")));
    }
    let mut hit = vec![false; f.num_states()];
    for &x in pi.values() {
        hit[x as usize] = true;
    }
    if let Some(x) = hit.iter().position(|h| !h) {
        return Err(CaError::input(format!(
            "projection is not surjective: {} has no preimage",
            f.state_name(x as State)
        )));
    }
    Ok(())
}

/// Verifies that the sub-alphabet `dom(π)` is closed under `gblock` and that
/// `π ∘ g = f ∘ π` on every window over it.
pub fn check_subproj(
    f: &CaRule,
    gblock: &CaRule,
    pi: &BTreeMap<State, State>,
    limits: &Limits,
) -> Result<DecisionReport> {
    validate_projection(f, gblock, pi)?;
    let (nb, gp, fp) = union_neighborhood(gblock, f);
    let sub: Vec<State> = pi.keys().copied().collect();
    let count = saturating_pow(sub.len() as u64, nb.len());
    if count > limits.max_windows {
        return Err(CaError::resource(format!(
            "{count} windows exceed limit {}",
            limits.max_windows
        )));
    }
    let mut gw = vec![0; gp.len()];
    let mut fw = vec![0; fp.len()];
    let mut win = vec![0; nb.len()];
    let mut odo = Odometer::new(sub.len() as State, nb.len());
    let names = |w: &[State]| {
        let v: Vec<&str> = w.iter().map(|&s| gblock.state_name(s)).collect();
        v.join(" ")
    };
    while let Some(idx) = odo.next_word() {
        for (k, &i) in idx.iter().enumerate() {
            win[k] = sub[i as usize];
        }
        for (k, &p) in gp.iter().enumerate() {
            gw[k] = win[p];
        }
        for (k, &p) in fp.iter().enumerate() {
            fw[k] = pi[&win[p]];
        }
        let img = gblock.eval(&gw);
        let Some(&proj) = pi.get(&img) else {
            return Ok(DecisionReport::no(format!(
                "window [{}] leaves the sub-alphabet: image {}",
                names(&win),
                gblock.state_name(img)
            )));
        };
        let expect = f.eval(&fw);
        if proj != expect {
            return Ok(DecisionReport::no(format!(
                "window [{}] projects to {} but F gives {}",
                names(&win),
                f.state_name(proj),
                f.state_name(expect)
            )));
        }
    }
    Ok(DecisionReport::yes(format!(
        "{} windows over {} sub-alphabet states commute",
        count,
        sub.len()
    )))
}

/// The general relation `F^[shape_f] ⊑ G^[shape_g]` for user-supplied
/// shapes on both sides.
pub fn check_simulation(
    f: &CaRule,
    shape_f: &BlockShape,
    g: &CaRule,
    shape_g: &BlockShape,
    pi: &BTreeMap<State, State>,
    limits: &Limits,
) -> Result<DecisionReport> {
    let fr = rescale(f, shape_f, limits)?;
    let gr = rescale(g, shape_g, limits)?;
    check_subproj(&fr, &gr, pi, limits)
}

/// Outcome of [`search_strong_simulation`].
#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub witness: Option<SimulationWitness>,
    /// Shapes searched completely without success, in search order.
    pub exhausted: Vec<BlockShape>,
    /// Shapes abandoned because a resource limit was hit.
    pub skipped: Vec<(BlockShape, String)>,
}

/// All shapes with `1 ≤ mᵢ ≤ m_max`, `1 ≤ t ≤ t_max`, lexicographically.
pub fn shapes_up_to(dimension: usize, m_max: usize, t_max: usize) -> Vec<BlockShape> {
    let mut out = Vec::new();
    let ms: Vec<Vec<usize>> = if dimension == 1 {
        (1..=m_max).map(|a| vec![a]).collect()
    } else {
        (1..=m_max).flat_map(|a| (1..=m_max).map(move |b| vec![a, b])).collect()
    };
    for m in ms {
        for t in 1..=t_max {
            out.push(BlockShape { m: m.clone(), t });
        }
    }
    out
}

enum Propagation {
    Closed(BTreeMap<State, State>),
    Conflict,
    Budget,
}

/// Closes a seed labelling under forced labels `label(g(w)) = f(label(w))`.
fn propagate(
    f: &CaRule,
    gb: &CaRule,
    seed: &[State],
    budget: &mut u64,
) -> Propagation {
    let (nb, gp, fp) = union_neighborhood(gb, f);
    let k = nb.len();
    let mut sub: Vec<State> = seed.to_vec();
    let mut label: BTreeMap<State, State> = seed.iter().enumerate().map(|(i, &b)| (b, i as State)).collect();
    let mut done = 0usize;
    let mut gw = vec![0; gp.len()];
    let mut fw = vec![0; fp.len()];
    let mut idx = vec![0usize; k];
    while done < sub.len() {
        let size = sub.len();
        // Windows using at least one state added since the previous round:
        // position j is the first such, earlier positions are old states.
        for j in 0..k {
            let lo: Vec<usize> = (0..k).map(|p| if p == j { done } else { 0 }).collect();
            let hi: Vec<usize> = (0..k).map(|p| if p < j { done } else { size }).collect();
            if (0..k).any(|p| lo[p] >= hi[p]) {
                continue;
            }
            idx.copy_from_slice(&lo);
            loop {
                if *budget == 0 {
                    return Propagation::Budget;
                }
                *budget -= 1;
                for (t, &p) in gp.iter().enumerate() {
                    gw[t] = sub[idx[p]];
                }
                for (t, &p) in fp.iter().enumerate() {
                    fw[t] = label[&sub[idx[p]]];
                }
                let img = gb.eval(&gw);
                let want = f.eval(&fw);
                match label.get(&img) {
                    Some(&have) if have != want => return Propagation::Conflict,
                    Some(_) => {}
                    None => {
                        label.insert(img, want);
                        sub.push(img);
                    }
                }
                let mut p = k;
                loop {
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                    idx[p] += 1;
                    if idx[p] < hi[p] {
                        break;
                    }
                    idx[p] = lo[p];
                    if p == 0 {
                        p = usize::MAX;
                        break;
                    }
                }
                if p == usize::MAX {
                    break;
                }
            }
        }
        done = size;
    }
    Propagation::Closed(label)
}

/// Searches shapes `m⃗ ≤ m_max`, `t ≤ t_max` in lexicographic order for a
/// strong simulation `F ⊑ G^[m⃗,t]`. For each shape, representatives
/// `(b₀, …, b_{|Q_F|-1})` with `π(bᵢ) = i` are tried in lexicographic order
/// and closed under forced labels; the first closure without conflict is
/// the least witness containing those representatives.
pub fn search_strong_simulation(
    f: &CaRule,
    g: &CaRule,
    m_max: usize,
    t_max: usize,
    limits: &Limits,
) -> Result<SearchReport> {
    if f.num_states() > 3 {
        return Err(CaError::input(format!(
            "search supports at most 3 simulated states, got {}",
            f.num_states()
        )));
    }
    if f.dimension() != g.dimension() {
        return Err(CaError::Dimension {
            expected: f.dimension(),
            found: g.dimension(),
        });
    }
    if m_max == 0 || t_max == 0 {
        return Err(CaError::input("search bounds must be positive"));
    }
    let mut report = SearchReport::default();
    for shape in shapes_up_to(g.dimension(), m_max, t_max) {
        let gb = match rescale(g, &shape, limits) {
            Ok(r) => r,
            Err(CaError::Resource(msg)) => {
                report.skipped.push((shape, msg));
                continue;
            }
            Err(e) => return Err(e),
        };
        let n = gb.num_states();
        let qf = f.num_states();
        let mut budget = limits.max_windows;
        let mut found = None;
        let mut over_budget = false;
        let mut odo = Odometer::new(n as State, qf);
        while let Some(reps) = odo.next_word() {
            let distinct = (0..qf).all(|i| (i + 1..qf).all(|j| reps[i] != reps[j]));
            if !distinct {
                continue;
            }
            match propagate(f, &gb, reps, &mut budget) {
                Propagation::Closed(pi) => {
                    found = Some(pi);
                    break;
                }
                Propagation::Conflict => {}
                Propagation::Budget => {
                    over_budget = true;
                    break;
                }
            }
        }
        if let Some(pi) = found {
            report.witness = Some(SimulationWitness { shape, pi });
            return Ok(report);
        }
        if over_budget {
            report.skipped.push((
                shape,
                format!("window budget of {} exhausted", limits.max_windows),
            ));
        } else {
            report.exhausted.push(shape);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{product, rule110, toy_rules};
    use crate::engine::iterate_periodic;

    fn identity_pi(n: usize) -> BTreeMap<State, State> {
        (0..n as State).map(|s| (s, s)).collect()
    }

    #[test]
    fn encode_examples() {
        let c = PeriodicConfig::new_1d(vec![0, 1, 1, 0]).unwrap();
        assert_eq!(block_encode(2, &[1], &c).unwrap(), c);
        let b = block_encode(2, &[2], &c).unwrap();
        assert_eq!(b.cells(), &[0b01, 0b10]);
        assert_eq!(block_decode(2, &[2], &b).unwrap(), c);
        assert!(block_encode(2, &[3], &c).is_err());
        let c2 = PeriodicConfig::new_2d(4, 2, vec![0, 1, 2, 0, 1, 1, 0, 2]).unwrap();
        let b2 = block_encode(3, &[2, 2], &c2).unwrap();
        assert_eq!(b2.period(), vec![2, 1]);
        assert_eq!(block_tuple(3, 4, b2.cells()[0]), vec![0, 1, 1, 1]);
        assert_eq!(block_decode(3, &[2, 2], &b2).unwrap(), c2);
        assert_eq!(block_names(&["0".into(), "1".into()], 2)[1], "(0,1)");
    }

    #[test]
    fn rescale_matches_iteration() {
        let r = rule110();
        let lim = Limits::default();
        for (m, t) in [(2, 2), (3, 1), (1, 3), (2, 1)] {
            let shape = BlockShape::new(vec![m], t).unwrap();
            let rs = rescale(&r, &shape, &lim).unwrap();
            let c = PeriodicConfig::new_1d((0..6 * m).map(|i| ((i * 7 + 3) % 5 % 2) as State).collect()).unwrap();
            let lhs = crate::engine::step_periodic(&rs, &block_encode(2, &[m], &c).unwrap()).unwrap();
            let rhs = block_encode(2, &[m], &iterate_periodic(&r, &c, t).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "shape {shape}");
        }
        assert_eq!(rescale(&r, &BlockShape::trivial(1), &lim).unwrap().table(), r.table());
    }

    #[test]
    fn rescale_two_dimensional() {
        let r = crate::constructions::signed_majority();
        let lim = Limits {
            max_table_entries: 1 << 30,
            ..Limits::default()
        };
        // 64 states in 2×1 blocks would need 4096^9 entries.
        assert!(rescale(&r, &BlockShape::new(vec![2, 1], 1).unwrap(), &lim).is_err());
    }

    #[test]
    fn subproj_examples() {
        let lim = Limits::default();
        let r = rule110();
        assert!(check_subproj(&r, &r, &identity_pi(2), &lim).unwrap().is_yes());
        let flip: BTreeMap<State, State> = [(0, 1), (1, 0)].into();
        let rep = check_subproj(&r, &r, &flip, &lim).unwrap();
        assert!(!rep.is_yes());
        assert!(rep.note.contains("[0 0 0]"), "{}", rep.note);
        let t = toy_rules();
        let p = product(&r, &t.xor, &lim).unwrap();
        let first: BTreeMap<State, State> = (0..4).map(|s| (s, s / 2)).collect();
        assert!(check_subproj(&r, &p, &first, &lim).unwrap().is_yes());
        let partial: BTreeMap<State, State> = [(0, 0)].into();
        assert!(check_subproj(&r, &r, &partial, &lim).is_err());
    }

    #[test]
    fn search_examples() {
        let lim = Limits::default();
        let t = toy_rules();
        for r in [&t.identity, &rule110()] {
            let rep = search_strong_simulation(r, r, 1, 1, &lim).unwrap();
            let w = rep.witness.unwrap();
            assert_eq!(w.shape, BlockShape::trivial(1));
            assert_eq!(w.pi, identity_pi(2));
        }
        let rep = search_strong_simulation(&t.identity, &t.xor, 2, 2, &lim).unwrap();
        if let Some(w) = rep.witness {
            let gb = rescale(&t.xor, &w.shape, &lim).unwrap();
            assert!(check_subproj(&t.identity, &gb, &w.pi, &lim).unwrap().is_yes());
        }
    }

    #[test]
    fn search_reports_exhausted_shapes() {
        let lim = Limits::default();
        let t = toy_rules();
        // NOT has period 2 and identity only period 1 on every sub-alphabet.
        let rep = search_strong_simulation(&t.not, &t.identity, 2, 2, &lim).unwrap();
        assert!(rep.witness.is_none());
        assert_eq!(rep.exhausted.len(), 4);
    }

    #[test]
    fn witness_text_roundtrip() {
        let t = toy_rules();
        let w = SimulationWitness {
            shape: BlockShape::new(vec![2], 1).unwrap(),
            pi: [(0, 0), (3, 1)].into(),
        };
        let text = w.to_text(&t.identity, &t.xor);
        assert_eq!(text, "m: 2\nt: 1\nblocks: (0,0) (1,1)\npi:\n(0,0) -> 0\n(1,1) -> 1\n");
        assert_eq!(SimulationWitness::from_text(&text, &t.identity, &t.xor).unwrap(), w);
    }
}
