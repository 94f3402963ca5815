//! Exact stepping on periodic, bi-periodic and finite-window configurations.

use crate::config::{BiPeriodicConfig, Config, FinitePattern, PeriodicConfig};
use crate::error::{CaError, Result};
use crate::limits::Limits;
use crate::rule::{CaRule, State};

/// One step of `rule` on a torus. The period vector is unchanged.
pub fn step_periodic(rule: &CaRule, c: &PeriodicConfig) -> Result<PeriodicConfig> {
    c.check_alphabet(rule)?;
    Ok(step_periodic_unchecked(rule, c))
}

pub(crate) fn step_periodic_unchecked(rule: &CaRule, c: &PeriodicConfig) -> PeriodicConfig {
    let w = c.width();
    let h = c.height();
    let nb = rule.neighborhood();
    // Offsets reduced modulo the period once, so the inner loop never divides.
    let sx: Vec<usize> = nb
        .iter()
        .map(|o| (o.dx as i64).rem_euclid(w as i64) as usize)
        .collect();
    let sy: Vec<usize> = nb
        .iter()
        .map(|o| (o.dy as i64).rem_euclid(h as i64) as usize)
        .collect();
    let cells = c.cells();
    let mut out = Vec::with_capacity(cells.len());
    let mut window = vec![0 as State; nb.len()];
    for y in 0..h {
        for x in 0..w {
            for k in 0..nb.len() {
                let mut xx = x + sx[k];
                if xx >= w {
                    xx -= w;
                }
                let mut yy = y + sy[k];
                if yy >= h {
                    yy -= h;
                }
                window[k] = cells[yy * w + xx];
            }
            out.push(rule.eval(&window));
        }
    }
    if c.dimension() == 1 {
        PeriodicConfig::new_1d(out).expect("non-empty")
    } else {
        PeriodicConfig::new_2d(w, h, out).expect("shape preserved")
    }
}

/// `steps` applications of [`step_periodic`].
pub fn iterate_periodic(rule: &CaRule, c: &PeriodicConfig, steps: usize) -> Result<PeriodicConfig> {
    c.check_alphabet(rule)?;
    let mut cur = c.clone();
    for _ in 0..steps {
        cur = step_periodic_unchecked(rule, &cur);
    }
    Ok(cur)
}

fn shrink_once(rule: &CaRule, u: &FinitePattern) -> FinitePattern {
    let r = rule.radius();
    let n = u.radius() - r;
    let ni = n as i64;
    let nb = rule.neighborhood();
    let mut window = vec![0 as State; nb.len()];
    let mut out = Vec::new();
    if u.dimension() == 1 {
        for x in -ni..=ni {
            for (k, o) in nb.iter().enumerate() {
                window[k] = u.get(x + o.dx as i64, 0);
            }
            out.push(rule.eval(&window));
        }
        FinitePattern::new_1d(out).expect("odd length")
    } else {
        for y in -ni..=ni {
            for x in -ni..=ni {
                for (k, o) in nb.iter().enumerate() {
                    window[k] = u.get(x + o.dx as i64, y + o.dy as i64);
                }
                out.push(rule.eval(&window));
            }
        }
        FinitePattern::new_2d(n, out).expect("square")
    }
}

/// Evolves a finite pattern over `B(n + r·t)` for `t` steps, returning the
/// pattern over `B(n)` determined by its light cone.
pub fn evolve_window(rule: &CaRule, u: &FinitePattern, t: usize) -> Result<FinitePattern> {
    u.check_alphabet(rule)?;
    let need = rule.radius() * t;
    if u.radius() < need {
        return Err(CaError::input(format!(
            "pattern of radius {} cannot support {t} steps of a radius-{} rule",
            u.radius(),
            rule.radius()
        )));
    }
    let mut cur = u.clone();
    for _ in 0..t {
        cur = shrink_once(rule, &cur);
    }
    Ok(cur)
}

/// One step on an eventually bi-periodic configuration. Tails keep their
/// length; the middle grows by at most `r` cells per side (letters that
/// merely continue a tail are absorbed back into it).
pub fn step_biperiodic(rule: &CaRule, c: &BiPeriodicConfig) -> Result<BiPeriodicConfig> {
    c.check_alphabet(rule)?;
    Ok(step_biperiodic_unchecked(rule, c))
}

pub(crate) fn step_biperiodic_unchecked(rule: &CaRule, c: &BiPeriodicConfig) -> BiPeriodicConfig {
    let r = rule.radius() as i64;
    let origin = c.origin();
    let nb = rule.neighborhood();
    let mut window = vec![0 as State; nb.len()];
    // Image of the cell at frame position p of `c`.
    let mut image = |p: i64| {
        for (k, o) in nb.iter().enumerate() {
            window[k] = c.cell(p - origin + o.dx as i64);
        }
        rule.eval(&window)
    };
    let m = c.mid().len() as i64;
    let l = c.left().len() as i64;
    let rl = c.right().len() as i64;
    let left: Vec<State> = (0..l).map(|j| image(-r - l + j)).collect();
    let mid: Vec<State> = (-r..m + r).map(&mut image).collect();
    let right: Vec<State> = (0..rl).map(|j| image(m + r + j)).collect();
    BiPeriodicConfig::new(left, mid, right, origin + r)
        .expect("tails non-empty")
        .trimmed()
}

/// States of `cell` at times `0..=steps`. For 1D configurations only `x` is
/// used. Finite patterns can only be traced inside their light cone.
pub fn trace(
    rule: &CaRule,
    c: &Config,
    cell: (i64, i64),
    steps: usize,
    limits: &Limits,
) -> Result<Vec<State>> {
    let mut out = Vec::with_capacity(steps + 1);
    match c {
        Config::Periodic(p) => {
            p.check_alphabet(rule)?;
            let mut cur = p.clone();
            out.push(cur.get(cell.0, cell.1));
            for _ in 0..steps {
                cur = step_periodic_unchecked(rule, &cur);
                out.push(cur.get(cell.0, cell.1));
            }
        }
        Config::BiPeriodic(b) => {
            b.check_alphabet(rule)?;
            let mut cur = b.clone();
            out.push(cur.cell(cell.0));
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
                cur = next;
                out.push(cur.cell(cell.0));
            }
        }
        Config::Finite(u) => {
            u.check_alphabet(rule)?;
            let reach = cell.0.unsigned_abs().max(if u.dimension() == 2 {
                cell.1.unsigned_abs()
            } else {
                0
            }) as usize;
            if reach + rule.radius() * steps > u.radius() {
                return Err(CaError::input(format!(
                    "cell {cell:?} leaves the light cone of a radius-{} pattern within {steps} steps",
                    u.radius()
                )));
            }
            let mut cur = u.clone();
            out.push(cur.get(cell.0, cell.1));
            for _ in 0..steps {
                cur = shrink_once(rule, &cur);
                out.push(cur.get(cell.0, cell.1));
            }
        }
    }
    Ok(out)
}
