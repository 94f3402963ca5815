//! Plain (ASCII) PGM output of space-time diagrams and 2D frames.

use std::fmt::Write as _;

use crate::config::{BiPeriodicConfig, Config, PeriodicConfig};
use crate::engine::{step_biperiodic, step_periodic};
use crate::error::{CaError, Result};
use crate::limits::Limits;
use crate::rule::{CaRule, State};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenderSpec {
    /// Put time 0 on the bottom row instead of the top one.
    pub time_up: bool,
    /// Cells `from..=to` for bi-periodic configurations; by default the
    /// middle section widened by `r·T` on both sides.
    pub window: Option<(i64, i64)>,
}

/// `⌊255·i/(|Q|-1)⌋`, and 0 for a one-state alphabet.
pub fn gray_level(state: State, num_states: usize) -> u8 {
    if num_states <= 1 {
        return 0;
    }
    (255 * state as u64 / (num_states as u64 - 1)) as u8
}

/// A P2 image from rows of states, first row on top.
pub fn pgm(rows: &[Vec<State>], num_states: usize) -> String {
    let w = rows.first().map(Vec::len).unwrap_or(0);
    let mut s = format!("P2\n{w} {}\n255\n", rows.len());
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| gray_level(x, num_states).to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

fn check_size(width: usize, height: usize, limits: &Limits) -> Result<()> {
    let cells = width.saturating_mul(height);
    if cells > limits.max_cells {
        return Err(CaError::resource(format!(
            "image of {width}x{height} exceeds {} cells",
            limits.max_cells
        )));
    }
    Ok(())
}

/// Space-time diagram of a 1D configuration: one row per time step `0..=T`.
/// 2D periodic configurations give one frame per time step instead.
pub fn render_spacetime(
    rule: &CaRule,
    c: &Config,
    steps: usize,
    spec: &RenderSpec,
    limits: &Limits,
) -> Result<Vec<String>> {
    let q = rule.num_states();
    match c {
        Config::Periodic(p) if p.dimension() == 2 => render_frames(rule, p, steps, limits),
        Config::Periodic(p) => {
            check_size(p.width(), steps + 1, limits)?;
            let mut rows = vec![p.cells().to_vec()];
            let mut cur = p.clone();
            for _ in 0..steps {
                cur = step_periodic(rule, &cur)?;
                rows.push(cur.cells().to_vec());
            }
            if spec.time_up {
                rows.reverse();
            }
            Ok(vec![pgm(&rows, q)])
        }
        Config::BiPeriodic(b) => {
            let (from, to) = spec.window.unwrap_or_else(|| default_window(rule, b, steps));
            if to < from {
                return Err(CaError::input(format!("empty window {from}..{to}")));
            }
            check_size((to - from + 1) as usize, steps + 1, limits)?;
            let mut cur = b.clone();
            let mut rows = vec![(from..=to).map(|z| cur.cell(z)).collect::<Vec<_>>()];
            for _ in 0..steps {
                cur = step_biperiodic(rule, &cur)?;
                rows.push((from..=to).map(|z| cur.cell(z)).collect());
            }
            if spec.time_up {
                rows.reverse();
            }
            Ok(vec![pgm(&rows, q)])
        }
        Config::Finite(_) => Err(CaError::input("rendering needs a periodic or bi-periodic configuration")),
    }
}

fn default_window(rule: &CaRule, b: &BiPeriodicConfig, steps: usize) -> (i64, i64) {
    let reach = (rule.radius() * steps) as i64;
    let (lo, hi) = b.canonical().mid_span().unwrap_or((0, 0));
    (lo - reach, hi + reach)
}

/// Frames `0..=T` of a 2D periodic configuration, north row on top.
pub fn render_frames(rule: &CaRule, c: &PeriodicConfig, steps: usize, limits: &Limits) -> Result<Vec<String>> {
    check_size(c.cells().len(), steps + 1, limits)?;
    let frame = |p: &PeriodicConfig| {
        let w = p.width();
        let rows: Vec<Vec<State>> = (0..p.height()).rev().map(|y| p.cells()[y * w..(y + 1) * w].to_vec()).collect();
        pgm(&rows, rule.num_states())
    };
    let mut out = vec![frame(c)];
    let mut cur = c.clone();
    for _ in 0..steps {
        cur = step_periodic(rule, &cur)?;
        out.push(frame(&cur));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::toy_rules;

    #[test]
    fn gray_levels() {
        assert_eq!(gray_level(0, 1), 0);
        assert_eq!(gray_level(1, 2), 255);
        assert_eq!(gray_level(1, 3), 127);
        assert_eq!(gray_level(5, 19), 70);
    }

    #[test]
    fn identity_rows_repeat() {
        let t = toy_rules();
        let c: Config = PeriodicConfig::new_1d(vec![0, 1, 1]).unwrap().into();
        let img = render_spacetime(&t.identity, &c, 2, &RenderSpec::default(), &Limits::default()).unwrap();
        assert_eq!(img, vec!["P2\n3 3\n255\n0 255 255\n0 255 255\n0 255 255\n".to_string()]);
    }
}
