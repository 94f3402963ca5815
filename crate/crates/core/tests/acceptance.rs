//! Release acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use cellauto::circuit::{
    check_repeatable, check_transient, corrupted_and_library, gate_eval, img, one_shot_wire_ca, reference_wire_ca,
    AssemblySpec, Bits, GateType, WIRE_BLANK,
};
use cellauto::constructions::{rule110, signed_majority, signed_majority_sum, toy_rules, zigzag, SignedMajorityState};
use cellauto::decision::{
    cell_zero_history, classify_zigzag, column_language, cycle_structure, pred, ubpred_bounded_all, ubpred_zigzag_all,
    zigzag_horizon, Verdict, ZigzagCase,
};
use cellauto::engine::{iterate_periodic, step_periodic};
use cellauto::freezing::{check_freezing, find_freezing_order, FreezingSynthesis};
use cellauto::intrinsic::{
    block_decode, block_encode, check_simulation, check_subproj, rescale, search_strong_simulation, BlockShape,
};
use cellauto::{CaRule, FinitePattern, Limits, PeriodicConfig, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rule110_formula() -> Outcome {
    let rule = rule110();
    let start = Instant::now();
    for k in 0..8u32 {
        let (x, y, z) = (k >> 2 & 1, k >> 1 & 1, k & 1);
        let want = (1 - x * y * z) * y.max(z);
        let got = rule.eval(&[x, y, z]);
        ensure(got == want, || format!("window {x}{y}{z}: got {got}, formula gives {want}"))?;
    }
    let us = start.elapsed().as_micros();
    ensure(us < 1000, || format!("took {us} us"))?;
    Ok(format!("8 windows in {us} us"))
}

const ZIGZAG_INSTANCES: usize = 600;
const ZIGZAG_MAX_LEN: usize = 12;

struct ZigzagRun {
    instances: usize,
    queries: usize,
    mismatches: Vec<String>,
    unstable: Vec<String>,
    light_cone_checks: usize,
    light_cone_errors: Vec<String>,
    longest: usize,
    /// Invalid, finite zone, infinite zone, outside.
    cases: [usize; 4],
}

fn zigzag_run() -> ZigzagRun {
    let inner = rule110();
    let z = zigzag(&inner).unwrap();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2162);
    let mut run = ZigzagRun {
        instances: 0,
        queries: 0,
        mismatches: Vec::new(),
        unstable: Vec::new(),
        light_cone_checks: 0,
        light_cone_errors: Vec::new(),
        longest: 0,
        cases: [0; 4],
    };
    for i in 0..ZIGZAG_INSTANCES {
        let c = common::random_zigzag_config(&mut rng, ZIGZAG_MAX_LEN);
        let l = c.canonical().description_length();
        run.longest = run.longest.max(l);
        run.cases[match classify_zigzag(2, &c) {
            ZigzagCase::Invalid => 0,
            ZigzagCase::FiniteZone { .. } => 1,
            ZigzagCase::InfiniteZone => 2,
            ZigzagCase::OutsideZone => 3,
        }] += 1;
        let t = zigzag_horizon(l);
        let exact = ubpred_zigzag_all(&inner, &c, &limits).unwrap();
        let bounded = ubpred_bounded_all(&z, &c, 4 * t, &limits).unwrap();
        for q in 0..z.num_states() {
            run.queries += 1;
            let a = exact[q].verdict;
            let b = match bounded[q].verdict {
                Verdict::Unknown => Verdict::No,
                v => v,
            };
            if a != b || (a == Verdict::Yes && exact[q].witness_time != bounded[q].witness_time) {
                run.mismatches.push(format!("instance {i} ({c:?}) state {}: {a} vs {b}", z.state_name(q as State)));
            }
        }
        let hist = cell_zero_history(&z, &c, 4 * t, &limits).unwrap();
        if let Some(k) = (t as usize..hist.len()).find(|&k| hist[k] != hist[t as usize]) {
            run.unstable.push(format!("instance {i} ({c:?}): cell 0 changes at {k} > T = {t}"));
        }
        // Cross-check the history against light-cone evaluation, which
        // never steps the bi-periodic representation.
        if i % 12 == 0 {
            let tt = t as usize;
            let window: Vec<State> = (-(tt as i64)..=tt as i64).map(|x| c.cell(x)).collect();
            let u = FinitePattern::new_1d(window).unwrap();
            let s = pred(&z, tt, &u).unwrap();
            run.light_cone_checks += 1;
            if s != hist[tt] {
                run.light_cone_errors.push(format!("instance {i}: light cone gives {s}, history {}", hist[tt]));
            }
        }
        run.instances += 1;
    }
    run
}

fn zigzag_agreement(run: &ZigzagRun) -> Outcome {
    ensure(run.instances >= 500, || format!("only {} instances", run.instances))?;
    ensure(run.light_cone_errors.is_empty(), || run.light_cone_errors.join("; "))?;
    ensure(run.mismatches.is_empty(), || {
        format!("{} mismatches, first: {}", run.mismatches.len(), run.mismatches[0])
    })?;
    Ok(format!(
        "{} instances (invalid/finite/infinite/outside {:?}), {} queries, L <= {}, {} light-cone spot checks, 0 mismatches",
        run.instances, run.cases, run.queries, run.longest, run.light_cone_checks
    ))
}

fn zigzag_stabilization(run: &ZigzagRun) -> Outcome {
    ensure(run.unstable.is_empty(), || {
        format!("{} violations, first: {}", run.unstable.len(), run.unstable[0])
    })?;
    Ok(format!("{} traces constant on [T, 4T]", run.instances))
}

/// Each consecutive pair `a ≤ b` of a reported cycle must be forced by a
/// window with center `b` and image `a`.
fn cycle_is_forced(rule: &CaRule, cycle: &[State]) -> Result<(), String> {
    ensure(cycle.len() >= 3 && cycle.first() == cycle.last(), || format!("malformed cycle {cycle:?}"))?;
    let center = rule.center_index().ok_or("rule has no center offset")?;
    let q = rule.num_states() as State;
    let arity = rule.neighborhood().len();
    let mut forced = BTreeSet::new();
    let mut w = vec![0; arity];
    loop {
        forced.insert((rule.eval(&w), w[center]));
        let mut k = arity;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            w[k] += 1;
            if w[k] < q {
                break;
            }
            w[k] = 0;
        }
        if w.iter().all(|&s| s == 0) {
            break;
        }
    }
    for p in cycle.windows(2) {
        ensure(forced.contains(&(p[0], p[1])), || format!("{} <= {} is not forced", p[0], p[1]))?;
    }
    Ok(())
}

fn freezing_synthesis() -> Outcome {
    let t = toy_rules();
    let limits = Limits::default();
    for (name, rule) in [("identity", &t.identity), ("or-spread", &t.or_spread)] {
        match find_freezing_order(rule, &limits).map_err(|e| e.to_string())? {
            FreezingSynthesis::Freezing(o) => {
                ensure(check_freezing(rule, &o, &limits).unwrap().is_yes(), || format!("{name}: order fails check"))?
            }
            FreezingSynthesis::NotFreezing { cycle } => return Err(format!("{name}: no order, cycle {cycle:?}")),
        }
    }
    for (name, rule) in [("not", &t.not), ("xor", &t.xor)] {
        match find_freezing_order(rule, &limits).map_err(|e| e.to_string())? {
            FreezingSynthesis::Freezing(_) => return Err(format!("{name}: order returned")),
            FreezingSynthesis::NotFreezing { cycle } => cycle_is_forced(rule, &cycle).map_err(|e| format!("{name}: {e}"))?,
        }
    }
    let z = zigzag(&rule110()).unwrap();
    let zz = match find_freezing_order(&z, &limits).map_err(|e| e.to_string())? {
        FreezingSynthesis::Freezing(o) => {
            ensure(check_freezing(&z, &o, &limits).unwrap().is_yes(), || "zigzag: order fails check".into())?;
            "order".to_string()
        }
        FreezingSynthesis::NotFreezing { cycle } => {
            cycle_is_forced(&z, &cycle).map_err(|e| format!("zigzag: {e}"))?;
            format!("forced cycle of length {}", cycle.len() - 1)
        }
    };
    Ok(format!("identity/or-spread ordered, not/xor cyclic, zigzag(rule110): {zz}"))
}

fn majority_signs() -> Outcome {
    let rule = signed_majority();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut sums = 0usize;
    for i in 0..100 {
        let cells: Vec<State> = (0..64).map(|_| rng.gen_range(0..64)).collect();
        let mut c = PeriodicConfig::new_2d(8, 8, cells).unwrap();
        for t in 0..20 {
            for y in 0..8i64 {
                for x in 0..8i64 {
                    let w = [c.get(x, y), c.get(x, y + 1), c.get(x + 1, y), c.get(x, y - 1), c.get(x - 1, y)];
                    let s = signed_majority_sum(&w);
                    sums += 1;
                    ensure(s.rem_euclid(2) == 1, || format!("config {i} step {t}: even sum {s} at ({x},{y})"))?;
                }
            }
            let next = step_periodic(&rule, &c).map_err(|e| e.to_string())?;
            for (k, (&a, &b)) in c.cells().iter().zip(next.cells()).enumerate() {
                let (sa, sb) = (SignedMajorityState::decode(a).signs, SignedMajorityState::decode(b).signs);
                ensure(sa == sb, || format!("config {i} step {t}: sign vector of cell {k} changed"))?;
            }
            c = next;
        }
    }
    Ok(format!("100 configs x 20 steps, {sums} odd sums"))
}

fn identity_pi(q: usize) -> BTreeMap<State, State> {
    (0..q as State).map(|s| (s, s)).collect()
}

fn simulation_coherence() -> Outcome {
    let t = toy_rules();
    let limits = Limits::default();
    let r110 = rule110();
    let mut witnesses = 0;
    let pairs: &[(&str, &CaRule, &str, &CaRule)] = &[
        ("identity", &t.identity, "not", &t.not),
        ("not", &t.not, "not", &t.not),
        ("identity", &t.identity, "xor", &t.xor),
        ("identity", &t.identity, "rule110", &r110),
        ("not", &t.not, "xor", &t.xor),
        ("shift", &t.shift, "identity", &t.identity),
        ("not", &t.not, "identity", &t.identity),
        ("rule110", &r110, "rule110", &r110),
        ("xor", &t.xor, "xor", &t.xor),
    ];
    for &(fname, f, gname, g) in pairs {
        let rep = search_strong_simulation(f, g, 2, 2, &limits).map_err(|e| format!("{fname} by {gname}: {e}"))?;
        if let Some(w) = rep.witness {
            let gb = rescale(g, &w.shape, &limits).map_err(|e| e.to_string())?;
            let ok = check_subproj(f, &gb, &w.pi, &limits).map_err(|e| e.to_string())?;
            ensure(ok.is_yes(), || format!("{fname} by {gname}: witness rejected: {}", ok.note))?;
            witnesses += 1;
        }
    }
    ensure(witnesses > 0, || "no witness found".into())?;
    for (name, f) in [("rule110", &r110), ("identity", &t.identity), ("xor", &t.xor)] {
        let one = BlockShape::trivial(1);
        let rep = check_simulation(f, &one, f, &one, &identity_pi(2), &limits).map_err(|e| e.to_string())?;
        ensure(rep.is_yes(), || format!("identity witness rejected for {name}: {}", rep.note))?;
    }
    let flip: BTreeMap<State, State> = [(0, 1), (1, 0)].into();
    let one = BlockShape::trivial(1);
    let rep = check_simulation(&r110, &one, &r110, &one, &flip, &limits).map_err(|e| e.to_string())?;
    ensure(rep.verdict == Verdict::No && rep.note.contains("window"), || {
        format!("complement projection not rejected: {}", rep.to_text())
    })?;
    Ok(format!("{witnesses} search witnesses verified; identities accepted; complement rejected ({})", rep.note))
}

fn rescaling_oracle() -> Outcome {
    let f = rule110();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for (m, t) in [(2usize, 2usize), (3, 1)] {
        let shape = BlockShape::new(vec![m], t).map_err(|e| e.to_string())?;
        let fr = rescale(&f, &shape, &limits).map_err(|e| e.to_string())?;
        for i in 0..50 {
            let blocks = rng.gen_range(2..=8);
            let c = common::random_periodic(&mut rng, 2, m * blocks);
            let enc = block_encode(2, &[m], &c).map_err(|e| e.to_string())?;
            ensure(block_decode(2, &[m], &enc).unwrap() == c, || format!("m={m}: decode(encode(c)) != c"))?;
            let lhs = step_periodic(&fr, &enc).map_err(|e| e.to_string())?;
            let rhs = block_encode(2, &[m], &iterate_periodic(&f, &c, t).unwrap()).unwrap();
            ensure(lhs == rhs, || format!("m={m} t={t}: config {i} {:?} disagrees", c.cells()))?;
        }
    }
    Ok("2 shapes x 50 configs".into())
}

fn circuit_checkers() -> Outcome {
    let (rule, lib) = reference_wire_ca();
    let spec = AssemblySpec::new(100, 0x5eed_0008);
    let rep = check_repeatable(&rule, &lib, &spec, 4, WIRE_BLANK).map_err(|e| e.to_string())?;
    ensure(rep.is_yes(), || format!("reference fails repeatable: {}", rep.note))?;
    let rep = check_transient(&rule, &lib, &spec, WIRE_BLANK).map_err(|e| e.to_string())?;
    ensure(rep.is_yes(), || format!("reference fails transient: {}", rep.note))?;
    let bad = corrupted_and_library();
    let rep = check_transient(&rule, &bad, &spec, WIRE_BLANK).map_err(|e| e.to_string())?;
    ensure(rep.verdict == Verdict::No && !rep.note.is_empty(), || "corrupted AND accepted".into())?;
    let (r1, l1) = one_shot_wire_ca();
    let rep1 = check_repeatable(&r1, &l1, &spec, 4, WIRE_BLANK).map_err(|e| e.to_string())?;
    ensure(rep1.verdict == Verdict::No && !rep1.note.is_empty(), || "one-shot accepted".into())?;
    Ok("reference passes 100 assemblies x 4 rounds; both mutants rejected".into())
}

fn bits(k: u8) -> Bits {
    [(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1]
}

fn gate_tables() -> Outcome {
    for k in 0..16u8 {
        let c = bits(k);
        let [n, _, _, w] = c;
        let expect: [(GateType, Bits); 5] = [
            (GateType::And, [0, n.min(w), 0, 0]),
            (GateType::Or, [0, n.max(w), 0, 0]),
            (GateType::Cross, [0, w, n, 0]),
            (GateType::Nop, [0, 0, 0, 0]),
            (GateType::Fork, [0, w, w, 0]),
        ];
        for (g, want) in expect {
            ensure(gate_eval(g, c) == want, || format!("{g} on {c:?}"))?;
        }
        for i in 0..4u8 {
            for o in (0..4u8).filter(|&o| o != i) {
                let g = GateType::wire(i, o).unwrap();
                let mut want = [0; 4];
                want[o as usize] = c[i as usize];
                ensure(gate_eval(g, c) == want, || format!("{g} on {c:?}"))?;
            }
        }
    }
    let all = GateType::all();
    ensure(all.len() == 17, || format!("{} gate types", all.len()))?;
    for g in &all {
        ensure(gate_eval(*g, [0; 4]) == [0; 4], || format!("{g} is not quiet on zero input"))?;
        let want = match g {
            GateType::And | GateType::Or | GateType::Fork | GateType::Wire { .. } => 2,
            GateType::Cross => 4,
            GateType::Nop => 1,
        };
        ensure(img(*g).len() == want, || format!("|Img({g})| = {}", img(*g).len()))?;
    }
    Ok("17 gates x 16 inputs; image sizes match".into())
}

fn cycle_and_columns() -> Outcome {
    let t = toy_rules();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let fixed = [rule110(), t.identity.clone(), t.shift.clone(), t.not.clone(), t.or_spread.clone(), t.xor.clone()];
    for i in 0..100 {
        let rule = if i < 60 {
            fixed[i % fixed.len()].clone()
        } else {
            let q = rng.gen_range(2..=3);
            common::random_rule(&mut rng, q)
        };
        let len = rng.gen_range(1..=10);
        let c = common::random_periodic(&mut rng, rule.num_states() as State, len);
        let info = cycle_structure(&rule, &c, &limits).map_err(|e| e.to_string())?;
        ensure(info.cycle >= 1, || format!("instance {i}: empty cycle"))?;
        let at = |k: u64| iterate_periodic(&rule, &c, k as usize).unwrap();
        let entry = at(info.transient);
        ensure(at(info.transient + info.cycle) == entry, || format!("instance {i}: no re-entry"))?;
        for d in 1..info.cycle {
            ensure(at(info.transient + d) != entry, || format!("instance {i}: cycle {} not minimal", info.cycle))?;
        }
        if info.transient > 0 {
            ensure(at(info.transient - 1) != at(info.transient - 1 + info.cycle), || {
                format!("instance {i}: transient {} not minimal", info.transient)
            })?;
        }
    }
    let r = rule110();
    let mut sizes = Vec::new();
    for n in 1..=2 {
        let langs: Vec<BTreeSet<Vec<State>>> = (1..=4)
            .map(|k| column_language(&r, n, k, &limits).unwrap())
            .collect();
        ensure(langs[0].len() == 1 << n, || format!("n={n}: first rows are not all words"))?;
        for k in 1..4 {
            let prefixes: BTreeSet<Vec<State>> = langs[k].iter().map(|w| w[..n * k].to_vec()).collect();
            ensure(prefixes == langs[k - 1], || format!("n={n}: prefixes of k={} differ from k={k}", k + 1))?;
        }
        sizes.push(langs.iter().map(BTreeSet::len).collect::<Vec<_>>());
    }
    Ok(format!("100 orbits re-enter; column language sizes {sizes:?}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let run = zigzag_run();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 rule 110 table", rule110_formula()),
        ("2 zigzag decider vs bounded oracle", zigzag_agreement(&run)),
        ("3 zigzag stabilization", zigzag_stabilization(&run)),
        ("4 freezing synthesis", freezing_synthesis()),
        ("5 signed majority sign invariance", majority_signs()),
        ("6 simulation coherence", simulation_coherence()),
        ("7 rescaling oracle", rescaling_oracle()),
        ("8 circuit checkers", circuit_checkers()),
        ("9 gate tables", gate_tables()),
        ("10 cycle and column properties", cycle_and_columns()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
