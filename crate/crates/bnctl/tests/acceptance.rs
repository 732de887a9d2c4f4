//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::time::{Duration, Instant};

use bnctl::experiment::{run_experiment, ExperimentConfig, Summary};
use bnctl_core::bounds::{ceil, xor_synthesis_upper, Rational};
use bnctl_core::constructions::families::block_map;
use bnctl_core::{
    beta_lower_bound, build_family, construction_schedule, degree_identity, is_controllable,
    minimum_control_set, necessary_conditions, pair_reach_oracle, random_network, simulate,
    solve_linear_schedule, synthesize_xor_controls, t_star, to_affine_gf2, BooleanNetwork,
    Connective, ControlSchedule, FamilyKind, Fixture, GenSpec, NodeFunction, NodeSet,
    SearchOptions, StateVector, Verdict,
};
use bnctl_core::bounds::simple_and_lower;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budgets per criterion.
const BUDGET_TABLES: Duration = Duration::from_secs(1);
const BUDGET_MINSETS: Duration = Duration::from_secs(30);
const BUDGET_SYNTHESIS: Duration = Duration::from_secs(120);
const BUDGET_CERTIFICATES: Duration = Duration::from_secs(300);
const BUDGET_EXPERIMENT: Duration = Duration::from_secs(600);

/// Required fraction of rows with `within_bounds` (exact: all of them).
const WITHIN_BOUNDS_FRACTION: f64 = 1.0;

const RANDOM_XOR_NETS: u64 = 100;
const CERT_NETS: u64 = 200;
const CERT_EXHAUSTIVE_NETS: u64 = 20;
const CERT_SAMPLED_SETS: usize = 32;
const ORACLE_NETS: u64 = 50;
const ORACLE_SETS_PER_NET: usize = 4;
const EXPERIMENT_COUNT: usize = 20;
const EXPERIMENT_N: usize = 8;
const LINEAR_PAIRS: usize = 1000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= budget, || format!("took {took:?}, budget {budget:?}"))
}

fn sv(bits: &str) -> StateVector {
    let vals: Vec<u8> = bits.bytes().map(|b| b - b'0').collect();
    StateVector::from_values(&vals).unwrap()
}

fn names(set: NodeSet) -> String {
    set.to_string()
}

fn fixture(f: Fixture) -> BooleanNetwork {
    build_family(FamilyKind::Example(f)).unwrap().network
}

fn all_states(n: usize) -> impl Iterator<Item = StateVector> {
    (0..1u32 << n).map(move |b| StateVector::new(n, b).unwrap())
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    StateVector::new(n, rng.gen::<u32>() & ((1 << n) - 1)).unwrap()
}

fn two_step_table(f: Fixture, x0: &str, xt: &str, rows: [&str; 6], masks: [&str; 2]) -> Result<(), String> {
    let net = fixture(f);
    let (_, sched) = synthesize_xor_controls(&net).map_err(|e| e.to_string())?;
    let (x0, xt) = (sv(x0), sv(xt));
    let got = sched.trace(x0, xt).map_err(|e| e.to_string())?;
    let want = rows.map(sv);
    ensure(got == want, || format!("example {f}: trace {got:?} != {want:?}"))?;
    let s = sched.schedule(x0, xt).map_err(|e| e.to_string())?;
    let want_masks = masks.map(sv);
    ensure(s.masks() == want_masks, || format!("example {f}: masks {:?}", s.masks()))?;
    let traj = simulate(&net, x0, &s).map_err(|e| e.to_string())?;
    let want_traj = [want[0], want[3], want[5]];
    ensure(traj.states() == want_traj, || format!("example {f}: simulate {:?}", traj.states()))
}

fn simulated_rows(f: Fixture, x0: &str, xt: &str, rows: &[&str]) -> Result<(), String> {
    let c = build_family(FamilyKind::Example(f)).unwrap();
    let (x0, xt) = (sv(x0), sv(xt));
    let s = construction_schedule(&c, x0, xt).map_err(|e| e.to_string())?;
    let traj = simulate(&c.network, x0, &s).map_err(|e| e.to_string())?;
    let want: Vec<StateVector> = rows.iter().map(|r| sv(r)).collect();
    ensure(traj.states() == &want[..], || format!("example {f}: {:?}", traj.states()))?;
    ensure(traj.last() == xt, || format!("example {f}: final state misses target"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    two_step_table(
        Fixture::XorSixA,
        "000000",
        "111111",
        ["000000", "000000", "000000", "010000", "001100", "111111"],
        ["010000", "110011"],
    )?;
    two_step_table(
        Fixture::XorSixB,
        "000000",
        "111111",
        ["000000", "000000", "000000", "110000", "111100", "111111"],
        ["110000", "000011"],
    )?;
    two_step_table(
        Fixture::XorSixB,
        "100110",
        "010110",
        ["100110", "110011", "110011", "100011", "100111", "010110"],
        ["010000", "110001"],
    )?;

    let ex3 = fixture(Fixture::XorFour);
    let u = NodeSet::from_names([3]);
    for (controls, rows) in [
        ("1100", ["0010", "1000", "1100", "1111"]),
        ("1101", ["0010", "1000", "1100", "1101"]),
    ] {
        let masks = controls
            .bytes()
            .map(|b| StateVector::new(4, if b == b'1' { 0b0100 } else { 0 }).unwrap())
            .collect();
        let s = ControlSchedule::new(u, masks).map_err(|e| e.to_string())?;
        let traj = simulate(&ex3, sv("0000"), &s).map_err(|e| e.to_string())?;
        let want: Vec<StateVector> = rows.iter().map(|r| sv(r)).collect();
        ensure(traj.states()[1..] == want[..], || format!("example 3 with u3={controls}: {:?}", traj.states()))?;
    }

    simulated_rows(
        Fixture::AndShift3x2,
        "00000000000",
        "10011010011",
        &[
            "00000000000",
            "11000000011",
            "11000000011",
            "11100000011",
            "11010000011",
            "11101000011",
            "11110100011",
            "10011010011",
        ],
    )?;
    simulated_rows(
        Fixture::NcShift5x2,
        "0000000000",
        "1010101011",
        &[
            "0000000000",
            "1111111111",
            "0111111111",
            "1111001111",
            "0110111110",
            "1101011101",
            "1010101011",
        ],
    )?;
    within_budget(start, BUDGET_TABLES)?;
    Ok("examples 1, 2 (both scenarios), 3 (both targets), 3-3 AND and 5-5 NC tables bit-exact".into())
}

fn minimum(net: &BooleanNetwork, all: bool) -> Result<bnctl_core::SearchResult, String> {
    let opts = SearchOptions {
        max_witnesses: if all { None } else { Some(1) },
        ..SearchOptions::default()
    };
    minimum_control_set(net, &opts).map_err(|e| e.to_string())
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let cases = [
        (FamilyKind::PairedXor { n: 4 }, 2),
        (FamilyKind::PairedXor { n: 6 }, 3),
        (FamilyKind::PairedAnd { n: 4 }, 4),
        (FamilyKind::PairedAnd { n: 6 }, 6),
        (FamilyKind::AndShift2 { m: 2 }, 3),
    ];
    for (kind, want) in cases {
        let net = build_family(kind).unwrap().network;
        let r = minimum(&net, false)?;
        ensure(r.size == want, || format!("{kind}: min size {} != {want}", r.size))?;
    }
    // The reported witness is the first minimum set in lexicographic order.
    let r = minimum(&fixture(Fixture::XorFour), false)?;
    let x3 = NodeSet::from_names([3]);
    ensure(r.size == 1 && r.witnesses == [x3], || format!("example 3: {} {:?}", r.size, r.witnesses))?;
    let r = minimum(&fixture(Fixture::AndNegSeven), true)?;
    let listed = NodeSet::from_names([3, 4, 5, 7]);
    ensure(r.size == 4 && r.witnesses.contains(&listed), || {
        format!("example 5: {} {:?}", r.size, r.witnesses)
    })?;
    within_budget(start, BUDGET_MINSETS)?;
    Ok(format!(
        "paired XOR 2/3, paired AND 4/6, shift AND n=7 3, example 3 {{x3}}, example 5 size 4 with {} among {} minimum sets",
        names(listed),
        r.witnesses.len()
    ))
}

fn criterion_3() -> Check {
    let r = Rational::new;
    let six = beta_lower_bound(15, 4, &[15, 0]).map_err(|e| e.to_string())?;
    let seven = beta_lower_bound(15, 4, &[3, 12]).map_err(|e| e.to_string())?;
    ensure(six == r(15, 2), || format!("example 6 inputs: {six}"))?;
    ensure(seven == r(42, 5), || format!("example 7 inputs: {seven}"))?;
    let found = minimum(&fixture(Fixture::AndNegMixed), false)?.size as i64;
    ensure(ceil(seven) == 9 && found == 9, || format!("ceil {} vs minimum {found}", ceil(seven)))?;

    // Hand values: (k−1)/(2k−1)·n and [1 − (k−1)/(k(k²−k+1))]·n.
    let hand = [(2, 6, r(2, 1), r(5, 1)), (3, 21, r(42, 5), r(19, 1))];
    for (k, n, lower, upper) in hand {
        let l = simple_and_lower(n, k);
        let u = xor_synthesis_upper(n, k);
        ensure(l == lower && u == upper, || format!("(k,n)=({k},{n}): lower {l}, upper {u}"))?;
    }
    Ok("beta gives 15/2 and 42/5, ceil 9 = minimum 9; lower 2, 42/5 and upper 5, 19 at (2,6), (3,21)".into())
}

fn exhaustive_two_step(net: &BooleanNetwork) -> Result<NodeSet, String> {
    let (plan, sched) = synthesize_xor_controls(net).map_err(|e| e.to_string())?;
    let n = net.n();
    for x0 in all_states(n) {
        for xt in all_states(n) {
            let s = sched.schedule(x0, xt).map_err(|e| e.to_string())?;
            let end = simulate(net, x0, &s).map_err(|e| e.to_string())?.last();
            ensure(s.horizon() == 2 && end == xt, || format!("{x0} -> {xt} ended at {end}"))?;
        }
    }
    Ok(plan.control)
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let u1 = exhaustive_two_step(&fixture(Fixture::XorSixA))?;
    ensure(u1 == NodeSet::from_names([1, 2, 3, 5, 6]), || format!("example 1 U = {u1}"))?;
    let u2 = exhaustive_two_step(&fixture(Fixture::XorSixB))?;
    ensure(u2 == NodeSet::from_names([1, 2, 5, 6]), || format!("example 2 U = {u2}"))?;
    let mut largest = 0;
    for seed in 0..RANDOM_XOR_NETS {
        let net = random_network(&GenSpec::new(6, 2, Connective::Xor, seed)).map_err(|e| e.to_string())?;
        let u = exhaustive_two_step(&net).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(u.len() <= 5, || format!("seed {seed}: |U| = {}", u.len()))?;
        largest = largest.max(u.len());
    }
    within_budget(start, BUDGET_SYNTHESIS)?;
    Ok(format!(
        "U = {u1} and {u2}; {RANDOM_XOR_NETS} random nets n=6 all 4096 pairs reached, largest |U| = {largest}"
    ))
}

fn criterion_5() -> Check {
    let ex3 = fixture(Fixture::XorFour);
    let u = NodeSet::from_names([3]);
    let ts = t_star(&ex3, u, None).map_err(|e| e.to_string())?;
    ensure(ts == Some(4), || format!("t* = {ts:?}"))?;
    let (n, t) = (4i64, 4i64);
    ensure(Rational::new(n, t) <= Rational::from_integer(1) && 1 <= n - t + 1, || "t* bounds".into())?;
    let six = fixture(Fixture::XorSixA);
    for i in 0..6 {
        let single = NodeSet::from_indices([i]);
        let ok = is_controllable(&six, single).map_err(|e| e.to_string())?;
        ensure(!ok, || format!("x{} alone controls fixture 1", i + 1))?;
    }
    Ok("example 3 t* = 4 with 1 <= |U| = 1 <= 1; no single node controls fixture 1 (n=6)".into())
}

fn certificate_sound(net: &BooleanNetwork, u: NodeSet) -> Result<bool, String> {
    let cert = necessary_conditions(net, u);
    let controllable = is_controllable(net, u).map_err(|e| e.to_string())?;
    ensure(!(cert.verdict == Verdict::NotControllable && controllable), || {
        format!("certificate {:?} refutes controllable U = {u}", cert.rule)
    })?;
    let id = degree_identity(net, u).map_err(|e| e.to_string())?;
    ensure(id.holds, || format!("degree identity fails on U = {u}"))?;
    Ok(cert.verdict == Verdict::NotControllable)
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut checked, mut refuted) = (0u64, 0u64);
    for seed in 0..CERT_NETS {
        let n = 3 + (seed as usize % 6);
        let net = random_network(&GenSpec::new(n, 2, Connective::And, seed)).map_err(|e| e.to_string())?;
        let sets: Vec<NodeSet> = if seed < CERT_EXHAUSTIVE_NETS {
            (0..1u32 << n).map(NodeSet).collect()
        } else {
            (0..CERT_SAMPLED_SETS).map(|_| NodeSet(rng.gen::<u32>() & ((1 << n) - 1))).collect()
        };
        for u in sets {
            checked += 1;
            refuted += certificate_sound(&net, u).map_err(|e| format!("seed {seed}: {e}"))? as u64;
        }
    }
    within_budget(start, BUDGET_CERTIFICATES)?;
    Ok(format!("{checked} (net, U) pairs, {refuted} refutations, 0 violations, identity holds on all"))
}

fn mixed(a: &BooleanNetwork, b: &BooleanNetwork, pick: u32) -> BooleanNetwork {
    let fs: Vec<NodeFunction> = (0..a.n())
        .map(|i| if pick >> i & 1 == 1 { b.function(i) } else { a.function(i) }.clone())
        .collect();
    BooleanNetwork::new(fs).unwrap()
}

fn criterion_7() -> Check {
    let families = [Connective::Xor, Connective::And, Connective::Or, Connective::Nc];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    for i in 0..ORACLE_NETS {
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(1..=2);
        let fa = families[rng.gen_range(0..4)];
        let fb = families[rng.gen_range(0..4)];
        let a = random_network(&GenSpec::new(n, k, fa, rng.gen())).map_err(|e| e.to_string())?;
        let b = random_network(&GenSpec::new(n, k, fb, rng.gen())).map_err(|e| e.to_string())?;
        let net = mixed(&a, &b, rng.gen());
        for _ in 0..ORACLE_SETS_PER_NET {
            let u = NodeSet(rng.gen::<u32>() & ((1 << n) - 1));
            let fast = is_controllable(&net, u).map_err(|e| e.to_string())?;
            let mut all = true;
            'pairs: for x0 in all_states(n) {
                for xt in all_states(n) {
                    if pair_reach_oracle(&net, u, x0, xt, 1 << n).map_err(|e| e.to_string())?.is_none() {
                        all = false;
                        break 'pairs;
                    }
                }
            }
            ensure(fast == all, || format!("net {i}, U = {u}: fast {fast}, oracle {all}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} (net, U) cases over {ORACLE_NETS} mixed nets agree"))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let cfg = ExperimentConfig {
        families: vec![Connective::Xor, Connective::And, Connective::Nc],
        n: EXPERIMENT_N,
        ks: vec![2, 3],
        count: EXPERIMENT_COUNT,
        seed: 2024,
        jobs: 4,
    };
    let rows = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let summary = Summary::of(&rows);
    ensure(rows.len() == 3 * 2 * EXPERIMENT_COUNT, || format!("{} rows", rows.len()))?;
    ensure(summary.fraction_within() >= WITHIN_BOUNDS_FRACTION, || format!("{summary}"))?;
    for r in &rows {
        let lower: Rational = r.lower_exact.parse().map_err(|_| format!("row {}: bad lower", r.id))?;
        ensure(ceil(lower) == r.lower_ceil && r.within_bounds, || format!("row {}", r.id))?;
    }
    within_budget(start, BUDGET_EXPERIMENT)?;
    Ok(summary.to_string())
}

fn criterion_9() -> Check {
    let c = build_family(FamilyKind::BlockXor { k: 3, m: 2 }).unwrap();
    let u = NodeSet::from_names([1, 2, 3, 4]);
    ensure(c.control == u && c.network.n() == 8, || "block XOR layout".into())?;
    let map = to_affine_gf2(&c.network).map_err(|e| e.to_string())?;
    let horizon = c.horizon.ok_or("no horizon")?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..LINEAR_PAIRS {
        let (x0, xt) = (random_state(&mut rng, 8), random_state(&mut rng, 8));
        let s = solve_linear_schedule(&map, u, x0, xt, horizon)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no schedule {x0} -> {xt}"))?;
        let end = simulate(&c.network, x0, &s).map_err(|e| e.to_string())?.last();
        ensure(end == xt, || format!("{x0} -> {xt} ended at {end}"))?;
    }
    ensure(is_controllable(&c.network, u).map_err(|e| e.to_string())?, || "not controllable".into())?;
    for k in [3, 5, 7, 9] {
        ensure(block_map(k).is_invertible(), || format!("block map k={k} singular"))?;
    }
    Ok(format!("{LINEAR_PAIRS} random pairs solved at horizon {horizon}; block maps invertible for k = 3, 5, 7, 9"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("example tables", criterion_1),
        ("minimum sizes", criterion_2),
        ("bound formulas", criterion_3),
        ("two-step synthesis", criterion_4),
        ("t* consistency", criterion_5),
        ("certificate soundness", criterion_6),
        ("oracle equivalence", criterion_7),
        ("random experiment", criterion_8),
        ("block XOR linear control", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
