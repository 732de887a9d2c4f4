use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::dynamics::simulate;
use crate::state::full_mask;

fn sv(bits: &str) -> StateVector {
    let vals: Vec<u8> = bits.bytes().map(|b| b - b'0').collect();
    StateVector::from_values(&vals).unwrap()
}

fn all_kinds() -> Vec<FamilyKind> {
    let mut kinds = vec![
        FamilyKind::Star2Xor { n: 6 },
        FamilyKind::PairedXor { n: 6 },
        FamilyKind::BlockXor { k: 3, m: 2 },
        FamilyKind::BlockXor { k: 5, m: 3 },
        FamilyKind::Star2And { n: 7 },
        FamilyKind::AndShift2 { m: 2 },
        FamilyKind::AndShift2 { m: 4 },
        FamilyKind::AndShiftK { k: 3, m: 3 },
        FamilyKind::AndShiftK { k: 4, m: 2 },
        FamilyKind::NcShift { k: 3, n: 9 },
        FamilyKind::NcShift { k: 2, n: 8 },
    ];
    kinds.extend(Fixture::ALL.into_iter().map(FamilyKind::Example));
    kinds
}

fn check_pair(c: &Construction, x0: u32, xt: u32) {
    let n = c.network.n();
    let x0 = StateVector::new(n, x0).unwrap();
    let xt = StateVector::new(n, xt).unwrap();
    let sched = construction_schedule(c, x0, xt).unwrap();
    assert_eq!(Some(sched.horizon()), c.horizon, "{}", c.kind);
    let end = simulate(&c.network, x0, &sched).unwrap().last();
    assert_eq!(end, xt, "{} from {x0} to {xt}", c.kind);
}

#[test]
fn declared_degrees_validate() {
    for kind in all_kinds() {
        let c = build_family(kind).unwrap();
        if let Some(k) = c.degree {
            assert!(c.network.validate_kk(k).is_ok(), "{kind}: {:?}", c.network.validate_kk(k));
        }
    }
}

#[test]
fn schedules_are_universal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in all_kinds() {
        let c = build_family(kind).unwrap();
        if c.horizon.is_none() {
            continue;
        }
        let n = c.network.n();
        if n <= 8 {
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    check_pair(&c, a, b);
                }
            }
        } else {
            for _ in 0..1000 {
                let a = rng.gen::<u32>() & full_mask(n);
                let b = rng.gen::<u32>() & full_mask(n);
                check_pair(&c, a, b);
            }
        }
    }
}

#[test]
fn worst_case_families_have_no_schedule() {
    for kind in [FamilyKind::PairedAnd { n: 4 }, FamilyKind::Example(Fixture::AndThirteen)] {
        let c = build_family(kind).unwrap();
        let z = StateVector::zeros(c.network.n()).unwrap();
        assert!(matches!(construction_schedule(&c, z, z), Err(Error::NoSchedule(_))));
    }
}

#[test]
fn block_xor_horizon_is_number_of_blocks() {
    for (k, m) in [(3, 1), (3, 2), (3, 4), (5, 2), (7, 3)] {
        let c = build_family(FamilyKind::BlockXor { k, m }).unwrap();
        assert_eq!(c.horizon, Some(m), "k={k} m={m}");
        assert_eq!(c.control.len(), k + 1);
    }
}

#[test]
fn block_map_invertible_for_odd_k() {
    for k in [3, 5, 7, 9] {
        assert!(families::block_map(k).is_invertible(), "k={k}");
    }
    assert!(!families::block_map(4).is_invertible());
}

#[test]
fn and_shift_three_by_two_table() {
    let c = build_family(FamilyKind::Example(Fixture::AndShift3x2)).unwrap();
    let x0 = StateVector::zeros(11).unwrap();
    let xt = sv("10011010011");
    let sched = construction_schedule(&c, x0, xt).unwrap();
    let traj = simulate(&c.network, x0, &sched).unwrap();
    let rows = [
        "00000000000",
        "11000000011",
        "11000000011",
        "11100000011",
        "11010000011",
        "11101000011",
        "11110100011",
        "10011010011",
    ];
    let got: Vec<StateVector> = traj.states().to_vec();
    let want: Vec<StateVector> = rows.iter().map(|r| sv(r)).collect();
    assert_eq!(got, want);
}

#[test]
fn nc_shift_five_table() {
    let c = build_family(FamilyKind::Example(Fixture::NcShift5x2)).unwrap();
    let x0 = StateVector::zeros(10).unwrap();
    let xt = sv("1010101011");
    let sched = construction_schedule(&c, x0, xt).unwrap();
    let traj = simulate(&c.network, x0, &sched).unwrap();
    let rows = [
        "0000000000",
        "1111111111",
        "0111111111",
        "1111001111",
        "0110111110",
        "1101011101",
        "1010101011",
    ];
    let want: Vec<StateVector> = rows.iter().map(|r| sv(r)).collect();
    assert_eq!(traj.states(), &want[..]);
}

#[test]
fn synthesis_traces_match_tables() {
    let a = build_family(FamilyKind::Example(Fixture::XorSixA)).unwrap();
    let (_, s) = synthesize_xor_controls(&a.network).unwrap();
    let rows = s.trace(sv("000000"), sv("111111")).unwrap();
    let want = ["000000", "000000", "000000", "010000", "001100", "111111"].map(sv);
    assert_eq!(rows, want);

    let b = build_family(FamilyKind::Example(Fixture::XorSixB)).unwrap();
    let (plan, s) = synthesize_xor_controls(&b.network).unwrap();
    assert_eq!(plan.w, NodeSet::EMPTY);
    assert_eq!(plan.phi, vec![(0, 2), (1, 3)]);
    let rows = s.trace(sv("000000"), sv("111111")).unwrap();
    let want = ["000000", "000000", "000000", "110000", "111100", "111111"].map(sv);
    assert_eq!(rows, want);
    let rows = s.trace(sv("100110"), sv("010110")).unwrap();
    let want = ["100110", "110011", "110011", "100011", "100111", "010110"].map(sv);
    assert_eq!(rows, want);
}

#[test]
fn greedy_on_paired_xor_and_triangle() {
    let c = build_family(FamilyKind::PairedXor { n: 6 }).unwrap();
    let g = greedy_v1(&c.network).unwrap();
    assert_eq!(g.v1, NodeSet::from_names([1, 3]));
    let (plan, _) = synthesize_xor_controls(&c.network).unwrap();
    assert_eq!(plan.control, plan.grade(1).union(plan.v3));
    assert!(plan.control.len() * 3 <= 2 * 6);

    let tri = BooleanNetwork::new(vec![
        crate::network::NodeFunction::xor(crate::network::lits(&[2, 3])),
        crate::network::NodeFunction::xor(crate::network::lits(&[1, 3])),
        crate::network::NodeFunction::xor(crate::network::lits(&[1, 2])),
    ])
    .unwrap();
    assert_eq!(greedy_v1(&tri).unwrap().v1.len(), 1);
}

#[test]
fn fixture_ids_round_trip() {
    for f in Fixture::ALL {
        assert_eq!(Fixture::from_id(f.id()), Some(f));
    }
    assert_eq!(Fixture::from_id("r1"), Some(Fixture::AndThirteen));
    assert!("10".parse::<Fixture>().is_err());
}
