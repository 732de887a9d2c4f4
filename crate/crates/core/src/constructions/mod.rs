//! Constructive network families, their control schedules, and control set
//! synthesis for k-k XOR networks.

pub mod families;
pub mod fixtures;
pub mod synthesis;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use fixtures::Fixture;
pub use synthesis::{greedy_v1, synthesize_xor_controls, GreedySelection, SynthesisPlan, TwoStepScheduler};

use crate::dynamics::ControlSchedule;
use crate::error::{Error, Result};
use crate::gf2::{controllability_index, solve_linear_schedule, to_affine_gf2, AffineMap};
use crate::network::BooleanNetwork;
use crate::state::{NodeSet, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Star2Xor { n: usize },
    PairedXor { n: usize },
    BlockXor { k: usize, m: usize },
    PairedAnd { n: usize },
    Star2And { n: usize },
    AndShift2 { m: usize },
    AndShiftK { k: usize, m: usize },
    NcShift { k: usize, n: usize },
    Example(Fixture),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyKind::Star2Xor { n } => write!(f, "star2-xor n={n}"),
            FamilyKind::PairedXor { n } => write!(f, "paired-xor n={n}"),
            FamilyKind::BlockXor { k, m } => write!(f, "block-xor k={k} m={m}"),
            FamilyKind::PairedAnd { n } => write!(f, "paired-and n={n}"),
            FamilyKind::Star2And { n } => write!(f, "star2-and n={n}"),
            FamilyKind::AndShift2 { m } => write!(f, "and-shift2 m={m}"),
            FamilyKind::AndShiftK { k, m } => write!(f, "and-shift k={k} m={m}"),
            FamilyKind::NcShift { k, n } => write!(f, "nc-shift k={k} n={n}"),
            FamilyKind::Example(x) => write!(f, "example {x}"),
        }
    }
}

#[derive(Debug, Clone)]
enum Scheduler {
    /// Control values prescribed node by node and step by step.
    Prescribed,
    Linear(AffineMap),
    TwoStep(TwoStepScheduler),
    None,
}

/// A built family member with its designated control set.
#[derive(Debug, Clone)]
pub struct Construction {
    pub kind: FamilyKind,
    pub network: BooleanNetwork,
    pub control: NodeSet,
    /// Steps the constructive schedule takes; `None` when there is none.
    pub horizon: Option<usize>,
    /// Declared k for k-k families, `None` for indegree-only families.
    pub degree: Option<usize>,
    scheduler: Scheduler,
}

impl Construction {
    pub fn describe(&self) -> String {
        match self.kind {
            FamilyKind::Example(f) => fixtures::describe(f),
            kind => format!("{kind}"),
        }
    }
}

fn linear(kind: FamilyKind, net: BooleanNetwork, control: NodeSet, degree: Option<usize>) -> Result<Construction> {
    let map = to_affine_gf2(&net)?;
    let horizon = controllability_index(&map, control);
    Ok(Construction {
        kind,
        network: net,
        control,
        horizon,
        degree,
        scheduler: if horizon.is_some() {
            Scheduler::Linear(map)
        } else {
            Scheduler::None
        },
    })
}

fn prescribed(kind: FamilyKind, (net, control): (BooleanNetwork, NodeSet), horizon: usize, degree: Option<usize>) -> Construction {
    Construction {
        kind,
        network: net,
        control,
        horizon: Some(horizon),
        degree,
        scheduler: Scheduler::Prescribed,
    }
}

pub fn build_family(kind: FamilyKind) -> Result<Construction> {
    use FamilyKind::*;
    match kind {
        Star2Xor { n } => {
            let (net, u) = families::star2_xor(n)?;
            linear(kind, net, u, None)
        }
        PairedXor { n } => {
            let (net, u) = families::paired_xor(n)?;
            linear(kind, net, u, Some(2))
        }
        BlockXor { k, m } => {
            let (net, u) = families::block_xor(k, m)?;
            linear(kind, net, u, Some(k))
        }
        PairedAnd { n } => {
            let (net, u) = families::paired_and(n)?;
            Ok(Construction {
                kind,
                network: net,
                control: u,
                horizon: None,
                degree: Some(2),
                scheduler: Scheduler::None,
            })
        }
        Star2And { n } => Ok(prescribed(kind, families::star2_and(n)?, n - 1, None)),
        AndShift2 { m } => Ok(prescribed(kind, families::and_shift(2, m)?, 2 * m + 1, Some(2))),
        AndShiftK { k, m } => Ok(prescribed(kind, families::and_shift(k, m)?, k * m + 1, Some(k))),
        NcShift { k, n } => Ok(prescribed(kind, families::nc_shift(k, n)?, k + 1, Some(k))),
        Example(f) => build_fixture(f),
    }
}

fn build_fixture(f: Fixture) -> Result<Construction> {
    let kind = FamilyKind::Example(f);
    let with_kind = |mut c: Construction| {
        c.kind = kind;
        c
    };
    match f {
        Fixture::AndShift3x2 => build_family(FamilyKind::AndShiftK { k: 3, m: 2 }).map(with_kind),
        Fixture::NcShift5x2 => build_family(FamilyKind::NcShift { k: 5, n: 10 }).map(with_kind),
        Fixture::XorSixA | Fixture::XorSixB => {
            let net = if f == Fixture::XorSixA {
                fixtures::xor_six_a()
            } else {
                fixtures::xor_six_b()
            };
            let (plan, sched) = synthesize_xor_controls(&net)?;
            debug_assert_eq!(plan.control, fixtures::designated_control(f));
            Ok(Construction {
                kind,
                network: net,
                control: plan.control,
                horizon: Some(2),
                degree: Some(2),
                scheduler: Scheduler::TwoStep(sched),
            })
        }
        Fixture::XorFour => linear(kind, fixtures::xor_four(), fixtures::designated_control(f), Some(2)),
        Fixture::AndThirteen => Ok(Construction {
            kind,
            network: fixtures::and_thirteen(),
            control: fixtures::designated_control(f),
            horizon: None,
            degree: Some(2),
            scheduler: Scheduler::None,
        }),
        Fixture::AndNegSeven | Fixture::AndNegUniform | Fixture::AndNegMixed | Fixture::NcSelfLoop5 => {
            let (net, degree) = match f {
                Fixture::AndNegSeven => (fixtures::and_neg_seven(), 2),
                Fixture::AndNegUniform => (fixtures::and_neg_uniform(), 4),
                Fixture::AndNegMixed => (fixtures::and_neg_mixed(), 4),
                _ => (fixtures::nc_self_loop5(), 3),
            };
            let horizon = fixtures::hand_horizon(f).expect("hand-scheduled fixture");
            Ok(prescribed(kind, (net, fixtures::designated_control(f)), horizon, Some(degree)))
        }
    }
}

/// Drives every control node to `desired(t, node)` at `t = 1..=horizon`.
fn schedule_from_targets(
    net: &BooleanNetwork,
    control: NodeSet,
    x0: StateVector,
    horizon: usize,
    desired: impl Fn(usize, usize) -> bool,
) -> Result<ControlSchedule> {
    let n = net.n();
    let mut x = x0.bits();
    let mut masks = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let y = net.step_bits(x);
        let want = control
            .iter()
            .fold(0u32, |acc, i| acc | (desired(t, i) as u32) << i);
        let mask = (y ^ want) & control.mask();
        masks.push(StateVector::from_raw(n, mask));
        x = y ^ mask;
    }
    ControlSchedule::new(control, masks)
}

/// Desired control values for the parametric prescribed families.
fn family_target(kind: FamilyKind, horizon: usize, t: usize, node: usize, xt: StateVector) -> bool {
    match kind {
        FamilyKind::Star2And { n } => match node {
            0 if t < horizon => true,
            0 => xt.get(0),
            _ => xt.get(n - t),
        },
        FamilyKind::AndShift2 { m } => and_shift_target(2, m, t, node, xt),
        FamilyKind::AndShiftK { k, m } => and_shift_target(k, m, t, node, xt),
        FamilyKind::Example(Fixture::AndShift3x2) => and_shift_target(3, 2, t, node, xt),
        FamilyKind::NcShift { k, .. } => nc_shift_target(k, t, node, xt),
        FamilyKind::Example(Fixture::NcShift5x2) => nc_shift_target(5, t, node, xt),
        FamilyKind::Example(f) => fixtures::hand_schedule(f, t, node, &|i| xt.get(i)),
        _ => unreachable!("{kind} has no prescribed schedule"),
    }
}

fn and_shift_target(k: usize, m: usize, t: usize, node: usize, xt: StateVector) -> bool {
    let last = k * m + 1;
    if node == k - 1 {
        xt.get(k * m + k - t)
    } else if t < last {
        true
    } else {
        xt.get(node)
    }
}

/// Block start gets 1, then the rest of its block's targets, then its own.
fn nc_shift_target(k: usize, t: usize, node: usize, xt: StateVector) -> bool {
    let start = node - node % k;
    match t {
        1 => true,
        t if t <= k => xt.get(start + t - 1),
        _ => xt.get(start),
    }
}

/// The proof-prescribed control schedule from `x0` to `xt`.
pub fn construction_schedule(c: &Construction, x0: StateVector, xt: StateVector) -> Result<ControlSchedule> {
    let n = c.network.n();
    for s in [x0, xt] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    match &c.scheduler {
        Scheduler::None => Err(Error::NoSchedule(format!("{}", c.kind))),
        Scheduler::TwoStep(s) => s.schedule(x0, xt),
        Scheduler::Linear(map) => {
            let horizon = c.horizon.expect("linear scheduler has a horizon");
            solve_linear_schedule(map, c.control, x0, xt, horizon)?
                .ok_or_else(|| Error::NoSchedule(format!("{} at horizon {horizon}", c.kind)))
        }
        Scheduler::Prescribed => {
            let horizon = c.horizon.expect("prescribed scheduler has a horizon");
            schedule_from_targets(&c.network, c.control, x0, horizon, |t, node| {
                family_target(c.kind, horizon, t, node, xt)
            })
        }
    }
}

#[cfg(test)]
mod tests;
