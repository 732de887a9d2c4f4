//! Synchronous stepping with XOR-injected controls.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::state::{NodeSet, StateVector};

/// Per-step control masks on a fixed control node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlSchedule {
    control: NodeSet,
    masks: Vec<StateVector>,
}

impl ControlSchedule {
    pub fn new(control: NodeSet, masks: Vec<StateVector>) -> Result<Self> {
        for m in &masks {
            check_mask(control, *m)?;
        }
        Ok(ControlSchedule { control, masks })
    }

    pub fn empty(control: NodeSet) -> Self {
        ControlSchedule {
            control,
            masks: Vec::new(),
        }
    }

    pub fn control_set(&self) -> NodeSet {
        self.control
    }

    pub fn masks(&self) -> &[StateVector] {
        &self.masks
    }

    pub fn horizon(&self) -> usize {
        self.masks.len()
    }
}

fn check_mask(control: NodeSet, mask: StateVector) -> Result<()> {
    if mask.bits() & !control.mask() != 0 {
        return Err(Error::MaskOutsideControlSet {
            mask: mask.bits(),
            control: control.mask(),
        });
    }
    Ok(())
}

fn check_dim(net: &BooleanNetwork, x: StateVector) -> Result<()> {
    if x.len() != net.n() {
        return Err(Error::DimensionMismatch {
            expected: net.n(),
            found: x.len(),
        });
    }
    Ok(())
}

pub fn step(net: &BooleanNetwork, x: StateVector) -> Result<StateVector> {
    check_dim(net, x)?;
    Ok(StateVector::from_raw(net.n(), net.step_bits(x.bits())))
}

pub fn controlled_step(
    net: &BooleanNetwork,
    x: StateVector,
    control: NodeSet,
    mask: StateVector,
) -> Result<StateVector> {
    check_dim(net, x)?;
    check_dim(net, mask)?;
    check_mask(control, mask)?;
    Ok(StateVector::from_raw(
        net.n(),
        net.step_bits(x.bits()) ^ mask.bits(),
    ))
}

/// States `x(0)..x(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory(pub Vec<StateVector>);

impl Trajectory {
    pub fn last(&self) -> StateVector {
        *self.0.last().expect("trajectory holds at least x(0)")
    }

    pub fn states(&self) -> &[StateVector] {
        &self.0
    }

    /// One row per step, `t x1 .. xn`, space separated.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(first) = self.0.first() {
            out.push('t');
            for i in 1..=first.len() {
                let _ = write!(out, " x{i}");
            }
            out.push('\n');
        }
        for (t, s) in self.0.iter().enumerate() {
            let _ = write!(out, "{t}");
            for b in s.values() {
                let _ = write!(out, " {b}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn simulate(
    net: &BooleanNetwork,
    x0: StateVector,
    schedule: &ControlSchedule,
) -> Result<Trajectory> {
    check_dim(net, x0)?;
    let mut states = Vec::with_capacity(schedule.horizon() + 1);
    states.push(x0);
    let mut x = x0;
    for &m in schedule.masks() {
        x = controlled_step(net, x, schedule.control_set(), m)?;
        states.push(x);
    }
    Ok(Trajectory(states))
}
