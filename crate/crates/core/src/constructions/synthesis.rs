//! Control set synthesis for arbitrary k-k XOR networks, with a two-step
//! scheduler.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::ControlSchedule;
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Family};
use crate::state::{full_mask, NodeSet, StateVector};

/// Nodes with pairwise disjoint out-neighborhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedySelection {
    pub v1: NodeSet,
    /// Number of iterations the greedy pass was asked to run.
    pub rounds: usize,
    pub warnings: Vec<String>,
}

/// Picks the lowest-index remaining node, then drops every node sharing an
/// out-neighbor with it, for `⌈n / (k(k−1)+1)⌉` rounds.
pub fn greedy_v1(net: &BooleanNetwork) -> Result<GreedySelection> {
    let k = net
        .regular_degree()
        .ok_or_else(|| Error::NotApplicable(String::from("greedy selection needs a k-k network")))?;
    let n = net.n();
    let block = (k * (k.saturating_sub(1)) + 1).max(1);
    let rounds = n.div_ceil(block);
    let mut warnings = Vec::new();
    if !n.is_multiple_of(block) {
        warnings.push(format!(
            "n = {n} is not a multiple of {block}; ran {rounds} rounds"
        ));
    }
    let out: Vec<u32> = (0..n).map(|i| net.out_neighbors(i).mask()).collect();
    let mut remaining = full_mask(n);
    let mut v1 = NodeSet::EMPTY;
    for _ in 0..rounds {
        if remaining == 0 {
            warnings.push(format!("ran out of candidates after {} picks", v1.len()));
            break;
        }
        let i = remaining.trailing_zeros() as usize;
        v1.insert(i);
        remaining &= !(1 << i);
        for j in NodeSet(remaining).iter() {
            if out[j] & out[i] != 0 {
                remaining &= !(1 << j);
            }
        }
    }
    Ok(GreedySelection {
        v1,
        rounds,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisPlan {
    pub k: usize,
    pub v1: NodeSet,
    /// `grades[p]` holds the V1 nodes with exactly `p` out-neighbors in V1.
    pub grades: Vec<NodeSet>,
    /// `(i, φ(i))` for every V1 node with an out-neighbor outside V1.
    pub phi: Vec<(usize, usize)>,
    pub w: NodeSet,
    pub v2: NodeSet,
    pub v3: NodeSet,
    pub control: NodeSet,
    pub warnings: Vec<String>,
}

impl SynthesisPlan {
    pub fn grade(&self, p: usize) -> NodeSet {
        self.grades.get(p).copied().unwrap_or_default()
    }

    pub fn phi_of(&self, i: usize) -> Option<usize> {
        self.phi.iter().find(|&&(a, _)| a == i).map(|&(_, b)| b)
    }
}

/// Reaches any target in two steps: the first step fixes every `φ(i)`
/// through `x_i`, the second overwrites all control nodes.
#[derive(Debug, Clone)]
pub struct TwoStepScheduler {
    net: BooleanNetwork,
    control: NodeSet,
    phi: Vec<(usize, usize)>,
}

impl TwoStepScheduler {
    pub fn control_set(&self) -> NodeSet {
        self.control
    }

    fn check(&self, x: StateVector) -> Result<()> {
        if x.len() != self.net.n() {
            return Err(Error::DimensionMismatch {
                expected: self.net.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn masks(&self, x0: u32, xt: u32) -> (u32, u32) {
        let free2 = self.net.step_bits(self.net.step_bits(x0));
        let u0 = self
            .phi
            .iter()
            .filter(|&&(_, j)| (free2 ^ xt) >> j & 1 == 1)
            .fold(0u32, |m, &(i, _)| m | 1 << i);
        let x1 = self.net.step_bits(x0) ^ u0;
        let u1 = (self.net.step_bits(x1) ^ xt) & self.control.mask();
        (u0, u1)
    }

    pub fn schedule(&self, x0: StateVector, xt: StateVector) -> Result<ControlSchedule> {
        self.check(x0)?;
        self.check(xt)?;
        let n = self.net.n();
        let (u0, u1) = self.masks(x0.bits(), xt.bits());
        ControlSchedule::new(
            self.control,
            vec![StateVector::from_raw(n, u0), StateVector::from_raw(n, u1)],
        )
    }

    /// The six intermediate vectors: `x0`, `F(x0)`, `F(F(x0))`, `x(1)`,
    /// `F(x(1))` and `x(2)`.
    pub fn trace(&self, x0: StateVector, xt: StateVector) -> Result<[StateVector; 6]> {
        self.check(x0)?;
        self.check(xt)?;
        let n = self.net.n();
        let s = |x| self.net.step_bits(x);
        let (u0, u1) = self.masks(x0.bits(), xt.bits());
        let a = x0.bits();
        let x3 = s(a) ^ u0;
        let rows = [a, s(a), s(s(a)), x3, s(x3), s(x3) ^ u1];
        Ok(rows.map(|b| StateVector::from_raw(n, b)))
    }
}

/// Builds V1, its grading, φ, W, V2, V3 and `U = V1 ∪ W ∪ V3`.
pub fn synthesize_xor_controls(net: &BooleanNetwork) -> Result<(SynthesisPlan, TwoStepScheduler)> {
    if net.family() != Family::Xor {
        return Err(Error::NotApplicable(format!(
            "control synthesis needs an XOR network, got {}",
            net.family()
        )));
    }
    let greedy = greedy_v1(net)?;
    let k = net.regular_degree().unwrap_or(0);
    let n = net.n();
    let mut warnings = greedy.warnings;
    let block = k * k.saturating_sub(1) + 1;
    let m = n / block;
    if k == 2 && !(n.is_multiple_of(3) && m > 1 && m.is_multiple_of(2)) {
        warnings.push(format!(
            "size guarantee needs n = 3m with even m > 1; n = {n}"
        ));
    } else if k > 2 && !(n.is_multiple_of(block) && m.is_multiple_of(k) && m > 0) {
        warnings.push(format!(
            "size guarantee needs n = {block}m with m mod {k} = 0; n = {n}"
        ));
    }

    let v1 = greedy.v1;
    let mut grades = vec![NodeSet::EMPTY; k + 1];
    let mut phi = Vec::new();
    let mut w = NodeSet::EMPTY;
    let mut v2 = NodeSet::EMPTY;
    for i in v1.iter() {
        let out = net.out_neighbors(i);
        let inside = out.mask() & v1.mask();
        grades[inside.count_ones() as usize].insert(i);
        let outside = NodeSet(out.mask() & !v1.mask());
        if let Some(last) = outside.iter().last() {
            phi.push((i, last));
            for j in outside.iter().filter(|&j| j != last) {
                w.insert(j);
            }
        }
        v2 = v2.union(outside);
    }
    let v3 = NodeSet(full_mask(n) & !v1.mask() & !v2.mask());
    let control = v1.union(w).union(v3);
    let plan = SynthesisPlan {
        k,
        v1,
        grades,
        phi: phi.clone(),
        w,
        v2,
        v3,
        control,
        warnings,
    };
    let scheduler = TwoStepScheduler {
        net: net.clone(),
        control,
        phi,
    };
    Ok((plan, scheduler))
}
