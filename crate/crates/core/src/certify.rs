//! Structural non-controllability certificates for AND/OR networks.
//!
//! Nodes outside a control set `U` are graded into `V_p` and nodes inside into
//! `W_p` by `p = |Γ+(x) ∩ U|`. Four rules are tried in a fixed order and the
//! first one that fires is reported.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Family, MultiplicityTable};
use crate::state::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPartition {
    /// `outside[p]` = V_p.
    pub outside: Vec<NodeSet>,
    /// `inside[p]` = W_p.
    pub inside: Vec<NodeSet>,
    pub self_loops: NodeSet,
}

impl ControlPartition {
    pub fn v(&self, p: usize) -> NodeSet {
        self.outside.get(p).copied().unwrap_or_default()
    }

    pub fn w(&self, p: usize) -> NodeSet {
        self.inside.get(p).copied().unwrap_or_default()
    }
}

pub fn control_partition(net: &BooleanNetwork, control: NodeSet) -> ControlPartition {
    let n = net.n();
    let max_out = (0..n).map(|i| net.outdegree(i)).max().unwrap_or(0);
    let mut outside = vec![NodeSet::EMPTY; max_out + 1];
    let mut inside = vec![NodeSet::EMPTY; max_out + 1];
    let mut self_loops = NodeSet::EMPTY;
    for i in 0..n {
        let p = (net.out_neighbors(i).mask() & control.mask()).count_ones() as usize;
        if control.contains(i) {
            inside[p].insert(i);
        } else {
            outside[p].insert(i);
        }
        if net.has_self_loop(i) {
            self_loops.insert(i);
        }
    }
    ControlPartition {
        outside,
        inside,
        self_loops,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeIdentity {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// `Σ_p p(|V_p| + |W_p|)` against `k|U|`: both count edges landing in `U`.
pub fn degree_identity(net: &BooleanNetwork, control: NodeSet) -> Result<DegreeIdentity> {
    let k = net.regular_degree().ok_or_else(|| {
        Error::NotApplicable(String::from("degree identity needs a k-k network"))
    })?;
    let part = control_partition(net, control);
    let lhs = (0..part.outside.len())
        .map(|p| p * (part.v(p).len() + part.w(p).len()))
        .sum();
    let rhs = k * control.len();
    Ok(DegreeIdentity {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotControllable,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    SelfLoop,
    InNeighbor,
    Counting,
    Multiplicity,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::SelfLoop => "self-loop",
            Rule::InNeighbor => "in-neighbor",
            Rule::Counting => "counting",
            Rule::Multiplicity => "multiplicity",
        }
    }
}

/// The violated inequality, instantiated: the rule requires `lhs <= rhs`
/// (or `lhs >= rhs` for the multiplicity rule) and it failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inequality {
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    /// Offending nodes, 0-based.
    pub nodes: Vec<usize>,
    pub inequality: Option<Inequality>,
}

impl Certificate {
    fn inconclusive() -> Self {
        Certificate {
            verdict: Verdict::Inconclusive,
            rule: None,
            nodes: Vec::new(),
            inequality: None,
        }
    }

    fn refuted(rule: Rule, nodes: Vec<usize>, inequality: Option<Inequality>) -> Self {
        Certificate {
            verdict: Verdict::NotControllable,
            rule: Some(rule),
            nodes,
            inequality,
        }
    }

    pub fn is_refutation(&self) -> bool {
        self.verdict == Verdict::NotControllable
    }
}

/// Per-network precomputation so candidate sets can be screened cheaply.
#[derive(Debug, Clone)]
pub struct Certifier {
    applicable: bool,
    degree: Option<usize>,
    /// Nodes whose own positive literal feeds their function.
    stuck_loops: u32,
    in_sets: Vec<u32>,
    out_sets: Vec<u32>,
    mixed: Vec<(usize, usize)>,
}

impl Certifier {
    pub fn new(net: &BooleanNetwork) -> Self {
        let n = net.n();
        let applicable = matches!(net.family(), Family::And | Family::Or);
        let mut stuck_loops = 0u32;
        for i in 0..n {
            if net
                .function(i)
                .inputs
                .iter()
                .any(|l| l.node == i && !l.negated)
            {
                stuck_loops |= 1 << i;
            }
        }
        let mixed = net
            .literal_multiplicities()
            .map(|m: MultiplicityTable| m.mixed_nodes().collect())
            .unwrap_or_default();
        Certifier {
            applicable,
            degree: net.regular_degree(),
            stuck_loops,
            in_sets: (0..n).map(|i| net.in_neighbors(i).mask()).collect(),
            out_sets: (0..n).map(|i| net.out_neighbors(i).mask()).collect(),
            mixed,
        }
    }

    pub fn check(&self, control: NodeSet) -> Certificate {
        if !self.applicable {
            return Certificate::inconclusive();
        }
        let u = control.mask();
        let n = self.in_sets.len();
        let outside = !u & crate::state::full_mask(n);

        // (a) an uncontrolled node feeding itself positively is frozen once
        // it takes the absorbing value.
        let stuck = self.stuck_loops & outside;
        if stuck != 0 {
            return Certificate::refuted(Rule::SelfLoop, NodeSet(stuck).iter().collect(), None);
        }

        let Some(k) = self.degree else {
            return Certificate::inconclusive();
        };
        if k == 0 {
            return Certificate::inconclusive();
        }

        // Nodes with exactly one out-neighbor outside U.
        let mut single = 0u32;
        for (i, &out) in self.out_sets.iter().enumerate() {
            if (out & u).count_ones() as usize == k - 1 {
                single |= 1 << i;
            }
        }

        // (b)
        let starved: Vec<usize> = NodeSet(outside)
            .iter()
            .filter(|&i| self.in_sets[i] & single == 0)
            .collect();
        if !starved.is_empty() {
            return Certificate::refuted(Rule::InNeighbor, starved, None);
        }

        // (c)
        let lhs = outside.count_ones() as usize;
        let rhs = single.count_ones() as usize;
        if lhs > rhs {
            return Certificate::refuted(Rule::Counting, Vec::new(), Some(Inequality { lhs, rhs }));
        }

        // (d) a node with j positive and j negative occurrences needs at
        // least j controlled out-neighbors.
        for &(i, j) in &self.mixed {
            let have = (self.out_sets[i] & u).count_ones() as usize;
            if have < j {
                return Certificate::refuted(
                    Rule::Multiplicity,
                    vec![i],
                    Some(Inequality { lhs: have, rhs: j }),
                );
            }
        }
        Certificate::inconclusive()
    }
}

/// Tries the self-loop, in-neighbor, counting and multiplicity rules in
/// that order. XOR, NC and mixed networks are always inconclusive.
pub fn necessary_conditions(net: &BooleanNetwork, control: NodeSet) -> Certificate {
    Certifier::new(net).check(control)
}
