//! Boolean network representation, evaluation and degree accounting.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::state::{NodeSet, StateVector, MAX_NODES};

/// Connective of a node function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Xor,
    And,
    Or,
    /// Nested canalyzing, stored as ordered layers plus a default.
    Nc,
}

impl Connective {
    pub fn name(self) -> &'static str {
        match self {
            Connective::Xor => "xor",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Nc => "nc",
        }
    }
}

/// Family tag of a whole network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Xor,
    And,
    Or,
    Nc,
    Mixed,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Xor => "xor",
            Family::And => "and",
            Family::Or => "or",
            Family::Nc => "nc",
            Family::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A possibly negated reference to a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub node: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(node: usize) -> Self {
        Literal {
            node,
            negated: false,
        }
    }

    pub fn neg(node: usize) -> Self {
        Literal {
            node,
            negated: true,
        }
    }

    #[inline]
    pub fn eval(self, x: u32) -> bool {
        (x >> self.node & 1 == 1) != self.negated
    }
}

/// One canalyzing layer: if `literal` is true the function outputs `output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NcLayer {
    pub literal: Literal,
    pub output: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcSpec {
    pub layers: Vec<NcLayer>,
    pub default: bool,
}

/// The update function of one node.
///
/// For NC functions `inputs` mirrors the layer literals in layer order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeFunction {
    pub connective: Connective,
    pub inputs: Vec<Literal>,
    pub nc: Option<NcSpec>,
}

impl NodeFunction {
    pub fn xor(inputs: Vec<Literal>) -> Self {
        Self::plain(Connective::Xor, inputs)
    }

    pub fn and(inputs: Vec<Literal>) -> Self {
        Self::plain(Connective::And, inputs)
    }

    pub fn or(inputs: Vec<Literal>) -> Self {
        Self::plain(Connective::Or, inputs)
    }

    fn plain(connective: Connective, inputs: Vec<Literal>) -> Self {
        NodeFunction {
            connective,
            inputs,
            nc: None,
        }
    }

    pub fn nested(layers: Vec<NcLayer>, default: bool) -> Self {
        NodeFunction {
            connective: Connective::Nc,
            inputs: layers.iter().map(|l| l.literal).collect(),
            nc: Some(NcSpec { layers, default }),
        }
    }

    /// Evaluates the function on a packed state.
    pub fn evaluate(&self, state: StateVector) -> Result<bool> {
        let n = state.len();
        if let Some(bad) = self.inputs.iter().find(|l| l.node >= n) {
            return Err(Error::MalformedNetwork(format!(
                "input x{} outside a {n}-node state",
                bad.node + 1
            )));
        }
        Ok(Compiled::new(self).eval(state.bits()))
    }

    pub fn input_mask(&self) -> u32 {
        self.inputs.iter().fold(0, |m, l| m | 1 << l.node)
    }

    pub fn has_negation(&self) -> bool {
        self.inputs.iter().any(|l| l.negated)
    }
}

/// Word-level form of a function for fast stepping.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    kind: Connective,
    inputs: u32,
    negs: u32,
    layers: Vec<(u32, bool, bool)>,
    default: bool,
}

impl Compiled {
    fn new(f: &NodeFunction) -> Self {
        let inputs = f.input_mask();
        let negs = f
            .inputs
            .iter()
            .filter(|l| l.negated)
            .fold(0, |m, l| m | 1 << l.node);
        let (layers, default) = match &f.nc {
            Some(spec) => (
                spec.layers
                    .iter()
                    .map(|l| (l.literal.node as u32, l.literal.negated, l.output))
                    .collect(),
                spec.default,
            ),
            None => (Vec::new(), false),
        };
        Compiled {
            kind: f.connective,
            inputs,
            negs,
            layers,
            default,
        }
    }

    #[inline]
    fn eval(&self, x: u32) -> bool {
        match self.kind {
            Connective::Xor => ((x & self.inputs).count_ones() + (self.negs & self.inputs).count_ones()) & 1 == 1,
            Connective::And => (x ^ self.negs) & self.inputs == self.inputs,
            Connective::Or => (x ^ self.negs) & self.inputs != 0,
            Connective::Nc => {
                for &(node, neg, out) in &self.layers {
                    if (x >> node & 1 == 1) != neg {
                        return out;
                    }
                }
                self.default
            }
        }
    }
}

/// A synchronous Boolean network on nodes `x1..xn`.
#[derive(Debug, Clone)]
pub struct BooleanNetwork {
    functions: Vec<NodeFunction>,
    compiled: Vec<Compiled>,
    in_sets: Vec<u32>,
    out_sets: Vec<u32>,
}

impl PartialEq for BooleanNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.functions == other.functions
    }
}

impl Eq for BooleanNetwork {}

impl BooleanNetwork {
    /// Builds a network, `functions[i]` being the update rule of `x_{i+1}`.
    pub fn new(functions: Vec<NodeFunction>) -> Result<Self> {
        let n = functions.len();
        if n == 0 || n > MAX_NODES {
            return Err(Error::MalformedNetwork(format!(
                "node count {n} outside 1..={MAX_NODES}"
            )));
        }
        for (i, f) in functions.iter().enumerate() {
            let mut seen = 0u32;
            for l in &f.inputs {
                if l.node >= n {
                    return Err(Error::MalformedNetwork(format!(
                        "f{} reads x{} but the network has {n} nodes",
                        i + 1,
                        l.node + 1
                    )));
                }
                if seen >> l.node & 1 == 1 {
                    return Err(Error::MalformedNetwork(format!(
                        "f{} reads x{} more than once",
                        i + 1,
                        l.node + 1
                    )));
                }
                seen |= 1 << l.node;
            }
            match (f.connective, &f.nc) {
                (Connective::Nc, None) => {
                    return Err(Error::MalformedNetwork(format!(
                        "f{} is nested canalyzing but has no layers",
                        i + 1
                    )))
                }
                (Connective::Nc, Some(spec)) => {
                    let layer_lits: Vec<Literal> = spec.layers.iter().map(|l| l.literal).collect();
                    if layer_lits != f.inputs {
                        return Err(Error::MalformedNetwork(format!(
                            "f{} input list disagrees with its canalyzing layers",
                            i + 1
                        )));
                    }
                }
                (_, Some(_)) => {
                    return Err(Error::MalformedNetwork(format!(
                        "f{} carries canalyzing layers but is {}",
                        i + 1,
                        f.connective.name()
                    )))
                }
                _ => {}
            }
        }
        let compiled = functions.iter().map(Compiled::new).collect();
        let in_sets: Vec<u32> = functions.iter().map(NodeFunction::input_mask).collect();
        let mut out_sets = vec![0u32; n];
        for (i, &ins) in in_sets.iter().enumerate() {
            for j in NodeSet(ins).iter() {
                out_sets[j] |= 1 << i;
            }
        }
        Ok(BooleanNetwork {
            functions,
            compiled,
            in_sets,
            out_sets,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.functions.len()
    }

    pub fn functions(&self) -> &[NodeFunction] {
        &self.functions
    }

    pub fn function(&self, node: usize) -> &NodeFunction {
        &self.functions[node]
    }

    /// Γ−(x_i): nodes read by `f_i`.
    pub fn in_neighbors(&self, node: usize) -> NodeSet {
        NodeSet(self.in_sets[node])
    }

    /// Γ+(x_i): nodes whose function reads `x_i`.
    pub fn out_neighbors(&self, node: usize) -> NodeSet {
        NodeSet(self.out_sets[node])
    }

    pub fn indegree(&self, node: usize) -> usize {
        self.in_sets[node].count_ones() as usize
    }

    pub fn outdegree(&self, node: usize) -> usize {
        self.out_sets[node].count_ones() as usize
    }

    pub fn has_self_loop(&self, node: usize) -> bool {
        self.in_sets[node] >> node & 1 == 1
    }

    /// Edges `(j, i)` meaning `x_j` feeds `f_i`, ordered by target then source.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, &ins) in self.in_sets.iter().enumerate() {
            e.extend(NodeSet(ins).iter().map(|j| (j, i)));
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.in_sets.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn family(&self) -> Family {
        let first = self.functions[0].connective;
        if self.functions.iter().any(|f| f.connective != first) {
            return Family::Mixed;
        }
        match first {
            Connective::Xor => Family::Xor,
            Connective::And => Family::And,
            Connective::Or => Family::Or,
            Connective::Nc => Family::Nc,
        }
    }

    pub fn has_negation(&self) -> bool {
        self.functions.iter().any(NodeFunction::has_negation)
    }

    /// The common in/out degree if the network is k-k for some k.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.indegree(0);
        (0..self.n())
            .all(|i| self.indegree(i) == k && self.outdegree(i) == k)
            .then_some(k)
    }

    #[inline]
    pub(crate) fn step_bits(&self, x: u32) -> u32 {
        let mut y = 0u32;
        for (i, c) in self.compiled.iter().enumerate() {
            y |= (c.eval(x) as u32) << i;
        }
        y
    }

    /// `step` applied to every state, indexed by packed state.
    pub(crate) fn step_table(&self) -> Vec<u32> {
        (0..1u32 << self.n()).map(|x| self.step_bits(x)).collect()
    }

    pub fn validate_kk(&self, k: usize) -> ValidationReport {
        let violations = (0..self.n())
            .filter_map(|i| {
                let (indegree, outdegree) = (self.indegree(i), self.outdegree(i));
                (indegree != k || outdegree != k).then_some(DegreeViolation {
                    node: i,
                    indegree,
                    outdegree,
                })
            })
            .collect();
        ValidationReport { k, violations }
    }

    /// Literal occurrence counts and the M_j aggregates. AND/OR only.
    pub fn literal_multiplicities(&self) -> Result<MultiplicityTable> {
        match self.family() {
            Family::And | Family::Or => {}
            other => {
                return Err(Error::NotApplicable(format!(
                    "literal multiplicities need an AND or OR network, got {other}"
                )))
            }
        }
        let n = self.n();
        let mut per_node = vec![LiteralCount::default(); n];
        for f in &self.functions {
            for l in &f.inputs {
                if l.negated {
                    per_node[l.node].neg += 1;
                } else {
                    per_node[l.node].pos += 1;
                }
            }
        }
        let max_out = (0..n).map(|i| self.outdegree(i)).max().unwrap_or(0);
        let mut counts = vec![0usize; max_out / 2 + 1];
        for c in &per_node {
            counts[c.j()] += 1;
        }
        Ok(MultiplicityTable { per_node, counts })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeViolation {
    pub node: usize,
    pub indegree: usize,
    pub outdegree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub k: usize,
    pub violations: Vec<DegreeViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LiteralCount {
    pub pos: usize,
    pub neg: usize,
}

impl LiteralCount {
    pub fn j(&self) -> usize {
        self.pos.min(self.neg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub per_node: Vec<LiteralCount>,
    /// `counts[j]` = |M_j|.
    pub counts: Vec<usize>,
}

impl MultiplicityTable {
    pub fn m(&self, j: usize) -> usize {
        self.counts.get(j).copied().unwrap_or(0)
    }

    /// Nodes with j ≥ 1, as `(node, j)`.
    pub fn mixed_nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.per_node
            .iter()
            .enumerate()
            .filter(|(_, c)| c.j() > 0)
            .map(|(i, c)| (i, c.j()))
    }
}

/// Shorthand for literal lists in builders: `lits(&[3, -5])` is `x3, ¬x5`.
pub fn lits(names: &[i32]) -> Vec<Literal> {
    names
        .iter()
        .map(|&v| Literal {
            node: v.unsigned_abs() as usize - 1,
            negated: v < 0,
        })
        .collect()
}
