//! Random k-k networks from a seeded generator.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Connective, Literal, NcLayer, NodeFunction};
use crate::state::MAX_NODES;

/// Attempts before [`random_kk_digraph`] gives up.
pub const RETRY_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NegationPolicy {
    None,
    /// Each literal (XOR: each function's constant) negated with probability 1/2.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelfLoopPolicy {
    Allow,
    Forbid,
}

impl SelfLoopPolicy {
    /// XOR allows self-loops; AND, OR and NC forbid them.
    pub fn default_for(family: Connective) -> Self {
        match family {
            Connective::Xor => SelfLoopPolicy::Allow,
            _ => SelfLoopPolicy::Forbid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub family: Connective,
    pub negation: NegationPolicy,
    pub self_loops: SelfLoopPolicy,
    pub seed: u64,
}

impl GenSpec {
    /// No negations, family-default self-loop policy.
    pub fn new(n: usize, k: usize, family: Connective, seed: u64) -> Self {
        GenSpec {
            n,
            k,
            family,
            negation: NegationPolicy::None,
            self_loops: SelfLoopPolicy::default_for(family),
            seed,
        }
    }

    /// Same spec with the per-instance seed `seed ⊕ index`.
    pub fn child(&self, index: u64) -> Self {
        GenSpec {
            seed: child_seed(self.seed, index),
            ..*self
        }
    }
}

pub fn child_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

fn check_params(n: usize, k: usize, policy: SelfLoopPolicy) -> Result<()> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::InvalidParameters(format!(
            "n must be in 1..={MAX_NODES}, got {n}"
        )));
    }
    let max_k = match policy {
        SelfLoopPolicy::Allow => n,
        SelfLoopPolicy::Forbid => n - 1,
    };
    if k == 0 || k > max_k {
        return Err(Error::InvalidParameters(format!(
            "a simple {k}-{k} digraph on {n} nodes needs 1 <= k <= {max_k}"
        )));
    }
    Ok(())
}

fn sample_digraph(
    n: usize,
    k: usize,
    policy: SelfLoopPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>> {
    check_params(n, k, policy)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![0u32; n];
    for _ in 0..RETRY_BUDGET {
        out.iter_mut().for_each(|o| *o = 0);
        let ok = (0..k).all(|_| {
            perm.shuffle(rng);
            perm.iter().enumerate().all(|(i, &j)| {
                let clash = out[i] >> j & 1 == 1 || (policy == SelfLoopPolicy::Forbid && i == j);
                out[i] |= 1 << j;
                !clash
            })
        });
        if ok {
            let mut edges = Vec::with_capacity(n * k);
            for (i, &o) in out.iter().enumerate() {
                for j in 0..n {
                    if o >> j & 1 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            return Ok(edges);
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}

/// Edges `(source, target)` of a uniformly sampled union of `k` permutations,
/// rejected until simple. Sorted by source, then target.
pub fn random_kk_digraph(
    n: usize,
    k: usize,
    policy: SelfLoopPolicy,
    seed: u64,
) -> Result<Vec<(usize, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_digraph(n, k, policy, &mut rng)
}

pub fn random_network(spec: &GenSpec) -> Result<BooleanNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = sample_digraph(spec.n, spec.k, spec.self_loops, &mut rng)?;
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); spec.n];
    for (src, dst) in edges {
        inputs[dst].push(src);
    }
    let random_neg = spec.negation == NegationPolicy::Random;
    let functions = inputs
        .into_iter()
        .map(|mut ins| match spec.family {
            Connective::Xor => {
                let mut lits: Vec<Literal> = ins.iter().map(|&i| Literal::pos(i)).collect();
                if random_neg && rng.gen::<bool>() {
                    lits[0].negated = true;
                }
                NodeFunction::xor(lits)
            }
            Connective::And | Connective::Or => {
                let lits = ins
                    .iter()
                    .map(|&i| Literal {
                        node: i,
                        negated: random_neg && rng.gen::<bool>(),
                    })
                    .collect();
                if spec.family == Connective::And {
                    NodeFunction::and(lits)
                } else {
                    NodeFunction::or(lits)
                }
            }
            Connective::Nc => {
                ins.shuffle(&mut rng);
                let layers: Vec<NcLayer> = ins
                    .iter()
                    .map(|&i| NcLayer {
                        literal: Literal {
                            node: i,
                            negated: random_neg && rng.gen::<bool>(),
                        },
                        output: rng.gen::<bool>(),
                    })
                    .collect();
                let default = !layers.last().map(|l| l.output).unwrap_or(false);
                NodeFunction::nested(layers, default)
            }
        })
        .collect();
    BooleanNetwork::new(functions)
}
