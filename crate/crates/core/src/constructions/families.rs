//! Parametric network families with designated control sets.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::AffineMap;
use crate::network::{BooleanNetwork, Literal, NcLayer, NodeFunction};
use crate::state::{NodeSet, MAX_NODES};

fn pos(nodes: &[usize]) -> Vec<Literal> {
    nodes.iter().map(|&i| Literal::pos(i)).collect()
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_NODES {
        return Err(Error::InvalidParameters(format!(
            "family would have {n} nodes, above the limit of {MAX_NODES}"
        )));
    }
    Ok(())
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(what.into()))
    }
}

/// `x1 = x2 = x1 ⊕ x2`, `x_i = x1 ⊕ x_{i−1}` for `i ≥ 3`.
pub fn star2_xor(n: usize) -> Result<(BooleanNetwork, NodeSet)> {
    require(n >= 4 && n.is_multiple_of(2), "star XOR family needs even n >= 4")?;
    check_size(n)?;
    let mut fs = alloc::vec![NodeFunction::xor(pos(&[0, 1])), NodeFunction::xor(pos(&[0, 1]))];
    for i in 2..n {
        fs.push(NodeFunction::xor(pos(&[0, i - 1])));
    }
    Ok((BooleanNetwork::new(fs)?, NodeSet::from_indices([0, 1])))
}

fn paired(n: usize, and: bool) -> Result<BooleanNetwork> {
    require(n >= 2 && n.is_multiple_of(2), "paired family needs even n >= 2")?;
    check_size(n)?;
    let fs = (0..n)
        .map(|i| {
            let pair = pos(&[i & !1, i | 1]);
            if and {
                NodeFunction::and(pair)
            } else {
                NodeFunction::xor(pair)
            }
        })
        .collect();
    BooleanNetwork::new(fs)
}

/// Both nodes of each pair read the pair; one control per pair suffices.
pub fn paired_xor(n: usize) -> Result<(BooleanNetwork, NodeSet)> {
    let net = paired(n, false)?;
    Ok((net, (0..n).step_by(2).collect()))
}

/// Same wiring with AND; every node must be controlled.
pub fn paired_and(n: usize) -> Result<(BooleanNetwork, NodeSet)> {
    let net = paired(n, true)?;
    Ok((net, NodeSet::all(n)))
}

/// Blocks of `k + 1` nodes; node `j` of block `h + 1` is the XOR of block `h`
/// without its `j`-th node, cyclically.
pub fn block_xor(k: usize, m: usize) -> Result<(BooleanNetwork, NodeSet)> {
    require(k >= 3 && k % 2 == 1, "block XOR family needs odd k >= 3")?;
    require(m >= 1, "block XOR family needs m >= 1")?;
    let b = k + 1;
    let n = b * m;
    check_size(n)?;
    let mut fs = Vec::with_capacity(n);
    for h in 0..m {
        let prev = (h + m - 1) % m;
        for j in 0..b {
            let inputs: Vec<usize> = (0..b).filter(|&a| a != j).map(|a| prev * b + a).collect();
            fs.push(NodeFunction::xor(pos(&inputs)));
        }
    }
    Ok((BooleanNetwork::new(fs)?, (0..b).collect()))
}

/// The block-to-block linear map of [`block_xor`], all-ones minus identity.
pub fn block_map(k: usize) -> AffineMap {
    let b = k + 1;
    let full = (1u32 << b) - 1;
    AffineMap {
        n: b,
        rows: (0..b).map(|j| full & !(1 << j)).collect(),
        c: 0,
    }
}

/// `x1 = x2 ∧ x3`, `x2 = x1 ∧ x3`, `x3 = x1 ∧ x2`, `x_i = x1 ∧ x_{i−1}`.
pub fn star2_and(n: usize) -> Result<(BooleanNetwork, NodeSet)> {
    require(n >= 3, "star AND family needs n > 2")?;
    check_size(n)?;
    let mut fs = alloc::vec![
        NodeFunction::and(pos(&[1, 2])),
        NodeFunction::and(pos(&[0, 2])),
        NodeFunction::and(pos(&[0, 1])),
    ];
    for i in 3..n {
        fs.push(NodeFunction::and(pos(&[0, i - 1])));
    }
    Ok((BooleanNetwork::new(fs)?, NodeSet::from_indices([0, 1])))
}

/// Shift-register AND network on `n = (2k−1)m + 1` nodes.
///
/// Nodes `x_{k+1}..x_{km+k}` form a chain fed by `x_k`; each later block of
/// `k` chain nodes is gated by `k−1` helper nodes that read that block.
pub fn and_shift(k: usize, m: usize) -> Result<(BooleanNetwork, NodeSet)> {
    require(k >= 2, "shift AND family needs k >= 2")?;
    require(m > 1, "shift AND family needs m > 1")?;
    let n = (2 * k - 1) * m + 1;
    check_size(n)?;
    // 0-based: head 0..k, chain k..km+k, helpers km+k..n.
    let chain_end = k * m + k;
    let helpers = |b: usize| -> Vec<usize> {
        let start = chain_end + (b - 2) * (k - 1);
        (start..start + k - 1).collect()
    };
    let block = |b: usize| -> Vec<usize> { (b * k..b * k + k).collect() };

    let mut fs = Vec::with_capacity(n);
    for i in 0..k - 1 {
        // x_{i+1} reads x_k..x_{2k} without x_{2k−1−i}.
        let skip = 2 * k - 2 - i;
        let inputs: Vec<usize> = (k - 1..2 * k).filter(|&a| a != skip).collect();
        fs.push(NodeFunction::and(pos(&inputs)));
    }
    let mut head: Vec<usize> = (k..2 * k - 1).collect();
    head.push(chain_end - 1);
    fs.push(NodeFunction::and(pos(&head)));
    for j in 0..k {
        let mut inputs: Vec<usize> = (0..k - 1).collect();
        inputs.push(k - 1 + j);
        fs.push(NodeFunction::and(pos(&inputs)));
    }
    for b in 2..=m {
        let gate = helpers(b);
        for node in block(b) {
            let mut inputs = gate.clone();
            inputs.push(node - 1);
            fs.push(NodeFunction::and(pos(&inputs)));
        }
    }
    for b in 2..=m {
        for _ in 0..k - 1 {
            fs.push(NodeFunction::and(pos(&block(b))));
        }
    }
    let mut control: NodeSet = (0..k).collect();
    for h in chain_end..n {
        control.insert(h);
    }
    Ok((BooleanNetwork::new(fs)?, control))
}

/// Node `i` of a block: `x_{i+1} ∨ ¬(every other block node except x_{i+1})`.
pub fn nc_shift(k: usize, n: usize) -> Result<(BooleanNetwork, NodeSet)> {
    require(k >= 2, "NC shift family needs k >= 2")?;
    require(n > 2 && n.is_multiple_of(k), "NC shift family needs n > 2 and n mod k = 0")?;
    check_size(n)?;
    let mut fs = Vec::with_capacity(n);
    for s in (0..n).step_by(k) {
        for i in 0..k {
            let next = s + (i + 1) % k;
            let mut layers = alloc::vec![NcLayer {
                literal: Literal::pos(next),
                output: true,
            }];
            for a in (s..s + k).filter(|&a| a != next) {
                layers.push(NcLayer {
                    literal: Literal::pos(a),
                    output: false,
                });
            }
            fs.push(NodeFunction::nested(layers, true));
        }
    }
    Ok((BooleanNetwork::new(fs)?, (0..n).step_by(k).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::lits;

    #[test]
    fn and_shift_k3_m2_matches_listing() {
        let (net, u) = and_shift(3, 2).unwrap();
        let expect = [
            [3, 4, 6],
            [3, 5, 6],
            [4, 5, 9],
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 5],
            [10, 11, 6],
            [10, 11, 7],
            [10, 11, 8],
            [7, 8, 9],
            [7, 8, 9],
        ];
        for (i, names) in expect.iter().enumerate() {
            let mut want = lits(&names.map(|v| v));
            let mut got = net.function(i).inputs.clone();
            want.sort();
            got.sort();
            assert_eq!(got, want, "x{}", i + 1);
        }
        assert_eq!(u, NodeSet::from_names([1, 2, 3, 10, 11]));
    }

    #[test]
    fn and_shift_k2_matches_two_two_listing() {
        let m = 3;
        let (net, u) = and_shift(2, m).unwrap();
        let n = 3 * m + 1;
        let ins = |i: usize| -> Vec<usize> {
            let mut v: Vec<usize> = net.in_neighbors(i - 1).iter().map(|j| j + 1).collect();
            v.sort();
            v
        };
        assert_eq!(ins(1), [2, 4]);
        assert_eq!(ins(2), [3, 2 * m + 2]);
        assert_eq!(ins(3), [1, 2]);
        assert_eq!(ins(4), [1, 3]);
        assert_eq!(ins(5), [4, 2 * m + 3]);
        assert_eq!(ins(6), [5, 2 * m + 3]);
        assert_eq!(ins(n), [2 * m + 1, 2 * m + 2]);
        assert_eq!(u.len(), m + 1);
        assert!(net.validate_kk(2).is_ok());
    }

    #[test]
    fn nc_shift_block_functions() {
        let (net, u) = nc_shift(5, 10).unwrap();
        assert_eq!(u, NodeSet::from_names([1, 6]));
        let f1 = net.function(0);
        assert_eq!(f1.inputs, lits(&[2, 1, 3, 4, 5]));
        let f10 = net.function(9);
        assert_eq!(f10.inputs, lits(&[6, 7, 8, 9, 10]));
        assert!(net.validate_kk(5).is_ok());
    }

    #[test]
    fn block_xor_k3_listing() {
        let (net, u) = block_xor(3, 2).unwrap();
        assert_eq!(u, NodeSet::from_names([1, 2, 3, 4]));
        assert_eq!(net.function(4).inputs, lits(&[2, 3, 4]));
        assert_eq!(net.function(7).inputs, lits(&[1, 2, 3]));
        assert_eq!(net.function(0).inputs, lits(&[6, 7, 8]));
        assert!(net.validate_kk(3).is_ok());
    }

    #[test]
    fn parameter_domains() {
        assert!(nc_shift(3, 10).is_err());
        assert!(and_shift(2, 1).is_err());
        assert!(block_xor(4, 2).is_err());
        assert!(paired_xor(5).is_err());
        assert!(star2_and(2).is_err());
        assert!(and_shift(3, 5).is_err());
    }
}
