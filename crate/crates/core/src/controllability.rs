//! Exact controllability over the controlled state-transition graph.
//!
//! With controls on `U`, the successors of `s` are exactly the states that
//! agree with `step(s)` outside `U`. Most sweeps therefore work on the
//! "key" `step(s) & !U` instead of listing `2^|U|` edges per state.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::state::{full_mask, submasks, NodeSet, StateVector};

/// Largest network for whole-state-space operations.
pub const STATE_SPACE_CAP: usize = 20;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// The uncontrolled step of every state, shared by all control sets.
#[derive(Debug, Clone)]
pub struct StateSpace {
    n: usize,
    table: Vec<u32>,
}

impl StateSpace {
    pub fn new(net: &BooleanNetwork) -> Result<Self> {
        check_cap(net.n(), STATE_SPACE_CAP)?;
        Ok(StateSpace {
            n: net.n(),
            table: net.step_table(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn size(&self) -> usize {
        1 << self.n
    }

    #[inline]
    fn key(&self, s: u32, control: u32) -> u32 {
        self.table[s as usize] & !control
    }

    /// Strong connectivity via one forward and one backward sweep from 0.
    pub fn is_controllable(&self, control: NodeSet) -> bool {
        let u = control.mask() & full_mask(self.n);
        self.forward_covers_all(u) && self.backward_covers_all(u)
    }

    fn forward_covers_all(&self, u: u32) -> bool {
        let size = self.size();
        let mut seen = FixedBitSet::with_capacity(size);
        let mut keys = FixedBitSet::with_capacity(size);
        let mut stack = vec![0u32];
        seen.insert(0);
        let mut count = 1usize;
        while let Some(s) = stack.pop() {
            let k = self.key(s, u);
            if keys.put(k as usize) {
                continue;
            }
            for m in submasks(u) {
                let z = (k | m) as usize;
                if !seen.put(z) {
                    count += 1;
                    stack.push(z as u32);
                }
            }
        }
        count == size
    }

    fn backward_covers_all(&self, u: u32) -> bool {
        let size = self.size();
        // Bucket states by the key of their successor coset.
        let mut start = vec![0u32; size + 1];
        for s in 0..size {
            start[self.key(s as u32, u) as usize + 1] += 1;
        }
        for i in 0..size {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut members = vec![0u32; size];
        for s in 0..size {
            let k = self.key(s as u32, u) as usize;
            members[fill[k] as usize] = s as u32;
            fill[k] += 1;
        }

        let mut seen = FixedBitSet::with_capacity(size);
        let mut keys = FixedBitSet::with_capacity(size);
        let mut stack = vec![0u32];
        seen.insert(0);
        let mut count = 1usize;
        while let Some(z) = stack.pop() {
            let k = (z & !u) as usize;
            if keys.put(k) {
                continue;
            }
            for &s in &members[start[k] as usize..start[k + 1] as usize] {
                if !seen.put(s as usize) {
                    count += 1;
                    stack.push(s);
                }
            }
        }
        count == size
    }

    /// States reachable in exactly one step from any state of `from`.
    fn image(&self, from: &FixedBitSet, u: u32) -> FixedBitSet {
        let size = self.size();
        let mut keys = FixedBitSet::with_capacity(size);
        for s in from.ones() {
            keys.insert(self.key(s as u32, u) as usize);
        }
        let mut out = FixedBitSet::with_capacity(size);
        for k in keys.ones() {
            for m in submasks(u) {
                out.insert(k | m as usize);
            }
        }
        out
    }

    pub fn reachable_at(&self, control: NodeSet, x0: u32, t: usize) -> Vec<u32> {
        let u = control.mask();
        let mut cur = FixedBitSet::with_capacity(self.size());
        cur.insert(x0 as usize);
        for _ in 0..t {
            let next = self.image(&cur, u);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur.ones().map(|s| s as u32).collect()
    }

    /// Smallest `t` such that every ordered pair is connected by a path of
    /// length exactly `t`, searching `t <= t_cap`.
    pub fn t_star(&self, control: NodeSet, t_cap: usize) -> Option<usize> {
        if !self.is_controllable(control) {
            return None;
        }
        let u = control.mask();
        let size = self.size();
        // Rows only depend on the successor coset of x0.
        let mut row_keys = FixedBitSet::with_capacity(size);
        for s in 0..size as u32 {
            row_keys.insert(self.key(s, u) as usize);
        }
        let mut worst = 1usize;
        for k in row_keys.ones() {
            let mut cur = FixedBitSet::with_capacity(size);
            for m in submasks(u) {
                cur.insert(k | m as usize);
            }
            // Brent cycle detection on the sequence of reachable sets.
            let mut saved = cur.clone();
            let mut power = 1usize;
            let mut lam = 0usize;
            let mut t = 1usize;
            loop {
                if cur.count_ones(..) == size {
                    break;
                }
                if t >= t_cap {
                    return None;
                }
                cur = self.image(&cur, u);
                t += 1;
                lam += 1;
                if cur == saved {
                    // Periodic without ever covering everything.
                    return None;
                }
                if lam == power {
                    saved = cur.clone();
                    power *= 2;
                    lam = 0;
                }
            }
            worst = worst.max(t);
        }
        Some(worst)
    }

    /// Explicit successor list with duplicates removed.
    fn successors(&self, s: u32, u: u32) -> impl Iterator<Item = u32> + '_ {
        let base = self.table[s as usize];
        submasks(u).map(move |m| base ^ m)
    }

    /// Strong connectivity by Tarjan's algorithm on the explicit graph.
    pub fn is_strongly_connected_tarjan(&self, control: NodeSet) -> bool {
        self.scc_count(control) == 1
    }

    /// Number of strongly connected components, iterative Tarjan.
    pub fn scc_count(&self, control: NodeSet) -> usize {
        let u = control.mask();
        let size = self.size();
        const UNSEEN: u32 = u32::MAX;
        let mut index = vec![UNSEEN; size];
        let mut low = vec![0u32; size];
        let mut on_stack = FixedBitSet::with_capacity(size);
        let mut stack: Vec<u32> = Vec::new();
        let mut next_index = 0u32;
        let mut components = 0usize;
        let succ: Vec<Vec<u32>> = (0..size as u32)
            .map(|s| self.successors(s, u).collect())
            .collect();

        for root in 0..size as u32 {
            if index[root as usize] != UNSEEN {
                continue;
            }
            let mut call: Vec<(u32, usize)> = vec![(root, 0)];
            index[root as usize] = next_index;
            low[root as usize] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack.insert(root as usize);
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let vs = v as usize;
                if *pos < succ[vs].len() {
                    let w = succ[vs][*pos];
                    *pos += 1;
                    let ws = w as usize;
                    if index[ws] == UNSEEN {
                        index[ws] = next_index;
                        low[ws] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack.insert(ws);
                        call.push((w, 0));
                    } else if on_stack.contains(ws) {
                        low[vs] = low[vs].min(index[ws]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        let p = parent as usize;
                        low[p] = low[p].min(low[vs]);
                    }
                    if low[vs] == index[vs] {
                        components += 1;
                        while let Some(w) = stack.pop() {
                            on_stack.set(w as usize, false);
                            if w == v {
                                break;
                            }
                        }
                    }
                }
            }
        }
        components
    }
}

fn check_state(net: &BooleanNetwork, x: StateVector) -> Result<()> {
    if x.len() != net.n() {
        return Err(Error::DimensionMismatch {
            expected: net.n(),
            found: x.len(),
        });
    }
    Ok(())
}

pub fn is_controllable(net: &BooleanNetwork, control: NodeSet) -> Result<bool> {
    control.check_within(net.n())?;
    Ok(StateSpace::new(net)?.is_controllable(control))
}

/// Shortest `t >= 1` with `xT` reachable from `x0`, by plain BFS over every
/// control mask. Independent of the coset shortcut used elsewhere.
pub fn pair_reach_oracle(
    net: &BooleanNetwork,
    control: NodeSet,
    x0: StateVector,
    xt: StateVector,
    t_max: usize,
) -> Result<Option<usize>> {
    check_cap(net.n(), STATE_SPACE_CAP)?;
    check_state(net, x0)?;
    check_state(net, xt)?;
    control.check_within(net.n())?;
    let size = 1usize << net.n();
    let masks: Vec<u32> = (0..size as u32).filter(|m| m & !control.mask() == 0).collect();
    let mut dist = vec![usize::MAX; size];
    let mut queue = VecDeque::new();
    let first = net.step_bits(x0.bits());
    for &m in &masks {
        let z = (first ^ m) as usize;
        if dist[z] == usize::MAX {
            dist[z] = 1;
            queue.push_back(z as u32);
        }
    }
    while let Some(s) = queue.pop_front() {
        let d = dist[s as usize];
        if s == xt.bits() {
            return Ok((d <= t_max).then_some(d));
        }
        if d >= t_max {
            continue;
        }
        let y = net.step_bits(s);
        for &m in &masks {
            let z = (y ^ m) as usize;
            if dist[z] == usize::MAX {
                dist[z] = d + 1;
                queue.push_back(z as u32);
            }
        }
    }
    Ok(None)
}

/// Exactly the states reachable in `t` controlled steps, sorted.
pub fn reachable_at(
    net: &BooleanNetwork,
    control: NodeSet,
    x0: StateVector,
    t: usize,
) -> Result<Vec<StateVector>> {
    check_state(net, x0)?;
    control.check_within(net.n())?;
    let space = StateSpace::new(net)?;
    Ok(space
        .reachable_at(control, x0.bits(), t)
        .into_iter()
        .map(|s| StateVector::from_raw(net.n(), s))
        .collect())
}

/// Minimum horizon connecting every ordered pair in exactly `t` steps.
/// `t_cap` defaults to `2^n`.
pub fn t_star(net: &BooleanNetwork, control: NodeSet, t_cap: Option<usize>) -> Result<Option<usize>> {
    control.check_within(net.n())?;
    let space = StateSpace::new(net)?;
    Ok(space.t_star(control, t_cap.unwrap_or(1 << net.n())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{lits, NodeFunction};

    fn example3() -> BooleanNetwork {
        BooleanNetwork::new(vec![
            NodeFunction::xor(lits(&[1, 3])),
            NodeFunction::xor(lits(&[1, 4])),
            NodeFunction::xor(lits(&[2, 3])),
            NodeFunction::xor(lits(&[2, 4])),
        ])
        .unwrap()
    }

    #[test]
    fn example3_single_control() {
        let net = example3();
        assert!(is_controllable(&net, NodeSet::from_names([3])).unwrap());
        assert!(!is_controllable(&net, NodeSet::from_names([1])).unwrap());
        assert_eq!(t_star(&net, NodeSet::from_names([3]), None).unwrap(), Some(4));
    }

    #[test]
    fn full_control_is_one_step() {
        let net = example3();
        let all = NodeSet::all(4);
        assert!(is_controllable(&net, all).unwrap());
        assert_eq!(t_star(&net, all, None).unwrap(), Some(1));
    }

    #[test]
    fn oracle_distances() {
        let net = example3();
        let u = NodeSet::from_names([3]);
        let zero = StateVector::zeros(4).unwrap();
        let ones = StateVector::ones(4).unwrap();
        assert_eq!(pair_reach_oracle(&net, u, zero, ones, 64).unwrap(), Some(4));
        let bad = StateVector::from_values(&[1, 1, 0, 1]).unwrap();
        assert_eq!(
            pair_reach_oracle(&net, NodeSet::from_names([1]), zero, bad, 512).unwrap(),
            None
        );
        let x0 = StateVector::new(4, 0b0110).unwrap();
        let next = crate::dynamics::step(&net, x0).unwrap();
        assert_eq!(pair_reach_oracle(&net, NodeSet::EMPTY, x0, next, 1).unwrap(), Some(1));
    }

    #[test]
    fn reachable_at_zero_is_start() {
        let net = example3();
        let x0 = StateVector::new(4, 0b1001).unwrap();
        let r = reachable_at(&net, NodeSet::from_names([3]), x0, 0).unwrap();
        assert_eq!(r, vec![x0]);
        let r4 = reachable_at(&net, NodeSet::from_names([3]), x0, 4).unwrap();
        assert_eq!(r4.len(), 16);
    }

    #[test]
    fn tarjan_agrees_with_sweeps() {
        let net = example3();
        let space = StateSpace::new(&net).unwrap();
        for u in 0..16u32 {
            let set = NodeSet(u);
            assert_eq!(space.is_controllable(set), space.is_strongly_connected_tarjan(set));
        }
    }

    #[test]
    fn cap_enforced() {
        let fs = (0..21).map(|i| NodeFunction::xor(lits(&[i + 1]))).collect();
        let net = BooleanNetwork::new(fs).unwrap();
        assert!(matches!(
            is_controllable(&net, NodeSet::EMPTY),
            Err(Error::CapExceeded { n: 21, cap: 20 })
        ));
    }
}
