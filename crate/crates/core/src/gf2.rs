//! Affine maps over GF(2) and linear control synthesis for XOR networks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::ControlSchedule;
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Family};
use crate::state::{full_mask, NodeSet, StateVector};

#[inline]
fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// `x ↦ A·x ⊕ c`, with row `i` of `A` packed in `rows[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub n: usize,
    pub rows: Vec<u32>,
    pub c: u32,
}

impl AffineMap {
    pub fn linear(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |y, (i, &r)| y | parity(r & x) << i)
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.linear(x) ^ self.c
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }
}

/// GF(2) rank of a set of packed vectors.
pub fn rank(vectors: &[u32]) -> usize {
    let mut basis = [0u32; 32];
    let mut r = 0;
    for &v in vectors {
        if insert(&mut basis, v) {
            r += 1;
        }
    }
    r
}

/// Reduces `v` against a leading-bit-indexed basis; adds it if independent.
fn insert(basis: &mut [u32; 32], mut v: u32) -> bool {
    while v != 0 {
        let top = 31 - v.leading_zeros() as usize;
        if basis[top] == 0 {
            basis[top] = v;
            return true;
        }
        v ^= basis[top];
    }
    false
}

/// Extracts the affine form of an XOR network and checks it against `step`.
pub fn to_affine_gf2(net: &BooleanNetwork) -> Result<AffineMap> {
    if net.family() != Family::Xor {
        return Err(Error::NotApplicable(format!(
            "affine extraction needs an XOR network, got {}",
            net.family()
        )));
    }
    let n = net.n();
    let mut rows = Vec::with_capacity(n);
    let mut c = 0u32;
    for (i, f) in net.functions().iter().enumerate() {
        rows.push(f.input_mask());
        let negs = f.inputs.iter().filter(|l| l.negated).count() as u32;
        c |= (negs & 1) << i;
    }
    let map = AffineMap { n, rows, c };

    let check = |x: u32| -> Result<()> {
        if map.apply(x) != net.step_bits(x) {
            return Err(Error::MalformedNetwork(format!(
                "affine form disagrees with step at state {x:#x}"
            )));
        }
        Ok(())
    };
    if n <= 12 {
        for x in 0..1u32 << n {
            check(x)?;
        }
    } else {
        check(0)?;
        for j in 0..n {
            check(1 << j)?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6166_6669_6e65);
        for _ in 0..64 {
            check(rng.gen::<u32>() & full_mask(n))?;
        }
    }
    Ok(map)
}

/// Columns `A^p e_j` for `p < horizon`, `j ∈ control`, keyed by `(p, j)`.
fn power_columns(map: &AffineMap, control: NodeSet, horizon: usize) -> Vec<Vec<u32>> {
    control
        .iter()
        .map(|j| {
            let mut col = Vec::with_capacity(horizon);
            let mut v = 1u32 << j;
            for _ in 0..horizon {
                col.push(v);
                v = map.linear(v);
            }
            col
        })
        .collect()
}

/// Smallest `T` with `rank[B, AB, …, A^{T−1}B] = n`, i.e. the first horizon at
/// which every state pair is connected in exactly `T` steps. `None` if the
/// reachable subspace saturates below `n`.
pub fn controllability_index(map: &AffineMap, control: NodeSet) -> Option<usize> {
    let n = map.n;
    let mut basis = [0u32; 32];
    let mut r = 0;
    let mut frontier: Vec<u32> = control.iter().map(|j| 1u32 << j).collect();
    for t in 1..=n.max(1) {
        let mut grew = false;
        for &v in &frontier {
            if insert(&mut basis, v) {
                r += 1;
                grew = true;
            }
        }
        if r == n {
            return Some(t);
        }
        if !grew {
            return None;
        }
        for v in frontier.iter_mut() {
            *v = map.linear(*v);
        }
    }
    None
}

/// Solves for controls driving `x0` to `xT` in exactly `horizon` steps.
///
/// Returns the lexicographically smallest control vector, ordered by time
/// step and then node index, or `None` when the horizon is infeasible.
pub fn solve_linear_schedule(
    map: &AffineMap,
    control: NodeSet,
    x0: StateVector,
    xt: StateVector,
    horizon: usize,
) -> Result<Option<ControlSchedule>> {
    let n = map.n;
    for s in [x0, xt] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    control.check_within(n)?;

    // Free evolution: A^T x0 ⊕ Σ A^{T−1−s} c.
    let mut free = x0.bits();
    for _ in 0..horizon {
        free = map.apply(free);
    }
    let target = xt.bits() ^ free;

    let nodes: Vec<usize> = control.iter().collect();
    let width = nodes.len();
    let unknowns = horizon * width;
    let powers = power_columns(map, control, horizon);
    let column = |q: usize| -> u32 {
        let (s, idx) = (q / width, q % width);
        powers[idx][horizon - 1 - s]
    };

    // Pivot on later columns first so earlier unknowns stay free and zero.
    let mut basis: Vec<Option<(u32, FixedBitSet)>> = vec![None; 32];
    let mut rank = 0;
    for q in (0..unknowns).rev() {
        if rank == n {
            break;
        }
        let mut v = column(q);
        let mut combo = FixedBitSet::with_capacity(unknowns);
        combo.insert(q);
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            match &basis[top] {
                Some((bv, bc)) => {
                    v ^= *bv;
                    combo.symmetric_difference_with(bc);
                }
                None => {
                    basis[top] = Some((v, combo));
                    rank += 1;
                    break;
                }
            }
        }
    }

    let mut r = target;
    let mut chosen = FixedBitSet::with_capacity(unknowns);
    while r != 0 {
        let top = 31 - r.leading_zeros() as usize;
        match &basis[top] {
            Some((bv, bc)) => {
                r ^= *bv;
                chosen.symmetric_difference_with(bc);
            }
            None => return Ok(None),
        }
    }

    let mut masks = vec![0u32; horizon];
    for q in chosen.ones() {
        masks[q / width] |= 1 << nodes[q % width];
    }

    let mut x = x0.bits();
    for &m in &masks {
        x = map.apply(x) ^ m;
    }
    if x != xt.bits() {
        return Err(Error::NotApplicable(format!(
            "linear solve produced controls ending at {x:#x} instead of {:#x}",
            xt.bits()
        )));
    }
    let masks = masks
        .into_iter()
        .map(|m| StateVector::from_raw(n, m))
        .collect();
    ControlSchedule::new(control, masks).map(Some)
}
