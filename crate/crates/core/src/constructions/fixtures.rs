//! Fixed worked-example networks.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{lits, BooleanNetwork, Literal, NcLayer, NodeFunction};
use crate::state::NodeSet;

/// Worked-example networks, addressable by their short ids `1`..`9` and `R1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// 2-2 XOR, n = 6, the network with no single-node control set.
    XorSixA,
    /// 2-2 XOR, n = 6, synthesis gives an empty W.
    XorSixB,
    /// 2-2 XOR, n = 4, controllable from `x3` alone.
    XorFour,
    /// 3-3 AND shift register, n = 11.
    AndShift3x2,
    /// 2-2 AND with negations, n = 7.
    AndNegSeven,
    /// 4-4 AND with negations, every node in M_1, n = 15.
    AndNegUniform,
    /// 4-4 AND with negations, M_1 and M_2 both populated, n = 15.
    AndNegMixed,
    /// 5-5 NC shift register, n = 10.
    NcShift5x2,
    /// 3-3 NC with positive self-literals, n = 5; needs every node.
    NcSelfLoop5,
    /// 2-2 AND on 13 nodes used to illustrate the V_p / W_p grading.
    AndThirteen,
}

impl Fixture {
    pub const ALL: [Fixture; 10] = [
        Fixture::XorSixA,
        Fixture::XorSixB,
        Fixture::XorFour,
        Fixture::AndShift3x2,
        Fixture::AndNegSeven,
        Fixture::AndNegUniform,
        Fixture::AndNegMixed,
        Fixture::NcShift5x2,
        Fixture::NcSelfLoop5,
        Fixture::AndThirteen,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Fixture::XorSixA => "1",
            Fixture::XorSixB => "2",
            Fixture::XorFour => "3",
            Fixture::AndShift3x2 => "4",
            Fixture::AndNegSeven => "5",
            Fixture::AndNegUniform => "6",
            Fixture::AndNegMixed => "7",
            Fixture::NcShift5x2 => "8",
            Fixture::NcSelfLoop5 => "9",
            Fixture::AndThirteen => "R1",
        }
    }

    pub fn from_id(id: &str) -> Option<Fixture> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(id.trim()))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::from_id(s).ok_or_else(|| {
            Error::InvalidParameters(alloc::format!("unknown example id {s:?}; expected 1..9 or R1"))
        })
    }
}

fn net_of(connective: fn(Vec<Literal>) -> NodeFunction, rows: &[&[i32]]) -> BooleanNetwork {
    let fs = rows.iter().map(|r| connective(lits(r))).collect();
    BooleanNetwork::new(fs).expect("fixture networks are well formed")
}

pub(crate) fn xor_six_a() -> BooleanNetwork {
    net_of(
        NodeFunction::xor,
        &[&[1, 3], &[1, 3], &[2, 4], &[2, 5], &[4, 6], &[5, 6]],
    )
}

pub(crate) fn xor_six_b() -> BooleanNetwork {
    net_of(
        NodeFunction::xor,
        &[&[1, 3], &[2, 4], &[1, 5], &[2, 6], &[3, 5], &[4, 6]],
    )
}

pub(crate) fn xor_four() -> BooleanNetwork {
    net_of(NodeFunction::xor, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
}

pub(crate) fn and_neg_seven() -> BooleanNetwork {
    net_of(
        NodeFunction::and,
        &[
            &[-2, 4],
            &[3, -6],
            &[-1, 2],
            &[1, -3],
            &[-4, 7],
            &[5, -7],
            &[-5, 6],
        ],
    )
}

pub(crate) fn and_neg_uniform() -> BooleanNetwork {
    net_of(
        NodeFunction::and,
        &[
            &[-5, 6, 7, -8],
            &[-5, 6, 7, -8],
            &[-5, 6, 7, -8],
            &[1, -2, 3, 12],
            &[-1, 2, -3, -4],
            &[-2, 3, 4, 5],
            &[1, 3, 4, -6],
            &[1, -2, 4, -7],
            &[8, 13, 14, 15],
            &[-9, 13, 14, 15],
            &[-10, 13, 14, 15],
            &[11, -13, -14, -15],
            &[9, 10, -11, -12],
            &[9, 10, -11, -12],
            &[9, 10, -11, -12],
        ],
    )
}

pub(crate) fn and_neg_mixed() -> BooleanNetwork {
    net_of(
        NodeFunction::and,
        &[
            &[-5, 6, -7, 8],
            &[-5, -6, 7, -8],
            &[5, -6, -7, -8],
            &[-1, 2, -3, 4],
            &[-1, 2, -3, 4],
            &[-2, 3, 5, 12],
            &[1, 3, -4, 6],
            &[1, -2, -4, 7],
            &[8, 13, -14, 15],
            &[9, 13, -14, 15],
            &[10, 13, -14, 15],
            &[11, -13, 14, -15],
            &[-9, 10, -11, -12],
            &[-9, -10, 11, 12],
            &[9, -10, -11, -12],
        ],
    )
}

/// `x_i = x_i ∨ (¬x_{i+1} ∧ ¬x_{i+2})`, indices mod 5.
pub(crate) fn nc_self_loop5() -> BooleanNetwork {
    let fs = (0..5)
        .map(|i| {
            let layer = |node: usize, output: bool| NcLayer {
                literal: Literal::pos(node % 5),
                output,
            };
            NodeFunction::nested(
                alloc::vec![layer(i, true), layer(i + 1, false), layer(i + 2, false)],
                true,
            )
        })
        .collect();
    BooleanNetwork::new(fs).expect("fixture networks are well formed")
}

pub(crate) fn and_thirteen() -> BooleanNetwork {
    net_of(
        NodeFunction::and,
        &[
            &[2, 3],
            &[4, 8],
            &[1, 9],
            &[1, 10],
            &[7, 11],
            &[7, 12],
            &[2, 5],
            &[3, 5],
            &[4, 6],
            &[6, 8],
            &[9, 13],
            &[10, 13],
            &[11, 12],
        ],
    )
}

/// Designated control sets for the fixtures that are not parametric families.
pub(crate) fn designated_control(f: Fixture) -> NodeSet {
    match f {
        Fixture::XorSixA => NodeSet::from_names([1, 2, 3, 5, 6]),
        Fixture::XorSixB => NodeSet::from_names([1, 2, 5, 6]),
        Fixture::XorFour => NodeSet::from_names([3]),
        Fixture::AndNegSeven => NodeSet::from_names([3, 4, 5, 7]),
        Fixture::AndNegUniform => NodeSet::from_names([1, 2, 3, 5, 12, 13, 14, 15]),
        Fixture::AndNegMixed => NodeSet::from_names([1, 2, 3, 4, 5, 12, 13, 14, 15]),
        Fixture::NcSelfLoop5 => NodeSet::all(5),
        Fixture::AndThirteen => NodeSet::from_names(7..=13),
        Fixture::AndShift3x2 | Fixture::NcShift5x2 => NodeSet::EMPTY,
    }
}

/// Desired value of control node `node` (0-based) at time `t`, for the
/// fixtures whose schedules are given node by node. `xt` is the target.
pub(crate) fn hand_schedule(f: Fixture, t: usize, node: usize, xt: &dyn Fn(usize) -> bool) -> bool {
    // 1-based target lookup keeps the tables readable.
    let tgt = |name: usize| xt(name - 1);
    let name = node + 1;
    match f {
        Fixture::AndNegSeven => match (t, name) {
            (4, _) => tgt(name),
            (_, 3..=5) => true,
            (1, 7) => !tgt(1),
            (2, 7) => tgt(2),
            (3, 7) => !tgt(6),
            _ => unreachable!("x{name} is not a control node"),
        },
        // The chain x5 → x6 → x7 → x8 → x9 → x10 → x11 needs seven steps
        // to carry x5's signal from t = 1 into x11, so the last target
        // reaches x11 at t = 8.
        Fixture::AndNegUniform => match (t, name) {
            (8, _) => tgt(name),
            (_, 1 | 3 | 13 | 14 | 15) => true,
            (_, 2) => false,
            (7, 12) => tgt(4),
            (_, 12) => true,
            (1, 5) => false,
            (2, 5) => tgt(11),
            (3, 5) => !tgt(10),
            (4, 5) => tgt(9),
            (5, 5) => tgt(8),
            (6, 5) => !tgt(7),
            (7, 5) => tgt(6),
            _ => unreachable!("x{name} is not a control node"),
        },
        Fixture::AndNegMixed => match (t, name) {
            (7, _) => tgt(name),
            (_, 1 | 3 | 5 | 13 | 15) => true,
            (_, 2 | 4 | 14) => false,
            (_, 12) => tgt(12 - t),
            _ => unreachable!("x{name} is not a control node"),
        },
        Fixture::NcSelfLoop5 => tgt(name),
        _ => unreachable!("fixture {f} has no hand schedule"),
    }
}

pub(crate) fn hand_horizon(f: Fixture) -> Option<usize> {
    match f {
        Fixture::AndNegSeven => Some(4),
        Fixture::AndNegUniform => Some(8),
        Fixture::AndNegMixed => Some(7),
        Fixture::NcSelfLoop5 => Some(1),
        _ => None,
    }
}

pub(crate) fn describe(f: Fixture) -> String {
    String::from(match f {
        Fixture::XorSixA => "2-2 XOR, n=6",
        Fixture::XorSixB => "2-2 XOR, n=6, empty W",
        Fixture::XorFour => "2-2 XOR, n=4",
        Fixture::AndShift3x2 => "3-3 AND shift register, n=11",
        Fixture::AndNegSeven => "2-2 AND with negation, n=7",
        Fixture::AndNegUniform => "4-4 AND with negation, n=15, |M1|=15",
        Fixture::AndNegMixed => "4-4 AND with negation, n=15, |M1|=3, |M2|=12",
        Fixture::NcShift5x2 => "5-5 NC shift register, n=10",
        Fixture::NcSelfLoop5 => "3-3 NC with self-literals, n=5",
        Fixture::AndThirteen => "2-2 AND, n=13",
    })
}
