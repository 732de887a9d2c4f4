//! JSON shapes for command output and schedule files.

use bnctl_core::bounds::{ceil, floor, to_f64, BoundEntry, BoundKind};
use bnctl_core::certify::{Certificate, Rule, Verdict};
use bnctl_core::search::SearchStats;
use bnctl_core::{
    BoundsReport, Construction, ControlSchedule, NodeSet, SearchResult, StateVector, Trajectory,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn node_name(i: usize) -> String {
    format!("x{}", i + 1)
}

pub fn node_names(set: NodeSet) -> Vec<String> {
    set.iter().map(node_name).collect()
}

/// Parses `x3,x4`, `3,4` or an empty string into a node set over `n` nodes.
pub fn parse_node_list(text: &str, n: usize) -> CliResult<NodeSet> {
    let mut set = NodeSet::EMPTY;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let digits = item.strip_prefix(['x', 'X']).unwrap_or(item);
        let name: usize = digits
            .parse()
            .map_err(|_| CliError::Usage(format!("bad node name {item:?}")))?;
        if name == 0 || name > n {
            return Err(CliError::Usage(format!("node {item} outside x1..x{n}")));
        }
        set.insert(name - 1);
    }
    Ok(set)
}

/// Parses a bit string with `x1` first, ignoring spaces and commas.
pub fn parse_state(text: &str, n: usize) -> CliResult<StateVector> {
    let vals: Vec<u8> = text
        .chars()
        .filter(|c| !matches!(c, ' ' | ',' | '_'))
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Usage(format!("bad state {text:?}: expected 0/1 digits"))),
        })
        .collect::<CliResult<_>>()?;
    if vals.len() != n {
        return Err(CliError::Usage(format!(
            "state {text:?} has {} bits, the network has {n} nodes",
            vals.len()
        )));
    }
    Ok(StateVector::from_values(&vals)?)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StatsJson {
    pub candidates_examined: u64,
    pub pruned_by_certificate: u64,
    pub pruned_by_bound: u64,
    pub controllability_checks: u64,
}

impl From<SearchStats> for StatsJson {
    fn from(s: SearchStats) -> Self {
        StatsJson {
            candidates_examined: s.candidates_examined,
            pruned_by_certificate: s.pruned_by_certificate,
            pruned_by_bound: s.pruned_by_bound,
            controllability_checks: s.controllability_checks,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SearchJson {
    pub n: usize,
    pub family: String,
    pub min_size: usize,
    pub witnesses: Vec<Vec<String>>,
    pub proven_minimal: bool,
    pub start_size: usize,
    /// Every witness passed a fresh controllability check.
    pub verified: bool,
    pub stats: StatsJson,
}

impl SearchJson {
    pub fn new(r: &SearchResult, verified: bool) -> Self {
        SearchJson {
            n: r.n,
            family: r.family.name().to_string(),
            min_size: r.size,
            witnesses: r.witnesses.iter().map(|&w| node_names(w)).collect(),
            proven_minimal: r.proven_minimal,
            start_size: r.start_size,
            verified,
            stats: r.stats.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InequalityJson {
    pub lhs: usize,
    pub relation: String,
    pub rhs: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub verdict: String,
    pub rule: Option<String>,
    pub nodes: Vec<String>,
    /// The inequality the rule needs; it does not hold.
    pub inequality: Option<InequalityJson>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let relation = if c.rule == Some(Rule::Multiplicity) { ">=" } else { "<=" };
        CertificateJson {
            verdict: match c.verdict {
                Verdict::NotControllable => "not-controllable",
                Verdict::Inconclusive => "inconclusive",
            }
            .to_string(),
            rule: c.rule.map(|r| r.name().to_string()),
            nodes: c.nodes.iter().map(|&i| node_name(i)).collect(),
            inequality: c.inequality.map(|q| InequalityJson {
                lhs: q.lhs,
                relation: relation.to_string(),
                rhs: q.rhs,
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckJson {
    pub controllable: bool,
    pub control: Vec<String>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundJson {
    pub id: String,
    pub kind: String,
    /// Exact rational such as `42/5`.
    pub value: String,
    pub decimal: f64,
    pub ceil: i64,
    pub floor: i64,
    pub applies: bool,
    pub note: String,
}

impl From<&BoundEntry> for BoundJson {
    fn from(e: &BoundEntry) -> Self {
        BoundJson {
            id: e.source.to_string(),
            kind: e.kind.name().to_string(),
            value: e.value.to_string(),
            decimal: to_f64(e.value),
            ceil: ceil(e.value),
            floor: floor(e.value),
            applies: e.applies,
            note: e.note.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundsJson {
    pub n: usize,
    pub k: Option<usize>,
    pub family: String,
    pub negated: bool,
    pub t_star: Option<usize>,
    pub entries: Vec<BoundJson>,
    pub warnings: Vec<String>,
}

impl BoundsJson {
    pub fn new(r: &BoundsReport, t_star: Option<usize>) -> Self {
        BoundsJson {
            n: r.n,
            k: r.k,
            family: r.family.name().to_string(),
            negated: r.negated,
            t_star,
            entries: r.entries.iter().map(BoundJson::from).collect(),
            warnings: r.warnings.clone(),
        }
    }

    pub fn entry(&self, id: &str) -> Option<&BoundJson> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// `id=value` for every applicable general upper bound, `;`-separated.
pub fn upper_list(r: &BoundsReport) -> String {
    r.entries
        .iter()
        .filter(|e| e.kind == BoundKind::GeneralUpper && e.applies)
        .map(|e| format!("{}={}", e.source, e.value))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScheduleFile {
    pub control: Vec<String>,
    /// One bit string per step, `x1` first.
    pub masks: Vec<String>,
}

impl ScheduleFile {
    pub fn new(s: &ControlSchedule) -> Self {
        ScheduleFile {
            control: node_names(s.control_set()),
            masks: s.masks().iter().map(|m| m.to_string()).collect(),
        }
    }

    pub fn to_schedule(&self, n: usize) -> CliResult<ControlSchedule> {
        let control = parse_node_list(&self.control.join(","), n)?;
        let masks = self
            .masks
            .iter()
            .map(|m| parse_state(m, n))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ControlSchedule::new(control, masks)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConstructionJson {
    pub kind: String,
    pub description: String,
    pub control: Vec<String>,
    pub horizon: Option<usize>,
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleFile>,
}

impl ConstructionJson {
    pub fn new(c: &Construction, schedule: Option<&ControlSchedule>) -> Self {
        ConstructionJson {
            kind: c.kind.to_string(),
            description: c.describe(),
            control: node_names(c.control),
            horizon: c.horizon,
            degree: c.degree,
            schedule: schedule.map(ScheduleFile::new),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrajectoryJson {
    pub horizon: usize,
    pub states: Vec<String>,
    pub reached: Option<bool>,
}

impl TrajectoryJson {
    pub fn new(t: &Trajectory, target: Option<StateVector>) -> Self {
        TrajectoryJson {
            horizon: t.states().len() - 1,
            states: t.states().iter().map(|s| s.to_string()).collect(),
            reached: target.map(|xt| t.last() == xt),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types always serialize")
}
