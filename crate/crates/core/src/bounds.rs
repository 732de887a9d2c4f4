//! Closed-form bounds on the minimum control set size, as exact rationals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Family};

pub type Rational = Ratio<i64>;

fn r(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den as i64)
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

pub fn ceil(v: Rational) -> i64 {
    v.ceil().to_integer()
}

pub fn floor(v: Rational) -> i64 {
    v.floor().to_integer()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    GeneralLower,
    GeneralUpper,
    BestCaseUpper,
    WorstCaseLower,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::GeneralLower => "general-lower",
            BoundKind::GeneralUpper => "general-upper",
            BoundKind::BestCaseUpper => "best-case-upper",
            BoundKind::WorstCaseLower => "worst-case-lower",
        }
    }

    /// Existential entries describe specific constructed families only.
    pub fn is_reference(self) -> bool {
        matches!(self, BoundKind::BestCaseUpper | BoundKind::WorstCaseLower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub value: Rational,
    pub source: &'static str,
    pub note: String,
    /// False when the entry's preconditions on `n` do not hold.
    pub applies: bool,
}

impl BoundEntry {
    fn new(kind: BoundKind, value: Rational, source: &'static str, note: String, applies: bool) -> Self {
        let note = if kind.is_reference() {
            format!("reference (existential); {note}")
        } else {
            note
        };
        BoundEntry {
            kind,
            value,
            source,
            note,
            applies,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub family: Family,
    pub negated: bool,
    pub n: usize,
    pub k: Option<usize>,
    pub entries: Vec<BoundEntry>,
    pub warnings: Vec<String>,
}

impl BoundsReport {
    /// Largest general lower bound, if any.
    pub fn general_lower(&self) -> Option<Rational> {
        self.entries
            .iter()
            .filter(|e| e.kind == BoundKind::GeneralLower)
            .map(|e| e.value)
            .max()
    }

    pub fn general_uppers(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.kind == BoundKind::GeneralUpper)
    }

    pub fn entry(&self, source: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.source == source)
    }
}

/// One line per entry: `id kind value ceil/floor note`.
impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let rounded = match e.kind {
                BoundKind::GeneralLower | BoundKind::WorstCaseLower => format!("ceil={}", ceil(e.value)),
                _ => format!("floor={}", floor(e.value)),
            };
            writeln!(
                f,
                "{:<14} {:<17} {:>8} {:<9} {}",
                e.source,
                e.kind.name(),
                format!("{}", e.value),
                rounded,
                e.note
            )?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Lower bound for k-k AND/OR networks with literal multiplicities.
///
/// `m[j - 1]` is |M_j| for `j = 1..=⌊k/2⌋`; missing entries count as zero.
pub fn beta_lower_bound(n: usize, k: usize, m: &[usize]) -> Result<Rational> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("degree bound needs k >= 2, got {k}")));
    }
    let half = k / 2;
    if m.iter().skip(half).any(|&v| v != 0) {
        return Err(Error::InconsistentMultiplicities(format!(
            "|M_j| given for j > {half} = ⌊k/2⌋"
        )));
    }
    let total: usize = m.iter().sum();
    if total > n {
        return Err(Error::InconsistentMultiplicities(format!(
            "Σ|M_j| = {total} exceeds n = {n}"
        )));
    }
    let mj = |j: usize| if j >= 1 && j <= m.len() { m[j - 1] } else { 0 };

    let mut best = Rational::zero();
    for l in 1..=half + 1 {
        let den = 2 * k - l;
        let weighted: usize = (1..=l.saturating_sub(2)).map(|j| j * mj(j)).sum();
        let tail: usize = (l.saturating_sub(1).max(1)..=half).map(mj).sum();
        let value = r((k - l) * n, den) + r(weighted, den) + r((l - 1) * tail, den);
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

/// `(k−1)/(2k−1)·n` for simple k-k AND/OR networks.
pub fn simple_and_lower(n: usize, k: usize) -> Rational {
    r((k - 1) * n, 2 * k - 1)
}

/// `[1 − (k−1)/(k(k²−k+1))]·n` for k-k XOR networks.
pub fn xor_synthesis_upper(n: usize, k: usize) -> Rational {
    let d = k * (k * k - k + 1);
    int(n) * (Rational::from_integer(1) - r(k - 1, d))
}

fn synthesis_precondition(n: usize, k: usize) -> (bool, String) {
    let block = k * (k - 1) + 1;
    let ok = n.is_multiple_of(block) && (n / block).is_multiple_of(k);
    let note = format!(
        "synthesis size; needs n = {block}m with m mod {k} = 0 (the looser n mod {k} = 0 reading is not used){}",
        if ok { "" } else { "; not met for this n" }
    );
    (ok, note)
}

pub fn xor_bounds(n: usize, k: usize, t_star: Option<usize>) -> Result<Vec<BoundEntry>> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("XOR bounds need k >= 2, got {k}")));
    }
    if t_star == Some(0) {
        return Err(Error::InvalidParameters(String::from("t* must be at least 1")));
    }
    let mut out = Vec::new();
    let (ok, note) = synthesis_precondition(n, k);
    out.push(BoundEntry::new(
        BoundKind::GeneralUpper,
        xor_synthesis_upper(n, k),
        "thm4-upper",
        note,
        ok,
    ));
    if let Some(t) = t_star {
        out.push(BoundEntry::new(
            BoundKind::GeneralLower,
            r(n, t),
            "thm3-lower",
            format!("n/t* with t* = {t}"),
            true,
        ));
        out.push(BoundEntry::new(
            BoundKind::GeneralUpper,
            int(n + 1).max(int(t)) - int(t),
            "thm3-upper",
            format!("n - t* + 1 with t* = {t}"),
            t <= n + 1,
        ));
    }
    if k == 2 {
        let even = n.is_multiple_of(2);
        out.push(BoundEntry::new(
            BoundKind::BestCaseUpper,
            r(n, 2),
            "prop2-best",
            String::from(if even {
                "paired XOR family, n even"
            } else {
                "paired XOR family needs even n; not met"
            }),
            even,
        ));
    } else if k % 2 == 1 {
        let ok = n.is_multiple_of(k + 1);
        out.push(BoundEntry::new(
            BoundKind::BestCaseUpper,
            int(k + 1),
            "thm-oddk-best",
            format!(
                "block XOR family, needs n = {}m{}",
                k + 1,
                if ok { "" } else { "; not met" }
            ),
            ok,
        ));
    }
    Ok(out)
}

/// General lower bound usable to start an exact search, if one is proven
/// for this network class.
pub fn search_lower_bound(net: &BooleanNetwork) -> Option<Rational> {
    let k = net.regular_degree()?;
    match net.family() {
        Family::And | Family::Or if k >= 2 => {
            let table = net.literal_multiplicities().ok()?;
            let m: Vec<usize> = (1..=k / 2).map(|j| table.m(j)).collect();
            beta_lower_bound(net.n(), k, &m).ok()
        }
        _ => None,
    }
}

pub fn bounds_report(net: &BooleanNetwork) -> BoundsReport {
    bounds_report_with_t_star(net, None)
}

/// Like [`bounds_report`], adding the horizon bounds when `t*` is known.
pub fn bounds_report_with_t_star(net: &BooleanNetwork, t_star: Option<usize>) -> BoundsReport {
    let n = net.n();
    let family = net.family();
    let negated = net.has_negation();
    let k = net.regular_degree();
    let mut entries = Vec::new();
    let mut warnings = Vec::new();

    match (family, k) {
        (Family::Mixed, _) => warnings.push(String::from(
            "mixed connectives; only the trivial bound applies",
        )),
        (_, None) => warnings.push(String::from(
            "network is not k-k; only the trivial bound applies",
        )),
        (_, Some(k)) if k < 2 => warnings.push(format!(
            "degree {k} is below 2; only the trivial bound applies"
        )),
        (Family::Xor, Some(k)) => match xor_bounds(n, k, t_star) {
            Ok(es) => entries.extend(es),
            Err(e) => warnings.push(format!("{e}")),
        },
        (Family::And | Family::Or, Some(k)) => {
            if negated {
                if let Some(v) = search_lower_bound(net) {
                    entries.push(BoundEntry::new(
                        BoundKind::GeneralLower,
                        v,
                        "thm8-lower",
                        String::from("multiplicity-weighted bound over literal counts"),
                        true,
                    ));
                }
            } else {
                entries.push(BoundEntry::new(
                    BoundKind::GeneralLower,
                    simple_and_lower(n, k),
                    "thm6-lower",
                    format!("(k-1)/(2k-1)n for simple {k}-{k} networks"),
                    true,
                ));
                let block = 2 * k - 1;
                let ok = n > 1 && (n - 1).is_multiple_of(block) && (n - 1) / block > 1;
                entries.push(BoundEntry::new(
                    BoundKind::BestCaseUpper,
                    r((k - 1) * (n - 1), block) + 1,
                    "prop7-best",
                    format!(
                        "shift-register family, needs n = {block}m+1 with m > 1{}",
                        if ok { "" } else { "; not met" }
                    ),
                    ok,
                ));
                if k == 2 {
                    entries.push(BoundEntry::new(
                        BoundKind::WorstCaseLower,
                        int(n),
                        "prop4-worst",
                        String::from("paired family needs every node, n even"),
                        n.is_multiple_of(2),
                    ));
                }
            }
        }
        (Family::Nc, Some(k)) => {
            let ok = n.is_multiple_of(k);
            entries.push(BoundEntry::new(
                BoundKind::BestCaseUpper,
                r(n, k),
                "prop8-best",
                format!(
                    "nested canalyzing shift family, needs n mod {k} = 0{}",
                    if ok { "" } else { "; not met" }
                ),
                ok,
            ));
        }
    }
    entries.push(BoundEntry::new(
        BoundKind::GeneralUpper,
        int(n),
        "trivial-upper",
        String::from("all nodes"),
        true,
    ));
    BoundsReport {
        family,
        negated,
        n,
        k,
        entries,
        warnings,
    }
}

/// Approximate decimal for display.
pub fn to_f64(v: Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}
