//! Random-instance experiment: minimum control set sizes against the bounds.

use std::io::Write;
use std::time::Instant;

use bnctl_core::bounds::{bounds_report_with_t_star, ceil, Rational};
use bnctl_core::generation::child_seed;
use bnctl_core::{
    minimum_control_set, random_network, t_star, Connective, GenSpec, SearchOptions,
};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::parallel::thread_pool;
use crate::report::{node_names, upper_list};

pub const MAX_COUNT: usize = 1000;
pub const MAX_N: usize = 12;
pub const DEFAULT_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub families: Vec<Connective>,
    pub n: usize,
    pub ks: Vec<usize>,
    /// Instances per (family, k) cell.
    pub count: usize,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub id: u64,
    pub seed: u64,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub min_size: usize,
    pub witness: String,
    pub lower_exact: String,
    pub lower_ceil: i64,
    pub upper_list: String,
    pub within_bounds: bool,
    pub ms: u128,
}

pub const HEADER: [&str; 12] = [
    "id",
    "seed",
    "family",
    "n",
    "k",
    "min_size",
    "witness",
    "lower_exact",
    "lower_ceil",
    "upper_list",
    "within_bounds",
    "ms",
];

fn check_config(cfg: &ExperimentConfig) -> CliResult<()> {
    if cfg.n > MAX_N {
        return Err(CliError::Usage(format!("reproduce supports n <= {MAX_N}, got {}", cfg.n)));
    }
    if cfg.count > MAX_COUNT {
        return Err(CliError::Usage(format!(
            "reproduce supports count <= {MAX_COUNT}, got {}",
            cfg.count
        )));
    }
    Ok(())
}

/// One instance; `lower` is the largest applicable general lower bound, 0 if none.
pub fn run_instance(id: u64, spec: GenSpec) -> CliResult<ExperimentRow> {
    let start = Instant::now();
    let net = random_network(&spec)?;
    let result = minimum_control_set(&net, &SearchOptions::default())?;
    let witness = result.witnesses[0];
    let ts = if spec.family == Connective::Xor {
        t_star(&net, witness, None)?
    } else {
        None
    };
    let report = bounds_report_with_t_star(&net, ts);
    let lower = report
        .entries
        .iter()
        .filter(|e| e.kind == bnctl_core::BoundKind::GeneralLower && e.applies)
        .map(|e| e.value)
        .max()
        .unwrap_or(Rational::from_integer(0));
    let lower_ceil = ceil(lower);
    let within = lower_ceil <= result.size as i64 && result.size <= spec.n;
    Ok(ExperimentRow {
        id,
        seed: spec.seed,
        family: spec.family.name().to_string(),
        n: spec.n,
        k: spec.k,
        min_size: result.size,
        witness: node_names(witness).join(" "),
        lower_exact: lower.to_string(),
        lower_ceil,
        upper_list: upper_list(&report),
        within_bounds: within,
        ms: start.elapsed().as_millis(),
    })
}

/// Instance specs in id order: families outer, then k, then index.
pub fn instance_specs(cfg: &ExperimentConfig) -> Vec<(u64, GenSpec)> {
    let mut out = Vec::new();
    let mut id = 0u64;
    for &family in &cfg.families {
        for &k in &cfg.ks {
            for _ in 0..cfg.count {
                out.push((id, GenSpec::new(cfg.n, k, family, child_seed(cfg.seed, id))));
                id += 1;
            }
        }
    }
    out
}

pub fn run_experiment(cfg: &ExperimentConfig) -> CliResult<Vec<ExperimentRow>> {
    check_config(cfg)?;
    let specs = instance_specs(cfg);
    let pool = thread_pool(cfg.jobs)?;
    pool.install(|| {
        specs
            .par_iter()
            .map(|&(id, spec)| run_instance(id, spec))
            .collect::<CliResult<Vec<_>>>()
    })
}

/// Writes the CSV; `ms` is `-` when timing is off so reruns are byte-identical.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W, timing: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let ms = if timing { r.ms.to_string() } else { "-".to_string() };
        w.write_record([
            r.id.to_string(),
            r.seed.to_string(),
            r.family.clone(),
            r.n.to_string(),
            r.k.to_string(),
            r.min_size.to_string(),
            r.witness.clone(),
            r.lower_exact.clone(),
            r.lower_ceil.to_string(),
            r.upper_list.clone(),
            r.within_bounds.to_string(),
            ms,
        ])?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub rows: usize,
    pub within: usize,
    pub nc_rows: usize,
    /// NC instances with min_size <= n/k.
    pub nc_small: usize,
}

impl Summary {
    pub fn of(rows: &[ExperimentRow]) -> Self {
        let nc: Vec<&ExperimentRow> = rows.iter().filter(|r| r.family == "nc").collect();
        Summary {
            rows: rows.len(),
            within: rows.iter().filter(|r| r.within_bounds).count(),
            nc_rows: nc.len(),
            nc_small: nc.iter().filter(|r| r.min_size * r.k <= r.n).count(),
        }
    }

    pub fn fraction_within(&self) -> f64 {
        if self.rows == 0 {
            1.0
        } else {
            self.within as f64 / self.rows as f64
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "within_bounds: {}/{} ({:.3})",
            self.within,
            self.rows,
            self.fraction_within()
        )?;
        if self.nc_rows > 0 {
            if self.nc_small > 0 {
                write!(f, "; nc instances with min_size <= n/k: {} of {}", self.nc_small, self.nc_rows)?;
            } else {
                write!(f, "; nc instances with min_size <= n/k: none found")?;
            }
        }
        Ok(())
    }
}
