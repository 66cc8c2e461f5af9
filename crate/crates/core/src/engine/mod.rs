//! Cutting-plane loop over the LP relaxation.

pub mod generate;
pub mod oracle;
pub mod report;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arc_cuts::{separate_instance_residual_capacity, separate_instance_unsplittable};
use crate::cut::{CutFamily, FractionalPoint, LinearCut};
use crate::cutset_cuts::{separate_instance_cutsets, CutSetFamilies};
use crate::lp::{build_relaxation, LpError, SimplexOptions, Status};
use crate::model::Instance;
use crate::partition_cuts::{separate_instance_metric, separate_instance_partitions, three_partitions, two_partitions};
use crate::rational::{format_rational, rationalize, to_f64, Rational};

pub use generate::{generate_instance, GenParams, GenerateError};
pub use oracle::{brute_force_ip, validate_cut, IpSolution, OracleError, Validator, Validity, YBounds};
pub use report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("unknown cut family {0:?}")]
    UnknownFamily(String),
    #[error("violation threshold must be positive")]
    BadEpsilon,
    #[error("at least one round is required")]
    NoRounds,
    #[error(transparent)]
    Lp(#[from] LpError),
}

impl FromStr for CutFamily {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CutFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| EngineError::UnknownFamily(s.to_string()))
    }
}

/// Parses a comma separated family list. `partition` also enables the
/// three-partition family.
pub fn parse_families(list: &str) -> Result<BTreeSet<CutFamily>, EngineError> {
    let mut out = BTreeSet::new();
    for tag in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let f: CutFamily = tag.parse()?;
        out.insert(f);
        if f == CutFamily::Partition {
            out.insert(CutFamily::ThreePartition);
        }
    }
    Ok(out)
}

/// Node sets `U` tried by the cut-set and partition separators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionHeuristics {
    /// Enumerate every `U` up to this many nodes.
    pub enumerate_up_to: usize,
    pub bfs_balls: bool,
    pub random_bipartitions: usize,
    pub three_partition_samples: usize,
}

impl Default for PartitionHeuristics {
    fn default() -> Self {
        PartitionHeuristics {
            enumerate_up_to: 8,
            bfs_balls: true,
            random_bipartitions: 20,
            three_partition_samples: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub families: BTreeSet<CutFamily>,
    pub max_rounds: usize,
    pub eps: Rational,
    pub partitions: PartitionHeuristics,
    pub k_values: Vec<u32>,
    pub seed: u64,
    /// Solve every LP in rational arithmetic.
    pub exact: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            families: CutFamily::ALL.into_iter().collect(),
            max_rounds: 50,
            eps: rationalize(1e-6, 1_000_000_000),
            partitions: PartitionHeuristics::default(),
            k_values: vec![2, 3],
            seed: 0,
            exact: false,
        }
    }
}

impl Config {
    pub fn with_families(families: impl IntoIterator<Item = CutFamily>) -> Self {
        Config {
            families: families.into_iter().collect(),
            ..Config::default()
        }
    }

    fn check(&self) -> Result<(), EngineError> {
        if !self.eps.is_positive() {
            return Err(EngineError::BadEpsilon);
        }
        if self.max_rounds == 0 {
            return Err(EngineError::NoRounds);
        }
        Ok(())
    }
}

/// Deduplicated cuts with the number of rounds in which each was tight.
#[derive(Debug, Clone, Default)]
pub struct CutPool {
    cuts: Vec<LinearCut>,
    activity: Vec<usize>,
    keys: HashSet<String>,
}

impl CutPool {
    pub fn new() -> Self {
        Self::default()
    }

    /// `false` when an equivalent cut is already present.
    pub fn insert(&mut self, cut: LinearCut) -> bool {
        if !self.keys.insert(cut.key()) {
            return false;
        }
        self.cuts.push(cut);
        self.activity.push(0);
        true
    }

    pub fn contains(&self, cut: &LinearCut) -> bool {
        self.keys.contains(&cut.key())
    }

    pub fn cuts(&self) -> &[LinearCut] {
        &self.cuts
    }

    pub fn activity(&self) -> &[usize] {
        &self.activity
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    fn record_activity(&mut self, point: &FractionalPoint, eps: &Rational) {
        for (c, n) in self.cuts.iter().zip(self.activity.iter_mut()) {
            if c.violation(point).abs() <= *eps {
                *n += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundReport {
    pub round: usize,
    pub bound: f64,
    /// Present for exact solves.
    pub exact_bound: Option<Rational>,
    /// Cuts added after this round's LP, per family.
    pub cuts: BTreeMap<CutFamily, usize>,
    pub max_violation: Rational,
    pub wall_time: Duration,
}

impl RoundReport {
    pub fn added(&self) -> usize {
        self.cuts.values().sum()
    }
}

#[derive(Debug, Clone)]
pub struct LoopResult {
    pub rounds: Vec<RoundReport>,
    pub pool: CutPool,
    /// Cuts in insertion order, as added to the LP.
    pub added: Vec<LinearCut>,
    pub final_point: FractionalPoint,
}

impl LoopResult {
    pub fn final_bound(&self) -> f64 {
        self.rounds.last().map_or(0.0, |r| r.bound)
    }

    pub fn initial_bound(&self) -> f64 {
        self.rounds.first().map_or(0.0, |r| r.bound)
    }
}

/// Node sets for cut-set style separators.
pub fn candidate_sets(inst: &Instance, h: &PartitionHeuristics, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let n = inst.num_nodes();
    if n <= h.enumerate_up_to {
        return two_partitions(n, 0, rng);
    }
    let mut out = two_partitions(n, h.random_bipartitions, rng);
    if h.bfs_balls {
        for v in 0..n {
            let mut ball = vec![v];
            loop {
                let next: Vec<usize> = inst
                    .arcs()
                    .iter()
                    .filter(|a| ball.contains(&a.tail) && !ball.contains(&a.head))
                    .map(|a| a.head)
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if next.is_empty() || ball.len() + next.len() >= n {
                    break;
                }
                ball.extend(next);
                let mut sorted = ball.clone();
                sorted.sort();
                if !out.contains(&sorted) {
                    out.push(sorted);
                }
            }
        }
    }
    out
}

/// Runs every enabled separator on `point` in the fixed order
/// rc, cstrong/ksplit/cover, cutset, flowcutset, mf, metric, partition.
pub fn separate_all(
    inst: &Instance,
    point: &FractionalPoint,
    config: &Config,
    sets: &[Vec<usize>],
    rng: &mut impl Rng,
) -> Vec<LinearCut> {
    let on = |f: CutFamily| config.families.contains(&f);
    let mut cuts = Vec::new();
    if on(CutFamily::ResidualCapacity) {
        cuts.extend(separate_instance_residual_capacity(inst, point));
    }
    let unsplit: Vec<CutFamily> = [CutFamily::CStrong, CutFamily::KSplit, CutFamily::LiftedCover]
        .into_iter()
        .filter(|f| on(*f))
        .collect();
    if !unsplit.is_empty() {
        cuts.extend(separate_instance_unsplittable(inst, point, &unsplit, &config.k_values));
    }
    let cs = CutSetFamilies {
        cutset: on(CutFamily::CutSet),
        flow_cutset: on(CutFamily::FlowCutSet),
        multifacility: on(CutFamily::MultiFacility),
    };
    if cs.cutset || cs.flow_cutset || cs.multifacility {
        let mut found = separate_instance_cutsets(inst, point, sets, cs);
        // keep the separator order: cut-set, flow cut-set, multi-facility
        found.sort_by_key(|c| c.family);
        cuts.extend(found);
    }
    if on(CutFamily::Metric) {
        cuts.extend(separate_instance_metric(inst, point));
    }
    if on(CutFamily::Partition) || on(CutFamily::ThreePartition) {
        let two: &[Vec<usize>] = if on(CutFamily::Partition) { sets } else { &[] };
        let three = if on(CutFamily::ThreePartition) {
            three_partitions(inst.num_nodes(), config.partitions.three_partition_samples, rng)
        } else {
            Vec::new()
        };
        cuts.extend(separate_instance_partitions(inst, point, two, &three));
    }
    cuts
}

/// Solve, separate, add violated cuts; stops when a round adds nothing or
/// after `max_rounds` LP solves.
pub fn cutting_plane_loop(inst: &Instance, config: &Config) -> Result<LoopResult, EngineError> {
    config.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sets = candidate_sets(inst, &config.partitions, &mut rng);
    let mut model = build_relaxation(inst, &[])?;
    let mut pool = CutPool::new();
    let mut added = Vec::new();
    let mut rounds = Vec::new();
    let opts = SimplexOptions::default();
    let mut point = FractionalPoint::new();
    for round in 0..config.max_rounds {
        let start = Instant::now();
        let sol = if config.exact { model.solve_exact(&opts) } else { model.solve(&opts) };
        if sol.status != Status::Optimal {
            return Err(EngineError::Lp(LpError::Solve(sol.status)));
        }
        point = sol.point;
        pool.record_activity(&point, &config.eps);
        let mut counts = BTreeMap::new();
        let mut max_violation = Rational::zero();
        if round + 1 < config.max_rounds {
            for cut in separate_all(inst, &point, config, &sets, &mut rng) {
                let v = cut.violation(&point);
                if v <= config.eps || pool.contains(&cut) {
                    continue;
                }
                if v > max_violation {
                    max_violation = v;
                }
                model.add_cut(&cut)?;
                *counts.entry(cut.family).or_insert(0) += 1;
                added.push(cut.clone());
                pool.insert(cut);
            }
        }
        let bound = sol.exact_objective.as_ref().map_or(sol.objective, to_f64);
        let done = counts.is_empty();
        rounds.push(RoundReport {
            round,
            bound,
            exact_bound: sol.exact_objective,
            cuts: counts,
            max_violation,
            wall_time: start.elapsed(),
        });
        if done {
            break;
        }
    }
    Ok(LoopResult {
        rounds,
        pool,
        added,
        final_point: point,
    })
}

/// Display helper used by examples.
pub fn describe_round(r: &RoundReport) -> String {
    let cuts: Vec<String> = r.cuts.iter().map(|(f, n)| format!("{f}:{n}")).collect();
    format!(
        "round {:>2}  bound {:.6}  added [{}]  max violation {}",
        r.round,
        r.bound,
        cuts.join(" "),
        format_rational(&r.max_violation)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn family_parsing() {
        let f = parse_families("rc,cutset,partition").unwrap();
        assert!(f.contains(&CutFamily::ThreePartition));
        assert_eq!(f.len(), 4);
        assert!(parse_families("rc,bogus").is_err());
    }

    #[test]
    fn no_families_single_round() {
        let inst = generate_instance(&GenParams::new(3, 4, 0.4, vec![1, 3])).unwrap();
        let res = cutting_plane_loop(&inst, &Config::with_families([])).unwrap();
        assert_eq!(res.rounds.len(), 1);
        assert!(res.added.is_empty());
    }

    #[test]
    fn pool_dedupes_scaled_cuts() {
        use crate::cut::Var;
        let y = Var::Capacity { arc: 0, facility: 0 };
        let c = LinearCut::new([(y, int(1))], int(1), CutFamily::CutSet, "").unwrap();
        let mut pool = CutPool::new();
        assert!(pool.insert(c.clone()));
        assert!(!pool.insert(c.scaled(&rat(3, 2))));
        assert_eq!(pool.len(), 1);
    }

    #[test]
    fn rejects_bad_config() {
        let inst = generate_instance(&GenParams::new(3, 3, 0.4, vec![1])).unwrap();
        let cfg = Config { max_rounds: 0, ..Config::default() };
        assert_eq!(cutting_plane_loop(&inst, &cfg).unwrap_err(), EngineError::NoRounds);
    }
}
