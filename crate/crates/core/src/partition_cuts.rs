//! Node shrinking, cut lifting, metric inequalities and partition-based
//! total capacity inequalities.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::cut::{CutFamily, FractionalPoint, LinearCut, Var};
use crate::lp::routing::{check_feasible_routing, shortest_paths, MetricVector, RoutingResult};
use crate::mir::{iterative_mir, KnapsackCoverSet, KnapsackCut};
use crate::model::{Arc, CommodityMode, DemandMatrix, Facility, Instance};
use crate::rational::{ceil, denominator_lcm, format_rational, int, is_integral, max, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("a partition needs at least two blocks")]
    TooFewBlocks,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("node {0} is missing or assigned twice")]
    BadNode(usize),
    #[error("metric vector is not integral")]
    NonIntegral,
    #[error("candidates have different left-hand sides")]
    MismatchedLhs,
    #[error("no candidates given")]
    NoCandidates,
    #[error("partition must have exactly three blocks")]
    NotThreeBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl NodePartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if blocks.len() < 2 {
            return Err(PartitionError::TooFewBlocks);
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, nodes) in blocks.iter().enumerate() {
            if nodes.is_empty() {
                return Err(PartitionError::EmptyBlock(b));
            }
            for &v in nodes {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(PartitionError::BadNode(v));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::BadNode(v));
        }
        Ok(NodePartition { blocks, block_of })
    }

    /// `(U, N - U)`.
    pub fn two(n: usize, u: &[usize]) -> Result<Self, PartitionError> {
        let rest = (0..n).filter(|v| !u.contains(v)).collect();
        Self::new(n, vec![u.to_vec(), rest])
    }

    pub fn singletons(n: usize) -> Result<Self, PartitionError> {
        Self::new(n, (0..n).map(|v| vec![v]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The `p`-node instance obtained by shrinking every block to a node.
#[derive(Debug, Clone)]
pub struct ShrunkInstance {
    pub instance: Instance,
    pub partition: NodePartition,
    /// Shrunk arc of each original arc; `None` inside a block.
    pub arc_map: Vec<Option<usize>>,
    /// Shrunk commodity of each original commodity, when it survives.
    pub commodity_map: Vec<Option<usize>>,
}

/// Shrinks blocks to nodes: crossing arcs are merged with summed existing
/// capacity and demands are summed between blocks.
pub fn shrink(inst: &Instance, part: &NodePartition) -> ShrunkInstance {
    let p = part.len();
    let mut arcs = Vec::new();
    let mut costs: Vec<Vec<Rational>> = vec![Vec::new(); inst.facilities().len()];
    let mut flow_costs = Vec::new();
    for (a, arc) in inst.arcs().iter().enumerate() {
        let (i, j) = (part.block_of(arc.tail), part.block_of(arc.head));
        if i != j {
            arcs.push(Arc::new(i, j, arc.existing_capacity.clone()));
            for (m, f) in inst.facilities().iter().enumerate() {
                costs[m].push(f.costs[a].clone());
            }
            flow_costs.push(inst.flow_cost(a).clone());
        }
    }
    let mut demand = DemandMatrix::new(p);
    for (u, v, t) in inst.demand().positive_pairs() {
        let (i, j) = (part.block_of(u), part.block_of(v));
        if i != j {
            let cur = demand.get(i, j).clone();
            demand.set(i, j, cur + t);
        }
    }
    let names = part
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&v| inst.node_name(v)).collect::<Vec<_>>().join("+"))
        .collect();
    let facilities = inst
        .facilities()
        .iter()
        .zip(costs)
        .map(|(f, c)| Facility { capacity: f.capacity, costs: c })
        .collect();
    let shrunk = Instance::new(names, arcs, facilities, demand, flow_costs, inst.commodity_mode())
        .with_routing(inst.routing());
    let arc_map = inst
        .arcs()
        .iter()
        .map(|arc| {
            let (i, j) = (part.block_of(arc.tail), part.block_of(arc.head));
            if i == j {
                None
            } else {
                shrunk.arc_index(i, j)
            }
        })
        .collect();
    let commodity_map = inst
        .commodities()
        .iter()
        .map(|com| {
            let src = part.block_of(com.source);
            let sink = com.sink.map(|t| part.block_of(t));
            shrunk.commodities().iter().position(|c| {
                c.source == src
                    && match inst.commodity_mode() {
                        CommodityMode::Aggregated => true,
                        CommodityMode::Disaggregated => c.sink == sink,
                    }
            })
        })
        .collect();
    ShrunkInstance {
        instance: shrunk,
        partition: part.clone(),
        arc_map,
        commodity_map,
    }
}

/// Conditions under which a facet of the shrunk problem lifts to a facet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftReport {
    pub capacity_only: bool,
    pub positive_rhs: bool,
    pub blocks_connected: bool,
}

impl LiftReport {
    pub fn facet_transfer(&self) -> bool {
        self.capacity_only && self.positive_rhs && self.blocks_connected
    }
}

fn block_connected(inst: &Instance, nodes: &[usize]) -> bool {
    let inside: Vec<bool> = (0..inst.num_nodes()).map(|v| nodes.contains(&v)).collect();
    let mut seen = vec![false; inst.num_nodes()];
    let mut stack = vec![nodes[0]];
    seen[nodes[0]] = true;
    while let Some(v) = stack.pop() {
        for arc in inst.arcs() {
            let next = if arc.tail == v {
                arc.head
            } else if arc.head == v {
                arc.tail
            } else {
                continue;
            };
            if inside[next] && !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    nodes.iter().all(|&v| seen[v])
}

/// Copies each shrunk coefficient to every original arc crossing the same
/// pair of blocks; arcs inside a block get zero.
pub fn lift_cut(cut: &LinearCut, shrunk: &ShrunkInstance, original: &Instance) -> (Option<LinearCut>, LiftReport) {
    let mut terms = Vec::new();
    for (a, mapped) in shrunk.arc_map.iter().enumerate() {
        let Some(j) = mapped else { continue };
        for m in 0..original.facilities().len() {
            let c = cut.coeff(Var::Capacity { arc: *j, facility: m });
            terms.push((Var::Capacity { arc: a, facility: m }, c));
        }
        for (k, mk) in shrunk.commodity_map.iter().enumerate() {
            if let Some(kt) = mk {
                let c = cut.coeff(Var::Flow { arc: *j, commodity: *kt });
                terms.push((Var::Flow { arc: a, commodity: k }, c));
            }
        }
    }
    let report = LiftReport {
        capacity_only: cut.is_capacity_only(),
        positive_rhs: cut.rhs().is_positive(),
        blocks_connected: shrunk.partition.blocks().iter().all(|b| block_connected(original, b)),
    };
    let provenance = format!("lifted from {:?}: {}", shrunk.partition.blocks(), cut.provenance);
    (
        LinearCut::new(terms, cut.rhs().clone(), cut.family, provenance).ok(),
        report,
    )
}

/// `sum_a v_a (c̄_a + sum_m c_m y_{m,a}) >= sum w u`, written with the
/// existing capacity moved to the right-hand side.
pub fn metric_cut(inst: &Instance, mv: &MetricVector) -> Option<LinearCut> {
    let existing: Rational = inst.arcs().iter().zip(&mv.v).map(|(a, v)| &a.existing_capacity * v).sum();
    let rhs = mv.demand_side(inst) - existing;
    let terms = capacity_terms(inst, &mv.v);
    LinearCut::new(terms, rhs, CutFamily::Metric, "metric").ok()
}

fn capacity_terms(inst: &Instance, v: &[Rational]) -> Vec<(Var, Rational)> {
    let mut terms = Vec::new();
    for (a, va) in v.iter().enumerate() {
        if va.is_zero() {
            continue;
        }
        for m in 0..inst.facilities().len() {
            terms.push((Var::Capacity { arc: a, facility: m }, inst.facility_capacity(m) * va));
        }
    }
    terms
}

/// Rounds the right-hand side of the metric inequality of an integral `(v, u)`.
pub fn integral_metric_cut(mv: &MetricVector, inst: &Instance) -> Result<LinearCut, PartitionError> {
    if !mv.v.iter().chain(mv.u.iter().flatten()).all(is_integral) {
        return Err(PartitionError::NonIntegral);
    }
    let existing: Rational = inst.arcs().iter().zip(&mv.v).map(|(a, v)| &a.existing_capacity * v).sum();
    let rhs = ceil(&(mv.demand_side(inst) - existing));
    LinearCut::new(capacity_terms(inst, &mv.v), rhs, CutFamily::Metric, "integral metric")
        .map_err(|_| PartitionError::NonIntegral)
}

/// Smallest positive multiple of `mv` with integral entries.
pub fn scale_to_integral(mv: &MetricVector) -> MetricVector {
    let l = Rational::from_integer(denominator_lcm(mv.v.iter().chain(mv.u.iter().flatten())));
    MetricVector {
        v: mv.v.iter().map(|x| x * &l).collect(),
        u: mv.u.iter().map(|row| row.iter().map(|x| x * &l).collect()).collect(),
    }
}

/// Metric separation for the capacities of `point`. Returns the certificate
/// and its integral (rounded) metric cut when routing is infeasible.
pub fn separate_metric(inst: &Instance, point: &FractionalPoint) -> Option<(MetricVector, LinearCut)> {
    match check_feasible_routing(inst, point) {
        RoutingResult::Feasible => None,
        RoutingResult::Infeasible(mv) => {
            let scaled = scale_to_integral(&mv);
            let cut = integral_metric_cut(&scaled, inst)
                .ok()
                .filter(|c| c.violation(point).is_positive())
                .or_else(|| metric_cut(inst, &mv))?;
            Some((mv, cut))
        }
    }
}

/// Integer knapsack cover set `sum_m c_m z_m >= b` of a two-partition, with
/// `z_m` the number of type-`m` facilities on arcs from `U` to `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPartitionCover {
    pub set: KnapsackCoverSet,
    pub arcs: Vec<usize>,
    pub u: Vec<usize>,
}

/// `b` is the traffic from `U` to `V` minus the existing capacity on arcs from
/// `U` to `V`; `None` when `b <= 0` or capacities are not increasing.
pub fn knapsack_cover_from_two_partition(inst: &Instance, u: &[usize]) -> Option<TwoPartitionCover> {
    let in_u: Vec<bool> = (0..inst.num_nodes()).map(|v| u.contains(&v)).collect();
    let traffic: Rational = inst
        .demand()
        .positive_pairs()
        .filter(|(s, t, _)| in_u[*s] && !in_u[*t])
        .map(|(_, _, d)| d.clone())
        .sum();
    let arcs: Vec<usize> = (0..inst.arcs().len())
        .filter(|&a| in_u[inst.arcs()[a].tail] && !in_u[inst.arcs()[a].head])
        .collect();
    let existing: Rational = arcs.iter().map(|&a| &inst.arcs()[a].existing_capacity).sum();
    let b = traffic - existing;
    if !b.is_positive() || arcs.is_empty() {
        return None;
    }
    let caps = inst.facilities().iter().map(|f| f.capacity).collect();
    let set = KnapsackCoverSet::new(caps, b).ok()?;
    Some(TwoPartitionCover { set, arcs, u: u.to_vec() })
}

/// `sum_m alpha_m sum_{a in arcs} y_{m,a} >= beta`.
pub fn aggregate_cut(
    cut: &KnapsackCut,
    arcs: &[usize],
    family: CutFamily,
    provenance: String,
) -> Option<LinearCut> {
    let terms = arcs
        .iter()
        .flat_map(|&a| cut.coeffs.iter().enumerate().map(move |(m, c)| (Var::Capacity { arc: a, facility: m }, c.clone())));
    LinearCut::new(terms, cut.rhs.clone(), family, provenance).ok()
}

/// Iterative MIR cuts of a knapsack cover set for every subsequence of facilities.
///
/// The left-hand side only takes multiples of `g = gcd(c)`, so `b` is first
/// raised to `g ceil(b/g)`; without this the cuts miss the hull whenever `b`
/// is fractional.
pub fn partition_inequalities(set: &KnapsackCoverSet) -> Vec<(Vec<usize>, KnapsackCut)> {
    let g = set.capacities.iter().fold(0u64, |acc, c| num_integer::gcd(acc, *c));
    let g = int(g as i64);
    let rounded = KnapsackCoverSet {
        capacities: set.capacities.clone(),
        rhs: &g * ceil(&(&set.rhs / &g)),
    };
    rounded
        .all_subsequences()
        .into_iter()
        .filter_map(|s| iterative_mir(&rounded, &s).ok().map(|c| (s, c)))
        .collect()
}

/// Data of a three-partition: `s_i`, `t_i` and metric right-hand sides `d_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionData {
    pub s: [Rational; 3],
    pub t: [Rational; 3],
    /// `d[i][j]` for `i != j`; the diagonal is zero.
    pub d: [[Rational; 3]; 3],
    /// Crossing original arcs.
    pub arcs: Vec<usize>,
}

/// Computes `s`, `t` and `d` on the shrunk three-node instance.
pub fn three_partition_data(inst: &Instance, part: &NodePartition) -> Result<ThreePartitionData, PartitionError> {
    if part.len() != 3 {
        return Err(PartitionError::NotThreeBlocks);
    }
    let sh = shrink(inst, part);
    let g = &sh.instance;
    let traffic = |i: usize, j: usize| g.demand().get(i, j).clone();
    let existing = |i: usize, j: usize| {
        g.arc_index(i, j)
            .map(|a| g.arcs()[a].existing_capacity.clone())
            .unwrap_or_else(Rational::zero)
    };
    let mut s: [Rational; 3] = Default::default();
    let mut t: [Rational; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                s[i] += traffic(i, j) - existing(i, j);
                t[i] += traffic(j, i) - existing(j, i);
            }
        }
    }
    let mut d: [[Rational; 3]; 3] = Default::default();
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let c = 3 - a - b;
            let ones = [(a, b), (a, c), (b, c)];
            let weights: Vec<Rational> = g
                .arcs()
                .iter()
                .map(|arc| if ones.contains(&(arc.tail, arc.head)) { int(1) } else { int(0) })
                .collect();
            let mut rhs = Rational::zero();
            for src in 0..3 {
                let dist = shortest_paths(g, &weights, src);
                for dst in 0..3 {
                    rhs += traffic(src, dst) * &dist[dst];
                }
            }
            for (arc, w) in g.arcs().iter().zip(&weights) {
                rhs -= &arc.existing_capacity * w;
            }
            d[a][b] = rhs;
        }
    }
    let arcs = sh.arc_map.iter().enumerate().filter(|(_, m)| m.is_some()).map(|(a, _)| a).collect();
    Ok(ThreePartitionData { s, t, d, arcs })
}

fn total_capacity_cut(inst: &Instance, arcs: &[usize], rhs: Rational, family: CutFamily, provenance: String) -> Option<LinearCut> {
    let terms = arcs.iter().flat_map(|&a| {
        (0..inst.facilities().len()).map(move |m| (Var::Capacity { arc: a, facility: m }, inst.facility_capacity(m)))
    });
    LinearCut::new(terms, rhs, family, provenance).ok()
}

fn ceil_pos(q: &Rational) -> Rational {
    max(&ceil(q), &Rational::zero())
}

/// Halved sum of the six two-partition cut-set inequalities:
/// `sum_m c_m y_m(crossing) >= ceil((sum ceil(s_i) + sum ceil(t_i)) / 2)`.
/// Negative `s_i`, `t_i` are replaced by zero.
pub fn three_partition_cut(inst: &Instance, part: &NodePartition) -> Result<Option<LinearCut>, PartitionError> {
    let data = three_partition_data(inst, part)?;
    let total: Rational = data.s.iter().chain(&data.t).map(ceil_pos).sum();
    let rhs = ceil(&(total / int(2)));
    if !rhs.is_positive() {
        return Ok(None);
    }
    Ok(total_capacity_cut(
        inst,
        &data.arcs,
        rhs,
        CutFamily::ThreePartition,
        format!("sum {:?}", part.blocks()),
    ))
}

/// Adds the two largest metric pair sums `ceil(d_ab) + ceil(d_cb)` and halves.
pub fn three_partition_metric_cut(inst: &Instance, part: &NodePartition) -> Result<Option<LinearCut>, PartitionError> {
    let data = three_partition_data(inst, part)?;
    let mut pairs: Vec<Rational> = (0..3)
        .map(|b| {
            (0..3)
                .filter(|&a| a != b)
                .map(|a| ceil_pos(&data.d[a][b]))
                .sum()
        })
        .collect();
    pairs.sort();
    let rhs = ceil(&((&pairs[1] + &pairs[2]) / int(2)));
    if !rhs.is_positive() {
        return Ok(None);
    }
    Ok(total_capacity_cut(
        inst,
        &data.arcs,
        rhs,
        CutFamily::ThreePartition,
        format!("metric {:?}", part.blocks()),
    ))
}

/// Largest right-hand side among candidates with identical left-hand sides.
pub fn select_total_capacity_cut(candidates: &[LinearCut]) -> Result<LinearCut, PartitionError> {
    let first = candidates.first().ok_or(PartitionError::NoCandidates)?;
    if candidates.iter().any(|c| c.coeffs() != first.coeffs()) {
        return Err(PartitionError::MismatchedLhs);
    }
    Ok(candidates
        .iter()
        .max_by(|a, b| a.rhs().cmp(b.rhs()))
        .expect("nonempty")
        .clone())
}

/// Knapsack cover set of a total capacity cut `sum_m c_m Z_m >= R`.
pub fn total_capacity_cover(inst: &Instance, cut: &LinearCut) -> Option<KnapsackCoverSet> {
    let caps = inst.facilities().iter().map(|f| f.capacity).collect();
    KnapsackCoverSet::new(caps, cut.rhs().clone()).ok()
}

/// Every `U` with `0 < |U| < n` for `n <= 8`; otherwise singletons, their
/// complements and `extra` random subsets.
pub fn two_partitions(n: usize, extra: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    if n <= 8 {
        return (1u32..(1u32 << n) - 1)
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        out.push(vec![v]);
        out.push((0..n).filter(|&w| w != v).collect());
    }
    for _ in 0..extra {
        let u: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !u.is_empty() && u.len() < n && !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

/// All three-partitions for `n <= 6`, otherwise `samples` random ones.
pub fn three_partitions(n: usize, samples: usize, rng: &mut impl Rng) -> Vec<NodePartition> {
    if n < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if n <= 6 {
        // restricted growth strings with exactly three labels
        let mut labels = vec![0usize; n];
        loop {
            if labels.iter().max() == Some(&2) {
                let blocks = (0..3).map(|b| (0..n).filter(|&v| labels[v] == b).collect()).collect();
                if let Ok(p) = NodePartition::new(n, blocks) {
                    out.push(p);
                }
            }
            // next restricted growth string
            let mut i = n - 1;
            loop {
                let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
                if i > 0 && labels[i] <= prefix_max && labels[i] < 2 {
                    labels[i] += 1;
                    for l in labels.iter_mut().skip(i + 1) {
                        *l = 0;
                    }
                    break;
                }
                if i <= 1 {
                    return out;
                }
                i -= 1;
            }
        }
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        nodes.shuffle(rng);
        let c1 = rng.gen_range(1..n - 1);
        let c2 = rng.gen_range(c1 + 1..n);
        let blocks = vec![nodes[..c1].to_vec(), nodes[c1..c2].to_vec(), nodes[c2..].to_vec()];
        if let Ok(p) = NodePartition::new(n, blocks) {
            out.push(p);
        }
    }
    out
}

fn most_violated(cuts: impl IntoIterator<Item = LinearCut>, point: &FractionalPoint) -> Option<LinearCut> {
    cuts.into_iter()
        .map(|c| (c.violation(point), c))
        .filter(|(v, _)| v.is_positive())
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, c)| c)
}

fn cover_cuts(cover: &KnapsackCoverSet, arcs: &[usize], family: CutFamily, label: &str) -> Vec<LinearCut> {
    partition_inequalities(cover)
        .into_iter()
        .filter_map(|(s, c)| {
            aggregate_cut(
                &c,
                arcs,
                family,
                format!("{label} subsequence={s:?} b={}", format_rational(&cover.rhs)),
            )
        })
        .collect()
}

/// Most violated iterative MIR cut per two-partition, and per three-partition
/// the stronger total capacity cut followed by iterative MIR on it.
pub fn separate_instance_partitions(
    inst: &Instance,
    point: &FractionalPoint,
    two: &[Vec<usize>],
    three: &[NodePartition],
) -> Vec<LinearCut> {
    let mut out = Vec::new();
    for u in two {
        if let Some(cover) = knapsack_cover_from_two_partition(inst, u) {
            let label = format!("U={u:?}");
            if let Some(c) = most_violated(cover_cuts(&cover.set, &cover.arcs, CutFamily::Partition, &label), point) {
                out.push(c);
            }
        }
    }
    for part in three {
        let candidates: Vec<LinearCut> = [three_partition_cut(inst, part), three_partition_metric_cut(inst, part)]
            .into_iter()
            .filter_map(|r| r.ok().flatten())
            .collect();
        let Ok(best) = select_total_capacity_cut(&candidates) else { continue };
        let arcs: Vec<usize> = best
            .coeffs()
            .keys()
            .filter_map(|v| match v {
                Var::Capacity { arc, .. } => Some(*arc),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut pool = vec![best.clone()];
        if let Some(cover) = total_capacity_cover(inst, &best) {
            pool.extend(cover_cuts(&cover, &arcs, CutFamily::ThreePartition, &format!("{:?}", part.blocks())));
        }
        if let Some(c) = most_violated(pool, point) {
            out.push(c);
        }
    }
    out
}

/// Metric cut for the point, if its capacities cannot route the demand.
pub fn separate_instance_metric(inst: &Instance, point: &FractionalPoint) -> Vec<LinearCut> {
    separate_metric(inst, point).map(|(_, c)| c).into_iter().collect()
}
