//! Network design instances: graph, facilities, demand and commodities.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{ceil, format_rational, Rational, RationalText};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub existing_capacity: Rational,
}

impl Arc {
    pub fn new(tail: usize, head: usize, existing_capacity: Rational) -> Self {
        Arc {
            tail,
            head,
            existing_capacity,
        }
    }
}

/// A capacity type installable in integer multiples on any arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facility {
    pub capacity: u64,
    /// Installation cost of one unit, indexed by arc.
    pub costs: Vec<Rational>,
}

/// Dense `n x n` traffic matrix; entry `(i, j)` is the demand from `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DemandMatrix {
    pub fn new(n: usize) -> Self {
        DemandMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut m = DemandMatrix::new(n);
        for (i, j, t) in pairs {
            m.set(i, j, t);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, t: Rational) {
        self.entries[i * self.n + j] = t;
    }

    /// Positive entries in row-major order.
    pub fn positive_pairs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n).filter_map(move |j| {
                let t = self.get(i, j);
                t.is_positive().then_some((i, j, t))
            })
        })
    }

    pub fn outgoing(&self, i: usize) -> Rational {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }

    pub fn total(&self) -> Rational {
        self.entries.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CommodityMode {
    #[default]
    Aggregated,
    Disaggregated,
}

/// Whether a commodity may be split over several paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Routing {
    #[default]
    Splittable,
    Unsplittable,
}

/// A commodity with a unique source node. `net_demand[i]` is the amount that
/// node `i` absorbs; the source carries the negated total supply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commodity {
    pub source: usize,
    /// Destination, for disaggregated (single pair) commodities.
    pub sink: Option<usize>,
    pub net_demand: Vec<Rational>,
}

impl Commodity {
    pub fn supply(&self) -> Rational {
        -self.net_demand[self.source].clone()
    }
}

/// One commodity per node with positive outgoing demand:
/// `w_i^k = t_ki` for `i != k` and `w_k^k = -sum_j t_kj`.
pub fn build_aggregated_commodities(demand: &DemandMatrix) -> Vec<Commodity> {
    let n = demand.size();
    (0..n)
        .filter(|&k| demand.outgoing(k).is_positive())
        .map(|k| {
            let mut w: Vec<Rational> = (0..n).map(|i| demand.get(k, i).clone()).collect();
            w[k] = -demand.outgoing(k);
            Commodity {
                source: k,
                sink: None,
                net_demand: w,
            }
        })
        .collect()
}

/// One commodity per ordered pair with positive demand.
pub fn build_disaggregated_commodities(demand: &DemandMatrix) -> Vec<Commodity> {
    let n = demand.size();
    demand
        .positive_pairs()
        .map(|(i, j, t)| {
            let mut w = vec![Rational::zero(); n];
            w[i] = -t.clone();
            w[j] = t.clone();
            Commodity {
                source: i,
                sink: Some(j),
                net_demand: w,
            }
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CostError {
    #[error("capacity requirement must be nonnegative, got {0}")]
    NegativeRequirement(String),
    #[error("facility capacities must be positive")]
    ZeroCapacity,
}

/// Cheapest way to install at least `z` units with two facility types:
/// `min { d1*y1 + d2*y2 : c1*y1 + c2*y2 >= z, y integer >= 0 }`.
pub fn installation_cost(
    z: &Rational,
    c1: u64,
    c2: u64,
    d1: &Rational,
    d2: &Rational,
) -> Result<Rational, CostError> {
    min_installation_cost(z, &[(c1, d1.clone()), (c2, d2.clone())])
}

/// Exact minimum installation cost for an arbitrary facility list `(capacity, unit cost)`.
pub fn min_installation_cost(z: &Rational, facilities: &[(u64, Rational)]) -> Result<Rational, CostError> {
    if z.is_negative() {
        return Err(CostError::NegativeRequirement(format_rational(z)));
    }
    if facilities.iter().any(|(c, _)| *c == 0) {
        return Err(CostError::ZeroCapacity);
    }
    Ok(cheapest_cover(z, facilities).expect("at least one facility"))
}

fn cheapest_cover(z: &Rational, facilities: &[(u64, Rational)]) -> Option<Rational> {
    let Some(((cap, cost), rest)) = facilities.split_last() else {
        return if z.is_positive() { None } else { Some(Rational::zero()) };
    };
    let cap = Rational::from_integer((*cap).into());
    let most = if z.is_positive() {
        ceil(&(z / &cap)).to_integer().try_into().unwrap_or(u64::MAX)
    } else {
        0u64
    };
    let mut best: Option<Rational> = None;
    for units in 0..=most {
        let units_q = Rational::from_integer(units.into());
        let remaining = z - &cap * &units_q;
        if let Some(sub) = cheapest_cover(&remaining, rest) {
            let total = sub + cost * &units_q;
            if best.as_ref().is_none_or(|b| &total < b) {
                best = Some(total);
            }
        }
    }
    best
}

/// A network design problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    node_names: Vec<String>,
    arcs: Vec<Arc>,
    facilities: Vec<Facility>,
    demand: DemandMatrix,
    flow_costs: Vec<Rational>,
    mode: CommodityMode,
    routing: Routing,
    commodities: Vec<Commodity>,
}

impl Instance {
    /// Builds an instance. Parallel arcs are merged: existing capacities are
    /// summed and the first occurrence's costs are kept. No validation is
    /// performed; see [`validate_instance`].
    pub fn new(
        node_names: Vec<String>,
        arcs: Vec<Arc>,
        facilities: Vec<Facility>,
        demand: DemandMatrix,
        flow_costs: Vec<Rational>,
        mode: CommodityMode,
    ) -> Self {
        let mut merged: Vec<Arc> = Vec::with_capacity(arcs.len());
        let mut kept: Vec<usize> = Vec::with_capacity(arcs.len());
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (idx, arc) in arcs.into_iter().enumerate() {
            match seen.get(&(arc.tail, arc.head)) {
                Some(&pos) => merged[pos].existing_capacity += arc.existing_capacity,
                None => {
                    seen.insert((arc.tail, arc.head), merged.len());
                    merged.push(arc);
                    kept.push(idx);
                }
            }
        }
        let pick = |v: &Vec<Rational>| -> Vec<Rational> {
            kept.iter()
                .map(|&i| v.get(i).cloned().unwrap_or_else(Rational::zero))
                .collect()
        };
        let facilities = facilities
            .into_iter()
            .map(|f| Facility {
                capacity: f.capacity,
                costs: if f.costs.len() >= kept.len() { pick(&f.costs) } else { f.costs },
            })
            .collect();
        let flow_costs = if flow_costs.len() >= kept.len() {
            pick(&flow_costs)
        } else {
            flow_costs
        };
        let commodities = match mode {
            CommodityMode::Aggregated => build_aggregated_commodities(&demand),
            CommodityMode::Disaggregated => build_disaggregated_commodities(&demand),
        };
        Instance {
            node_names,
            arcs: merged,
            facilities,
            demand,
            flow_costs,
            mode,
            routing: Routing::Splittable,
            commodities,
        }
    }

    pub fn with_routing(mut self, routing: Routing) -> Self {
        self.routing = routing;
        self
    }

    /// Same graph and data with a different commodity definition.
    pub fn with_mode(&self, mode: CommodityMode) -> Self {
        let mut inst = Instance::new(
            self.node_names.clone(),
            self.arcs.clone(),
            self.facilities.clone(),
            self.demand.clone(),
            self.flow_costs.clone(),
            mode,
        );
        inst.routing = self.routing;
        inst
    }

    pub fn num_nodes(&self) -> usize {
        self.node_names.len()
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.node_names[i]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn facilities(&self) -> &[Facility] {
        &self.facilities
    }

    pub fn demand(&self) -> &DemandMatrix {
        &self.demand
    }

    pub fn commodities(&self) -> &[Commodity] {
        &self.commodities
    }

    pub fn commodity_mode(&self) -> CommodityMode {
        self.mode
    }

    pub fn routing(&self) -> Routing {
        self.routing
    }

    /// Per-unit routing cost on `arc`, shared by every commodity.
    pub fn flow_cost(&self, arc: usize) -> &Rational {
        &self.flow_costs[arc]
    }

    pub fn flow_costs(&self) -> &[Rational] {
        &self.flow_costs
    }

    pub fn facility_capacity(&self, m: usize) -> Rational {
        Rational::from_integer(self.facilities[m].capacity.into())
    }

    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.tail == tail && a.head == head)
    }

    /// Upper bound on the flow of commodity `k` on any arc of a cycle-free routing.
    pub fn flow_bound(&self, k: usize) -> Rational {
        self.commodities[k].supply()
    }

    /// Nodes reachable from `from` along directed arcs.
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_nodes()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            for a in self.arcs.iter().filter(|a| a.tail == u) {
                if a.head < seen.len() && !seen[a.head] {
                    seen[a.head] = true;
                    queue.push_back(a.head);
                }
            }
        }
        seen
    }
}

/// A single invariant violation reported by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NoNodes,
    NodeOutOfRange { arc: usize, node: usize },
    SelfLoop { arc: usize },
    DuplicateArc { arc: usize },
    NegativeExistingCapacity { arc: usize },
    NoFacilities,
    ZeroFacilityCapacity { facility: usize },
    CapacitiesNotIncreasing { facility: usize },
    FacilityCostLength { facility: usize, expected: usize, found: usize },
    NegativeFacilityCost { facility: usize, arc: usize },
    FlowCostLength { expected: usize, found: usize },
    NegativeFlowCost { arc: usize },
    DemandSize { expected: usize, found: usize },
    NegativeDemand { from: usize, to: usize },
    SelfDemand { node: usize },
    UnroutableDemand { from: usize, to: usize },
    UnsplittableNeedsDisaggregated,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Diagnostic::*;
        match self {
            NoNodes => write!(f, "instance has no nodes"),
            NodeOutOfRange { arc, node } => write!(f, "arc {arc} references unknown node {node}"),
            SelfLoop { arc } => write!(f, "arc {arc} is a self loop"),
            DuplicateArc { arc } => write!(f, "arc {arc} duplicates an earlier arc"),
            NegativeExistingCapacity { arc } => write!(f, "arc {arc} has negative existing capacity"),
            NoFacilities => write!(f, "no facility types given"),
            ZeroFacilityCapacity { facility } => write!(f, "facility {facility} has zero capacity"),
            CapacitiesNotIncreasing { facility } => {
                write!(f, "facility capacities not increasing at facility {facility}")
            }
            FacilityCostLength { facility, expected, found } => write!(
                f,
                "facility {facility} lists {found} arc costs, expected {expected}"
            ),
            NegativeFacilityCost { facility, arc } => {
                write!(f, "facility {facility} has negative cost on arc {arc}")
            }
            FlowCostLength { expected, found } => {
                write!(f, "{found} flow costs given, expected {expected}")
            }
            NegativeFlowCost { arc } => write!(f, "arc {arc} has negative flow cost"),
            DemandSize { expected, found } => {
                write!(f, "demand matrix is {found}x{found}, expected {expected}x{expected}")
            }
            NegativeDemand { from, to } => write!(f, "negative demand from {from} to {to}"),
            SelfDemand { node } => write!(f, "node {node} has demand to itself"),
            UnroutableDemand { from, to } => write!(f, "no directed path from {from} to {to}"),
            UnsplittableNeedsDisaggregated => {
                write!(f, "unsplittable routing requires disaggregated commodities")
            }
        }
    }
}

/// Checks every instance invariant and lists all violations.
pub fn validate_instance(inst: &Instance) -> Result<(), Vec<Diagnostic>> {
    let mut out = Vec::new();
    let n = inst.num_nodes();
    if n == 0 {
        out.push(Diagnostic::NoNodes);
    }
    let mut pairs = std::collections::BTreeSet::new();
    for (idx, a) in inst.arcs.iter().enumerate() {
        for node in [a.tail, a.head] {
            if node >= n {
                out.push(Diagnostic::NodeOutOfRange { arc: idx, node });
            }
        }
        if a.tail == a.head {
            out.push(Diagnostic::SelfLoop { arc: idx });
        }
        if !pairs.insert((a.tail, a.head)) {
            out.push(Diagnostic::DuplicateArc { arc: idx });
        }
        if a.existing_capacity.is_negative() {
            out.push(Diagnostic::NegativeExistingCapacity { arc: idx });
        }
    }
    if inst.facilities.is_empty() {
        out.push(Diagnostic::NoFacilities);
    }
    for (m, fac) in inst.facilities.iter().enumerate() {
        if fac.capacity == 0 {
            out.push(Diagnostic::ZeroFacilityCapacity { facility: m });
        }
        if m > 0 && fac.capacity <= inst.facilities[m - 1].capacity {
            out.push(Diagnostic::CapacitiesNotIncreasing { facility: m });
        }
        if fac.costs.len() != inst.arcs.len() {
            out.push(Diagnostic::FacilityCostLength {
                facility: m,
                expected: inst.arcs.len(),
                found: fac.costs.len(),
            });
        }
        for (a, c) in fac.costs.iter().enumerate() {
            if c.is_negative() {
                out.push(Diagnostic::NegativeFacilityCost { facility: m, arc: a });
            }
        }
    }
    if inst.flow_costs.len() != inst.arcs.len() {
        out.push(Diagnostic::FlowCostLength {
            expected: inst.arcs.len(),
            found: inst.flow_costs.len(),
        });
    }
    for (a, c) in inst.flow_costs.iter().enumerate() {
        if c.is_negative() {
            out.push(Diagnostic::NegativeFlowCost { arc: a });
        }
    }
    if inst.demand.size() != n {
        out.push(Diagnostic::DemandSize {
            expected: n,
            found: inst.demand.size(),
        });
    } else {
        let graph_ok = out.is_empty();
        for i in 0..n {
            if !inst.demand.get(i, i).is_zero() {
                out.push(Diagnostic::SelfDemand { node: i });
            }
            for j in 0..n {
                if inst.demand.get(i, j).is_negative() {
                    out.push(Diagnostic::NegativeDemand { from: i, to: j });
                }
            }
        }
        if graph_ok {
            for i in 0..n {
                if !inst.demand.outgoing(i).is_positive() {
                    continue;
                }
                let reach = inst.reachable_from(i);
                for (j, reached) in reach.iter().enumerate() {
                    if i != j && inst.demand.get(i, j).is_positive() && !reached {
                        out.push(Diagnostic::UnroutableDemand { from: i, to: j });
                    }
                }
            }
        }
    }
    if inst.routing == Routing::Unsplittable && inst.mode != CommodityMode::Disaggregated {
        out.push(Diagnostic::UnsplittableNeedsDisaggregated);
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

// ---------------------------------------------------------------------------
// Instance files

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeLabel {
    Name(String),
    Number(i64),
}

impl NodeLabel {
    fn text(&self) -> String {
        match self {
            NodeLabel::Name(s) => s.clone(),
            NodeLabel::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ArcRecord {
    tail: NodeLabel,
    head: NodeLabel,
    #[serde(default)]
    existing_capacity: RationalText,
}

#[derive(Debug, Serialize, Deserialize)]
struct FacilityRecord {
    capacity: u64,
    cost: Vec<RationalText>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DemandRecord {
    from: NodeLabel,
    to: NodeLabel,
    amount: RationalText,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceRecord {
    nodes: Vec<NodeLabel>,
    arcs: Vec<ArcRecord>,
    facilities: Vec<FacilityRecord>,
    demands: Vec<DemandRecord>,
    #[serde(default)]
    flow_costs: Option<Vec<RationalText>>,
    #[serde(default)]
    commodity_mode: CommodityMode,
    #[serde(default)]
    routing: Routing,
}

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
}

impl Instance {
    /// Parses the JSON instance format; rationals are `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self, InstanceFileError> {
        let rec: InstanceRecord = serde_json::from_str(text)?;
        let names: Vec<String> = rec.nodes.iter().map(NodeLabel::text).collect();
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(InstanceFileError::DuplicateNode(name.clone()));
            }
        }
        let lookup = |label: &NodeLabel| -> Result<usize, InstanceFileError> {
            let t = label.text();
            index.get(&t).copied().ok_or(InstanceFileError::UnknownNode(t))
        };
        let mut arcs = Vec::with_capacity(rec.arcs.len());
        for a in &rec.arcs {
            arcs.push(Arc::new(lookup(&a.tail)?, lookup(&a.head)?, a.existing_capacity.0.clone()));
        }
        let facilities = rec
            .facilities
            .into_iter()
            .map(|f| Facility {
                capacity: f.capacity,
                costs: f.cost.into_iter().map(|c| c.0).collect(),
            })
            .collect();
        let mut demand = DemandMatrix::new(names.len());
        for d in &rec.demands {
            let (i, j) = (lookup(&d.from)?, lookup(&d.to)?);
            let cur = demand.get(i, j).clone();
            demand.set(i, j, cur + &d.amount.0);
        }
        let flow_costs = match rec.flow_costs {
            Some(v) => v.into_iter().map(|c| c.0).collect(),
            None => vec![Rational::zero(); arcs.len()],
        };
        Ok(Instance::new(names, arcs, facilities, demand, flow_costs, rec.commodity_mode)
            .with_routing(rec.routing))
    }

    pub fn to_json(&self) -> String {
        let label = |i: usize| NodeLabel::Name(self.node_names[i].clone());
        let rec = InstanceRecord {
            nodes: self.node_names.iter().cloned().map(NodeLabel::Name).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcRecord {
                    tail: label(a.tail),
                    head: label(a.head),
                    existing_capacity: a.existing_capacity.clone().into(),
                })
                .collect(),
            facilities: self
                .facilities
                .iter()
                .map(|f| FacilityRecord {
                    capacity: f.capacity,
                    cost: f.costs.iter().cloned().map(RationalText).collect(),
                })
                .collect(),
            demands: self
                .demand
                .positive_pairs()
                .map(|(i, j, t)| DemandRecord {
                    from: label(i),
                    to: label(j),
                    amount: t.clone().into(),
                })
                .collect(),
            flow_costs: Some(self.flow_costs.iter().cloned().map(RationalText).collect()),
            commodity_mode: self.mode,
            routing: self.routing,
        };
        serde_json::to_string_pretty(&rec).expect("instance serializes")
    }
}
