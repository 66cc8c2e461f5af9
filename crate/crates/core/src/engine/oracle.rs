//! Brute-force oracles for desk-scale instances: integer optimum, cut
//! validity and affine dimension of tight points.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arc_cuts::{ArcInequality, ArcSetRelaxation, FlowMode};
use crate::cut::{FractionalPoint, LinearCut, Var};
use crate::lp::model::build_relaxation;
use crate::lp::routing::check_routing_with_capacities;
use crate::lp::{LpModel, SimplexOptions};
use crate::model::{CommodityMode, Instance, Routing};
use crate::rational::{int, Rational};

/// Default enumeration budget.
pub const BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("bounds have the wrong shape")]
    BadBounds,
    #[error("cut references a variable outside the instance: {0}")]
    UnknownVariable(Var),
    #[error("unsplittable routing needs disaggregated commodities")]
    NeedsDisaggregated,
    #[error("no feasible point within the bounds")]
    Infeasible,
}

/// Upper bounds `y_{m,a} <= bound[a][m]` for the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YBounds {
    pub bound: Vec<Vec<u64>>,
}

impl YBounds {
    pub fn uniform(inst: &Instance, b: u64) -> Self {
        YBounds {
            bound: vec![vec![b; inst.facilities().len()]; inst.arcs().len()],
        }
    }

    /// `ceil(total demand / c_m)` on every arc.
    pub fn from_demand(inst: &Instance) -> Self {
        let total = inst.demand().total();
        let per: Vec<u64> = (0..inst.facilities().len())
            .map(|m| {
                let q = (&total / inst.facility_capacity(m)).ceil().to_integer();
                u64::try_from(q).unwrap_or(u64::MAX)
            })
            .collect();
        YBounds {
            bound: vec![per; inst.arcs().len()],
        }
    }

    /// `from_demand`, with the largest bounds lowered one at a time (never
    /// below 1) until the grid has at most `budget` points.
    pub fn capped(inst: &Instance, budget: u64) -> Self {
        let mut b = YBounds::from_demand(inst);
        while b.grid_size() > budget as u128 {
            let Some(top) = b.bound.iter_mut().flatten().filter(|v| **v > 1).max_by_key(|v| **v) else {
                break;
            };
            *top -= 1;
        }
        b
    }

    fn check(&self, inst: &Instance) -> Result<(), OracleError> {
        if self.bound.len() != inst.arcs().len() || self.bound.iter().any(|b| b.len() != inst.facilities().len()) {
            return Err(OracleError::BadBounds);
        }
        Ok(())
    }

    /// Number of grid points, `prod (bound + 1)`.
    pub fn grid_size(&self) -> u128 {
        self.bound.iter().flatten().map(|b| *b as u128 + 1).product()
    }

    fn arc_grid_size(&self, a: usize) -> u128 {
        self.bound[a].iter().map(|b| *b as u128 + 1).product()
    }
}

fn within_budget(needed: u128, budget: u64) -> Result<(), OracleError> {
    if needed > budget as u128 {
        Err(OracleError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Odometer over a mixed-radix box.
fn next_in_box(v: &mut [u64], bound: &[u64]) -> bool {
    for (x, b) in v.iter_mut().zip(bound) {
        if *x < *b {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSolution {
    pub value: Rational,
    /// `y[a][m]`.
    pub y: Vec<Vec<u64>>,
    pub point: FractionalPoint,
}

fn capacity_point(inst: &Instance, y: &[u64]) -> FractionalPoint {
    let nm = inst.facilities().len();
    FractionalPoint::from_values(y.iter().enumerate().map(|(i, v)| {
        (
            Var::Capacity {
                arc: i / nm,
                facility: i % nm,
            },
            int(*v as i64),
        )
    }))
}

fn capacities(inst: &Instance, y: &[u64]) -> Vec<Rational> {
    let nm = inst.facilities().len();
    inst.arcs()
        .iter()
        .enumerate()
        .map(|(a, arc)| {
            let installed: Rational = (0..nm).map(|m| inst.facility_capacity(m) * int(y[a * nm + m] as i64)).sum();
            &arc.existing_capacity + installed
        })
        .collect()
}

/// Necessary condition used to skip LPs: every directed node cut carries its traffic.
struct CutScreen {
    cuts: Vec<(Vec<usize>, Rational)>,
}

impl CutScreen {
    fn new(inst: &Instance) -> Self {
        let n = inst.num_nodes();
        let mut cuts = Vec::new();
        if n <= 12 {
            for mask in 1u32..(1u32 << n) - 1 {
                let inside = |v: usize| mask & (1 << v) != 0;
                let traffic: Rational = inst
                    .demand()
                    .positive_pairs()
                    .filter(|(s, t, _)| inside(*s) && !inside(*t))
                    .map(|(_, _, d)| d.clone())
                    .sum();
                if traffic.is_positive() {
                    let arcs = (0..inst.arcs().len())
                        .filter(|&a| inside(inst.arcs()[a].tail) && !inside(inst.arcs()[a].head))
                        .collect();
                    cuts.push((arcs, traffic));
                }
            }
        }
        CutScreen { cuts }
    }

    fn passes(&self, caps: &[Rational]) -> bool {
        self.cuts
            .iter()
            .all(|(arcs, t)| arcs.iter().map(|&a| &caps[a]).sum::<Rational>() >= *t)
    }
}

/// Routing feasibility of grid points, using that feasibility is monotone in `y`.
struct FeasibilityCache<'a> {
    inst: &'a Instance,
    screen: CutScreen,
    feasible: Vec<Vec<u64>>,
    infeasible: Vec<Vec<u64>>,
}

impl<'a> FeasibilityCache<'a> {
    fn new(inst: &'a Instance) -> Self {
        FeasibilityCache {
            inst,
            screen: CutScreen::new(inst),
            feasible: Vec::new(),
            infeasible: Vec::new(),
        }
    }

    fn is_feasible(&mut self, y: &[u64]) -> bool {
        let le = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(u, v)| u <= v);
        if self.feasible.iter().any(|f| le(f, y)) {
            return true;
        }
        if self.infeasible.iter().any(|f| le(y, f)) {
            return false;
        }
        let caps = capacities(self.inst, y);
        let ok = self.screen.passes(&caps) && check_routing_with_capacities(self.inst, &caps).is_feasible();
        if ok {
            self.feasible.retain(|f| !le(y, f));
            self.feasible.push(y.to_vec());
        } else {
            self.infeasible.retain(|f| !le(f, y));
            self.infeasible.push(y.to_vec());
        }
        ok
    }
}

/// LP of the relaxation with `y` fixed, reused across grid points.
struct FixedY {
    model: LpModel,
    y_cols: Vec<usize>,
}

impl FixedY {
    fn new(inst: &Instance) -> Self {
        let model = build_relaxation(inst, &[]).expect("empty cut list");
        let nm = inst.facilities().len();
        let y_cols = (0..inst.arcs().len() * nm)
            .map(|i| {
                model
                    .column(Var::Capacity {
                        arc: i / nm,
                        facility: i % nm,
                    })
                    .expect("column")
            })
            .collect();
        FixedY { model, y_cols }
    }

    fn fix(&mut self, y: &[u64]) {
        for (j, v) in self.y_cols.iter().zip(y) {
            let q = int(*v as i64);
            self.model.program.lower[*j] = q.clone();
            self.model.program.upper[*j] = Some(q);
        }
    }

    fn set_objective(&mut self, terms: &[(Var, Rational)]) {
        self.model.set_objective(terms, false).expect("known variables");
    }

    /// Exact optimum, or `None` when infeasible.
    fn solve_exact(&self) -> Option<(Rational, FractionalPoint)> {
        let s = self.model.solve_exact(&SimplexOptions::default());
        s.exact_objective.map(|v| (v, s.point))
    }

    fn solve_float(&self) -> Option<f64> {
        let s = self.model.solve(&SimplexOptions::default());
        s.is_optimal().then_some(s.objective)
    }
}

fn capacity_cost(inst: &Instance, y: &[u64]) -> Rational {
    let nm = inst.facilities().len();
    y.iter()
        .enumerate()
        .filter(|(_, v)| **v > 0)
        .map(|(i, v)| &inst.facilities()[i % nm].costs[i / nm] * int(*v as i64))
        .sum()
}

fn objective_terms(inst: &Instance) -> Vec<(Var, Rational)> {
    let mut terms = Vec::new();
    for a in 0..inst.arcs().len() {
        for k in 0..inst.commodities().len() {
            terms.push((Var::Flow { arc: a, commodity: k }, inst.flow_cost(a).clone()));
        }
        for (m, f) in inst.facilities().iter().enumerate() {
            terms.push((Var::Capacity { arc: a, facility: m }, f.costs[a].clone()));
        }
    }
    terms
}

/// Integer optimum over `0 <= y <= bounds` by enumeration. Splittable
/// instances solve one flow LP per surviving grid point; unsplittable ones
/// enumerate simple paths per commodity.
pub fn brute_force_ip(inst: &Instance, bounds: &YBounds, budget: u64) -> Result<IpSolution, OracleError> {
    bounds.check(inst)?;
    match inst.routing() {
        Routing::Splittable => brute_force_splittable(inst, bounds, budget),
        Routing::Unsplittable => brute_force_unsplittable(inst, bounds, budget),
    }
}

fn brute_force_splittable(inst: &Instance, bounds: &YBounds, budget: u64) -> Result<IpSolution, OracleError> {
    within_budget(bounds.grid_size(), budget)?;
    let flat: Vec<u64> = bounds.bound.iter().flatten().copied().collect();
    let mut cache = FeasibilityCache::new(inst);
    let mut lp = FixedY::new(inst);
    lp.set_objective(&objective_terms(inst));
    let free_flow = inst.flow_costs().iter().all(Zero::is_zero);
    let mut best: Option<IpSolution> = None;
    let mut y = vec![0u64; flat.len()];
    loop {
        let cost = capacity_cost(inst, &y);
        let promising = best.as_ref().is_none_or(|b| cost < b.value);
        if promising
            && cache.is_feasible(&y) {
                lp.fix(&y);
                let improves = free_flow
                    || match (lp.solve_float(), &best) {
                        (Some(v), Some(b)) => v < crate::rational::to_f64(&b.value) + 1e-7,
                        (_, None) => true,
                        (None, Some(_)) => true,
                    };
                if improves {
                    if let Some((value, point)) = lp.solve_exact() {
                        if best.as_ref().is_none_or(|b| value < b.value) {
                            best = Some(IpSolution {
                                value,
                                y: y.chunks(inst.facilities().len()).map(<[u64]>::to_vec).collect(),
                                point,
                            });
                        }
                    }
                }
            }
        if !next_in_box(&mut y, &flat) {
            break;
        }
    }
    best.ok_or(OracleError::Infeasible)
}

/// Simple paths from `s` to `t` as arc lists.
pub fn simple_paths(inst: &Instance, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(inst: &Instance, v: usize, t: usize, seen: &mut Vec<bool>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == t {
            out.push(path.clone());
            return;
        }
        for (a, arc) in inst.arcs().iter().enumerate() {
            if arc.tail == v && !seen[arc.head] {
                seen[arc.head] = true;
                path.push(a);
                walk(inst, arc.head, t, seen, path, out);
                path.pop();
                seen[arc.head] = false;
            }
        }
    }
    let mut seen = vec![false; inst.num_nodes()];
    seen[s] = true;
    let mut out = Vec::new();
    walk(inst, s, t, &mut seen, &mut Vec::new(), &mut out);
    out
}

/// Path choices for each commodity, with the combined number of choices.
fn path_sets(inst: &Instance) -> Result<(Vec<Vec<Vec<usize>>>, u128), OracleError> {
    if inst.commodity_mode() != CommodityMode::Disaggregated {
        return Err(OracleError::NeedsDisaggregated);
    }
    let sets: Vec<Vec<Vec<usize>>> = inst
        .commodities()
        .iter()
        .map(|c| simple_paths(inst, c.source, c.sink.expect("disaggregated")))
        .collect();
    let combos = sets.iter().map(|p| p.len() as u128).product();
    Ok((sets, combos))
}

/// Visits every unsplittable routing as `(choice per commodity, point with x)`.
fn for_each_routing(inst: &Instance, sets: &[Vec<Vec<usize>>], mut f: impl FnMut(&FractionalPoint) -> bool) {
    if sets.iter().any(Vec::is_empty) {
        return;
    }
    let radix: Vec<u64> = sets.iter().map(|p| p.len() as u64 - 1).collect();
    let mut choice = vec![0u64; sets.len()];
    loop {
        let mut point = FractionalPoint::new();
        for (k, c) in choice.iter().enumerate() {
            let d = inst.commodities()[k].supply();
            for &a in &sets[k][*c as usize] {
                point.set(Var::Flow { arc: a, commodity: k }, d.clone());
            }
        }
        if !f(&point) || !next_in_box(&mut choice, &radix) {
            return;
        }
    }
}

fn arc_load(inst: &Instance, point: &FractionalPoint, a: usize) -> Rational {
    (0..inst.commodities().len()).map(|k| point.x(a, k)).sum()
}

/// Per-arc `y` vectors in the box whose capacity covers `need`.
fn arc_options(inst: &Instance, bounds: &YBounds, a: usize, need: &Rational) -> Vec<Vec<u64>> {
    let b = &bounds.bound[a];
    let mut y = vec![0u64; b.len()];
    let mut out = Vec::new();
    loop {
        let cap: Rational = y
            .iter()
            .enumerate()
            .map(|(m, v)| inst.facility_capacity(m) * int(*v as i64))
            .sum::<Rational>()
            + &inst.arcs()[a].existing_capacity;
        if cap >= *need {
            out.push(y.clone());
        }
        if !next_in_box(&mut y, b) {
            return out;
        }
    }
}

fn brute_force_unsplittable(inst: &Instance, bounds: &YBounds, budget: u64) -> Result<IpSolution, OracleError> {
    let (sets, combos) = path_sets(inst)?;
    let per_arc: u128 = (0..inst.arcs().len()).map(|a| bounds.arc_grid_size(a)).sum();
    within_budget(combos.saturating_mul(per_arc.max(1)), budget)?;
    let mut best: Option<IpSolution> = None;
    for_each_routing(inst, &sets, |point| {
        let mut value: Rational = (0..inst.arcs().len())
            .map(|a| inst.flow_cost(a) * arc_load(inst, point, a))
            .sum();
        let mut ys = Vec::new();
        for a in 0..inst.arcs().len() {
            let options = arc_options(inst, bounds, a, &arc_load(inst, point, a));
            let cheapest = options.into_iter().min_by_key(|y| {
                y.iter()
                    .enumerate()
                    .map(|(m, v)| &inst.facilities()[m].costs[a] * int(*v as i64))
                    .sum::<Rational>()
            });
            let Some(y) = cheapest else { return true };
            value += y
                .iter()
                .enumerate()
                .map(|(m, v)| &inst.facilities()[m].costs[a] * int(*v as i64))
                .sum::<Rational>();
            ys.push(y);
        }
        if best.as_ref().is_none_or(|b| value < b.value) {
            let mut p = point.clone();
            for (a, y) in ys.iter().enumerate() {
                for (m, v) in y.iter().enumerate() {
                    p.set(Var::Capacity { arc: a, facility: m }, int(*v as i64));
                }
            }
            best = Some(IpSolution { value, y: ys, point: p });
        }
        true
    });
    best.ok_or(OracleError::Infeasible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// A feasible integer point that violates the cut.
    Counterexample(FractionalPoint),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Searches the feasible points with `y` in the box for one that violates
/// `cut`. Flows are bounded by commodity supply, as in the relaxation.
pub fn validate_cut(cut: &LinearCut, inst: &Instance, bounds: &YBounds, budget: u64) -> Result<Validity, OracleError> {
    bounds.check(inst)?;
    for v in cut.coeffs().keys() {
        let known = match *v {
            Var::Flow { arc, commodity } => arc < inst.arcs().len() && commodity < inst.commodities().len(),
            Var::Capacity { arc, facility } => arc < inst.arcs().len() && facility < inst.facilities().len(),
        };
        if !known {
            return Err(OracleError::UnknownVariable(*v));
        }
    }
    match inst.routing() {
        Routing::Splittable => validate_splittable(cut, inst, bounds, budget),
        Routing::Unsplittable => validate_unsplittable(cut, inst, bounds, budget),
    }
}

/// A reusable validity checker for many cuts on one instance: feasible grid
/// points are computed once.
pub struct Validator<'a> {
    inst: &'a Instance,
    bounds: YBounds,
    feasible: Vec<Vec<u64>>,
    lp: FixedY,
}

impl<'a> Validator<'a> {
    pub fn new(inst: &'a Instance, bounds: YBounds, budget: u64) -> Result<Self, OracleError> {
        bounds.check(inst)?;
        within_budget(bounds.grid_size(), budget)?;
        let mut feasible = Vec::new();
        if inst.routing() == Routing::Splittable {
            let flat: Vec<u64> = bounds.bound.iter().flatten().copied().collect();
            let mut cache = FeasibilityCache::new(inst);
            let mut y = vec![0u64; flat.len()];
            loop {
                if cache.is_feasible(&y) {
                    feasible.push(y.clone());
                }
                if !next_in_box(&mut y, &flat) {
                    break;
                }
            }
        }
        Ok(Validator {
            inst,
            bounds,
            feasible,
            lp: FixedY::new(inst),
        })
    }

    /// Number of routable grid points (splittable instances).
    pub fn feasible_points(&self) -> usize {
        self.feasible.len()
    }

    pub fn check(&mut self, cut: &LinearCut) -> Result<Validity, OracleError> {
        if self.inst.routing() == Routing::Unsplittable {
            return validate_unsplittable(cut, self.inst, &self.bounds, BUDGET);
        }
        let nm = self.inst.facilities().len();
        let flow_terms: Vec<(Var, Rational)> = cut
            .coeffs()
            .iter()
            .filter(|(v, _)| matches!(v, Var::Flow { .. }))
            .map(|(v, c)| (*v, c.clone()))
            .collect();
        // most negative value the flow part can take
        let flow_floor: Rational = flow_terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(v, c)| match v {
                Var::Flow { commodity, .. } => c * self.inst.flow_bound(*commodity),
                Var::Capacity { .. } => unreachable!(),
            })
            .sum();
        if !flow_terms.is_empty() {
            self.lp.set_objective(&flow_terms);
        }
        for y in &self.feasible {
            let yp = capacity_point(self.inst, y);
            let y_part: Rational = cut
                .coeffs()
                .iter()
                .filter_map(|(v, c)| match v {
                    Var::Capacity { arc, facility } => Some(c * int(y[arc * nm + facility] as i64)),
                    Var::Flow { .. } => None,
                })
                .sum();
            if flow_terms.is_empty() {
                if y_part < *cut.rhs() {
                    return Ok(Validity::Counterexample(yp));
                }
                continue;
            }
            if &y_part + &flow_floor >= *cut.rhs() {
                continue;
            }
            self.lp.fix(y);
            let Some(v) = self.lp.solve_float() else { continue };
            if crate::rational::to_f64(&y_part) + v > crate::rational::to_f64(cut.rhs()) + 1e-7 {
                continue;
            }
            if let Some((min_flow, point)) = self.lp.solve_exact() {
                if y_part + min_flow < *cut.rhs() {
                    return Ok(Validity::Counterexample(point));
                }
            }
        }
        Ok(Validity::Valid)
    }
}

fn validate_splittable(cut: &LinearCut, inst: &Instance, bounds: &YBounds, budget: u64) -> Result<Validity, OracleError> {
    Validator::new(inst, bounds.clone(), budget)?.check(cut)
}

fn validate_unsplittable(cut: &LinearCut, inst: &Instance, bounds: &YBounds, budget: u64) -> Result<Validity, OracleError> {
    let (sets, combos) = path_sets(inst)?;
    let per_arc: u128 = (0..inst.arcs().len()).map(|a| bounds.arc_grid_size(a)).sum();
    within_budget(combos.saturating_mul(per_arc.max(1)), budget)?;
    let options: Vec<Vec<Vec<u64>>> = (0..inst.arcs().len())
        .map(|a| arc_options(inst, bounds, a, &Rational::zero()))
        .collect();
    let mut found = None;
    for_each_routing(inst, &sets, |point| {
        // the cut separates over arcs once the routing is fixed
        let mut lhs: Rational = (0..inst.arcs().len())
            .flat_map(|a| (0..inst.commodities().len()).map(move |k| (a, k)))
            .map(|(a, k)| cut.coeff(Var::Flow { arc: a, commodity: k }) * point.x(a, k))
            .sum();
        let mut chosen = Vec::new();
        for (a, opts) in options.iter().enumerate() {
            let need = arc_load(inst, point, a);
            let cap = |y: &Vec<u64>| -> Rational {
                y.iter()
                    .enumerate()
                    .map(|(m, v)| inst.facility_capacity(m) * int(*v as i64))
                    .sum::<Rational>()
                    + &inst.arcs()[a].existing_capacity
            };
            let val = |y: &Vec<u64>| -> Rational {
                y.iter()
                    .enumerate()
                    .map(|(m, v)| cut.coeff(Var::Capacity { arc: a, facility: m }) * int(*v as i64))
                    .sum()
            };
            let Some(best) = opts.iter().filter(|y| cap(y) >= need).min_by_key(|y| val(y)) else {
                return true;
            };
            lhs += val(best);
            chosen.push(best.clone());
        }
        if lhs < *cut.rhs() {
            let mut p = point.clone();
            for (a, y) in chosen.iter().enumerate() {
                for (m, v) in y.iter().enumerate() {
                    p.set(Var::Capacity { arc: a, facility: m }, int(*v as i64));
                }
            }
            found = Some(p);
            return false;
        }
        true
    });
    Ok(found.map_or(Validity::Valid, Validity::Counterexample))
}

/// Maximizes `sum pi x - beta y` over the arc set with `y` fixed. Splittable
/// sets use the fractional knapsack greedy; unsplittable ones enumerate.
fn arc_max(rel: &ArcSetRelaxation, ineq: &ArcInequality, y: &Rational) -> Option<Vec<Rational>> {
    let cap = &rel.a0 + y;
    if cap.is_negative() {
        return None;
    }
    let n = rel.len();
    match rel.mode {
        FlowMode::Splittable => {
            let mut order: Vec<usize> = (0..n).filter(|&i| ineq.pi[i].is_positive()).collect();
            // free items first, then by decreasing pi/a
            order.sort_by(|&i, &j| {
                let key = |k: usize| {
                    if rel.a[k].is_zero() {
                        None
                    } else {
                        Some(&ineq.pi[k] / &rel.a[k])
                    }
                };
                match (key(i), key(j)) {
                    (None, None) => std::cmp::Ordering::Equal,
                    (None, _) => std::cmp::Ordering::Less,
                    (_, None) => std::cmp::Ordering::Greater,
                    (Some(a), Some(b)) => b.cmp(&a),
                }
            });
            let mut x = vec![Rational::zero(); n];
            let mut left = cap;
            for i in order {
                if rel.a[i].is_zero() {
                    x[i] = Rational::one();
                    continue;
                }
                let take = crate::rational::min(&Rational::one(), &(&left / &rel.a[i]));
                if !take.is_positive() {
                    break;
                }
                left -= &rel.a[i] * &take;
                x[i] = take;
            }
            Some(x)
        }
        FlowMode::Unsplittable => {
            let mut best: Option<(Rational, Vec<Rational>)> = None;
            for mask in 0u64..(1u64 << n) {
                let x: Vec<Rational> = (0..n).map(|i| int(((mask >> i) & 1) as i64)).collect();
                if !rel.contains(&x, y) {
                    continue;
                }
                let v = ineq.excess(&x, y);
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, x));
                }
            }
            best.map(|(_, x)| x)
        }
    }
}

/// Validity of an arc-set inequality for integer `0 <= y <= y_max`: returns a
/// violating `(x, y)` if one exists.
pub fn validate_arc_inequality(
    rel: &ArcSetRelaxation,
    ineq: &ArcInequality,
    y_max: u64,
) -> Option<(Vec<Rational>, Rational)> {
    (0..=y_max as i64).map(int).find_map(|y| {
        let x = arc_max(rel, ineq, &y)?;
        ineq.excess(&x, &y).is_positive().then_some((x, y))
    })
}

/// Points of an unsplittable arc set with `y <= y_max`, as `(x, y)` vectors.
pub fn arc_set_points(rel: &ArcSetRelaxation, y_max: u64) -> Vec<Vec<Rational>> {
    let n = rel.len();
    let mut out = Vec::new();
    for y in 0..=y_max as i64 {
        for mask in 0u64..(1u64 << n) {
            let mut x: Vec<Rational> = (0..n).map(|i| int(((mask >> i) & 1) as i64)).collect();
            if rel.contains(&x, &int(y)) {
                x.push(int(y));
                out.push(x);
            }
        }
    }
    out
}

/// Dimension of the affine hull of `points`.
pub fn affine_dimension(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for j in c..cols {
                    let delta = &rows[rank][j] * &f;
                    rows[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(dimension of tight points, dimension of the set)` for an unsplittable
/// arc-set inequality; the inequality is a facet when the first is one less
/// than the second (and it is valid).
pub fn arc_facet_dimensions(rel: &ArcSetRelaxation, ineq: &ArcInequality, y_max: u64) -> (usize, usize) {
    let points = arc_set_points(rel, y_max);
    let n = rel.len();
    let tight: Vec<Vec<Rational>> = points
        .iter()
        .filter(|p| ineq.excess(&p[..n], &p[n]).is_zero())
        .cloned()
        .collect();
    (affine_dimension(&tight), affine_dimension(&points))
}

/// Dimension of the tight integer points of a capacity-only cut on a
/// splittable instance, against the dimension of all routable grid points.
pub fn capacity_cut_dimensions(cut: &LinearCut, inst: &Instance, bounds: &YBounds, budget: u64) -> Result<(usize, usize), OracleError> {
    let v = Validator::new(inst, bounds.clone(), budget)?;
    let nm = inst.facilities().len();
    let as_vec = |y: &Vec<u64>| y.iter().map(|v| int(*v as i64)).collect::<Vec<_>>();
    let all: Vec<Vec<Rational>> = v.feasible.iter().map(as_vec).collect();
    let tight: Vec<Vec<Rational>> = v
        .feasible
        .iter()
        .filter(|y| {
            let lhs: Rational = cut
                .coeffs()
                .iter()
                .filter_map(|(var, c)| match var {
                    Var::Capacity { arc, facility } => Some(c * int(y[arc * nm + facility] as i64)),
                    Var::Flow { .. } => None,
                })
                .sum();
            lhs == *cut.rhs()
        })
        .map(as_vec)
        .collect();
    Ok((affine_dimension(&tight), affine_dimension(&all)))
}
