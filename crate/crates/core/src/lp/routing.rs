//! Multicommodity routing feasibility under fixed arc capacities, with metric
//! certificates for infeasible capacity vectors.

use num_traits::{Signed, Zero};

use super::model::to_float;
use super::simplex::{self, LinearProgram, Sense, SimplexOptions, Status};
use crate::cut::FractionalPoint;
use crate::model::Instance;
use crate::rational::{rationalize, Rational};

/// Arc weights `v >= 0` and node potentials `u[k][i]` with `u[k][source_k] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricVector {
    pub v: Vec<Rational>,
    pub u: Vec<Vec<Rational>>,
}

impl MetricVector {
    /// Membership in the cone: `v >= 0`, `u_kk = 0` and `v_ij >= u_kj - u_ki`.
    pub fn in_cone(&self, inst: &Instance) -> bool {
        if self.v.iter().any(|v| v.is_negative()) {
            return false;
        }
        for (k, com) in inst.commodities().iter().enumerate() {
            if !self.u[k][com.source].is_zero() {
                return false;
            }
            for (a, arc) in inst.arcs().iter().enumerate() {
                if self.v[a] < &self.u[k][arc.head] - &self.u[k][arc.tail] {
                    return false;
                }
            }
        }
        true
    }

    /// `sum_k sum_i w_i^k u_ki`.
    pub fn demand_side(&self, inst: &Instance) -> Rational {
        inst.commodities()
            .iter()
            .enumerate()
            .flat_map(|(k, com)| com.net_demand.iter().zip(&self.u[k]).map(|(w, u)| w * u))
            .sum()
    }

    /// `sum_a cap_a v_a`.
    pub fn capacity_side(&self, caps: &[Rational]) -> Rational {
        caps.iter().zip(&self.v).map(|(c, v)| c * v).sum()
    }

    /// Replaces `u` by shortest-path distances under weights `v`, which
    /// maximizes the demand side for this `v`.
    pub fn tighten(&mut self, inst: &Instance) {
        for (k, com) in inst.commodities().iter().enumerate() {
            self.u[k] = shortest_paths(inst, &self.v, com.source);
        }
    }

    /// Scales so that `sum v = 1`; no-op when `v` is zero.
    pub fn normalize(&mut self) {
        let total: Rational = self.v.iter().sum();
        if total.is_positive() {
            for v in &mut self.v {
                *v /= &total;
            }
            for row in &mut self.u {
                for u in row {
                    *u /= &total;
                }
            }
        }
    }
}

/// Dijkstra over nonnegative rational weights. Unreachable nodes get the largest
/// finite distance, which keeps every cone constraint satisfied.
pub fn shortest_paths(inst: &Instance, weights: &[Rational], source: usize) -> Vec<Rational> {
    let n = inst.num_nodes();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = Some(Rational::zero());
    loop {
        let mut pick: Option<usize> = None;
        for i in 0..n {
            if done[i] {
                continue;
            }
            if let Some(d) = &dist[i] {
                if pick.is_none_or(|p| d < dist[p].as_ref().expect("set")) {
                    pick = Some(i);
                }
            }
        }
        let Some(i) = pick else { break };
        done[i] = true;
        let di = dist[i].clone().expect("set");
        for (a, arc) in inst.arcs().iter().enumerate() {
            if arc.tail == i {
                let cand = &di + &weights[a];
                if dist[arc.head].as_ref().is_none_or(|d| &cand < d) {
                    dist[arc.head] = Some(cand);
                }
            }
        }
    }
    let far = dist.iter().flatten().max().cloned().unwrap_or_else(Rational::zero);
    dist.into_iter().map(|d| d.unwrap_or_else(|| far.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoutingResult {
    Feasible,
    Infeasible(MetricVector),
}

impl RoutingResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, RoutingResult::Feasible)
    }
}

/// Total capacity per arc: `c̄_a + sum_m c_m y_{m,a}`.
pub fn arc_capacities(inst: &Instance, point: &FractionalPoint) -> Vec<Rational> {
    inst.arcs()
        .iter()
        .enumerate()
        .map(|(a, arc)| {
            let installed: Rational = (0..inst.facilities().len())
                .map(|m| inst.facility_capacity(m) * point.y(a, m))
                .sum();
            &arc.existing_capacity + installed
        })
        .collect()
}

/// Routing feasibility for the capacities induced by the `y` part of `point`.
pub fn check_feasible_routing(inst: &Instance, point: &FractionalPoint) -> RoutingResult {
    check_routing_with_capacities(inst, &arc_capacities(inst, point))
}

fn routing_program(inst: &Instance, caps: &[Rational]) -> LinearProgram<Rational> {
    let nk = inst.commodities().len();
    let na = inst.arcs().len();
    let mut lp = LinearProgram::<Rational>::new(na * nk);
    let col = |a: usize, k: usize| a * nk + k;
    for (k, com) in inst.commodities().iter().enumerate() {
        for node in 0..inst.num_nodes() {
            let mut coeffs = Vec::new();
            for (a, arc) in inst.arcs().iter().enumerate() {
                if arc.head == node {
                    coeffs.push((col(a, k), Rational::from_integer(1.into())));
                } else if arc.tail == node {
                    coeffs.push((col(a, k), Rational::from_integer((-1).into())));
                }
            }
            lp.add_row(coeffs, Sense::Eq, com.net_demand[node].clone());
        }
    }
    for (a, cap) in caps.iter().enumerate() {
        let coeffs = (0..nk).map(|k| (col(a, k), Rational::from_integer(1.into()))).collect();
        lp.add_row(coeffs, Sense::Le, cap.clone());
    }
    lp
}

/// Maps Farkas multipliers of the routing program to a tightened metric vector
/// that separates `caps`, or `None` when it does not.
fn certificate_to_metric(inst: &Instance, caps: &[Rational], y: &[Rational]) -> Option<MetricVector> {
    let n = inst.num_nodes();
    let nk = inst.commodities().len();
    let v: Vec<Rational> = (0..caps.len()).map(|a| -y[nk * n + a].clone()).collect();
    if v.iter().any(|x| x.is_negative()) {
        return None;
    }
    let u = inst
        .commodities()
        .iter()
        .enumerate()
        .map(|(k, com)| (0..n).map(|i| &y[k * n + i] - &y[k * n + com.source]).collect())
        .collect();
    let mut mv = MetricVector { v, u };
    mv.tighten(inst);
    if mv.demand_side(inst) > mv.capacity_side(caps) {
        mv.normalize();
        Some(mv)
    } else {
        None
    }
}

/// Feasibility of the multicommodity flow set under the given arc capacities.
/// Uses a floating point solve; infeasibility is only reported with an exactly
/// verified certificate, falling back to exact arithmetic when needed.
pub fn check_routing_with_capacities(inst: &Instance, caps: &[Rational]) -> RoutingResult {
    if inst.commodities().is_empty() {
        return RoutingResult::Feasible;
    }
    let lp = routing_program(inst, caps);
    let opts = SimplexOptions::default();
    let s = simplex::solve(&to_float(&lp), &opts);
    match s.status {
        Status::Optimal => RoutingResult::Feasible,
        Status::Infeasible => {
            if let Some(y) = &s.farkas {
                let yq: Vec<Rational> = y.iter().map(|v| rationalize(*v, 1_000_000)).collect();
                if let Some(mv) = certificate_to_metric(inst, caps, &yq) {
                    return RoutingResult::Infeasible(mv);
                }
            }
            exact_routing(inst, &lp, caps)
        }
        _ => exact_routing(inst, &lp, caps),
    }
}

/// Same as [`check_routing_with_capacities`] but entirely in rational arithmetic.
pub fn check_routing_exact(inst: &Instance, caps: &[Rational]) -> RoutingResult {
    if inst.commodities().is_empty() {
        return RoutingResult::Feasible;
    }
    exact_routing(inst, &routing_program(inst, caps), caps)
}

fn exact_routing(inst: &Instance, lp: &LinearProgram<Rational>, caps: &[Rational]) -> RoutingResult {
    let s = simplex::solve(lp, &SimplexOptions::default());
    match (s.status, s.farkas) {
        (Status::Infeasible, Some(y)) => {
            debug_assert!(simplex::verify_farkas(lp, &y));
            match certificate_to_metric(inst, caps, &y) {
                Some(mv) => RoutingResult::Infeasible(mv),
                None => unreachable!("exact Farkas certificate always separates"),
            }
        }
        _ => RoutingResult::Feasible,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::model::{Arc, CommodityMode, DemandMatrix, Facility};
    use crate::rational::{int, rat};

    fn arc_instance(existing: Rational) -> Instance {
        Instance::new(
            vec!["s".into(), "t".into()],
            vec![Arc::new(0, 1, existing)],
            vec![Facility { capacity: 1, costs: vec![int(1)] }],
            DemandMatrix::from_pairs(2, [(0, 1, int(1))]),
            vec![int(0)],
            CommodityMode::Aggregated,
        )
    }

    pub(crate) fn triangle(t: Rational) -> Instance {
        let mut arcs = Vec::new();
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    arcs.push(Arc::new(i, j, int(0)));
                    pairs.push((i, j, t.clone()));
                }
            }
        }
        Instance::new(
            vec!["a".into(), "b".into(), "c".into()],
            arcs,
            vec![Facility { capacity: 1, costs: vec![int(1); 6] }],
            DemandMatrix::from_pairs(3, pairs),
            vec![int(0); 6],
            CommodityMode::Aggregated,
        )
    }

    #[test]
    fn single_arc_cases() {
        assert!(check_routing_with_capacities(&arc_instance(int(0)), &[int(1)]).is_feasible());
        match check_routing_with_capacities(&arc_instance(int(0)), &[int(0)]) {
            RoutingResult::Infeasible(mv) => {
                assert_eq!(mv.v, vec![int(1)]);
                assert_eq!(mv.u[0], vec![int(0), int(1)]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn triangle_certificate() {
        let inst = triangle(rat(1, 2));
        let caps = vec![int(0); 6];
        for result in [
            check_routing_with_capacities(&inst, &caps),
            check_routing_exact(&inst, &caps),
        ] {
            let RoutingResult::Infeasible(mv) = result else {
                panic!("zero capacity must be infeasible");
            };
            assert!(mv.in_cone(&inst));
            assert!(mv.demand_side(&inst) > mv.capacity_side(&caps));
            assert_eq!(mv.v.iter().sum::<Rational>(), int(1));
        }
    }
}
