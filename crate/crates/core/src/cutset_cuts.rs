//! Cut-set, flow-cut-set and multi-facility cut-set inequalities over a node
//! two-partition `(U, V)`.

use std::collections::BTreeSet;

use num_traits::Signed;
use thiserror::Error;

use crate::arc_cuts::{separate_residual_capacity, ArcSetRelaxation, FlowMode};
use crate::cut::{CutFamily, FractionalPoint, LinearCut, Var};
use crate::mir::{phi_minus, phi_plus, PhiParams};
use crate::model::Instance;
use crate::rational::{ceil, format_rational, int, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutSetError {
    #[error("partition side {0} is empty")]
    EmptySide(&'static str),
    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("remainder r is zero; the inequality is vacuous")]
    ZeroRemainder,
    #[error("selection references an arc or commodity outside the cut set")]
    BadSelection,
}

/// Constraints of the design problem restricted to arcs crossing `(U, V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSetRelaxation {
    pub in_u: Vec<bool>,
    /// Arcs from `U` to `V`.
    pub a_plus: Vec<usize>,
    /// Arcs from `V` to `U`.
    pub a_minus: Vec<usize>,
    /// Net supply `b^k` of each commodity in `U` for `V`; may be negative.
    pub b: Vec<Rational>,
    /// Existing capacity indexed by instance arc.
    pub existing: Vec<Rational>,
    /// Facility capacities `c_m`.
    pub capacities: Vec<Rational>,
    /// Positive traffic must cross but `A+` is empty.
    pub infeasible: bool,
}

/// Choice of commodities `Q`, outflow arcs `S+`, inflow arcs `S-` and base facility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCutSelection {
    pub q: Vec<usize>,
    pub s_plus: Vec<usize>,
    pub s_minus: Vec<usize>,
    pub facility: usize,
}

/// Sufficient facet conditions of the multi-facility cut-set inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetReport {
    pub outflow_split: bool,
    pub inflow_split: bool,
    pub positive_remainder: bool,
    pub positive_supplies: bool,
}

impl FacetReport {
    pub fn holds(&self) -> bool {
        self.outflow_split && self.inflow_split && self.positive_remainder && self.positive_supplies
    }
}

/// Aggregates the instance over the cut `(U, V)` given by the nodes of `U`.
pub fn build_cutset(inst: &Instance, u: &[usize]) -> Result<CutSetRelaxation, CutSetError> {
    let n = inst.num_nodes();
    let mut in_u = vec![false; n];
    for &i in u {
        if i >= n {
            return Err(CutSetError::NodeOutOfRange(i));
        }
        in_u[i] = true;
    }
    if !in_u.iter().any(|&b| b) {
        return Err(CutSetError::EmptySide("U"));
    }
    if in_u.iter().all(|&b| b) {
        return Err(CutSetError::EmptySide("V"));
    }
    let mut a_plus = Vec::new();
    let mut a_minus = Vec::new();
    for (a, arc) in inst.arcs().iter().enumerate() {
        match (in_u[arc.tail], in_u[arc.head]) {
            (true, false) => a_plus.push(a),
            (false, true) => a_minus.push(a),
            _ => {}
        }
    }
    let b: Vec<Rational> = inst
        .commodities()
        .iter()
        .map(|com| -(0..n).filter(|&i| in_u[i]).map(|i| &com.net_demand[i]).sum::<Rational>())
        .collect();
    let infeasible = a_plus.is_empty() && b.iter().any(|v| v.is_positive());
    Ok(CutSetRelaxation {
        in_u,
        a_plus,
        a_minus,
        b,
        existing: inst.arcs().iter().map(|a| a.existing_capacity.clone()).collect(),
        capacities: (0..inst.facilities().len()).map(|m| inst.facility_capacity(m)).collect(),
        infeasible,
    })
}

impl CutSetRelaxation {
    /// Commodities with positive supply across the cut.
    pub fn positive_commodities(&self) -> Vec<usize> {
        (0..self.b.len()).filter(|&k| self.b[k].is_positive()).collect()
    }

    /// `sum_k max(0, b^k)`.
    pub fn positive_traffic(&self) -> Rational {
        self.b.iter().filter(|v| v.is_positive()).sum()
    }

    fn existing_sum(&self, arcs: &[usize]) -> Rational {
        arcs.iter().map(|&a| &self.existing[a]).sum()
    }

    /// `b'_Q = b_Q - c̄(S+) + c̄(S-)`.
    pub fn adjusted_supply(&self, sel: &FlowCutSelection) -> Rational {
        let bq: Rational = sel.q.iter().map(|&k| &self.b[k]).sum();
        bq - self.existing_sum(&sel.s_plus) + self.existing_sum(&sel.s_minus)
    }

    /// Multipliers `ceil(c_m / c_s)` of the single-facility view with base `s`.
    pub fn weights(&self, s: usize) -> Vec<Rational> {
        self.capacities.iter().map(|c| ceil(&(c / &self.capacities[s]))).collect()
    }

    fn check(&self, sel: &FlowCutSelection) -> Result<(), CutSetError> {
        let ok = sel.facility < self.capacities.len()
            && sel.q.iter().all(|&k| k < self.b.len())
            && sel.s_plus.iter().all(|a| self.a_plus.contains(a))
            && sel.s_minus.iter().all(|a| self.a_minus.contains(a));
        if ok {
            Ok(())
        } else {
            Err(CutSetError::BadSelection)
        }
    }

    fn side(&self, u: bool) -> Vec<usize> {
        (0..self.in_u.len()).filter(|&i| self.in_u[i] == u).collect()
    }
}

/// `Y(A+) >= ceil((b_K - c̄(A+)) / c_s)` in the single-facility view with base
/// `s`, where `b_K` counts positive supplies only; `None` when the bound is not positive.
pub fn cutset_cut(rel: &CutSetRelaxation, s: usize) -> Option<LinearCut> {
    let c = &rel.capacities[s];
    let rhs = ceil(&((rel.positive_traffic() - rel.existing_sum(&rel.a_plus)) / c));
    if !rhs.is_positive() {
        return None;
    }
    let w = rel.weights(s);
    let terms = rel
        .a_plus
        .iter()
        .flat_map(|&a| w.iter().enumerate().map(move |(m, wm)| (Var::Capacity { arc: a, facility: m }, wm.clone())));
    LinearCut::new(terms, rhs, CutFamily::CutSet, format!("U={:?} s={s}", rel.side(true))).ok()
}

/// `r Y(S+) + x_Q(A+ - S+) + (c - r) Y(S-) - x_Q(S-) >= r eta - c̄(S-)` with
/// `r`, `eta` taken from `b'_Q` and base capacity `c = c_s`.
pub fn flow_cutset_cut(rel: &CutSetRelaxation, sel: &FlowCutSelection) -> Result<LinearCut, CutSetError> {
    rel.check(sel)?;
    let c = rel.capacities[sel.facility].clone();
    let p = PhiParams::new(&c, &rel.adjusted_supply(sel)).map_err(|_| CutSetError::ZeroRemainder)?;
    let w = rel.weights(sel.facility);
    let plus_y = |_: &Rational| p.r.clone();
    let minus_y = |_: &Rational| &c - &p.r;
    build_cut(rel, sel, &p, &w, plus_y, minus_y, CutFamily::FlowCutSet)
}

/// Multi-facility cut-set inequality with `phi+`/`phi-` coefficients.
pub fn multifacility_cutset_cut(
    rel: &CutSetRelaxation,
    sel: &FlowCutSelection,
) -> Result<(LinearCut, FacetReport), CutSetError> {
    rel.check(sel)?;
    let c = rel.capacities[sel.facility].clone();
    let p = PhiParams::new(&c, &rel.adjusted_supply(sel)).map_err(|_| CutSetError::ZeroRemainder)?;
    let ones = vec![int(1); rel.capacities.len()];
    let cut = build_cut(
        rel,
        sel,
        &p,
        &ones,
        |cm| phi_plus(&p, cm),
        |cm| phi_minus(&p, cm),
        CutFamily::MultiFacility,
    )?;
    let report = FacetReport {
        outflow_split: !sel.s_plus.is_empty() && sel.s_plus.len() < rel.a_plus.len(),
        inflow_split: !sel.s_minus.is_empty() && sel.s_minus.len() < rel.a_minus.len(),
        positive_remainder: p.r.is_positive(),
        positive_supplies: sel.q.iter().all(|&k| rel.b[k].is_positive()),
    };
    Ok((cut, report))
}

fn build_cut(
    rel: &CutSetRelaxation,
    sel: &FlowCutSelection,
    p: &PhiParams,
    w: &[Rational],
    plus: impl Fn(&Rational) -> Rational,
    minus: impl Fn(&Rational) -> Rational,
    family: CutFamily,
) -> Result<LinearCut, CutSetError> {
    let s_plus: BTreeSet<usize> = sel.s_plus.iter().copied().collect();
    let mut terms = Vec::new();
    for &a in &rel.a_plus {
        if s_plus.contains(&a) {
            for (m, cm) in rel.capacities.iter().enumerate() {
                terms.push((Var::Capacity { arc: a, facility: m }, plus(cm) * &w[m]));
            }
        } else {
            for &k in &sel.q {
                terms.push((Var::Flow { arc: a, commodity: k }, int(1)));
            }
        }
    }
    for &a in &sel.s_minus {
        for (m, cm) in rel.capacities.iter().enumerate() {
            terms.push((Var::Capacity { arc: a, facility: m }, minus(cm) * &w[m]));
        }
        for &k in &sel.q {
            terms.push((Var::Flow { arc: a, commodity: k }, int(-1)));
        }
    }
    let rhs = &p.r * &p.eta - rel.existing_sum(&sel.s_minus);
    let provenance = format!(
        "U={:?} Q={:?} S+={:?} S-={:?} s={} r={}",
        rel.side(true),
        sel.q,
        sel.s_plus,
        sel.s_minus,
        sel.facility,
        format_rational(&p.r)
    );
    LinearCut::new(terms, rhs, family, provenance).map_err(|_| CutSetError::BadSelection)
}

fn flow_q(point: &FractionalPoint, a: usize, q: &[usize]) -> Rational {
    q.iter().map(|&k| point.x(a, k)).sum()
}

fn y_weighted(point: &FractionalPoint, a: usize, coef: &[Rational]) -> Rational {
    coef.iter().enumerate().map(|(m, c)| c * point.y(a, m)).sum()
}

/// Largest number of crossing arcs for which subset pairs are enumerated when
/// existing capacities make the remainder depend on the chosen arcs.
pub const ARC_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separated {
    pub selection: FlowCutSelection,
    pub cut: LinearCut,
    pub violation: Rational,
}

fn best_of(a: Option<Separated>, b: Option<Separated>) -> Option<Separated> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.violation > x.violation { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn evaluate(
    rel: &CutSetRelaxation,
    sel: FlowCutSelection,
    point: &FractionalPoint,
    multi: bool,
) -> Option<Separated> {
    let cut = if multi {
        multifacility_cutset_cut(rel, &sel).ok()?.0
    } else {
        flow_cutset_cut(rel, &sel).ok()?
    };
    let violation = cut.violation(point);
    violation.is_positive().then_some(Separated {
        selection: sel,
        cut,
        violation,
    })
}

/// Arc choice for fixed `Q` and base `s`: the greedy rule of putting `a` into
/// `S+` (`S-`) when its capacity term is below its flow term. Exact when
/// crossing arcs carry no existing capacity; otherwise subset pairs are
/// enumerated up to [`ARC_ENUMERATION_CAP`] arcs and the greedy rule is
/// iterated to a fixed point beyond that.
fn separate_arcs(
    rel: &CutSetRelaxation,
    q: &[usize],
    s: usize,
    point: &FractionalPoint,
    multi: bool,
) -> Option<Separated> {
    let crossing: Vec<usize> = rel.a_plus.iter().chain(&rel.a_minus).copied().collect();
    let with_existing = crossing.iter().any(|&a| rel.existing[a].is_positive());
    let sel_for = |s_plus: Vec<usize>, s_minus: Vec<usize>| FlowCutSelection {
        q: q.to_vec(),
        s_plus,
        s_minus,
        facility: s,
    };
    if with_existing && crossing.len() <= ARC_ENUMERATION_CAP {
        let mut best = None;
        for mask in 0u32..(1u32 << crossing.len()) {
            let mut sp = Vec::new();
            let mut sm = Vec::new();
            for (i, &a) in crossing.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if i < rel.a_plus.len() {
                        sp.push(a);
                    } else {
                        sm.push(a);
                    }
                }
            }
            best = best_of(best, evaluate(rel, sel_for(sp, sm), point, multi));
        }
        return best;
    }
    let greedy = |sel: &FlowCutSelection| -> Option<(Vec<usize>, Vec<usize>)> {
        let c = &rel.capacities[s];
        let p = PhiParams::new(c, &rel.adjusted_supply(sel)).ok()?;
        let w = rel.weights(s);
        let (plus, minus): (Vec<Rational>, Vec<Rational>) = if multi {
            (
                rel.capacities.iter().map(|cm| phi_plus(&p, cm)).collect(),
                rel.capacities.iter().map(|cm| phi_minus(&p, cm)).collect(),
            )
        } else {
            (
                w.iter().map(|wm| wm * &p.r).collect(),
                w.iter().map(|wm| wm * (c - &p.r)).collect(),
            )
        };
        let sp = rel
            .a_plus
            .iter()
            .copied()
            .filter(|&a| y_weighted(point, a, &plus) < flow_q(point, a, q))
            .collect();
        let sm = rel
            .a_minus
            .iter()
            .copied()
            .filter(|&a| y_weighted(point, a, &minus) < flow_q(point, a, q))
            .collect();
        Some((sp, sm))
    };
    let mut sel = sel_for(Vec::new(), Vec::new());
    let mut best = None;
    for _ in 0..5 {
        let Some((sp, sm)) = greedy(&sel) else { break };
        let next = sel_for(sp, sm);
        best = best_of(best, evaluate(rel, next.clone(), point, multi));
        if next == sel {
            break;
        }
        sel = next;
    }
    best
}

/// Most violated flow-cut-set inequality for a fixed commodity set `Q`.
pub fn separate_flow_cutset(
    rel: &CutSetRelaxation,
    q: &[usize],
    point: &FractionalPoint,
    s: usize,
) -> Option<Separated> {
    separate_arcs(rel, q, s, point, false)
}

/// Most violated multi-facility cut-set inequality for fixed `Q` and base `s`.
pub fn separate_multifacility(
    rel: &CutSetRelaxation,
    q: &[usize],
    s: usize,
    point: &FractionalPoint,
) -> Option<Separated> {
    separate_arcs(rel, q, s, point, true)
}

/// Best multi-facility cut over all base facilities.
pub fn separate_multifacility_all(rel: &CutSetRelaxation, q: &[usize], point: &FractionalPoint) -> Option<Separated> {
    (0..rel.capacities.len()).fold(None, |acc, s| best_of(acc, separate_multifacility(rel, q, s, point)))
}

/// Largest commodity count for exhaustive `Q` enumeration.
pub const COMMODITY_ENUMERATION_CAP: usize = 6;

/// Commodity subset giving a most violated flow-cut-set inequality for fixed
/// `S+`, `S-`. Without inflow arcs and with per-commodity values in `[0, 1]`
/// this is the residual capacity separation on the single-arc view
/// `a_k = b^k / c`, `x_k = 1 - x^k(A+ - S+) / b^k`, `y = Y(S+)`; otherwise
/// subsets of positive-supply commodities are enumerated.
pub fn separate_commodity_subset(
    rel: &CutSetRelaxation,
    s_plus: &[usize],
    s_minus: &[usize],
    point: &FractionalPoint,
    s: usize,
) -> Option<Vec<usize>> {
    let ks = rel.positive_commodities();
    if ks.is_empty() {
        return None;
    }
    let rest: Vec<usize> = rel.a_plus.iter().copied().filter(|a| !s_plus.contains(a)).collect();
    let c = &rel.capacities[s];
    if s_minus.is_empty() {
        let xs: Vec<Rational> = ks
            .iter()
            .map(|&k| int(1) - rest.iter().map(|&a| point.x(a, k)).sum::<Rational>() / &rel.b[k])
            .collect();
        if xs.iter().all(|x| !x.is_negative() && x <= &int(1)) {
            let arc_rel = ArcSetRelaxation::new(
                ks.iter().map(|&k| &rel.b[k] / c).collect(),
                rel.existing_sum(s_plus) / c,
                FlowMode::Splittable,
            )
            .ok()?;
            let w = rel.weights(s);
            let y: Rational = s_plus.iter().map(|&a| y_weighted(point, a, &w)).sum();
            return separate_residual_capacity(&arc_rel, &xs, &y).map(|(t, _)| t.iter().map(|&i| ks[i]).collect());
        }
    }
    let mut best: Option<(Vec<usize>, Rational)> = None;
    let limit = ks.len().min(16);
    for mask in 1u32..(1u32 << limit) {
        let q: Vec<usize> = (0..limit).filter(|i| mask & (1 << i) != 0).map(|i| ks[i]).collect();
        let sel = FlowCutSelection {
            q: q.clone(),
            s_plus: s_plus.to_vec(),
            s_minus: s_minus.to_vec(),
            facility: s,
        };
        if let Ok(cut) = flow_cutset_cut(rel, &sel) {
            let v = cut.violation(point);
            if v.is_positive() && best.as_ref().is_none_or(|(_, b)| &v > b) {
                best = Some((q, v));
            }
        }
    }
    best.map(|(q, _)| q)
}

/// Joint search over `(Q, S+, S-)`: exhaustive in `Q` for at most
/// [`COMMODITY_ENUMERATION_CAP`] positive-supply commodities, otherwise
/// singletons and the full set followed by up to five alternations.
pub fn separate_flow_cutset_joint(rel: &CutSetRelaxation, point: &FractionalPoint, s: usize) -> Option<Separated> {
    let ks = rel.positive_commodities();
    if ks.is_empty() {
        return None;
    }
    let mut best = None;
    let candidates: Vec<Vec<usize>> = if ks.len() <= COMMODITY_ENUMERATION_CAP {
        (1u32..(1u32 << ks.len()))
            .map(|mask| (0..ks.len()).filter(|i| mask & (1 << i) != 0).map(|i| ks[i]).collect())
            .collect()
    } else {
        ks.iter().map(|&k| vec![k]).chain(std::iter::once(ks.clone())).collect()
    };
    for q in &candidates {
        best = best_of(best, separate_flow_cutset(rel, q, point, s));
    }
    if ks.len() > COMMODITY_ENUMERATION_CAP {
        let mut current = best.clone();
        for _ in 0..5 {
            let Some(cur) = current.clone() else { break };
            let Some(q) = separate_commodity_subset(rel, &cur.selection.s_plus, &cur.selection.s_minus, point, s)
            else {
                break;
            };
            let next = separate_flow_cutset(rel, &q, point, s);
            match (&next, &current) {
                (Some(n), Some(c)) if n.violation > c.violation => current = next,
                _ => break,
            }
        }
        best = best_of(best, current);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CutSetFamilies {
    pub cutset: bool,
    pub flow_cutset: bool,
    pub multifacility: bool,
}

/// Violated cut-set family inequalities over the given partitions.
pub fn separate_instance_cutsets(
    inst: &Instance,
    point: &FractionalPoint,
    partitions: &[Vec<usize>],
    families: CutSetFamilies,
) -> Vec<LinearCut> {
    let mut out = Vec::new();
    for u in partitions {
        let Ok(rel) = build_cutset(inst, u) else { continue };
        if rel.a_plus.is_empty() {
            continue;
        }
        if families.cutset {
            for s in 0..rel.capacities.len() {
                if let Some(cut) = cutset_cut(&rel, s) {
                    if cut.violation(point).is_positive() {
                        out.push(cut);
                    }
                }
            }
        }
        if families.flow_cutset {
            let best = (0..rel.capacities.len()).fold(None, |acc, s| best_of(acc, separate_flow_cutset_joint(&rel, point, s)));
            if let Some(sep) = best {
                out.push(sep.cut);
            }
        }
        if families.multifacility && rel.capacities.len() > 1 {
            let ks = rel.positive_commodities();
            let mut best = separate_multifacility_all(&rel, &ks, point);
            if ks.len() <= COMMODITY_ENUMERATION_CAP {
                for &k in &ks {
                    best = best_of(best, separate_multifacility_all(&rel, &[k], point));
                }
            }
            if let Some(sep) = best {
                out.push(sep.cut);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Arc, CommodityMode, DemandMatrix, Facility};
    use crate::rational::rat;

    /// Node 0 (`U`) sends 1/2 to node 1 over arcs 0 and 1; arc 2 flows back.
    fn star() -> Instance {
        Instance::new(
            vec!["u".into(), "v".into(), "w".into()],
            vec![Arc::new(0, 1, int(0)), Arc::new(0, 2, int(0)), Arc::new(1, 0, int(0)), Arc::new(2, 1, int(10))],
            vec![Facility { capacity: 1, costs: vec![int(1); 4] }],
            DemandMatrix::from_pairs(3, [(0, 1, rat(1, 2))]),
            vec![int(0); 4],
            CommodityMode::Aggregated,
        )
    }

    fn pt(vals: &[(Var, Rational)]) -> FractionalPoint {
        FractionalPoint::from_values(vals.iter().cloned())
    }

    #[test]
    fn star_cutset() {
        let rel = build_cutset(&star(), &[0]).unwrap();
        assert_eq!(rel.a_plus, vec![0, 1]);
        assert_eq!(rel.a_minus, vec![2]);
        assert_eq!(rel.b, vec![rat(1, 2)]);
        assert_eq!(cutset_cut(&rel, 0).unwrap().to_string(), "y_0_0 + y_1_0 >= 1");
        assert!(build_cutset(&star(), &[]).is_err());
        assert!(build_cutset(&star(), &[0, 1, 2]).is_err());
    }

    #[test]
    fn flow_cutset_forms() {
        let rel = build_cutset(&star(), &[0]).unwrap();
        let sel = FlowCutSelection {
            q: vec![0],
            s_plus: vec![0],
            s_minus: vec![2],
            facility: 0,
        };
        let cut = flow_cutset_cut(&rel, &sel).unwrap();
        assert_eq!(cut.to_string(), "x_1_0 - x_2_0 + 1/2 y_0_0 + 1/2 y_2_0 >= 1/2");
        let full = FlowCutSelection {
            q: vec![0],
            s_plus: vec![0, 1],
            s_minus: vec![],
            facility: 0,
        };
        let scaled = cutset_cut(&rel, 0).unwrap().scaled(&rat(1, 2));
        assert_eq!(flow_cutset_cut(&rel, &full).unwrap().coeffs(), scaled.coeffs());
        // cuts off x1 = y1 = 1, x3 = y3 = 1/2
        let p = pt(&[
            (Var::Flow { arc: 0, commodity: 0 }, int(1)),
            (Var::Capacity { arc: 0, facility: 0 }, int(1)),
            (Var::Flow { arc: 2, commodity: 0 }, rat(1, 2)),
            (Var::Capacity { arc: 2, facility: 0 }, rat(1, 2)),
        ]);
        assert!(cut.violation(&p).is_positive());
        let sep = separate_flow_cutset(&rel, &[0], &p, 0).unwrap();
        assert_eq!(sep.selection.s_plus, vec![0]);
        assert_eq!(sep.selection.s_minus, vec![2]);
    }

    #[test]
    fn existing_capacity_on_inflow_moves_to_rhs() {
        let mut rel = build_cutset(&star(), &[0]).unwrap();
        rel.existing[2] = rat(1, 3);
        let sel = FlowCutSelection {
            q: vec![0],
            s_plus: vec![0],
            s_minus: vec![2],
            facility: 0,
        };
        // b' = 1/2 + 1/3, r = 5/6, eta = 1
        let cut = flow_cutset_cut(&rel, &sel).unwrap();
        assert_eq!(cut.rhs(), &(rat(5, 6) - rat(1, 3)));
    }

    #[test]
    fn two_facility_coefficients() {
        let inst = Instance::new(
            vec!["u".into(), "v".into()],
            vec![Arc::new(0, 1, int(0)), Arc::new(1, 0, int(0))],
            vec![
                Facility { capacity: 1, costs: vec![int(1); 2] },
                Facility { capacity: 3, costs: vec![int(2); 2] },
            ],
            DemandMatrix::from_pairs(2, [(0, 1, rat(5, 2))]),
            vec![int(0); 2],
            CommodityMode::Aggregated,
        );
        let rel = build_cutset(&inst, &[0]).unwrap();
        let sel = FlowCutSelection {
            q: vec![0],
            s_plus: vec![0],
            s_minus: vec![1],
            facility: 0,
        };
        let (cut, report) = multifacility_cutset_cut(&rel, &sel).unwrap();
        let r = rat(1, 2);
        assert_eq!(cut.coeff(Var::Capacity { arc: 0, facility: 0 }), r);
        assert_eq!(cut.coeff(Var::Capacity { arc: 0, facility: 1 }), int(3) * &r);
        assert_eq!(cut.coeff(Var::Capacity { arc: 1, facility: 0 }), int(1) - &r);
        assert_eq!(cut.coeff(Var::Capacity { arc: 1, facility: 1 }), int(3) * (int(1) - &r));
        assert_eq!(cut.rhs(), &(&r * int(3)));
        assert!(!report.outflow_split);
        let sel2 = FlowCutSelection { facility: 1, ..sel };
        let (cut2, _) = multifacility_cutset_cut(&rel, &sel2).unwrap();
        let r2 = rat(5, 2);
        assert_eq!(cut2.coeff(Var::Capacity { arc: 0, facility: 0 }), int(1));
        assert_eq!(cut2.coeff(Var::Capacity { arc: 0, facility: 1 }), r2);
        assert_eq!(cut2.coeff(Var::Capacity { arc: 1, facility: 0 }), rat(1, 2));
        assert_eq!(cut2.coeff(Var::Capacity { arc: 1, facility: 1 }), int(3) - &r2);
    }
}
