//! Single-arc relaxations `sum a_i x_i <= a_0 + y` with splittable
//! (`x in [0,1]`) or unsplittable (`x in {0,1}`) flows, their valid
//! inequalities and separation routines.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cut::{CutFamily, FractionalPoint, LinearCut, Var};
use crate::model::{Instance, Routing};
use crate::rational::{ceil, floor, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowMode {
    Splittable,
    Unsplittable,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("unit capacity must be positive")]
    ZeroCapacity,
    #[error("coefficient of item {0} must be positive")]
    NonPositiveCoefficient(usize),
    #[error("constant term must be nonnegative")]
    NegativeConstant,
    #[error("relaxation is not normalized (need 0 < a_i < 1 and 0 <= a_0 < 1)")]
    NotNormalized,
    #[error("arc {0} carries no commodity")]
    NoItems(usize),
    #[error("item sets overlap or reference unknown items")]
    BadSpec,
    #[error("C is not a cover: excess {0} is not positive")]
    NotACover(String),
    #[error("no valid lifting coefficient for the capacity variable")]
    EmptyLiftingInterval,
    #[error("lifting order must list every fixed item exactly once")]
    BadOrder,
}

/// Ties a relaxation back to instance columns: item `i` is
/// `x_{arc, commodities[i]} / scales[i]` and `y` is `sum_m weights[m] y_{m,arc}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcOrigin {
    pub arc: usize,
    pub commodities: Vec<usize>,
    pub scales: Vec<Rational>,
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSetRelaxation {
    pub a: Vec<Rational>,
    pub a0: Rational,
    pub mode: FlowMode,
    pub origin: Option<ArcOrigin>,
}

/// `sum pi_i x_i <= pi0 + beta y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcInequality {
    pub pi: Vec<Rational>,
    pub pi0: Rational,
    pub beta: Rational,
}

impl ArcInequality {
    /// `sum pi x - pi0 - beta y`; positive when violated.
    pub fn excess(&self, x: &[Rational], y: &Rational) -> Rational {
        let lhs: Rational = self.pi.iter().zip(x).map(|(p, v)| p * v).sum();
        lhs - &self.pi0 - &self.beta * y
    }

    pub fn is_satisfied_by(&self, x: &[Rational], y: &Rational) -> bool {
        !self.excess(x, y).is_positive()
    }

    /// Positive multiple with coprime integer data.
    pub fn integral(&self) -> ArcInequality {
        let all: Vec<&Rational> = self.pi.iter().chain([&self.pi0, &self.beta]).collect();
        let l = Rational::from_integer(crate::rational::denominator_lcm(all.iter().copied()));
        let g = all.iter().fold(num_bigint::BigInt::zero(), |acc, q| {
            num_integer::Integer::gcd(&acc, (*q * &l).numer())
        });
        let f = if g.is_zero() { l } else { l / Rational::from_integer(g) };
        ArcInequality {
            pi: self.pi.iter().map(|p| p * &f).collect(),
            pi0: &self.pi0 * &f,
            beta: &self.beta * &f,
        }
    }

    /// The same inequality over instance columns, in `>=` form.
    pub fn to_linear_cut(&self, origin: &ArcOrigin, family: CutFamily, provenance: String) -> Option<LinearCut> {
        let mut terms = Vec::new();
        for (m, w) in origin.weights.iter().enumerate() {
            terms.push((Var::Capacity { arc: origin.arc, facility: m }, &self.beta * w));
        }
        for (i, p) in self.pi.iter().enumerate() {
            terms.push((
                Var::Flow {
                    arc: origin.arc,
                    commodity: origin.commodities[i],
                },
                -(p / &origin.scales[i]),
            ));
        }
        LinearCut::new(terms, -self.pi0.clone(), family, provenance).ok()
    }
}

impl ArcSetRelaxation {
    pub fn new(a: Vec<Rational>, a0: Rational, mode: FlowMode) -> Result<Self, ArcError> {
        if let Some(i) = a.iter().position(|v| !v.is_positive()) {
            return Err(ArcError::NonPositiveCoefficient(i));
        }
        if a0.is_negative() {
            return Err(ArcError::NegativeConstant);
        }
        Ok(ArcSetRelaxation {
            a,
            a0,
            mode,
            origin: None,
        })
    }

    /// Divides `sum d_k x_k <= c̄ + c y` by `c`.
    pub fn from_demands(d: &[Rational], c: &Rational, existing: &Rational, mode: FlowMode) -> Result<Self, ArcError> {
        if !c.is_positive() {
            return Err(ArcError::ZeroCapacity);
        }
        Self::new(d.iter().map(|v| v / c).collect(), existing / c, mode)
    }

    /// Relaxation of the capacity row of `arc` in units of facility `s`. Items are
    /// commodities scaled by their supply; `y` stands for
    /// `sum_m ceil(c_m / c_s) y_{m,arc}`.
    pub fn from_capacity_row(inst: &Instance, arc: usize, s: usize) -> Result<Self, ArcError> {
        let cs = inst.facility_capacity(s);
        if !cs.is_positive() {
            return Err(ArcError::ZeroCapacity);
        }
        let mode = match inst.routing() {
            Routing::Splittable => FlowMode::Splittable,
            Routing::Unsplittable => FlowMode::Unsplittable,
        };
        let mut commodities = Vec::new();
        let mut scales = Vec::new();
        for k in 0..inst.commodities().len() {
            let d = inst.flow_bound(k);
            if d.is_positive() {
                commodities.push(k);
                scales.push(d);
            }
        }
        if commodities.is_empty() {
            return Err(ArcError::NoItems(arc));
        }
        let mut rel = Self::from_demands(&scales, &cs, &inst.arcs()[arc].existing_capacity, mode)?;
        rel.origin = Some(ArcOrigin {
            arc,
            commodities,
            scales,
            weights: (0..inst.facilities().len())
                .map(|m| ceil(&(inst.facility_capacity(m) / &cs)))
                .collect(),
        });
        Ok(rel)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.a.iter().all(|v| v.is_positive() && v < &int(1)) && !self.a0.is_negative() && self.a0 < int(1)
    }

    pub fn contains(&self, x: &[Rational], y: &Rational) -> bool {
        let lhs: Rational = self.a.iter().zip(x).map(|(a, v)| a * v).sum();
        lhs <= &self.a0 + y
    }

    fn weight(&self, items: &[usize]) -> Rational {
        items.iter().map(|&i| &self.a[i]).sum()
    }

    /// Projects an LP point on the relaxation's variables.
    pub fn project(&self, point: &FractionalPoint) -> Option<(Vec<Rational>, Rational)> {
        let o = self.origin.as_ref()?;
        let x = o
            .commodities
            .iter()
            .zip(&o.scales)
            .map(|(&k, d)| point.x(o.arc, k) / d)
            .collect();
        let y = o.weights.iter().enumerate().map(|(m, w)| w * point.y(o.arc, m)).sum();
        Some((x, y))
    }
}

/// Offsets removed by [`normalize_unsplittable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorOffsets {
    pub items: Vec<Rational>,
    pub constant: Rational,
}

impl FloorOffsets {
    /// Maps an inequality of the reduced set back: adds `beta floor(a_i)` to each
    /// coefficient and `beta floor(a_0)` to the right-hand side.
    pub fn back_map(&self, ineq: &ArcInequality) -> ArcInequality {
        ArcInequality {
            pi: ineq.pi.iter().zip(&self.items).map(|(p, f)| p + &ineq.beta * f).collect(),
            pi0: &ineq.pi0 + &ineq.beta * &self.constant,
            beta: ineq.beta.clone(),
        }
    }
}

/// Replaces `a_i` by `a_i - floor(a_i)` and `a_0` by `a_0 - floor(a_0)`.
/// Items whose reduced coefficient is zero keep a zero coefficient; callers
/// should leave them out of item subsets.
pub fn normalize_unsplittable(rel: &ArcSetRelaxation) -> (ArcSetRelaxation, FloorOffsets) {
    let reduced = ArcSetRelaxation {
        a: rel.a.iter().map(frac).collect(),
        a0: frac(&rel.a0),
        mode: rel.mode,
        origin: rel.origin.clone(),
    };
    let offsets = FloorOffsets {
        items: rel.a.iter().map(floor).collect(),
        constant: floor(&rel.a0),
    };
    (reduced, offsets)
}

fn indicator(n: usize, items: &[usize], value: &Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &i in items {
        v[i] = value.clone();
    }
    v
}

/// `sum_{i in S} a_i (1 - x_i) >= r (eta - y)` with `eta = ceil(a(S) - a_0)`,
/// `r = a(S) - a_0 - floor(a(S) - a_0)`; `None` when `S` is empty or `r = 0`.
pub fn residual_capacity_cut(rel: &ArcSetRelaxation, s: &[usize]) -> Option<ArcInequality> {
    if s.is_empty() {
        return None;
    }
    let excess = rel.weight(s) - &rel.a0;
    let r = frac(&excess);
    if r.is_zero() {
        return None;
    }
    let eta = ceil(&excess);
    let mut pi = vec![Rational::zero(); rel.len()];
    for &i in s {
        pi[i] = rel.a[i].clone();
    }
    Some(ArcInequality {
        pi,
        pi0: rel.weight(s) - &r * eta,
        beta: r,
    })
}

/// Exact linear-time separation. Returns the violated cut for
/// `T = {i : x_i > y - floor(y)}` when both separation conditions hold.
/// Assumes the point satisfies the capacity row and `0 <= x <= 1`.
pub fn separate_residual_capacity(
    rel: &ArcSetRelaxation,
    x: &[Rational],
    y: &Rational,
) -> Option<(Vec<usize>, ArcInequality)> {
    let fy = frac(y);
    let (lo, hi) = (floor(y), ceil(y));
    let t: Vec<usize> = (0..rel.len()).filter(|&i| x[i] > fy).collect();
    let at = rel.weight(&t);
    if !(&rel.a0 + &lo < at && at < &rel.a0 + &hi) {
        return None;
    }
    let sum: Rational = t
        .iter()
        .map(|&i| &rel.a[i] * (int(1) - &x[i] - &hi + y))
        .sum();
    if sum + (&hi - y) * (&rel.a0 + &lo) < Rational::zero() {
        let cut = residual_capacity_cut(rel, &t)?;
        debug_assert!(cut.excess(x, y).is_positive());
        Some((t, cut))
    } else {
        None
    }
}

/// `c_S = |S| - ceil(a(S) - a_0)`.
pub fn c_strong_constant(rel: &ArcSetRelaxation, s: &[usize]) -> Rational {
    int(s.len() as i64) - ceil(&(rel.weight(s) - &rel.a0))
}

/// `sum_{i in S} x_i <= c_S + y` on a normalized relaxation.
pub fn c_strong_cut(rel: &ArcSetRelaxation, s: &[usize]) -> Result<ArcInequality, ArcError> {
    if !rel.is_normalized() {
        return Err(ArcError::NotNormalized);
    }
    Ok(ArcInequality {
        pi: indicator(rel.len(), s, &int(1)),
        pi0: c_strong_constant(rel, s),
        beta: int(1),
    })
}

/// `c_{S - i} = c_S` for `i in S` and `c_{S + i} = c_S + 1` for `i` outside `S`.
pub fn is_maximal_c_strong(rel: &ArcSetRelaxation, s: &[usize]) -> bool {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let cs = c_strong_constant(rel, s);
    for i in 0..rel.len() {
        let mut other: Vec<usize> = set.iter().copied().filter(|&j| j != i).collect();
        if set.contains(&i) {
            if c_strong_constant(rel, &other) != cs {
                return false;
            }
        } else {
            other.push(i);
            if c_strong_constant(rel, &other) != &cs + int(1) {
                return false;
            }
        }
    }
    true
}

pub const C_STRONG_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CStrongSeparation {
    /// Most violated subset, its cut and the violation.
    pub best: Option<(Vec<usize>, ArcInequality, Rational)>,
    /// False when the fractional support exceeded the enumeration cap and a
    /// rounding heuristic was used instead.
    pub exact: bool,
}

/// Separates c-strong inequalities on a normalized relaxation: items with
/// `x = 1` are forced into `S`, items with `x = 0` out, and the fractional
/// support is enumerated.
pub fn separate_c_strong(rel: &ArcSetRelaxation, x: &[Rational], y: &Rational) -> Result<CStrongSeparation, ArcError> {
    if !rel.is_normalized() {
        return Err(ArcError::NotNormalized);
    }
    let ones: Vec<usize> = (0..rel.len()).filter(|&i| x[i] >= int(1)).collect();
    let fractional: Vec<usize> = (0..rel.len())
        .filter(|&i| x[i].is_positive() && x[i] < int(1))
        .collect();
    let score = |s: &[usize]| -> Rational {
        let sx: Rational = s.iter().map(|&i| &x[i]).sum();
        sx - c_strong_constant(rel, s) - y
    };
    let mut best: Option<(Vec<usize>, Rational)> = None;
    let mut consider = |s: Vec<usize>| {
        if s.is_empty() {
            return;
        }
        let v = score(&s);
        if v.is_positive() && best.as_ref().is_none_or(|(_, b)| &v > b) {
            best = Some((s, v));
        }
    };
    let exact = fractional.len() <= C_STRONG_ENUMERATION_CAP;
    if exact {
        for mask in 0u32..(1u32 << fractional.len()) {
            let mut s = ones.clone();
            s.extend(
                fractional
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &i)| i),
            );
            s.sort_unstable();
            consider(s);
        }
    } else {
        let half = Rational::new(1.into(), 2.into());
        let mut s = ones.clone();
        s.extend(fractional.iter().copied().filter(|&i| x[i] >= half));
        s.sort_unstable();
        consider(s);
    }
    let best = match best {
        Some((s, v)) => Some((s.clone(), c_strong_cut(rel, &s)?, v)),
        None => None,
    };
    Ok(CStrongSeparation { best, exact })
}

/// `sum_S ceil(k a_i) x_i + sum_{not S} floor(k a_i) x_i <= c_S^k + k y`.
pub fn k_split_c_strong_cut(rel: &ArcSetRelaxation, s: &[usize], k: u32) -> ArcInequality {
    let kq = int(k as i64);
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let pi: Vec<Rational> = (0..rel.len())
        .map(|i| {
            let v = &kq * &rel.a[i];
            if set.contains(&i) {
                ceil(&v)
            } else {
                floor(&v)
            }
        })
        .collect();
    let sum_ceil: Rational = s.iter().map(|&i| &pi[i]).sum();
    let ck = sum_ceil - ceil(&(&kq * rel.weight(s) - &kq * &rel.a0));
    ArcInequality { pi, pi0: ck, beta: kq }
}

/// Sufficient facet conditions for the k-split c-strong inequality:
/// (i) `S` maximal c-strong in the k-split relaxation, (ii) `f_S > (k-1)/k`
/// and `a_0 >= 0`, (iii) `a_i > f_S` on `S` and `a_i < 1 - f_S` off `S`.
pub fn k_split_facet_check(rel: &ArcSetRelaxation, s: &[usize], k: u32) -> bool {
    let kq = int(k as i64);
    let scaled = ArcSetRelaxation {
        a: rel.a.iter().map(|v| &kq * v).collect(),
        a0: &kq * &rel.a0,
        mode: rel.mode,
        origin: None,
    };
    let (reduced, _) = normalize_unsplittable(&scaled);
    let active: Vec<usize> = (0..reduced.len()).filter(|&i| reduced.a[i].is_positive()).collect();
    if s.iter().any(|i| !active.contains(i)) {
        return false;
    }
    let restricted = ArcSetRelaxation {
        a: active.iter().map(|&i| reduced.a[i].clone()).collect(),
        a0: reduced.a0.clone(),
        mode: reduced.mode,
        origin: None,
    };
    let s_local: Vec<usize> = s
        .iter()
        .map(|i| active.iter().position(|j| j == i).expect("active"))
        .collect();
    let cond_i = is_maximal_c_strong(&restricted, &s_local);
    let f = frac(&(rel.weight(s) - &rel.a0));
    let cond_ii = f > (&kq - int(1)) / &kq && !rel.a0.is_negative();
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let cond_iii = (0..rel.len()).all(|i| {
        if set.contains(&i) {
            rel.a[i] > f
        } else {
            rel.a[i] < int(1) - &f
        }
    });
    cond_i && cond_ii && cond_iii
}

/// Restriction `y = y_bar`, `x_{K0} = 0`, `x_{K1} = 1`; `C` is the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub y_bar: i64,
    pub k0: Vec<usize>,
    pub k1: Vec<usize>,
    pub cover: Vec<usize>,
}

impl CoverSpec {
    /// Builds the spec for `n` items; `C` is everything outside `K0` and `K1`.
    pub fn new(n: usize, y_bar: i64, k0: Vec<usize>, k1: Vec<usize>) -> Result<Self, ArcError> {
        let mut seen = BTreeSet::new();
        for &i in k0.iter().chain(&k1) {
            if i >= n || !seen.insert(i) {
                return Err(ArcError::BadSpec);
            }
        }
        let cover = (0..n).filter(|i| !seen.contains(i)).collect();
        Ok(CoverSpec { y_bar, k0, k1, cover })
    }

    /// `r = a(C) + a(K1) - a_0 - y_bar`.
    pub fn excess(&self, rel: &ArcSetRelaxation) -> Rational {
        rel.weight(&self.cover) + rel.weight(&self.k1) - &rel.a0 - int(self.y_bar)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftingOrder {
    /// `K0` ascending, then `K1` ascending.
    Default,
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCover {
    pub inequality: ArcInequality,
    /// Capacity coefficient `alpha`.
    pub alpha: Rational,
    /// Lifting coefficients `alpha_i` for items in `K0` and `K1` (zero elsewhere).
    pub item_coefficients: Vec<Rational>,
    /// Whether `a_i >= r` holds on all of `C`.
    pub minimal: bool,
}

/// Best value of `sum coef_i x_i + alpha (y_bar - y)` over `x` in `{0,1}` on
/// `free` items, with `fixed_weight` already loaded and `y` the smallest
/// feasible capacity. Uses an exact Pareto DP over (value, weight).
fn max_restricted(
    rel: &ArcSetRelaxation,
    free: &[(usize, Rational)],
    fixed_value: &Rational,
    fixed_weight: &Rational,
    alpha: &Rational,
    y_bar: i64,
) -> Rational {
    let mut states: Vec<(Rational, Rational)> = vec![(fixed_value.clone(), fixed_weight.clone())];
    for (i, coef) in free {
        let mut next = states.clone();
        for (v, w) in &states {
            next.push((v + coef, w + &rel.a[*i]));
        }
        // keep the Pareto frontier: higher value, and lower weight when alpha >= 0
        next.sort_by(|p, q| q.0.cmp(&p.0).then_with(|| p.1.cmp(&q.1)));
        let mut frontier: Vec<(Rational, Rational)> = Vec::new();
        for s in next {
            let dominated = frontier.iter().any(|f| {
                if alpha.is_negative() {
                    f.0 >= s.0 && f.1 >= s.1
                } else {
                    f.0 >= s.0 && f.1 <= s.1
                }
            });
            if !dominated {
                frontier.push(s);
            }
        }
        states = frontier;
    }
    states
        .iter()
        .map(|(v, w)| {
            let ymin = crate::rational::max(&ceil(&(w - &rel.a0)), &Rational::zero());
            v + alpha * (int(y_bar) - ymin)
        })
        .max()
        .expect("nonempty")
}

/// Sequentially lifted cover inequality
/// `sum_C x_i + sum_{K0} alpha_i x_i + sum_{K1} alpha_i (1 - x_i) + alpha (y_bar - y) <= |C| - 1`,
/// lifting `y` first and then the fixed items in `order`.
pub fn lifted_cover_cut(rel: &ArcSetRelaxation, spec: &CoverSpec, order: &LiftingOrder) -> Result<LiftedCover, ArcError> {
    let n = rel.len();
    let check = CoverSpec::new(n, spec.y_bar, spec.k0.clone(), spec.k1.clone())?;
    if check.cover != spec.cover {
        return Err(ArcError::BadSpec);
    }
    let r = spec.excess(rel);
    if !r.is_positive() {
        return Err(ArcError::NotACover(crate::rational::format_rational(&r)));
    }
    let minimal = spec.cover.iter().all(|&i| rel.a[i] >= r);
    let rhs = int(spec.cover.len() as i64 - 1);
    let k1_weight = rel.weight(&spec.k1);
    let y_bar = int(spec.y_bar);

    // lift y over all cover patterns
    let mut upper: Option<Rational> = None;
    let mut lower: Option<Rational> = None;
    let c = &spec.cover;
    if c.len() > 24 {
        return Err(ArcError::BadSpec);
    }
    for mask in 0u32..(1u32 << c.len()) {
        let chosen: Vec<usize> = (0..c.len()).filter(|b| mask & (1 << b) != 0).map(|b| c[b]).collect();
        let v = int(chosen.len() as i64);
        let ymin = crate::rational::max(&ceil(&(rel.weight(&chosen) + &k1_weight - &rel.a0)), &Rational::zero());
        if ymin < y_bar {
            let bound = (&rhs - &v) / (&y_bar - &ymin);
            if upper.as_ref().is_none_or(|u| &bound < u) {
                upper = Some(bound);
            }
        } else {
            let ylow = crate::rational::max(&ymin, &(&y_bar + int(1)));
            let bound = (&v - &rhs) / (ylow - &y_bar);
            if lower.as_ref().is_none_or(|l| &bound > l) {
                lower = Some(bound);
            }
        }
    }
    let alpha = match (upper, lower) {
        (Some(u), Some(l)) if u < l => return Err(ArcError::EmptyLiftingInterval),
        (Some(u), _) => u,
        (None, Some(l)) => l,
        (None, None) => Rational::zero(),
    };

    let sequence: Vec<usize> = match order {
        LiftingOrder::Default => {
            let mut k0 = spec.k0.clone();
            k0.sort_unstable();
            let mut k1 = spec.k1.clone();
            k1.sort_unstable();
            k0.into_iter().chain(k1).collect()
        }
        LiftingOrder::Explicit(v) => {
            let want: BTreeSet<usize> = spec.k0.iter().chain(&spec.k1).copied().collect();
            let got: BTreeSet<usize> = v.iter().copied().collect();
            if want != got || got.len() != v.len() {
                return Err(ArcError::BadOrder);
            }
            v.clone()
        }
    };

    let k1_set: BTreeSet<usize> = spec.k1.iter().copied().collect();
    let mut coef = vec![Rational::zero(); n];
    // items already in the inequality with their x-coefficient (K1 enter as -alpha_i)
    let mut free: Vec<(usize, Rational)> = c.iter().map(|&i| (i, int(1))).collect();
    let mut constant = Rational::zero(); // sum of alpha_i over lifted K1 items
    let mut pending_k1: BTreeSet<usize> = k1_set.clone();
    for j in sequence {
        let in_k1 = k1_set.contains(&j);
        pending_k1.remove(&j);
        let fixed_weight = rel.weight(&pending_k1.iter().copied().collect::<Vec<_>>());
        if in_k1 {
            // x_j = 0 now allowed
            let best = max_restricted(rel, &free, &constant, &fixed_weight, &alpha, spec.y_bar);
            let aj = &rhs - best;
            constant += &aj;
            free.push((j, -aj.clone()));
            coef[j] = aj;
        } else {
            let best = max_restricted(rel, &free, &constant, &(fixed_weight + &rel.a[j]), &alpha, spec.y_bar);
            let aj = &rhs - best;
            free.push((j, aj.clone()));
            coef[j] = aj;
        }
    }
    let mut pi = vec![Rational::zero(); n];
    for &i in c {
        pi[i] = int(1);
    }
    for &i in &spec.k0 {
        pi[i] = coef[i].clone();
    }
    for &i in &spec.k1 {
        pi[i] = -coef[i].clone();
    }
    let k1_sum: Rational = spec.k1.iter().map(|&i| &coef[i]).sum();
    let inequality = ArcInequality {
        pi,
        pi0: &rhs - k1_sum - &alpha * &y_bar,
        beta: alpha.clone(),
    };
    Ok(LiftedCover {
        inequality,
        alpha,
        item_coefficients: coef,
        minimal,
    })
}

// ---------------------------------------------------------------------------
// Instance-level separation

fn arc_relaxations(inst: &Instance) -> Vec<ArcSetRelaxation> {
    let mut out = Vec::new();
    for a in 0..inst.arcs().len() {
        for s in 0..inst.facilities().len() {
            if let Ok(rel) = ArcSetRelaxation::from_capacity_row(inst, a, s) {
                out.push(rel);
            }
        }
    }
    out
}

/// Residual capacity cuts for every arc and base facility violated by `point`.
pub fn separate_instance_residual_capacity(inst: &Instance, point: &FractionalPoint) -> Vec<LinearCut> {
    let mut cuts = Vec::new();
    for rel in arc_relaxations(inst) {
        let Some((x, y)) = rel.project(point) else { continue };
        let x: Vec<Rational> = x.into_iter().map(|v| crate::rational::min(&v, &int(1))).collect();
        if let Some((s, ineq)) = separate_residual_capacity(&rel, &x, &y) {
            let o = rel.origin.as_ref().expect("origin");
            if let Some(cut) = ineq.to_linear_cut(o, CutFamily::ResidualCapacity, format!("arc={} S={:?}", o.arc, s)) {
                cuts.push(cut);
            }
        }
    }
    cuts
}

/// Restriction of a normalized relaxation to items with positive coefficient.
fn active_items(rel: &ArcSetRelaxation) -> (ArcSetRelaxation, Vec<usize>) {
    let active: Vec<usize> = (0..rel.len()).filter(|&i| rel.a[i].is_positive()).collect();
    (
        ArcSetRelaxation {
            a: active.iter().map(|&i| rel.a[i].clone()).collect(),
            a0: rel.a0.clone(),
            mode: rel.mode,
            origin: None,
        },
        active,
    )
}

fn expand(ineq: &ArcInequality, active: &[usize], n: usize) -> ArcInequality {
    let mut pi = vec![Rational::zero(); n];
    for (local, &i) in active.iter().enumerate() {
        pi[i] = ineq.pi[local].clone();
    }
    ArcInequality {
        pi,
        pi0: ineq.pi0.clone(),
        beta: ineq.beta.clone(),
    }
}

/// c-strong, k-split c-strong and lifted cover cuts on unsplittable instances.
pub fn separate_instance_unsplittable(
    inst: &Instance,
    point: &FractionalPoint,
    families: &[CutFamily],
    k_values: &[u32],
) -> Vec<LinearCut> {
    let mut cuts = Vec::new();
    if inst.routing() != Routing::Unsplittable {
        return cuts;
    }
    let want = |f: CutFamily| families.contains(&f);
    for rel in arc_relaxations(inst) {
        let Some((x, y)) = rel.project(point) else { continue };
        let o = rel.origin.clone().expect("origin");
        let (reduced, offsets) = normalize_unsplittable(&rel);
        let (active_rel, active) = active_items(&reduced);
        if active.is_empty() {
            continue;
        }
        // y of the reduced set: y + floor(a0) - sum floor(a_i) x_i
        let y_red = &y + &offsets.constant - offsets.items.iter().zip(&x).map(|(f, v)| f * v).sum::<Rational>();
        let x_active: Vec<Rational> = active.iter().map(|&i| crate::rational::min(&x[i], &int(1))).collect();
        let emit = |ineq: ArcInequality, family: CutFamily, note: String, cuts: &mut Vec<LinearCut>| {
            let full = offsets.back_map(&expand(&ineq, &active, rel.len()));
            if full.excess(&x, &y).is_positive() {
                if let Some(cut) = full.to_linear_cut(&o, family, note) {
                    cuts.push(cut);
                }
            }
        };
        if want(CutFamily::CStrong) {
            if let Ok(sep) = separate_c_strong(&active_rel, &x_active, &y_red) {
                if let Some((s, ineq, _)) = sep.best {
                    let note = format!("arc={} S={:?} exact={}", o.arc, s, sep.exact);
                    emit(ineq, CutFamily::CStrong, note, &mut cuts);
                }
            }
        }
        if want(CutFamily::KSplit) {
            for &k in k_values {
                // S = items carrying more than half their flow
                let s: Vec<usize> = (0..active.len())
                    .filter(|&i| &x_active[i] * int(2) > int(1))
                    .collect();
                if s.is_empty() {
                    continue;
                }
                let ineq = k_split_c_strong_cut(&active_rel, &s, k);
                if ineq.excess(&x_active, &y_red).is_positive() {
                    emit(ineq, CutFamily::KSplit, format!("arc={} k={k} S={s:?}", o.arc), &mut cuts);
                }
            }
        }
        if want(CutFamily::LiftedCover) {
            let k1: Vec<usize> = (0..active.len()).filter(|&i| x_active[i] >= int(1)).collect();
            let k0: Vec<usize> = (0..active.len()).filter(|&i| x_active[i].is_zero()).collect();
            for y_bar in [floor(&y_red), ceil(&y_red)] {
                let Ok(yb) = i64::try_from(y_bar.to_integer()) else { continue };
                if yb < 0 {
                    continue;
                }
                let Ok(spec) = CoverSpec::new(active.len(), yb, k0.clone(), k1.clone()) else { continue };
                if spec.cover.is_empty() || spec.cover.len() > 16 {
                    continue;
                }
                if let Ok(lc) = lifted_cover_cut(&active_rel, &spec, &LiftingOrder::Default) {
                    if lc.inequality.excess(&x_active, &y_red).is_positive() {
                        emit(
                            lc.inequality,
                            CutFamily::LiftedCover,
                            format!("arc={} ybar={yb} C={:?}", o.arc, spec.cover),
                            &mut cuts,
                        );
                    }
                }
            }
        }
    }
    cuts
}

/// All subsets of `0..n` as sorted vectors (for small `n`).
pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}
