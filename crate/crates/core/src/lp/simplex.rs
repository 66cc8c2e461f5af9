//! Dense two-phase bounded-variable primal simplex, generic over the number type.
//!
//! Variables satisfy `lower <= x <= upper` with finite lower bounds. Every row
//! gets an artificial column, so the initial basis is the identity and row
//! duals can be read from the artificial reduced costs.

use std::fmt::Debug;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::{rationalize, Rational};

/// Arithmetic needed by the simplex. `f64` compares with a tolerance,
/// [`Rational`] exactly.
pub trait Scalar: Clone + Debug + PartialOrd {
    fn zero_val() -> Self;
    fn one_val() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn gt_tol(&self, tol: f64) -> bool;
    fn lt_tol(&self, tol: f64) -> bool;
    fn from_rational(q: &Rational) -> Self;
    fn to_rational(&self) -> Rational;
    fn as_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn zero_val() -> Self {
        0.0
    }
    fn one_val() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gt_tol(&self, tol: f64) -> bool {
        *self > tol
    }
    fn lt_tol(&self, tol: f64) -> bool {
        *self < -tol
    }
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Rational {
        rationalize(*self, 1_000_000)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn zero_val() -> Self {
        <Rational as Zero>::zero()
    }
    fn one_val() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gt_tol(&self, _tol: f64) -> bool {
        self.is_positive()
    }
    fn lt_tol(&self, _tol: f64) -> bool {
        self.is_negative()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Row<T> {
    pub coeffs: Vec<(usize, T)>,
    pub sense: Sense,
    pub rhs: T,
}

/// `min c.x` (or `max`) subject to rows and column bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub maximize: bool,
    pub lower: Vec<T>,
    pub upper: Vec<Option<T>>,
    pub rows: Vec<Row<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![T::zero_val(); num_vars],
            maximize: false,
            lower: vec![T::zero_val(); num_vars],
            upper: vec![None; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_var(&mut self, cost: T, upper: Option<T>) -> usize {
        self.objective.push(cost);
        self.lower.push(T::zero_val());
        self.upper.push(upper);
        self.objective.len() - 1
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, T)>, sense: Sense, rhs: T) -> usize {
        self.rows.push(Row { coeffs, sense, rhs });
        self.rows.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    /// Iteration cap reached.
    Stalled,
}

#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub status: Status,
    pub x: Vec<T>,
    pub objective: T,
    /// One multiplier per row, sign convention of the original objective sense.
    pub duals: Vec<T>,
    /// Phase-one multipliers proving infeasibility: `y >= 0` on `>=` rows,
    /// `y <= 0` on `<=` rows, and `max_{bounds} y^T A x < y^T b`.
    pub farkas: Option<Vec<T>>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Consecutive degenerate pivots tolerated before switching to
    /// smallest-index pricing for good.
    pub degenerate_switch: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            tolerance: 1e-9,
            max_iterations: 200_000,
            degenerate_switch: 50,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum At {
    Basic,
    Lower,
    Upper,
}

struct Tableau<T> {
    m: usize,
    n: usize,
    /// Row-major `m x n`, equal to `B^-1 A`.
    a: Vec<T>,
    /// Values of the basic variables.
    xb: Vec<T>,
    basis: Vec<usize>,
    state: Vec<At>,
    upper: Vec<Option<T>>,
    tol: f64,
}

impl<T: Scalar> Tableau<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    fn value(&self, j: usize) -> T {
        match self.state[j] {
            At::Lower => T::zero_val(),
            At::Upper => self.upper[j].clone().expect("upper bound"),
            At::Basic => {
                let r = self.basis.iter().position(|&b| b == j).expect("basic");
                self.xb[r].clone()
            }
        }
    }

    fn reduced_costs(&self, cost: &[T]) -> Vec<T> {
        let mut d = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.gt_tol(0.0) || cb.lt_tol(0.0) {
                for (j, dj) in d.iter_mut().enumerate() {
                    let t = self.at(i, j);
                    if t.gt_tol(0.0) || t.lt_tol(0.0) {
                        *dj = dj.sub(&cb.mul(t));
                    }
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let n = self.n;
        let piv = self.a[r * n + q].clone();
        for j in 0..n {
            let v = self.a[r * n + j].div(&piv);
            self.a[r * n + j] = v;
        }
        let prow: Vec<T> = self.a[r * n..(r + 1) * n].to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.a[i * n + q].clone();
            if !(f.gt_tol(0.0) || f.lt_tol(0.0)) {
                continue;
            }
            for (j, pj) in prow.iter().enumerate() {
                if pj.gt_tol(0.0) || pj.lt_tol(0.0) {
                    let v = self.a[i * n + j].sub(&f.mul(pj));
                    self.a[i * n + j] = v;
                }
            }
            // keep the entering column exact
            self.a[i * n + q] = T::zero_val();
        }
    }

    /// Runs primal simplex on `cost`. Returns `Ok(())` at optimality and
    /// `Err(status)` when unbounded or stalled.
    fn optimize(&mut self, cost: &[T], opts: &SimplexOptions, iters: &mut usize) -> Result<(), Status> {
        let tol = self.tol;
        let mut d = self.reduced_costs(cost);
        let mut bland = false;
        let mut degenerate_run = 0usize;
        loop {
            if *iters >= opts.max_iterations {
                return Err(Status::Stalled);
            }
            // pricing
            let mut enter: Option<(usize, bool)> = None;
            let mut best = T::zero_val();
            for j in 0..self.n {
                let dj = &d[j];
                let cand = match self.state[j] {
                    At::Lower if dj.lt_tol(tol) && self.upper[j].as_ref().is_none_or(|u| u.gt_tol(0.0)) => {
                        Some(true)
                    }
                    At::Upper if dj.gt_tol(tol) => Some(false),
                    _ => None,
                };
                if let Some(inc) = cand {
                    if bland {
                        enter = Some((j, inc));
                        break;
                    }
                    let score = if dj.lt_tol(0.0) { dj.neg() } else { dj.clone() };
                    if enter.is_none() || score > best {
                        best = score;
                        enter = Some((j, inc));
                    }
                }
            }
            let Some((q, increasing)) = enter else {
                return Ok(());
            };
            *iters += 1;
            // ratio test; step t along direction, basic i changes by -delta*t*a_iq
            let mut step: Option<T> = self.upper[q].clone();
            let mut leave: Option<(usize, bool)> = None; // (row, goes to upper)
            for i in 0..self.m {
                let alpha = if increasing {
                    self.at(i, q).clone()
                } else {
                    self.at(i, q).neg()
                };
                let b = self.basis[i];
                let (limit, to_upper) = if alpha.gt_tol(tol) {
                    (self.xb[i].div(&alpha), false)
                } else if alpha.lt_tol(tol) {
                    match &self.upper[b] {
                        Some(u) => (u.sub(&self.xb[i]).div(&alpha.neg()), true),
                        None => continue,
                    }
                } else {
                    continue;
                };
                let limit = if limit.lt_tol(0.0) { T::zero_val() } else { limit };
                let better = match &step {
                    None => true,
                    Some(s) => {
                        let diff = limit.sub(s);
                        if diff.lt_tol(tol) {
                            true
                        } else if diff.gt_tol(tol) {
                            false
                        } else {
                            // tie: bound flip wins, then smallest basic index
                            match leave {
                                None => false,
                                Some((r, _)) => b < self.basis[r],
                            }
                        }
                    }
                };
                if better {
                    step = Some(limit);
                    leave = Some((i, to_upper));
                }
            }
            let Some(t) = step else {
                return Err(Status::Unbounded);
            };
            if t.gt_tol(tol) {
                degenerate_run = 0;
            } else {
                degenerate_run += 1;
                if degenerate_run >= opts.degenerate_switch {
                    bland = true;
                }
            }
            let signed_t = if increasing { t.clone() } else { t.neg() };
            for i in 0..self.m {
                let a = self.at(i, q).clone();
                if a.gt_tol(0.0) || a.lt_tol(0.0) {
                    self.xb[i] = self.xb[i].sub(&a.mul(&signed_t));
                }
            }
            let entering_value = match self.state[q] {
                At::Upper => self.upper[q].clone().expect("upper").sub(&t),
                _ => t.clone(),
            };
            match leave {
                None => {
                    // bound flip
                    self.state[q] = if increasing { At::Upper } else { At::Lower };
                }
                Some((r, to_upper)) => {
                    let out = self.basis[r];
                    self.state[out] = if to_upper { At::Upper } else { At::Lower };
                    self.pivot(r, q);
                    self.basis[r] = q;
                    self.state[q] = At::Basic;
                    self.xb[r] = entering_value;
                    // update reduced costs with the new pivot row
                    let dq = d[q].clone();
                    for j in 0..self.n {
                        let p = self.at(r, j);
                        if p.gt_tol(0.0) || p.lt_tol(0.0) {
                            d[j] = d[j].sub(&dq.mul(p));
                        }
                    }
                    d[q] = T::zero_val();
                }
            }
        }
    }
}

/// Solves `lp` with the two-phase bounded simplex.
pub fn solve<T: Scalar>(lp: &LinearProgram<T>, opts: &SimplexOptions) -> Solution<T> {
    let nv = lp.num_vars();
    let m = lp.rows.len();
    // shift lower bounds to zero
    let shift = |j: usize| lp.lower[j].clone();
    let mut slack_of_row: Vec<Option<usize>> = vec![None; m];
    let mut ncols = nv;
    for (i, row) in lp.rows.iter().enumerate() {
        if row.sense != Sense::Eq {
            slack_of_row[i] = Some(ncols);
            ncols += 1;
        }
    }
    let art0 = ncols;
    let n = ncols + m;
    let mut a = vec![T::zero_val(); m * n];
    let mut b = vec![T::zero_val(); m];
    let mut flip = vec![false; m];
    for (i, row) in lp.rows.iter().enumerate() {
        let mut rhs = row.rhs.clone();
        for (j, c) in &row.coeffs {
            a[i * n + j] = a[i * n + j].add(c);
            rhs = rhs.sub(&c.mul(&shift(*j)));
        }
        if let Some(s) = slack_of_row[i] {
            a[i * n + s] = if row.sense == Sense::Le { T::one_val() } else { T::one_val().neg() };
        }
        if rhs.lt_tol(0.0) {
            flip[i] = true;
            rhs = rhs.neg();
            for j in 0..ncols {
                a[i * n + j] = a[i * n + j].neg();
            }
        }
        a[i * n + art0 + i] = T::one_val();
        b[i] = rhs;
    }
    let mut upper: Vec<Option<T>> = Vec::with_capacity(n);
    for j in 0..nv {
        upper.push(lp.upper[j].as_ref().map(|u| u.sub(&shift(j))));
    }
    upper.extend(std::iter::repeat_n(None, ncols - nv));
    upper.extend(std::iter::repeat_n(None, m));
    let mut state = vec![At::Lower; n];
    for i in 0..m {
        state[art0 + i] = At::Basic;
    }
    let infeasible_bounds = upper.iter().any(|u| u.as_ref().is_some_and(|u| u.lt_tol(opts.tolerance)));
    let mut tab = Tableau {
        m,
        n,
        a,
        xb: b,
        basis: (art0..art0 + m).collect(),
        state,
        upper,
        tol: opts.tolerance,
    };
    let mut iters = 0usize;
    let blank = |status: Status, iters: usize, farkas: Option<Vec<T>>| Solution {
        status,
        x: vec![T::zero_val(); nv],
        objective: T::zero_val(),
        duals: vec![T::zero_val(); m],
        farkas,
        iterations: iters,
    };
    if infeasible_bounds {
        return blank(Status::Infeasible, 0, None);
    }
    // phase 1
    let mut c1 = vec![T::zero_val(); n];
    for c in c1.iter_mut().skip(art0) {
        *c = T::one_val();
    }
    if let Err(s) = tab.optimize(&c1, opts, &mut iters) {
        return blank(s, iters, None);
    }
    let infeas: T = (0..m)
        .map(|i| tab.value(art0 + i))
        .fold(T::zero_val(), |acc, v| acc.add(&v));
    if infeas.gt_tol(opts.tolerance * (1.0 + m as f64)) {
        let d = tab.reduced_costs(&c1);
        let y: Vec<T> = (0..m)
            .map(|i| {
                let yi = T::one_val().sub(&d[art0 + i]);
                if flip[i] {
                    yi.neg()
                } else {
                    yi
                }
            })
            .collect();
        return blank(Status::Infeasible, iters, Some(y));
    }
    // phase 2: artificials pinned at zero
    for i in 0..m {
        tab.upper[art0 + i] = Some(T::zero_val());
        if tab.state[art0 + i] == At::Upper {
            tab.state[art0 + i] = At::Lower;
        }
    }
    let mut c2 = vec![T::zero_val(); n];
    for j in 0..nv {
        c2[j] = if lp.maximize {
            lp.objective[j].neg()
        } else {
            lp.objective[j].clone()
        };
    }
    if let Err(s) = tab.optimize(&c2, opts, &mut iters) {
        return blank(s, iters, None);
    }
    let x: Vec<T> = (0..nv).map(|j| tab.value(j).add(&shift(j))).collect();
    let objective = x
        .iter()
        .zip(&lp.objective)
        .fold(T::zero_val(), |acc, (xj, cj)| acc.add(&xj.mul(cj)));
    let d = tab.reduced_costs(&c2);
    let duals = (0..m)
        .map(|i| {
            let yi = d[art0 + i].neg();
            let yi = if flip[i] { yi.neg() } else { yi };
            if lp.maximize {
                yi.neg()
            } else {
                yi
            }
        })
        .collect();
    Solution {
        status: Status::Optimal,
        x,
        objective,
        duals,
        farkas: None,
        iterations: iters,
    }
}

/// Exact check of a Farkas certificate for `lp`: sign conditions per row sense and
/// `max_{lower <= x <= upper} (y^T A) x < y^T b`.
pub fn verify_farkas(lp: &LinearProgram<Rational>, y: &[Rational]) -> bool {
    if y.len() != lp.rows.len() {
        return false;
    }
    let mut agg = vec![Rational::zero(); lp.num_vars()];
    let mut rhs = Rational::zero();
    for (row, yi) in lp.rows.iter().zip(y) {
        let sign_ok = match row.sense {
            Sense::Ge => !yi.is_negative(),
            Sense::Le => !yi.is_positive(),
            Sense::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        if yi.is_zero() {
            continue;
        }
        for (j, c) in &row.coeffs {
            agg[*j] += c * yi;
        }
        rhs += &row.rhs * yi;
    }
    let mut max_lhs = Rational::zero();
    for (j, g) in agg.iter().enumerate() {
        if g.is_positive() {
            match &lp.upper[j] {
                Some(u) => max_lhs += g * u,
                None => return false,
            }
        } else {
            max_lhs += g * &lp.lower[j];
        }
    }
    max_lhs < rhs
}

/// Converts a float program to rationals (continued-fraction rounding on every entry).
pub fn to_rational_program(lp: &LinearProgram<f64>) -> LinearProgram<Rational> {
    let q = |v: &f64| rationalize(*v, 1_000_000);
    LinearProgram {
        objective: lp.objective.iter().map(q).collect(),
        maximize: lp.maximize,
        lower: lp.lower.iter().map(q).collect(),
        upper: lp.upper.iter().map(|u| u.as_ref().map(q)).collect(),
        rows: lp
            .rows
            .iter()
            .map(|r| Row {
                coeffs: r.coeffs.iter().map(|(j, c)| (*j, q(c))).collect(),
                sense: r.sense,
                rhs: q(&r.rhs),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn opts() -> SimplexOptions {
        SimplexOptions::default()
    }

    #[test]
    fn min_x_ge_3() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.objective[0] = int(1);
        lp.add_row(vec![(0, int(1))], Sense::Ge, int(3));
        let s = solve(&lp, &opts());
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.objective, int(3));
        assert_eq!(s.duals, vec![int(1)]);
    }

    #[test]
    fn infeasible_toy_has_certificate() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.add_row(vec![(0, int(1))], Sense::Ge, int(1));
        lp.add_row(vec![(0, int(1))], Sense::Le, int(0));
        let s = solve(&lp, &opts());
        assert_eq!(s.status, Status::Infeasible);
        let y = s.farkas.unwrap();
        assert!(y[0].is_positive());
        assert!(y[1].is_negative());
        assert!(verify_farkas(&lp, &y));
    }

    #[test]
    fn bounded_variables_and_maximize() {
        // max 3a + 2b, a + b <= 4, a <= 3, b <= 2
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.objective = vec![int(3), int(2)];
        lp.maximize = true;
        lp.upper = vec![Some(int(3)), Some(int(2))];
        lp.add_row(vec![(0, int(1)), (1, int(1))], Sense::Le, int(4));
        let s = solve(&lp, &opts());
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.x, vec![int(3), int(1)]);
        assert_eq!(s.objective, int(11));
        assert_eq!(s.duals, vec![int(2)]);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::<f64>::new(1);
        lp.objective[0] = -1.0;
        let s = solve(&lp, &opts());
        assert_eq!(s.status, Status::Unbounded);
    }

    #[test]
    fn nonzero_lower_bounds() {
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.objective = vec![int(1), int(1)];
        lp.lower = vec![int(2), rat(1, 2)];
        lp.add_row(vec![(0, int(1)), (1, int(1))], Sense::Ge, int(3));
        let s = solve(&lp, &opts());
        assert_eq!(s.objective, int(3));
        assert!(s.x[0] >= int(2) && s.x[1] >= rat(1, 2));
    }

    // Strong duality on random feasible bounded programs, both arithmetics.
    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn strong_duality(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..5),
            rhs in proptest::collection::vec(0i64..6, 5),
            cost in proptest::collection::vec(-3i64..4, 4),
        ) {
            let mut lp = LinearProgram::<Rational>::new(4);
            lp.objective = cost.iter().map(|c| int(*c)).collect();
            lp.upper = vec![Some(int(5)); 4];
            for (i, r) in rows.iter().enumerate() {
                let sense = if i % 2 == 0 { Sense::Le } else { Sense::Ge };
                let b = if sense == Sense::Le { int(rhs[i]) } else { int(-rhs[i]) };
                lp.add_row(r.iter().enumerate().map(|(j, c)| (j, int(*c))).collect(), sense, b);
            }
            let s = solve(&lp, &opts());
            match s.status {
                Status::Optimal => {
                    // dual objective: y^T b + sum of bound terms from reduced costs
                    let mut dual_obj = Rational::zero();
                    for (row, y) in lp.rows.iter().zip(&s.duals) { dual_obj += &row.rhs * y; }
                    for j in 0..4 {
                        let mut red = lp.objective[j].clone();
                        for (row, y) in lp.rows.iter().zip(&s.duals) {
                            for (k, c) in &row.coeffs { if *k == j { red -= c * y; } }
                        }
                        if red.is_negative() { dual_obj += red * int(5); }
                    }
                    prop_assert_eq!(dual_obj, s.objective.clone());
                    let f = solve(&LinearProgram {
                        objective: lp.objective.iter().map(Scalar::as_f64).collect(),
                        maximize: false,
                        lower: vec![0.0; 4],
                        upper: vec![Some(5.0); 4],
                        rows: lp.rows.iter().map(|r| Row {
                            coeffs: r.coeffs.iter().map(|(j, c)| (*j, Scalar::as_f64(c))).collect(),
                            sense: r.sense, rhs: Scalar::as_f64(&r.rhs) }).collect(),
                    }, &opts());
                    prop_assert_eq!(f.status, Status::Optimal);
                    prop_assert!((f.objective - Scalar::as_f64(&s.objective)).abs() < 1e-7);
                }
                Status::Infeasible => {
                    prop_assert!(verify_farkas(&lp, s.farkas.as_ref().unwrap()));
                }
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}
