//! LP relaxation of the network design formulation with a cut pool.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::simplex::{self, LinearProgram, Scalar, Sense, SimplexOptions, Status};
use crate::cut::{FractionalPoint, LinearCut, Var};
use crate::model::Instance;
use crate::rational::{format_rational, rationalize, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    /// Flow balance of `commodity` at `node`: inflow minus outflow equals net demand.
    Balance { commodity: usize, node: usize },
    /// `sum_k x_a^k - sum_m c_m y_{m,a} <= existing capacity`.
    Capacity { arc: usize },
    Cut { index: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("cut references variable {0} that is not in the model")]
    UnknownVariable(Var),
    #[error("LP solve failed: {0:?}")]
    Solve(Status),
}

/// The relaxation: flows `0 <= x_a^k <= supply_k`, continuous `y >= 0`.
#[derive(Debug, Clone)]
pub struct LpModel {
    pub program: LinearProgram<Rational>,
    columns: Vec<Var>,
    index: BTreeMap<Var, usize>,
    row_kinds: Vec<RowKind>,
    num_cuts: usize,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: Status,
    /// Primal values; float solves are rationalized with denominators up to 10^6.
    pub point: FractionalPoint,
    pub objective: f64,
    /// Present for exact solves.
    pub exact_objective: Option<Rational>,
    pub duals: Vec<Rational>,
    pub farkas: Option<Vec<Rational>>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

/// Builds the LP relaxation with one balance row per (commodity, node), one
/// capacity row per arc, and one row per cut. The objective is `d y + f x`.
pub fn build_relaxation(inst: &Instance, cuts: &[LinearCut]) -> Result<LpModel, LpError> {
    let mut program = LinearProgram::<Rational>::new(0);
    let mut columns = Vec::new();
    let mut index = BTreeMap::new();
    for (a, _) in inst.arcs().iter().enumerate() {
        for (k, _) in inst.commodities().iter().enumerate() {
            let v = Var::Flow { arc: a, commodity: k };
            let j = program.add_var(inst.flow_cost(a).clone(), Some(inst.flow_bound(k)));
            columns.push(v);
            index.insert(v, j);
        }
        for (m, fac) in inst.facilities().iter().enumerate() {
            let v = Var::Capacity { arc: a, facility: m };
            let j = program.add_var(fac.costs[a].clone(), None);
            columns.push(v);
            index.insert(v, j);
        }
    }
    let mut row_kinds = Vec::new();
    for (k, com) in inst.commodities().iter().enumerate() {
        for node in 0..inst.num_nodes() {
            let mut coeffs = Vec::new();
            for (a, arc) in inst.arcs().iter().enumerate() {
                let j = index[&Var::Flow { arc: a, commodity: k }];
                if arc.head == node {
                    coeffs.push((j, Rational::from_integer(1.into())));
                } else if arc.tail == node {
                    coeffs.push((j, Rational::from_integer((-1).into())));
                }
            }
            program.add_row(coeffs, Sense::Eq, com.net_demand[node].clone());
            row_kinds.push(RowKind::Balance { commodity: k, node });
        }
    }
    for (a, arc) in inst.arcs().iter().enumerate() {
        let mut coeffs = Vec::new();
        for k in 0..inst.commodities().len() {
            coeffs.push((index[&Var::Flow { arc: a, commodity: k }], Rational::from_integer(1.into())));
        }
        for m in 0..inst.facilities().len() {
            coeffs.push((index[&Var::Capacity { arc: a, facility: m }], -inst.facility_capacity(m)));
        }
        program.add_row(coeffs, Sense::Le, arc.existing_capacity.clone());
        row_kinds.push(RowKind::Capacity { arc: a });
    }
    let mut model = LpModel {
        program,
        columns,
        index,
        row_kinds,
        num_cuts: 0,
    };
    for cut in cuts {
        model.add_cut(cut)?;
    }
    Ok(model)
}

impl LpModel {
    pub fn num_rows(&self) -> usize {
        self.program.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_kinds(&self) -> &[RowKind] {
        &self.row_kinds
    }

    pub fn column(&self, v: Var) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn add_cut(&mut self, cut: &LinearCut) -> Result<(), LpError> {
        let mut coeffs = Vec::with_capacity(cut.coeffs().len());
        for (v, c) in cut.coeffs() {
            let j = self.column(*v).ok_or(LpError::UnknownVariable(*v))?;
            coeffs.push((j, c.clone()));
        }
        self.program.add_row(coeffs, Sense::Ge, cut.rhs().clone());
        self.row_kinds.push(RowKind::Cut { index: self.num_cuts });
        self.num_cuts += 1;
        Ok(())
    }

    /// Replaces the objective; unlisted variables get zero cost.
    pub fn set_objective(&mut self, terms: &[(Var, Rational)], maximize: bool) -> Result<(), LpError> {
        let mut obj = vec![Rational::zero(); self.num_cols()];
        for (v, c) in terms {
            let j = self.column(*v).ok_or(LpError::UnknownVariable(*v))?;
            obj[j] += c;
        }
        self.program.objective = obj;
        self.program.maximize = maximize;
        Ok(())
    }

    /// Floating point solve; values are rationalized afterwards.
    pub fn solve(&self, opts: &SimplexOptions) -> LpSolution {
        let lp = to_float(&self.program);
        let s = simplex::solve(&lp, opts);
        let point = FractionalPoint::from_values(self.columns.iter().zip(&s.x).map(|(v, x)| {
            let q = rationalize(*x, 1_000_000);
            (*v, if q.is_negative() { Rational::zero() } else { q })
        }));
        LpSolution {
            status: s.status,
            point,
            objective: s.objective,
            exact_objective: None,
            duals: s.duals.iter().map(|d| rationalize(*d, 1_000_000)).collect(),
            farkas: s.farkas.map(|y| y.iter().map(|d| rationalize(*d, 1_000_000)).collect()),
        }
    }

    /// Exact rational solve.
    pub fn solve_exact(&self, opts: &SimplexOptions) -> LpSolution {
        let s = simplex::solve(&self.program, opts);
        let point = FractionalPoint::from_values(self.columns.iter().cloned().zip(s.x.iter().cloned()));
        LpSolution {
            status: s.status,
            point,
            objective: Scalar::as_f64(&s.objective),
            exact_objective: (s.status == Status::Optimal).then(|| s.objective.clone()),
            duals: s.duals,
            farkas: s.farkas,
        }
    }

    /// Text dump in the common LP file format.
    pub fn to_lp_format(&self) -> String {
        let name = |j: usize| self.columns[j].to_string();
        let term_list = |coeffs: &mut dyn Iterator<Item = (usize, &Rational)>| {
            let mut s = String::new();
            for (n, (j, c)) in coeffs.enumerate() {
                let sign = if c.is_negative() { "-" } else { "+" };
                if n > 0 || c.is_negative() {
                    s.push_str(sign);
                    s.push(' ');
                }
                let _ = write!(s, "{} {} ", format_rational(&c.abs()), name(j));
            }
            if s.is_empty() {
                s.push_str("0 ");
            }
            s
        };
        let mut out = String::new();
        out.push_str(if self.program.maximize { "Maximize\n" } else { "Minimize\n" });
        let mut obj = self
            .program
            .objective
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero());
        let _ = writeln!(out, " obj: {}", term_list(&mut obj).trim_end());
        out.push_str("Subject To\n");
        for (row, kind) in self.program.rows.iter().zip(&self.row_kinds) {
            let label = match kind {
                RowKind::Balance { commodity, node } => format!("bal_{commodity}_{node}"),
                RowKind::Capacity { arc } => format!("cap_{arc}"),
                RowKind::Cut { index } => format!("cut_{index}"),
            };
            let op = match row.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            let mut it = row.coeffs.iter().map(|(j, c)| (*j, c));
            let _ = writeln!(
                out,
                " {label}: {}{op} {}",
                term_list(&mut it),
                format_rational(&row.rhs)
            );
        }
        out.push_str("Bounds\n");
        for (j, u) in self.program.upper.iter().enumerate() {
            match u {
                Some(u) => {
                    let _ = writeln!(out, " 0 <= {} <= {}", name(j), format_rational(u));
                }
                None => {
                    let _ = writeln!(out, " {} >= 0", name(j));
                }
            }
        }
        out.push_str("End\n");
        out
    }
}

pub(crate) fn to_float(lp: &LinearProgram<Rational>) -> LinearProgram<f64> {
    let f = |q: &Rational| Scalar::as_f64(q);
    LinearProgram {
        objective: lp.objective.iter().map(f).collect(),
        maximize: lp.maximize,
        lower: lp.lower.iter().map(f).collect(),
        upper: lp.upper.iter().map(|u| u.as_ref().map(f)).collect(),
        rows: lp
            .rows
            .iter()
            .map(|r| simplex::Row {
                coeffs: r.coeffs.iter().map(|(j, c)| (*j, f(c))).collect(),
                sense: r.sense,
                rhs: f(&r.rhs),
            })
            .collect(),
    }
}
