//! Sparse `>=` inequalities over flow and capacity variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

/// A column of the network design formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `x_a^k`: flow of commodity `commodity` on arc `arc`.
    Flow { arc: usize, commodity: usize },
    /// `y_{m,a}`: number of facilities of type `facility` installed on `arc`.
    Capacity { arc: usize, facility: usize },
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Flow { arc, commodity } => write!(f, "x_{arc}_{commodity}"),
            Var::Capacity { arc, facility } => write!(f, "y_{arc}_{facility}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutFamily {
    ResidualCapacity,
    CStrong,
    KSplit,
    LiftedCover,
    CutSet,
    FlowCutSet,
    MultiFacility,
    Metric,
    Partition,
    ThreePartition,
    Other,
}

impl CutFamily {
    pub const ALL: [CutFamily; 10] = [
        CutFamily::ResidualCapacity,
        CutFamily::CStrong,
        CutFamily::KSplit,
        CutFamily::LiftedCover,
        CutFamily::CutSet,
        CutFamily::FlowCutSet,
        CutFamily::MultiFacility,
        CutFamily::Metric,
        CutFamily::Partition,
        CutFamily::ThreePartition,
    ];

    /// Short name used in reports and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            CutFamily::ResidualCapacity => "rc",
            CutFamily::CStrong => "cstrong",
            CutFamily::KSplit => "ksplit",
            CutFamily::LiftedCover => "cover",
            CutFamily::CutSet => "cutset",
            CutFamily::FlowCutSet => "flowcutset",
            CutFamily::MultiFacility => "mf",
            CutFamily::Metric => "metric",
            CutFamily::Partition => "partition",
            CutFamily::ThreePartition => "threepartition",
            CutFamily::Other => "other",
        }
    }
}

impl fmt::Display for CutFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("cut has no nonzero coefficient")]
    Empty,
}

/// `sum coeff * var >= rhs`, stored exactly with zero coefficients removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCut {
    coeffs: BTreeMap<Var, Rational>,
    rhs: Rational,
    pub family: CutFamily,
    /// Free-form description of the derivation parameters.
    pub provenance: String,
}

impl LinearCut {
    /// Builds a cut, summing repeated variables and dropping zeros.
    pub fn new(
        terms: impl IntoIterator<Item = (Var, Rational)>,
        rhs: Rational,
        family: CutFamily,
        provenance: impl Into<String>,
    ) -> Result<Self, CutError> {
        let mut coeffs: BTreeMap<Var, Rational> = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.is_empty() {
            return Err(CutError::Empty);
        }
        Ok(LinearCut {
            coeffs,
            rhs,
            family,
            provenance: provenance.into(),
        })
    }

    pub fn coeffs(&self) -> &BTreeMap<Var, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, v: Var) -> Rational {
        self.coeffs.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn lhs(&self, point: &FractionalPoint) -> Rational {
        self.coeffs.iter().map(|(v, c)| c * point.value(*v)).sum()
    }

    /// `rhs - lhs`; positive when the point violates the cut.
    pub fn violation(&self, point: &FractionalPoint) -> Rational {
        &self.rhs - self.lhs(point)
    }

    pub fn is_satisfied_by(&self, point: &FractionalPoint) -> bool {
        !self.violation(point).is_positive()
    }

    /// True when every coefficient sits on a capacity variable.
    pub fn is_capacity_only(&self) -> bool {
        self.coeffs.keys().all(|v| matches!(v, Var::Capacity { .. }))
    }

    /// Positive rescaling so that the first nonzero coefficient is `+1` or `-1`.
    pub fn normalized(&self) -> (Vec<(Var, Rational)>, Rational) {
        let scale = self
            .coeffs
            .values()
            .next()
            .map(|c| c.abs())
            .unwrap_or_else(Rational::one);
        let terms = self.coeffs.iter().map(|(v, c)| (*v, c / &scale)).collect();
        (terms, &self.rhs / &scale)
    }

    /// Canonical text of [`normalized`](Self::normalized), usable as a dedupe key.
    pub fn key(&self) -> String {
        let (terms, rhs) = self.normalized();
        let mut s = String::new();
        for (v, c) in terms {
            s.push_str(&format!("{}*{v};", format_rational(&c)));
        }
        s.push_str(&format!(">={}", format_rational(&rhs)));
        s
    }

    /// Same cut with every coefficient and the right-hand side multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> LinearCut {
        assert!(factor.is_positive());
        LinearCut {
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * factor)).collect(),
            rhs: &self.rhs * factor,
            family: self.family,
            provenance: self.provenance.clone(),
        }
    }
}

impl fmt::Display for LinearCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}{v}")?;
            } else {
                write!(f, "{sign}{} {v}", format_rational(&mag))?;
            }
        }
        write!(f, " >= {}", format_rational(&self.rhs))
    }
}

/// Values of an LP relaxation solution; absent entries are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FractionalPoint {
    values: BTreeMap<Var, Rational>,
}

impl FractionalPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = (Var, Rational)>) -> Self {
        let mut p = Self::new();
        for (v, q) in values {
            p.set(v, q);
        }
        p
    }

    pub fn set(&mut self, v: Var, q: Rational) {
        if q.is_zero() {
            self.values.remove(&v);
        } else {
            self.values.insert(v, q);
        }
    }

    pub fn value(&self, v: Var) -> Rational {
        self.values.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn x(&self, arc: usize, commodity: usize) -> Rational {
        self.value(Var::Flow { arc, commodity })
    }

    pub fn y(&self, arc: usize, facility: usize) -> Rational {
        self.value(Var::Capacity { arc, facility })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Rational)> {
        self.values.iter()
    }

    /// True when every capacity value is an integer.
    pub fn capacities_integral(&self) -> bool {
        self.values
            .iter()
            .all(|(v, q)| !matches!(v, Var::Capacity { .. }) || q.is_integer())
    }
}
