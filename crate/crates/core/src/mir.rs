//! Mixed-integer rounding: basic and general MIR, iterative MIR on integer
//! knapsack cover sets, and the closed-form functions `phi_plus`/`phi_minus`.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{ceil, floor, frac, int, Rational};

/// Coefficients of the basic MIR cut `x + r y >= r ceil(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicMir {
    pub r: Rational,
    pub ceil_b: Rational,
}

impl BasicMir {
    /// `x + r y - r ceil(b)`; nonnegative exactly on points satisfying the cut.
    pub fn slack(&self, x: &Rational, y: &Rational) -> Rational {
        x + &self.r * y - &self.r * &self.ceil_b
    }
}

/// MIR cut for `{x + y >= b, x >= 0, y integer}`.
pub fn basic_mir(b: &Rational) -> BasicMir {
    BasicMir {
        r: frac(b),
        ceil_b: ceil(b),
    }
}

/// `a x + c y >= b` over `x >= 0` continuous and `y >= 0` integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseInequality {
    pub continuous: Vec<Rational>,
    pub integer: Vec<Rational>,
    pub rhs: Rational,
}

/// An inequality `sum cont_j x_j + sum int_j y_j >= rhs` over the base's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirCut {
    pub continuous: Vec<Rational>,
    pub integer: Vec<Rational>,
    pub rhs: Rational,
}

impl MirCut {
    pub fn lhs(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let cx: Rational = self.continuous.iter().zip(x).map(|(a, v)| a * v).sum();
        let cy: Rational = self.integer.iter().zip(y).map(|(a, v)| a * v).sum();
        cx + cy
    }

    pub fn is_satisfied_by(&self, x: &[Rational], y: &[Rational]) -> bool {
        self.lhs(x, y) >= self.rhs
    }

    /// True when the right-hand side is zero, so nonnegativity already implies it.
    pub fn is_trivial(&self) -> bool {
        !self.rhs.is_positive()
    }
}

/// MIR coefficient of an integer variable with coefficient `c` when the
/// right-hand side has fractional part `r`: `r floor(c) + min(frac(c), r)`.
pub fn mir_integer_coefficient(c: &Rational, r: &Rational) -> Rational {
    let rc = frac(c);
    if &rc < r {
        rc + r * floor(c)
    } else {
        r * ceil(c)
    }
}

/// The MIR inequality of a base inequality. Negative continuous coefficients
/// are dropped; with an integral right-hand side the cut is dominated by
/// nonnegativity.
pub fn mir_cut(base: &BaseInequality) -> MirCut {
    let r = frac(&base.rhs);
    MirCut {
        continuous: base
            .continuous
            .iter()
            .map(|a| if a.is_positive() { a.clone() } else { Rational::zero() })
            .collect(),
        integer: base.integer.iter().map(|c| mir_integer_coefficient(c, &r)).collect(),
        rhs: &r * ceil(&base.rhs),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MirError {
    #[error("capacities must be positive and strictly increasing")]
    BadCapacities,
    #[error("subsequence index {0} out of range or not increasing")]
    BadSubsequence(usize),
    #[error("remainder is zero; the cut degenerates")]
    ZeroRemainder,
}

/// `{z integer >= 0 : sum_m c_m z_m >= b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackCoverSet {
    pub capacities: Vec<u64>,
    pub rhs: Rational,
}

/// `sum_m coeffs[m] z_m >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackCut {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl KnapsackCut {
    pub fn lhs(&self, z: &[Rational]) -> Rational {
        self.coeffs.iter().zip(z).map(|(a, v)| a * v).sum()
    }

    /// Scaled so all coefficients and the right-hand side are coprime integers.
    pub fn integral(&self) -> KnapsackCut {
        let all: Vec<&Rational> = self.coeffs.iter().chain(std::iter::once(&self.rhs)).collect();
        let l = crate::rational::denominator_lcm(all.iter().copied());
        let scaled: Vec<Rational> = all.iter().map(|q| *q * Rational::from_integer(l.clone())).collect();
        let g = scaled
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, q| num_integer::Integer::gcd(&acc, q.numer()));
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        let g = Rational::from_integer(g);
        let (rhs, coeffs) = scaled.split_last().expect("rhs");
        KnapsackCut {
            coeffs: coeffs.iter().map(|q| q / &g).collect(),
            rhs: rhs / &g,
        }
    }
}

impl KnapsackCoverSet {
    pub fn new(capacities: Vec<u64>, rhs: Rational) -> Result<Self, MirError> {
        if capacities.is_empty() || capacities[0] == 0 || capacities.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MirError::BadCapacities);
        }
        Ok(KnapsackCoverSet { capacities, rhs })
    }

    pub fn base(&self) -> KnapsackCut {
        KnapsackCut {
            coeffs: self.capacities.iter().map(|c| int(*c as i64)).collect(),
            rhs: self.rhs.clone(),
        }
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        z.iter().all(|v| !v.is_negative() && v.is_integer()) && self.base().lhs(z) >= self.rhs
    }

    /// Every strictly increasing index sequence, shortest first.
    pub fn all_subsequences(&self) -> Vec<Vec<usize>> {
        let m = self.capacities.len();
        let mut out: Vec<Vec<usize>> = (1u32..(1 << m))
            .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        out.sort_by_key(|s: &Vec<usize>| s.len());
        out
    }
}

/// One MIR step in original units: divide by `d`, round, multiply back.
fn mir_step(cut: &KnapsackCut, d: &Rational) -> KnapsackCut {
    let beta = &cut.rhs / d;
    let r = frac(&beta);
    if r.is_zero() {
        return cut.clone();
    }
    KnapsackCut {
        coeffs: cut
            .coeffs
            .iter()
            .map(|a| d * mir_integer_coefficient(&(a / d), &r))
            .collect(),
        rhs: d * &r * ceil(&beta),
    }
}

/// Applies MIR after dividing by `c_{j_r}`, then `c_{j_{r-1}}`, down to
/// `c_{j_1}`. Steps whose remainder is zero leave the inequality unchanged.
pub fn iterative_mir(set: &KnapsackCoverSet, subsequence: &[usize]) -> Result<KnapsackCut, MirError> {
    for (pos, &j) in subsequence.iter().enumerate() {
        if j >= set.capacities.len() || (pos > 0 && subsequence[pos - 1] >= j) {
            return Err(MirError::BadSubsequence(j));
        }
    }
    let mut cut = set.base();
    for &j in subsequence.iter().rev() {
        cut = mir_step(&cut, &int(set.capacities[j] as i64));
    }
    Ok(cut)
}

/// Parameters of `phi_plus`/`phi_minus` for base capacity `c_s` and
/// right-hand side `b`: `r = b - floor(b/c_s) c_s`, `eta = ceil(b/c_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiParams {
    pub c_s: Rational,
    pub r: Rational,
    pub eta: Rational,
}

impl PhiParams {
    pub fn new(c_s: &Rational, b: &Rational) -> Result<Self, MirError> {
        let q = b / c_s;
        let r = b - floor(&q) * c_s;
        if r.is_zero() {
            return Err(MirError::ZeroRemainder);
        }
        Ok(PhiParams {
            c_s: c_s.clone(),
            r,
            eta: ceil(&q),
        })
    }

    fn k_range(&self, c: &Rational) -> std::ops::RangeInclusive<i64> {
        let top: i64 = ceil(&(c / &self.c_s)).to_integer().try_into().unwrap_or(i64::MAX - 2);
        -1..=top + 1
    }
}

/// `c - k(c_s - r)` on `[k c_s, k c_s + r)`, `(k+1) r` on `[k c_s + r, (k+1) c_s)`.
pub fn phi_plus(p: &PhiParams, c: &Rational) -> Rational {
    for k in p.k_range(c) {
        let kq = int(k);
        let lo = &kq * &p.c_s;
        if &lo <= c && c < &(&lo + &p.r) {
            return c - &kq * (&p.c_s - &p.r);
        }
        if &(&lo + &p.r) <= c && c < &(&lo + &p.c_s) {
            return (kq + int(1)) * &p.r;
        }
    }
    unreachable!("interval search covers every c >= 0")
}

/// `c - k r` on `[k c_s, (k+1) c_s - r)`, `k(c_s - r)` on `[k c_s - r, k c_s)`.
pub fn phi_minus(p: &PhiParams, c: &Rational) -> Rational {
    for k in p.k_range(c) {
        let kq = int(k);
        let lo = &kq * &p.c_s;
        if &lo <= c && c < &(&lo + &p.c_s - &p.r) {
            return c - &kq * &p.r;
        }
        if &(&lo - &p.r) <= c && c < &lo {
            return kq * (&p.c_s - &p.r);
        }
    }
    unreachable!("interval search covers every c >= 0")
}
