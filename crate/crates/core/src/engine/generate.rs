//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Arc, CommodityMode, DemandMatrix, Facility, Instance, Routing};
use crate::rational::{int, rat, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("need at least two nodes")]
    TooFewNodes,
    #[error("density must lie in (0, 1], got {0}")]
    BadDensity(f64),
    #[error("facility capacities must be positive and strictly increasing")]
    BadFacilities,
    #[error("demand scale must be positive")]
    BadScale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub nodes: usize,
    /// Probability of each ordered pair being an arc, on top of a Hamiltonian cycle.
    pub density: f64,
    pub facilities: Vec<u64>,
    /// Demands are multiples of `1/q`, `q <= 4`, up to this value.
    pub demand_scale: u32,
    /// Number of node pairs with positive demand; 0 picks `nodes`.
    pub pairs: usize,
    pub mode: CommodityMode,
    pub routing: Routing,
    /// Probability of an arc carrying existing capacity.
    pub existing: f64,
    pub flow_costs: bool,
}

impl GenParams {
    pub fn new(seed: u64, nodes: usize, density: f64, facilities: Vec<u64>) -> Self {
        GenParams {
            seed,
            nodes,
            density,
            facilities,
            demand_scale: 2,
            pairs: 0,
            mode: CommodityMode::Aggregated,
            routing: Routing::Splittable,
            existing: 0.0,
            flow_costs: false,
        }
    }
}

/// Deterministic per seed; the digraph always contains a Hamiltonian cycle.
pub fn generate_instance(p: &GenParams) -> Result<Instance, GenerateError> {
    if p.nodes < 2 {
        return Err(GenerateError::TooFewNodes);
    }
    if !(p.density > 0.0 && p.density <= 1.0) {
        return Err(GenerateError::BadDensity(p.density));
    }
    if p.facilities.is_empty() || p.facilities[0] == 0 || p.facilities.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GenerateError::BadFacilities);
    }
    if p.demand_scale == 0 {
        return Err(GenerateError::BadScale);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.nodes;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && !pairs.contains(&(i, j)) && (p.density >= 1.0 || rng.gen_bool(p.density)) {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort();
    let arcs: Vec<Arc> = pairs
        .iter()
        .map(|&(i, j)| {
            let existing = if p.existing > 0.0 && rng.gen_bool(p.existing.min(1.0)) {
                rat(rng.gen_range(1..=2), 2)
            } else {
                int(0)
            };
            Arc::new(i, j, existing)
        })
        .collect();
    // economies of scale: larger facilities cost less per unit
    let base: Vec<i64> = arcs.iter().map(|_| rng.gen_range(1..=4)).collect();
    let facilities = p
        .facilities
        .iter()
        .enumerate()
        .map(|(m, &c)| Facility {
            capacity: c,
            costs: base
                .iter()
                .map(|b| {
                    let full = Rational::from_integer((b * c as i64).into());
                    if m == 0 {
                        full
                    } else {
                        (full * rat(3, 4)).ceil()
                    }
                })
                .collect(),
        })
        .collect();
    let flow_costs = arcs
        .iter()
        .map(|_| if p.flow_costs { rat(rng.gen_range(0..=2), 4) } else { int(0) })
        .collect();
    let wanted = if p.pairs == 0 { n } else { p.pairs }.min(n * (n - 1));
    let mut demand = DemandMatrix::new(n);
    let mut placed = 0;
    while placed < wanted {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if s == t || !demand.get(s, t).eq(&int(0)) {
            continue;
        }
        let q = rng.gen_range(1..=4i64);
        let num = rng.gen_range(1..=q * p.demand_scale as i64);
        demand.set(s, t, rat(num, q));
        placed += 1;
    }
    let names = (0..n).map(|i| format!("n{i}")).collect();
    Ok(Instance::new(names, arcs, facilities, demand, flow_costs, p.mode).with_routing(p.routing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn deterministic_and_valid() {
        let p = GenParams::new(7, 5, 0.4, vec![1, 3]);
        let a = generate_instance(&p).unwrap();
        assert_eq!(a, generate_instance(&p).unwrap());
        assert!(validate_instance(&a).is_ok());
        for seed in 0..30 {
            let inst = generate_instance(&GenParams::new(seed, 4, 0.3, vec![1, 2])).unwrap();
            assert!(validate_instance(&inst).is_ok(), "seed {seed}");
            assert!(inst.reachable_from(0).iter().all(|r| *r));
        }
    }

    #[test]
    fn full_density_is_complete() {
        let inst = generate_instance(&GenParams::new(1, 4, 1.0, vec![1])).unwrap();
        assert_eq!(inst.arcs().len(), 12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            generate_instance(&GenParams::new(1, 1, 0.5, vec![1])),
            Err(GenerateError::TooFewNodes)
        );
        assert!(generate_instance(&GenParams::new(1, 3, 0.5, vec![3, 1])).is_err());
        assert!(generate_instance(&GenParams::new(1, 3, 0.0, vec![1])).is_err());
    }
}
