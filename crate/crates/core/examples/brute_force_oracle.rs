//! Brute-force integer optimum of a small instance, and cut validation
//! against the enumerated feasible capacities: a valid inequality passes,
//! an overstated one gets a counterexample.
//!
//! cargo run --example brute_force_oracle

use netdes_cuts::engine::oracle::BUDGET;
use netdes_cuts::engine::{brute_force_ip, generate_instance, GenParams, Validator, Validity, YBounds};
use netdes_cuts::model::Arc;
use netdes_cuts::rational::{format_rational, int, rat};
use netdes_cuts::{CommodityMode, CutFamily, DemandMatrix, Facility, Instance, LinearCut, Var};

fn main() {
    let inst = generate_instance(&GenParams { demand_scale: 1, ..GenParams::new(11, 3, 0.3, vec![1, 2]) }).unwrap();
    let bounds = YBounds::capped(&inst, BUDGET);
    let opt = brute_force_ip(&inst, &bounds, BUDGET).unwrap();
    println!("optimum {} over {} grid points", format_rational(&opt.value), bounds.grid_size());
    for (a, y) in opt.y.iter().enumerate() {
        let arc = &inst.arcs()[a];
        println!("  {} -> {}: {:?}", inst.node_name(arc.tail), inst.node_name(arc.head), y);
    }

    // one arc, 5/2 units, modules of size 1 and 2
    let arc = Instance::new(
        vec!["s".into(), "t".into()],
        vec![Arc::new(0, 1, int(0))],
        vec![
            Facility { capacity: 1, costs: vec![int(1)] },
            Facility { capacity: 2, costs: vec![int(2)] },
        ],
        DemandMatrix::from_pairs(2, [(0, 1, rat(5, 2))]),
        vec![int(0)],
        CommodityMode::Aggregated,
    );
    let mut validator = Validator::new(&arc, YBounds::uniform(&arc, 4), BUDGET).unwrap();
    let y = |m| Var::Capacity { arc: 0, facility: m };
    for (coef, rhs) in [(2, 3), (1, 2), (2, 4)] {
        let cut = LinearCut::new([(y(0), int(1)), (y(1), int(coef))], int(rhs), CutFamily::Other, "").unwrap();
        match validator.check(&cut).unwrap() {
            Validity::Valid => println!("{cut}: valid"),
            Validity::Counterexample(p) => println!("{cut}: violated at y = ({}, {})", p.y(0, 0), p.y(0, 1)),
        }
    }
}
