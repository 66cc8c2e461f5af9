//! Routing feasibility of fixed capacities and, when it fails, a violated
//! metric inequality from the Farkas certificate.
//!
//! cargo run --example metric_separation

use netdes_cuts::lp::routing::{arc_capacities, check_routing_exact};
use netdes_cuts::partition_cuts::separate_metric;
use netdes_cuts::rational::{format_rational, int, rat};
use netdes_cuts::model::Arc;
use netdes_cuts::{CommodityMode, DemandMatrix, Facility, FractionalPoint, Instance, Var};

fn main() {
    // triangle, 1/2 between every ordered pair
    let mut arcs = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                arcs.push(Arc::new(i, j, int(0)));
                pairs.push((i, j, rat(1, 2)));
            }
        }
    }
    let inst = Instance::new(
        vec!["a".into(), "b".into(), "c".into()],
        arcs,
        vec![Facility { capacity: 1, costs: vec![int(1); 6] }],
        DemandMatrix::from_pairs(3, pairs),
        vec![int(0); 6],
        CommodityMode::Aggregated,
    );
    for level in [rat(1, 2), rat(1, 3)] {
        let point = FractionalPoint::from_values((0..6).map(|a| (Var::Capacity { arc: a, facility: 0 }, level.clone())));
        let feasible = check_routing_exact(&inst, &arc_capacities(&inst, &point)).is_feasible();
        println!("y = {} on every arc: routable {feasible}", format_rational(&level));
        if let Some((mv, cut)) = separate_metric(&inst, &point) {
            println!("  v = {:?}", mv.v.iter().map(format_rational).collect::<Vec<_>>());
            println!("  {cut}  (violated by {})", format_rational(&cut.violation(&point)));
        }
    }
}
