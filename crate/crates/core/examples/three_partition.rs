//! Three-partition total-capacity inequalities on a triangle with uniform
//! traffic: the sum cut against the metric cut, and which one is kept.
//!
//! cargo run --example three_partition

use netdes_cuts::model::Arc;
use netdes_cuts::partition_cuts::{select_total_capacity_cut, three_partition_cut, three_partition_metric_cut, three_partition_data, NodePartition};
use netdes_cuts::rational::{format_rational, int, rat};
use netdes_cuts::{CommodityMode, DemandMatrix, Facility, Instance};

fn triangle(t: netdes_cuts::Rational) -> Instance {
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

fn main() {
    let part = NodePartition::singletons(3).unwrap();
    for t in [rat(1, 2), rat(1, 3)] {
        let inst = triangle(t.clone());
        let data = three_partition_data(&inst, &part).unwrap();
        let s: Vec<String> = data.s.iter().map(format_rational).collect();
        let sum = three_partition_cut(&inst, &part).unwrap().unwrap();
        let metric = three_partition_metric_cut(&inst, &part).unwrap().unwrap();
        let best = select_total_capacity_cut(&[sum.clone(), metric.clone()]).unwrap();
        println!("t = {}: s = {s:?}", format_rational(&t));
        println!("  sum cut    rhs {}", sum.rhs());
        println!("  metric cut rhs {}", metric.rhs());
        println!("  kept the cut with rhs {}", best.rhs());
    }
}
