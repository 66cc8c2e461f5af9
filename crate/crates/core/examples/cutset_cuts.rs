//! Cut-set, flow-cut-set and multi-facility flow-cut-set inequalities for
//! the cut `U = {u}` of a three-node network.
//!
//! cargo run --example cutset_cuts

use netdes_cuts::cutset_cuts::{build_cutset, cutset_cut, flow_cutset_cut, multifacility_cutset_cut, FlowCutSelection};
use netdes_cuts::model::Arc;
use netdes_cuts::rational::{format_rational, int, rat};
use netdes_cuts::{CommodityMode, DemandMatrix, Facility, Instance};

fn main() {
    // u -> v, u -> w, v -> u, w -> v; 4/3 units from u to v
    let inst = Instance::new(
        vec!["u".into(), "v".into(), "w".into()],
        vec![Arc::new(0, 1, int(0)), Arc::new(0, 2, int(0)), Arc::new(1, 0, int(0)), Arc::new(2, 1, int(10))],
        vec![
            Facility { capacity: 1, costs: vec![int(1); 4] },
            Facility { capacity: 3, costs: vec![int(2); 4] },
        ],
        DemandMatrix::from_pairs(3, [(0, 1, rat(4, 3))]),
        vec![int(0); 4],
        CommodityMode::Aggregated,
    );
    let rel = build_cutset(&inst, &[0]).unwrap();
    println!("A+ = {:?}, A- = {:?}, b = {}", rel.a_plus, rel.a_minus, format_rational(&rel.b[0]));
    for s in 0..2 {
        println!("cut-set (facility {s}): {}", cutset_cut(&rel, s).unwrap());
    }
    let sel = FlowCutSelection { q: vec![0], s_plus: vec![0], s_minus: vec![2], facility: 0 };
    println!("flow-cut-set:   {}", flow_cutset_cut(&rel, &sel).unwrap());
    let (mf, report) = multifacility_cutset_cut(&rel, &sel).unwrap();
    println!("multi-facility: {mf}");
    println!("facet conditions hold: {}", report.holds());
}
