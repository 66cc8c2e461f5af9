//! Seeded instance generation and the JSON instance format.
//!
//! cargo run --example generate

use netdes_cuts::engine::{generate_instance, GenParams};
use netdes_cuts::{CommodityMode, Instance, Routing};

fn main() {
    let params = GenParams {
        mode: CommodityMode::Disaggregated,
        routing: Routing::Unsplittable,
        existing: 0.3,
        ..GenParams::new(42, 4, 0.3, vec![1, 3])
    };
    let inst = generate_instance(&params).unwrap();
    let json = inst.to_json();
    println!("{json}");
    let back = Instance::from_json(&json).unwrap();
    assert_eq!(back, inst);
    println!("{} nodes, {} arcs, round trip ok", back.num_nodes(), back.arcs().len());
}
