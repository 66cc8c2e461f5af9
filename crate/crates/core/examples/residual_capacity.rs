//! Residual capacity inequalities of a splittable single-arc set
//! `1/3 x1 + 2/3 x2 + 2/3 x3 <= y`, and exact separation of a point.
//!
//! cargo run --example residual_capacity

use netdes_cuts::arc_cuts::{all_subsets, residual_capacity_cut, separate_residual_capacity, ArcSetRelaxation, FlowMode};
use netdes_cuts::rational::{format_rational, int, rat, Rational};

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() {
    let rel = ArcSetRelaxation::new(vec![rat(1, 3), rat(2, 3), rat(2, 3)], int(0), FlowMode::Splittable).unwrap();
    for s in all_subsets(3) {
        if let Some(cut) = residual_capacity_cut(&rel, &s) {
            let c = cut.integral();
            println!("S = {s:?}: ({}) x <= {} + {} y", show(&c.pi), c.pi0, c.beta);
        }
    }
    let x = vec![int(1), rat(1, 2), int(0)];
    let y = rat(2, 3);
    match separate_residual_capacity(&rel, &x, &y) {
        Some((t, cut)) => println!("x = (1, 1/2, 0), y = 2/3 violates the cut for T = {t:?} by {}", cut.excess(&x, &y)),
        None => println!("no violated cut"),
    }
}
