//! Iterative MIR on the knapsack cover set `{z >= 0 integer : z1 + 2 z2 + 4 z3 >= 7}`,
//! the partition inequalities it yields, and the two-partition cut of a
//! small network.
//!
//! cargo run --example partition_mir

use netdes_cuts::mir::{iterative_mir, KnapsackCoverSet};
use netdes_cuts::partition_cuts::{knapsack_cover_from_two_partition, partition_inequalities};
use netdes_cuts::rational::{format_rational, int};
use netdes_cuts::engine::{generate_instance, GenParams};

fn main() {
    let set = KnapsackCoverSet::new(vec![1, 2, 4], int(7)).unwrap();
    println!("single steps:");
    for s in [vec![2], vec![1, 2]] {
        let c = iterative_mir(&set, &s).unwrap().integral();
        println!("  {s:?}: {:?} >= {}", c.coeffs.iter().map(format_rational).collect::<Vec<_>>(), c.rhs);
    }
    println!("all partition inequalities:");
    for (s, c) in partition_inequalities(&set) {
        let c = c.integral();
        println!("  {s:?}: {:?} >= {}", c.coeffs.iter().map(format_rational).collect::<Vec<_>>(), c.rhs);
    }

    let inst = generate_instance(&GenParams::new(3, 4, 0.4, vec![1, 3])).unwrap();
    if let Some(cover) = knapsack_cover_from_two_partition(&inst, &[0, 1]) {
        println!("U = {{n0, n1}}: {} crossing arcs, b = {}", cover.arcs.len(), format_rational(&cover.set.rhs));
    }
}
