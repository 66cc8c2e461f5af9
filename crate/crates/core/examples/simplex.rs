//! Exact bounded-variable simplex: an optimum with duals, then an
//! infeasible program and its Farkas certificate.
//!
//! cargo run --example simplex

use netdes_cuts::lp::simplex::{solve, LinearProgram, Sense, SimplexOptions};
use netdes_cuts::rational::{format_rational, int, rat, Rational};

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() {
    // max 3a + 2b  s.t.  a + b <= 4,  a + 3b <= 6,  a <= 3
    let mut lp = LinearProgram::<Rational>::new(2);
    lp.maximize = true;
    lp.objective = vec![int(3), int(2)];
    lp.upper[0] = Some(int(3));
    lp.add_row(vec![(0, int(1)), (1, int(1))], Sense::Le, int(4));
    lp.add_row(vec![(0, int(1)), (1, int(3))], Sense::Le, int(6));
    let sol = solve(&lp, &SimplexOptions::default());
    println!("{:?}: x = ({}), objective {}", sol.status, show(&sol.x), format_rational(&sol.objective));
    println!("duals ({}) after {} pivots", show(&sol.duals), sol.iterations);

    // a + b >= 5 cannot hold with a, b in [0, 2]
    let mut bad = LinearProgram::<Rational>::new(2);
    bad.upper = vec![Some(int(2)), Some(int(2))];
    bad.add_row(vec![(0, int(1)), (1, rat(1, 1))], Sense::Ge, int(5));
    let sol = solve(&bad, &SimplexOptions::default());
    println!("{:?}: Farkas multipliers ({})", sol.status, show(&sol.farkas.unwrap_or_default()));

    // the same first program in floating point
    let mut f = LinearProgram::<f64>::new(2);
    f.maximize = true;
    f.objective = vec![3.0, 2.0];
    f.upper[0] = Some(3.0);
    f.add_row(vec![(0, 1.0), (1, 1.0)], Sense::Le, 4.0);
    f.add_row(vec![(0, 1.0), (1, 3.0)], Sense::Le, 6.0);
    println!("f64 objective {}", solve(&f, &SimplexOptions::default()).objective);
}
