//! Unsplittable single-arc set `1/3 x1 + 1/3 x2 + 1/3 x3 + 1/2 x4 + 2/3 x5 <= y`
//! with binary `x`: c-strong, k-split and lifted cover inequalities, each
//! checked by enumeration.
//!
//! cargo run --example unsplittable_arc_cuts

use netdes_cuts::arc_cuts::{
    all_subsets, c_strong_cut, is_maximal_c_strong, k_split_c_strong_cut, lifted_cover_cut, ArcSetRelaxation,
    CoverSpec, FlowMode, LiftingOrder,
};
use netdes_cuts::engine::oracle::{arc_facet_dimensions, validate_arc_inequality};
use netdes_cuts::rational::{format_rational, int, rat, Rational};

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() {
    let rel = ArcSetRelaxation::new(
        vec![rat(1, 3), rat(1, 3), rat(1, 3), rat(1, 2), rat(2, 3)],
        int(0),
        FlowMode::Unsplittable,
    )
    .unwrap();

    println!("maximal c-strong inequalities:");
    for s in all_subsets(5).filter(|s| !s.is_empty() && is_maximal_c_strong(&rel, s)) {
        let cut = c_strong_cut(&rel, &s).unwrap();
        println!("  S = {s:?}: x(S) <= {} + y", cut.pi0);
    }

    for (s, k) in [(vec![1, 2], 2), (vec![3], 3)] {
        let cut = k_split_c_strong_cut(&rel, &s, k);
        let (tight, full) = arc_facet_dimensions(&rel, &cut, 4);
        println!("{k}-split from {s:?}: ({}) x <= {} + {} y, tight face dim {tight} of {full}", show(&cut.pi), cut.pi0, cut.beta);
    }

    let spec = CoverSpec::new(5, 2, vec![], vec![4]).unwrap();
    let lc = lifted_cover_cut(&rel, &spec, &LiftingOrder::Default).unwrap();
    let i = &lc.inequality;
    println!("lifted cover (y = 2, K1 = {{5}}): ({}) x <= {} + {} y, minimal cover {}", show(&i.pi), i.pi0, i.beta, lc.minimal);
    println!("counterexample on the grid: {:?}", validate_arc_inequality(&rel, i, 4));
}
