use netdes_cuts::engine::oracle::BUDGET;
use netdes_cuts::engine::{brute_force_ip, cutting_plane_loop, generate_instance, Config, GenParams, YBounds};
use netdes_cuts::model::validate_instance;
use netdes_cuts::{CommodityMode, CutFamily, Routing};

fn small(seed: u64) -> netdes_cuts::Instance {
    let facilities = if seed.is_multiple_of(2) { vec![1, 2] } else { vec![1] };
    let params = GenParams {
        demand_scale: 1,
        existing: 0.2,
        flow_costs: seed.is_multiple_of(3),
        ..GenParams::new(seed, 3, 0.4, facilities)
    };
    generate_instance(&params).unwrap()
}

#[test]
fn exact_bounds_are_monotone_and_below_the_optimum() {
    for seed in 0..12 {
        let inst = small(seed);
        let config = Config { exact: true, max_rounds: 8, seed, ..Config::default() };
        let res = cutting_plane_loop(&inst, &config).unwrap();
        let bounds: Vec<_> = res.rounds.iter().map(|r| r.exact_bound.clone().unwrap()).collect();
        assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "seed {seed}: {bounds:?}");
        let opt = brute_force_ip(&inst, &YBounds::capped(&inst, 200_000), BUDGET).unwrap();
        assert!(*bounds.last().unwrap() <= opt.value, "seed {seed}: bound above optimum {}", opt.value);
    }
}

#[test]
fn cuts_raise_the_bound_somewhere() {
    let improved = (0..12)
        .filter(|&seed| {
            let res = cutting_plane_loop(&small(seed), &Config { max_rounds: 8, ..Config::default() }).unwrap();
            res.final_bound() > res.initial_bound() + 1e-9
        })
        .count();
    assert!(improved >= 6, "only {improved} of 12 instances improved");
}

#[test]
fn family_filter_is_respected() {
    let inst = small(2);
    let only = [CutFamily::ResidualCapacity];
    let res = cutting_plane_loop(&inst, &Config::with_families(only)).unwrap();
    assert!(res.added.iter().all(|c| c.family == CutFamily::ResidualCapacity));
    for r in &res.rounds {
        assert!(r.cuts.keys().all(|f| *f == CutFamily::ResidualCapacity));
    }
}

#[test]
fn loop_stops_at_round_limit_and_without_new_cuts() {
    let inst = small(8);
    let res = cutting_plane_loop(&inst, &Config { max_rounds: 2, ..Config::default() }).unwrap();
    assert!(res.rounds.len() <= 2);
    assert!(res.rounds.last().unwrap().cuts.is_empty());
    assert_eq!(res.added.len(), res.pool.len());
}

#[test]
fn generated_instances_validate() {
    for seed in 0..40 {
        let unsplit = seed % 2 == 1;
        let params = GenParams {
            mode: if unsplit { CommodityMode::Disaggregated } else { CommodityMode::Aggregated },
            routing: if unsplit { Routing::Unsplittable } else { Routing::Splittable },
            existing: 0.5,
            ..GenParams::new(seed, 2 + (seed as usize % 6), 0.3, vec![1, 4, 8])
        };
        let inst = generate_instance(&params).unwrap();
        validate_instance(&inst).unwrap();
        let back = netdes_cuts::Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
    }
}

#[test]
fn unsplittable_instances_run_all_families() {
    let params = GenParams {
        demand_scale: 1,
        pairs: 2,
        mode: CommodityMode::Disaggregated,
        routing: Routing::Unsplittable,
        ..GenParams::new(17, 3, 0.5, vec![1])
    };
    let inst = generate_instance(&params).unwrap();
    let res = cutting_plane_loop(&inst, &Config { exact: true, ..Config::default() }).unwrap();
    let opt = brute_force_ip(&inst, &YBounds::capped(&inst, 200_000), BUDGET).unwrap();
    assert!(res.rounds.last().unwrap().exact_bound.clone().unwrap() <= opt.value);
}
