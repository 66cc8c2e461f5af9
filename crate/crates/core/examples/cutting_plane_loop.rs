//! The full cutting-plane loop on a generated instance, with the JSON report
//! the command-line tool writes.
//!
//! cargo run --example cutting_plane_loop [seed]

use netdes_cuts::engine::{brute_force_ip, cutting_plane_loop, describe_round, generate_instance, Config, GenParams, Report, YBounds};
use netdes_cuts::engine::oracle::BUDGET;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let inst = generate_instance(&GenParams { demand_scale: 1, ..GenParams::new(seed, 3, 0.5, vec![1, 2]) }).unwrap();
    let config = Config { max_rounds: 10, ..Config::default() };
    let result = cutting_plane_loop(&inst, &config).unwrap();
    for r in &result.rounds {
        println!("{}", describe_round(r));
    }
    let opt = brute_force_ip(&inst, &YBounds::capped(&inst, BUDGET), BUDGET).ok().map(|s| s.value);
    let report = Report::new(format!("generated seed {seed}"), &result, opt.as_ref());
    println!("{}", report.to_json());
}
