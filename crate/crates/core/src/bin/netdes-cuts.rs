use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use netdes_cuts::engine::oracle::BUDGET;
use netdes_cuts::engine::{
    brute_force_ip, cutting_plane_loop, describe_round, generate_instance, parse_families, Config, GenParams, Report,
    YBounds,
};
use netdes_cuts::rational::{format_rational, parse_rational, rationalize, Rational};
use netdes_cuts::Instance;

#[derive(Parser)]
#[command(name = "netdes-cuts", version, about = "Cutting planes for multi-facility network design")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cutting-plane loop and write a JSON report.
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "rc,cstrong,cutset,flowcutset,mf,metric,partition")]
        cuts: String,
        #[arg(long, default_value_t = 50)]
        rounds: usize,
        #[arg(long, default_value = "1e-6")]
        eps: String,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solve LPs in rational arithmetic.
        #[arg(long)]
        exact: bool,
        /// Also compute the brute-force optimum with this bound on every y.
        #[arg(long)]
        oracle_ybound: Option<u64>,
    },
    /// Brute-force integer optimum.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        ybound: u64,
        #[arg(long, default_value_t = BUDGET)]
        budget: u64,
    },
    /// Write a random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value = "1")]
        facilities: String,
        #[arg(long, default_value_t = 2)]
        demand_scale: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_eps(s: &str) -> Result<Rational, String> {
    parse_rational(s)
        .or_else(|_| s.parse::<f64>().map(|f| rationalize(f, 1_000_000_000)).map_err(|e| e.to_string()))
        .map_err(|e| format!("bad --eps {s:?}: {e}"))
}

fn load(path: &PathBuf) -> Result<Instance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Instance::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Run {
            instance,
            cuts,
            rounds,
            eps,
            report,
            seed,
            exact,
            oracle_ybound,
        } => {
            let inst = load(&instance)?;
            let config = Config {
                families: parse_families(&cuts).map_err(|e| e.to_string())?,
                max_rounds: rounds,
                eps: parse_eps(&eps)?,
                seed,
                exact,
                ..Config::default()
            };
            let result = cutting_plane_loop(&inst, &config).map_err(|e| e.to_string())?;
            for r in &result.rounds {
                eprintln!("{}", describe_round(r));
            }
            let optimum = match oracle_ybound {
                Some(b) => Some(
                    brute_force_ip(&inst, &YBounds::uniform(&inst, b), BUDGET)
                        .map_err(|e| e.to_string())?
                        .value,
                ),
                None => None,
            };
            let rep = Report::new(instance.display().to_string(), &result, optimum.as_ref());
            match report {
                Some(path) => fs::write(&path, rep.to_json()).map_err(|e| format!("{}: {e}", path.display()))?,
                None => println!("{}", rep.to_json()),
            }
        }
        Command::Oracle { instance, ybound, budget } => {
            let inst = load(&instance)?;
            let sol = brute_force_ip(&inst, &YBounds::uniform(&inst, ybound), budget).map_err(|e| e.to_string())?;
            println!("optimum {}", format_rational(&sol.value));
            for (a, y) in sol.y.iter().enumerate() {
                if y.iter().any(|v| *v > 0) {
                    let arc = &inst.arcs()[a];
                    println!("  {} -> {}: {:?}", inst.node_name(arc.tail), inst.node_name(arc.head), y);
                }
            }
        }
        Command::Gen {
            seed,
            nodes,
            density,
            facilities,
            demand_scale,
            out,
        } => {
            let caps = facilities
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|e| format!("bad --facilities {s:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let params = GenParams {
                demand_scale,
                ..GenParams::new(seed, nodes, density, caps)
            };
            let inst = generate_instance(&params).map_err(|e| e.to_string())?;
            fs::write(&out, inst.to_json()).map_err(|e| format!("{}: {e}", out.display()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
