//! LP relaxation, embedded simplex and routing feasibility oracle.

pub mod model;
pub mod routing;
pub mod simplex;

pub use model::{build_relaxation, LpError, LpModel, LpSolution, RowKind};
pub use routing::{
    arc_capacities, check_feasible_routing, check_routing_exact, check_routing_with_capacities, MetricVector,
    RoutingResult,
};
pub use simplex::{LinearProgram, Scalar, Sense, SimplexOptions, Status};
