//! Cutting planes for multi-commodity multi-facility network design.
//!
//! Instances are held in exact rational arithmetic. Separation routines take
//! an LP point and return [`cut::LinearCut`]s, which the [`engine`] loop feeds
//! back into an embedded simplex. Brute-force oracles in [`engine::oracle`]
//! check cut validity on small instances.

pub mod arc_cuts;
pub mod cut;
pub mod cutset_cuts;
pub mod engine;
pub mod lp;
pub mod mir;
pub mod model;
pub mod partition_cuts;
pub mod rational;

pub use cut::{CutFamily, FractionalPoint, LinearCut, Var};
pub use model::{Commodity, CommodityMode, DemandMatrix, Facility, Instance, Routing};
pub use rational::Rational;
