//! Distributions, cones, orders and the witness types shared by the checkers.

mod cone;
mod distribution;
mod problem;

pub use cone::{ConeKind, PolyhedralCone};
pub use distribution::DiscreteDistribution;
pub use problem::{Coupling, DominanceProblem, OrderKind, UtilityCertificate, Verdict};
