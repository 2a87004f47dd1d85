//! Exact stochastic dominance between finitely supported distributions.
//!
//! Given a benchmark `Y` and a candidate `Z` on `ℚ^k`, [`check_dominance`]
//! decides whether `Z` dominates `Y` in the increasing concave order (with
//! "increasing" taken relative to a polyhedral cone) or in the concave order,
//! and returns a witness either way:
//!
//! * a [`Coupling`] of `Y` and `Z` under which `Z` sits above the conditional
//!   mean of `Y` in the cone order (equal to it for the concave order), or
//! * a [`UtilityCertificate`] describing a piecewise-linear concave utility
//!   whose expectation is strictly smaller under `Z` than under `Y`.
//!
//! All computation is exact. The algorithms are generic over [`Field`];
//! the aliases at the crate root fix the scalar to [`Rational`].

pub mod dominance;
pub mod error;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod witness;

pub use dominance::{
    build_primal, check_dominance, check_via_dual, evaluate_utility, extract_certificate,
    DualReport, PrimalEncoding,
};
pub use error::{Error, Result};
pub use lp::{solve_feasibility, solve_optimize, LinearProgram, LpOutcome};
pub use model::{
    ConeKind, Coupling, DiscreteDistribution, DominanceProblem, OrderKind, PolyhedralCone,
    UtilityCertificate, Verdict,
};
pub use oracle::{closed_form, halfspace_reduce, scalar_cv, scalar_icv};
pub use scalar::Field;
pub use witness::{verify_coupling, verify_utility, Verification, VerifyError, Violation};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;

pub type Distribution = model::DiscreteDistribution<Rational>;
pub type Cone = model::PolyhedralCone<Rational>;
pub type Problem = model::DominanceProblem<Rational>;
pub type RationalCoupling = model::Coupling<Rational>;
pub type Certificate = model::UtilityCertificate<Rational>;
pub type RationalVerdict = model::Verdict<Rational>;
pub type Program = lp::LinearProgram<Rational>;

/// Build a [`Rational`] from an integer numerator and denominator.
///
/// # Panics
/// If `den` is zero.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
