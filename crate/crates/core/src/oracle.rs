//! Closed-form dominance tests for the cases that have one.
//!
//! For scalar distributions, `Z ⪰_icv Y` iff `E[(t - Z)+] <= E[(t - Y)+]` for
//! every real `t` (the functions `x ↦ min(x, t)` together with the constants
//! span the increasing concave cone). Both sides are piecewise linear in `t`
//! with kinks only at support points, and the difference tends to
//! `E[Z] - E[Y]` as `t → ∞`, so checking every support point plus the means is
//! exact. The concave order additionally requires equal means.
//!
//! A halfspace cone `{x : w·x >= 0}` has dual cone `{μw : μ >= 0}`, so the
//! admissible utilities are exactly `f(w·x)` with `f` increasing concave and
//! the question reduces to the projections `w·Y`, `w·Z`.

use crate::error::{Error, Result};
use crate::model::{ConeKind, DiscreteDistribution, DominanceProblem, OrderKind};
use crate::scalar::{dot, Field};

fn expected_shortfall<T: Field>(dist: &DiscreteDistribution<T>, t: &T) -> T {
    dist.expectation(|x| {
        let gap = t.clone() - x[0].clone();
        if gap.is_positive() {
            gap
        } else {
            T::zero()
        }
    })
}

fn require_scalar<T: Field>(dists: [&DiscreteDistribution<T>; 2]) -> Result<()> {
    for d in dists {
        if d.dimension() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: d.dimension(),
            });
        }
    }
    Ok(())
}

/// Second-order dominance `candidate ⪰_icv benchmark` for scalar distributions.
pub fn scalar_icv<T: Field>(
    benchmark: &DiscreteDistribution<T>,
    candidate: &DiscreteDistribution<T>,
) -> Result<bool> {
    require_scalar([benchmark, candidate])?;
    if candidate.mean()[0] < benchmark.mean()[0] {
        return Ok(false);
    }
    let thresholds = benchmark
        .points()
        .iter()
        .chain(candidate.points())
        .map(|p| &p[0]);
    for t in thresholds {
        if expected_shortfall(candidate, t) > expected_shortfall(benchmark, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Concave order `candidate ⪰_cv benchmark` for scalar distributions.
pub fn scalar_cv<T: Field>(
    benchmark: &DiscreteDistribution<T>,
    candidate: &DiscreteDistribution<T>,
) -> Result<bool> {
    require_scalar([benchmark, candidate])?;
    Ok(candidate.mean() == benchmark.mean() && scalar_icv(benchmark, candidate)?)
}

/// Decide a halfspace-cone problem through the projections onto the normal.
///
/// Only the increasing order reduces this way in dimension two and up: the
/// concave order ignores the cone, and a scalar concave comparison of one
/// projection is weaker than the vector statement.
pub fn halfspace_reduce<T: Field>(problem: &DominanceProblem<T>) -> Result<bool> {
    let w = problem
        .cone()
        .halfspace_normal()
        .ok_or_else(|| Error::NoOracle("cone was not built as a halfspace".into()))?;
    if problem.order() == OrderKind::Cv && problem.dimension() > 1 {
        return Err(Error::NoOracle(
            "concave order in dimension > 1 does not reduce to a projection".into(),
        ));
    }
    let project = |x: &[T]| vec![dot(w, x)];
    let y = problem.benchmark().map_points(1, project)?;
    let z = problem.candidate().map_points(1, project)?;
    match problem.order() {
        OrderKind::Icv => scalar_icv(&y, &z),
        OrderKind::Cv => scalar_cv(&y, &z),
    }
}

/// Pick whichever closed-form test applies to `problem`.
pub fn closed_form<T: Field>(problem: &DominanceProblem<T>) -> Result<bool> {
    let (y, z) = (problem.benchmark(), problem.candidate());
    match (problem.order(), problem.cone().kind(), problem.dimension()) {
        (OrderKind::Cv, _, 1) => scalar_cv(y, z),
        (OrderKind::Icv, ConeKind::Orthant, 1) => scalar_icv(y, z),
        (_, ConeKind::Halfspace(_), _) => halfspace_reduce(problem),
        (order, _, k) => Err(Error::NoOracle(format!(
            "{order} order in dimension {k} requires an orthant (k = 1) or halfspace cone"
        ))),
    }
}
