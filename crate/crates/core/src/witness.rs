//! Re-verification of witnesses against the original problem data.
//!
//! Nothing here consults the encodings in [`crate::dominance`]; the checks are
//! direct rational evaluations of the defining conditions. The only solver
//! call is the cone membership test, whose multipliers are plugged back in.

use thiserror::Error;

use crate::dominance::evaluate_utility;
use crate::model::{Coupling, DominanceProblem, OrderKind, UtilityCertificate};
use crate::scalar::{dot, is_zero_vec, sub, Field};

/// First condition a witness fails, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("p[{i}][{j}] is negative")]
    NegativeMass { i: usize, j: usize },
    #[error("row {i} sums to {found}, expected P(Y = y_{i}) = {expected}")]
    RowMarginal {
        i: usize,
        expected: String,
        found: String,
    },
    #[error("column {j} sums to {found}, expected P(Z = z_{j}) = {expected}")]
    ColumnMarginal {
        j: usize,
        expected: String,
        found: String,
    },
    #[error("column {j}: P(z_{j}) z_{j} - Σ_i p_ij y_i is not in the cone")]
    ConeCondition { j: usize },
    #[error("column {j}: P(z_{j}) z_{j} - Σ_i p_ij y_i is not zero")]
    MeanCondition { j: usize },
    #[error("a[{i}] > b[{j}] + c[{j}]·(y_{i} - z_{j})")]
    PairInequality { i: usize, j: usize },
    #[error("c[{j}] has negative inner product with generator {generator}")]
    DualCone { j: usize, generator: usize },
    #[error("gap {gap} is not negative")]
    GapNotNegative { gap: String },
    #[error("a[{i}] exceeds u(y_{i})")]
    LowerBound { i: usize },
    #[error("u(z_{j}) exceeds b[{j}]")]
    UpperBound { j: usize },
    #[error("E[u(Z)] - E[u(Y)] = {gap} is not negative")]
    UtilityGap { gap: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("witness shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Violated(#[from] Violation),
}

pub type Verification = Result<(), VerifyError>;

/// Check a coupling: nonnegativity, both marginals, and the per-column
/// conditional-mean condition multiplied through by `P(z_j)`.
pub fn verify_coupling<T: Field>(
    problem: &DominanceProblem<T>,
    coupling: &Coupling<T>,
) -> Verification {
    let y = problem.benchmark();
    let z = problem.candidate();
    let p = &coupling.p;
    if p.len() != y.len() || p.iter().any(|row| row.len() != z.len()) {
        return Err(VerifyError::Shape(format!(
            "coupling must be {}x{}",
            y.len(),
            z.len()
        )));
    }
    for (i, row) in p.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| v.is_negative()) {
            return Err(Violation::NegativeMass { i, j }.into());
        }
    }
    for (i, (row, expected)) in p.iter().zip(y.probs()).enumerate() {
        let found = row.iter().fold(T::zero(), |acc, v| acc + v.clone());
        if found != *expected {
            return Err(Violation::RowMarginal {
                i,
                expected: expected.to_string(),
                found: found.to_string(),
            }
            .into());
        }
    }
    for (j, expected) in z.probs().iter().enumerate() {
        let found = p.iter().fold(T::zero(), |acc, row| acc + row[j].clone());
        if found != *expected {
            return Err(Violation::ColumnMarginal {
                j,
                expected: expected.to_string(),
                found: found.to_string(),
            }
            .into());
        }
    }
    let k = problem.dimension();
    for (j, (zj, pz)) in z.atoms().enumerate() {
        // P(z_j) z_j - Σ_i p_ij y_i
        let mut slack: Vec<T> = zj.iter().map(|v| v.clone() * pz.clone()).collect();
        for (row, yi) in p.iter().zip(y.points()) {
            for d in 0..k {
                slack[d] = slack[d].clone() - row[j].clone() * yi[d].clone();
            }
        }
        match problem.order() {
            OrderKind::Cv => {
                if !is_zero_vec(&slack) {
                    return Err(Violation::MeanCondition { j }.into());
                }
            }
            OrderKind::Icv => {
                let cone = problem.cone();
                let confirmed = cone
                    .decompose(&slack)
                    .map_err(|e| VerifyError::Shape(e.to_string()))?
                    .is_some_and(|lambda| {
                        lambda.iter().all(|l| !l.is_negative()) && cone.combine(&lambda) == slack
                    });
                if !confirmed {
                    return Err(Violation::ConeCondition { j }.into());
                }
            }
        }
    }
    Ok(())
}

/// Check a utility certificate: pair inequalities, dual-cone slopes (increasing
/// order only), negative gap, and the chain `a_i <= u(y_i)`, `u(z_j) <= b_j`,
/// `E[u(Z)] < E[u(Y)]` for the induced piecewise-linear utility.
pub fn verify_utility<T: Field>(
    problem: &DominanceProblem<T>,
    cert: &UtilityCertificate<T>,
) -> Verification {
    check_certificate_rows(problem, cert)?;
    let gap = cert.gap(problem);
    if !gap.is_negative() {
        return Err(Violation::GapNotNegative {
            gap: gap.to_string(),
        }
        .into());
    }
    let y = problem.benchmark();
    let z = problem.candidate();
    let u = |x: &[T]| {
        evaluate_utility(cert, z.points(), x)
            .map(|(value, _)| value)
            .map_err(|e| VerifyError::Shape(e.to_string()))
    };
    for (i, yi) in y.points().iter().enumerate() {
        if cert.a[i] > u(yi)? {
            return Err(Violation::LowerBound { i }.into());
        }
    }
    for (j, zj) in z.points().iter().enumerate() {
        if u(zj)? > cert.b[j] {
            return Err(Violation::UpperBound { j }.into());
        }
    }
    let mut utility_gap = T::zero();
    for (x, p) in z.atoms() {
        utility_gap = utility_gap + u(x)? * p.clone();
    }
    for (x, p) in y.atoms() {
        utility_gap = utility_gap - u(x)? * p.clone();
    }
    if !utility_gap.is_negative() {
        return Err(Violation::UtilityGap {
            gap: utility_gap.to_string(),
        }
        .into());
    }
    Ok(())
}

/// The homogeneous part of [`verify_utility`]: pair inequalities and dual-cone
/// membership, without any condition on the gap.
pub fn check_certificate_rows<T: Field>(
    problem: &DominanceProblem<T>,
    cert: &UtilityCertificate<T>,
) -> Verification {
    let y = problem.benchmark();
    let z = problem.candidate();
    let k = problem.dimension();
    if cert.a.len() != y.len()
        || cert.b.len() != z.len()
        || cert.c.len() != z.len()
        || cert.c.iter().any(|c| c.len() != k)
    {
        return Err(VerifyError::Shape(format!(
            "certificate must have {} a-values, {} b-values and {} slopes of length {}",
            y.len(),
            z.len(),
            z.len(),
            k
        )));
    }
    for (i, yi) in y.points().iter().enumerate() {
        for (j, zj) in z.points().iter().enumerate() {
            if cert.a[i] > cert.b[j].clone() + dot(&cert.c[j], &sub(yi, zj)) {
                return Err(Violation::PairInequality { i, j }.into());
            }
        }
    }
    if problem.order() == OrderKind::Icv {
        for (j, c) in cert.c.iter().enumerate() {
            if let Some(generator) = problem.cone().dual_violation(c) {
                return Err(Violation::DualCone { j, generator }.into());
            }
        }
    }
    Ok(())
}
