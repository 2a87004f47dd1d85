use std::fmt;

use crate::error::{Error, Result};
use crate::model::{DiscreteDistribution, PolyhedralCone};
use crate::scalar::Field;

/// Which family of utility functions the comparison quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Increasing (with respect to the cone) concave utilities.
    Icv,
    /// All concave utilities; the cone plays no role.
    Cv,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Icv => "icv",
            OrderKind::Cv => "cv",
        })
    }
}

/// Does `candidate` dominate `benchmark` in the given order?
///
/// The benchmark atoms index rows (`i`) of every witness, the candidate atoms
/// index columns (`j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceProblem<T> {
    order: OrderKind,
    cone: PolyhedralCone<T>,
    benchmark: DiscreteDistribution<T>,
    candidate: DiscreteDistribution<T>,
}

impl<T: Field> DominanceProblem<T> {
    pub fn new(
        order: OrderKind,
        cone: PolyhedralCone<T>,
        benchmark: DiscreteDistribution<T>,
        candidate: DiscreteDistribution<T>,
    ) -> Result<Self> {
        let k = cone.dimension();
        for d in [benchmark.dimension(), candidate.dimension()] {
            if d != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: d,
                });
            }
        }
        Ok(Self {
            order,
            cone,
            benchmark,
            candidate,
        })
    }

    pub fn order(&self) -> OrderKind {
        self.order
    }

    pub fn cone(&self) -> &PolyhedralCone<T> {
        &self.cone
    }

    /// The dominated side, `Y`.
    pub fn benchmark(&self) -> &DiscreteDistribution<T> {
        &self.benchmark
    }

    /// The dominating side, `Z`.
    pub fn candidate(&self) -> &DiscreteDistribution<T> {
        &self.candidate
    }

    pub fn dimension(&self) -> usize {
        self.cone.dimension()
    }

    pub fn with_order(&self, order: OrderKind) -> Self {
        Self {
            order,
            ..self.clone()
        }
    }

    pub fn with_cone(&self, cone: PolyhedralCone<T>) -> Result<Self> {
        Self::new(
            self.order,
            cone,
            self.benchmark.clone(),
            self.candidate.clone(),
        )
    }
}

/// Joint mass `p[i][j]` of benchmark atom `i` and candidate atom `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coupling<T> {
    pub p: Vec<Vec<T>>,
}

/// Dual witness of non-dominance.
///
/// Satisfies `a_i <= b_j + c_j·(y_i - z_j)` for all pairs, `c_j ∈ K*` for the
/// increasing order, and `Σ_j b_j P(z_j) - Σ_i a_i P(y_i) < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UtilityCertificate<T> {
    /// Lower bounds on the utility at each benchmark atom.
    pub a: Vec<T>,
    /// Utility levels at each candidate atom.
    pub b: Vec<T>,
    /// Slopes at each candidate atom.
    pub c: Vec<Vec<T>>,
}

impl<T: Field> UtilityCertificate<T> {
    /// `Σ_j b_j P(z_j) - Σ_i a_i P(y_i)`.
    pub fn gap(&self, problem: &DominanceProblem<T>) -> T {
        let upper = self
            .b
            .iter()
            .zip(problem.candidate().probs())
            .fold(T::zero(), |acc, (b, p)| acc + b.clone() * p.clone());
        let lower = self
            .a
            .iter()
            .zip(problem.benchmark().probs())
            .fold(T::zero(), |acc, (a, p)| acc + a.clone() * p.clone());
        upper - lower
    }

    /// Multiply every component by `factor`.
    pub fn scaled(&self, factor: &T) -> Self {
        let s = |v: &T| v.clone() * factor.clone();
        Self {
            a: self.a.iter().map(s).collect(),
            b: self.b.iter().map(s).collect(),
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(s).collect())
                .collect(),
        }
    }

    /// Rescale by a positive factor so that the gap is exactly `-1`.
    /// Returns `None` when the gap is not negative.
    pub fn normalized(&self, problem: &DominanceProblem<T>) -> Option<Self> {
        let gap = self.gap(problem);
        if !gap.is_negative() {
            return None;
        }
        Some(self.scaled(&(-T::one() / gap)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Dominates(Coupling<T>),
    NotDominates(UtilityCertificate<T>),
}

impl<T> Verdict<T> {
    pub fn dominates(&self) -> bool {
        matches!(self, Verdict::Dominates(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Dominates(_) => "dominates",
            Verdict::NotDominates(_) => "not_dominates",
        }
    }
}
