use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{scale, sum, Field};

/// Finitely supported probability distribution on `T^k`.
///
/// Support points are distinct and sorted lexicographically; every mass is
/// strictly positive and the masses sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteDistribution<T> {
    dimension: usize,
    points: Vec<Vec<T>>,
    probs: Vec<T>,
}

impl<T: Field> DiscreteDistribution<T> {
    /// Build the canonical form: zero-mass atoms dropped, duplicate points
    /// merged, support sorted.
    pub fn new(points: Vec<Vec<T>>, probs: Vec<T>, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.len() != probs.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                probs: probs.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: p.len(),
            });
        }
        if let Some(index) = probs.iter().position(|p| p.is_negative()) {
            return Err(Error::NegativeProbability { index });
        }
        let total = sum(&probs);
        if !total.is_one() {
            return Err(Error::ProbabilitySum {
                sum: total.to_string(),
            });
        }
        let mut atoms: BTreeMap<Vec<T>, T> = BTreeMap::new();
        for (point, prob) in points.into_iter().zip(probs) {
            if prob.is_zero() {
                continue;
            }
            atoms
                .entry(point)
                .and_modify(|m| *m = m.clone() + prob.clone())
                .or_insert(prob);
        }
        if atoms.is_empty() {
            return Err(Error::EmptySupport);
        }
        let (points, probs) = atoms.into_iter().unzip();
        Ok(Self {
            dimension,
            points,
            probs,
        })
    }

    pub fn point_mass(point: Vec<T>) -> Result<Self> {
        let k = point.len();
        Self::new(vec![point], vec![T::one()], k)
    }

    /// Equal mass on each listed point (duplicates accumulate mass).
    pub fn uniform(points: Vec<Vec<T>>) -> Result<Self> {
        let k = points.first().map_or(0, |p| p.len());
        let n = points.len();
        let mut count = T::zero();
        for _ in 0..n {
            count = count + T::one();
        }
        if n == 0 {
            return Err(Error::EmptySupport);
        }
        let mass = T::one() / count;
        Self::new(points, vec![mass; n], k)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Vec<T>, &T)> {
        self.points.iter().zip(&self.probs)
    }

    pub fn mean(&self) -> Vec<T> {
        let mut m = vec![T::zero(); self.dimension];
        for (point, prob) in self.atoms() {
            for (acc, v) in m.iter_mut().zip(scale(point, prob)) {
                *acc = acc.clone() + v;
            }
        }
        m
    }

    /// `E[f(X)]` computed exactly.
    pub fn expectation(&self, mut f: impl FnMut(&[T]) -> T) -> T {
        self.atoms()
            .fold(T::zero(), |acc, (x, p)| acc + f(x) * p.clone())
    }

    /// Push the distribution forward through `f`, merging collided atoms.
    pub fn map_points(&self, dimension: usize, mut f: impl FnMut(&[T]) -> Vec<T>) -> Result<Self> {
        let points = self.points.iter().map(|x| f(x)).collect();
        Self::new(points, self.probs.clone(), dimension)
    }

    /// Index of `point` in the support, if present.
    pub fn position(&self, point: &[T]) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(point))
            .ok()
    }
}
