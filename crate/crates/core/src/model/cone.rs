use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, LinearProgram, LpOutcome};
use crate::scalar::{dot, is_zero_vec, Field};

/// How a cone was constructed. The halfspace normal is kept because the
/// halfspace order admits a scalar reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConeKind<T> {
    Orthant,
    Ray(Vec<T>),
    Halfspace(Vec<T>),
    Generators,
}

/// Finitely generated convex cone `{ Σ λ_l g_l : λ >= 0 }`.
///
/// Lines are allowed (a generator pair `±v`), so halfspaces are representable.
/// The dual cone is never materialized: `c` lies in it iff `c·g_l >= 0` for
/// every generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyhedralCone<T> {
    dimension: usize,
    generators: Vec<Vec<T>>,
    kind: ConeKind<T>,
}

impl<T: Field> PolyhedralCone<T> {
    /// Nonnegative orthant, generated by the standard basis.
    pub fn orthant(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        let generators = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Ok(Self {
            dimension: k,
            generators,
            kind: ConeKind::Orthant,
        })
    }

    /// `{ αw : α >= 0 }`.
    pub fn ray(w: Vec<T>) -> Result<Self> {
        check_direction(&w)?;
        Ok(Self {
            dimension: w.len(),
            generators: vec![w.clone()],
            kind: ConeKind::Ray(w),
        })
    }

    /// `{ x : w·x >= 0 }`, generated by `w` and `±v` for a basis `v` of the
    /// orthogonal complement of `w`.
    pub fn halfspace(w: Vec<T>) -> Result<Self> {
        check_direction(&w)?;
        let k = w.len();
        let pivot = w.iter().position(|v| !v.is_zero()).expect("nonzero w");
        let mut generators = vec![w.clone()];
        for q in (0..k).filter(|&q| q != pivot) {
            // v = w_q e_pivot - w_pivot e_q satisfies w·v = 0
            let mut v = vec![T::zero(); k];
            v[pivot] = w[q].clone();
            v[q] = -w[pivot].clone();
            let neg = v.iter().map(|x| -x.clone()).collect();
            generators.push(v);
            generators.push(neg);
        }
        Ok(Self {
            dimension: k,
            generators,
            kind: ConeKind::Halfspace(w),
        })
    }

    /// Cone spanned by arbitrary nonzero rays of equal dimension.
    pub fn from_generators(generators: Vec<Vec<T>>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let k = first.len();
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: g.len(),
                });
            }
            if is_zero_vec(g) {
                return Err(Error::ZeroGenerator { index });
            }
        }
        Ok(Self {
            dimension: k,
            generators,
            kind: ConeKind::Generators,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    pub fn kind(&self) -> &ConeKind<T> {
        &self.kind
    }

    /// Normal vector when the cone was built as a halfspace.
    pub fn halfspace_normal(&self) -> Option<&[T]> {
        match &self.kind {
            ConeKind::Halfspace(w) => Some(w),
            _ => None,
        }
    }

    /// Nonnegative multipliers `λ` with `Σ λ_l g_l = x`, if any exist.
    pub fn decompose(&self, x: &[T]) -> Result<Option<Vec<T>>> {
        self.check_dim(x)?;
        let a = (0..self.dimension)
            .map(|d| self.generators.iter().map(|g| g[d].clone()).collect())
            .collect();
        let lp = LinearProgram::new(a, x.to_vec(), self.generators.len())?;
        Ok(match solve_feasibility(&lp) {
            LpOutcome::Feasible { x } => Some(x),
            _ => None,
        })
    }

    /// Exact membership test `x ∈ K`.
    pub fn contains(&self, x: &[T]) -> Result<bool> {
        Ok(self.decompose(x)?.is_some())
    }

    /// `Σ λ_l g_l` for given multipliers.
    pub fn combine(&self, lambda: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dimension];
        for (g, l) in self.generators.iter().zip(lambda) {
            for (o, v) in out.iter_mut().zip(g) {
                *o = o.clone() + v.clone() * l.clone();
            }
        }
        out
    }

    /// Index of the first generator `g` with `c·g < 0`, or `None` when `c ∈ K*`.
    pub fn dual_violation(&self, c: &[T]) -> Option<usize> {
        self.generators.iter().position(|g| dot(c, g).is_negative())
    }

    pub fn dual_contains(&self, c: &[T]) -> bool {
        self.dual_violation(c).is_none()
    }

    fn check_dim(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }
}

fn check_direction<T: Field>(w: &[T]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::ZeroDimension);
    }
    if is_zero_vec(w) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}
