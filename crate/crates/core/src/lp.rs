//! Exact dense-tableau simplex for problems in equality form
//! `{ x : Ax = b, x >= 0 }`.
//!
//! Pivoting follows Bland's rule throughout (smallest eligible entering
//! column, ties in the ratio test broken by smallest basic variable), which
//! guarantees termination on degenerate problems. Phase 1 adds one
//! artificial column per row; when its optimum is positive the phase-1 dual
//! values are turned into a Farkas vector `y` with `Aᵀy >= 0` and `bᵀy < 0`.

use crate::error::{Error, Result};
use crate::scalar::{dot, Field};

/// A linear system `Ax = b, x >= 0`, optionally with an objective to minimize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram<T> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
    cols: usize,
    objective: Option<Vec<T>>,
}

impl<T: Field> LinearProgram<T> {
    /// `a` is row-major with `cols` columns; `b` has one entry per row.
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>, cols: usize) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Shape(format!(
                "{} constraint rows but {} right-hand sides",
                a.len(),
                b.len()
            )));
        }
        if let Some((r, row)) = a.iter().enumerate().find(|(_, row)| row.len() != cols) {
            return Err(Error::Shape(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        Ok(Self {
            a,
            b,
            cols,
            objective: None,
        })
    }

    pub fn with_objective(mut self, c: Vec<T>) -> Result<Self> {
        if c.len() != self.cols {
            return Err(Error::Shape(format!(
                "objective has {} entries, expected {}",
                c.len(),
                self.cols
            )));
        }
        self.objective = Some(c);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn a(&self) -> &[Vec<T>] {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn objective(&self) -> Option<&[T]> {
        self.objective.as_deref()
    }

    /// `Aᵀy` as a vector indexed by column.
    pub fn transpose_mul(&self, y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        for (row, yr) in self.a.iter().zip(y) {
            if yr.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o = o.clone() + v.clone() * yr.clone();
                }
            }
        }
        out
    }

    /// `Ax = b` and `x >= 0`, exactly.
    pub fn is_feasible_point(&self, x: &[T]) -> bool {
        x.len() == self.cols
            && x.iter().all(|v| !v.is_negative())
            && self
                .a
                .iter()
                .zip(&self.b)
                .all(|(row, rhs)| dot(row, x) == *rhs)
    }

    /// `Aᵀy >= 0` and `bᵀy < 0`, exactly.
    pub fn is_farkas_certificate(&self, y: &[T]) -> bool {
        y.len() == self.rows()
            && dot(&self.b, y).is_negative()
            && self.transpose_mul(y).iter().all(|v| !v.is_negative())
    }

    /// `Ar = 0`, `r >= 0` and `c·r < 0`, exactly. False when there is no objective.
    pub fn is_improving_ray(&self, r: &[T]) -> bool {
        let Some(c) = &self.objective else {
            return false;
        };
        r.len() == self.cols
            && r.iter().all(|v| !v.is_negative())
            && dot(c, r).is_negative()
            && self.a.iter().all(|row| dot(row, r).is_zero())
    }
}

/// Result of a solve. Every payload satisfies its defining relations exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Feasible {
        x: Vec<T>,
    },
    /// Farkas vector: `Aᵀy >= 0`, `bᵀy < 0`.
    Infeasible {
        y: Vec<T>,
    },
    Optimal {
        x: Vec<T>,
        value: T,
    },
    /// Improving direction: `Ar = 0`, `r >= 0`, `c·r < 0`.
    Unbounded {
        ray: Vec<T>,
    },
}

impl<T> LpOutcome<T> {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

/// Decide feasibility of `Ax = b, x >= 0`. Any objective is ignored.
pub fn solve_feasibility<T: Field>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    match Tableau::phase_one(lp) {
        PhaseOne::Infeasible(y) => LpOutcome::Infeasible { y },
        PhaseOne::Feasible(t) => {
            let x = t.primal(lp.cols);
            assert!(
                lp.is_feasible_point(&x),
                "simplex produced an infeasible point"
            );
            LpOutcome::Feasible { x }
        }
    }
}

/// Minimize the objective over `Ax = b, x >= 0`.
pub fn solve_optimize<T: Field>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>> {
    let c = lp
        .objective()
        .ok_or_else(|| Error::Shape("linear program has no objective".into()))?;
    let mut t = match Tableau::phase_one(lp) {
        PhaseOne::Infeasible(y) => return Ok(LpOutcome::Infeasible { y }),
        PhaseOne::Feasible(t) => t,
    };
    let n = lp.cols;
    t.drive_out_artificials(n);
    t.install_cost(c, n);
    match t.run(|j| j < n) {
        Ok(()) => {
            let x = t.primal(n);
            assert!(
                lp.is_feasible_point(&x),
                "simplex produced an infeasible point"
            );
            let value = dot(c, &x);
            debug_assert_eq!(value, t.value);
            Ok(LpOutcome::Optimal { x, value })
        }
        Err(entering) => {
            let ray = t.ray(entering, n);
            assert!(lp.is_improving_ray(&ray), "simplex produced an invalid ray");
            Ok(LpOutcome::Unbounded { ray })
        }
    }
}

enum PhaseOne<T> {
    Feasible(Tableau<T>),
    Infeasible(Vec<T>),
}

/// Dense tableau over the original columns followed by one artificial per row.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    /// Reduced costs for every column.
    cost: Vec<T>,
    /// Current objective value.
    value: T,
    basis: Vec<usize>,
}

impl<T: Field> Tableau<T> {
    fn phase_one(lp: &LinearProgram<T>) -> PhaseOne<T> {
        let m = lp.rows();
        let n = lp.cols;
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for (r, (row, b)) in lp.a.iter().zip(&lp.b).enumerate() {
            let flip = b.is_negative();
            let mut full = Vec::with_capacity(width);
            full.extend(
                row.iter()
                    .map(|v| if flip { -v.clone() } else { v.clone() }),
            );
            full.extend((0..m).map(|k| if k == r { T::one() } else { T::zero() }));
            rows.push(full);
            rhs.push(b.abs());
            flipped.push(flip);
        }
        let mut cost = vec![T::zero(); width];
        for row in &rows {
            for (d, v) in cost.iter_mut().zip(&row[..n]) {
                if !v.is_zero() {
                    *d = d.clone() - v.clone();
                }
            }
        }
        let value = rhs.iter().fold(T::zero(), |acc, v| acc + v.clone());
        let mut t = Tableau {
            rows,
            rhs,
            cost,
            value,
            basis: (n..width).collect(),
        };
        t.run(|_| true)
            .unwrap_or_else(|_| unreachable!("phase-1 objective is bounded below by zero"));

        if t.value.is_zero() {
            return PhaseOne::Feasible(t);
        }
        // Phase-1 duals are pi_r = 1 - d_{n+r}; undo the row flips and negate.
        let y: Vec<T> = (0..m)
            .map(|r| {
                let pi = T::one() - t.cost[n + r].clone();
                if flipped[r] {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        assert!(
            lp.is_farkas_certificate(&y),
            "phase-1 duals do not form a Farkas certificate"
        );
        PhaseOne::Infeasible(y)
    }

    /// Bland's rule. Returns `Err(column)` when that entering column has no
    /// blocking row.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> std::result::Result<(), usize> {
        loop {
            let Some(entering) =
                (0..self.cost.len()).find(|&j| allowed(j) && self.cost[j].is_negative())
            else {
                return Ok(());
            };
            let mut leaving: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][entering];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = self.rhs[r].clone() / coef.clone();
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[r] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, entering),
                None => return Err(entering),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / p.clone();
                }
            }
            self.rhs[r] = self.rhs[r].clone() / p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r {
                continue;
            }
            let factor = self.rows[k][c].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[k].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
            self.rhs[k] = self.rhs[k].clone() - factor * pivot_rhs.clone();
        }
        let factor = self.cost[c].clone();
        if !factor.is_zero() {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
            self.value = self.value.clone() + factor * pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Replace basic artificials (all at level zero) by original columns where
    /// possible. Rows where no original column has a nonzero entry are
    /// redundant and keep their artificial, which no later pivot can move.
    fn drive_out_artificials(&mut self, n: usize) {
        for r in 0..self.rows.len() {
            if self.basis[r] < n {
                continue;
            }
            if let Some(j) = (0..n).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, j);
            }
        }
    }

    fn install_cost(&mut self, c: &[T], n: usize) {
        let basic_cost = |col: usize| if col < n { c[col].clone() } else { T::zero() };
        let mut cost: Vec<T> = (0..self.cost.len()).map(basic_cost).collect();
        let mut value = T::zero();
        for (r, &col) in self.basis.iter().enumerate() {
            let cb = basic_cost(col);
            if cb.is_zero() {
                continue;
            }
            for (d, v) in cost.iter_mut().zip(&self.rows[r]) {
                if !v.is_zero() {
                    *d = d.clone() - cb.clone() * v.clone();
                }
            }
            value = value + cb * self.rhs[r].clone();
        }
        self.cost = cost;
        self.value = value;
    }

    fn primal(&self, n: usize) -> Vec<T> {
        let mut x = vec![T::zero(); n];
        for (r, &col) in self.basis.iter().enumerate() {
            if col < n {
                x[col] = self.rhs[r].clone();
            }
        }
        x
    }

    fn ray(&self, entering: usize, n: usize) -> Vec<T> {
        let mut ray = vec![T::zero(); n];
        ray[entering] = T::one();
        for (r, &col) in self.basis.iter().enumerate() {
            if col < n {
                ray[col] = -self.rows[r][entering].clone();
            }
        }
        ray
    }
}
