//! Brute-force basis enumeration, independent of the simplex implementation.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use sdom_core::{Program, Rational};

/// Unique solution of `A_S x_S = b` restricted to columns `cols`, if the
/// columns are independent and the system is consistent.
pub fn solve_on_columns(
    a: &[Vec<Rational>],
    b: &[Rational],
    cols: &[usize],
) -> Option<Vec<Rational>> {
    let m = a.len();
    let s = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|&c| a[r][c].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..s {
        let found = (pivot_row..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot_row, found);
        let p = aug[pivot_row][col].clone();
        for v in aug[pivot_row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for r in 0..m {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..=s {
                    let sub = f.clone() * aug[pivot_row][c].clone();
                    aug[r][c] = aug[r][c].clone() - sub;
                }
            }
        }
        pivot_row += 1;
    }
    // consistency of remaining rows
    if aug[pivot_row..].iter().any(|row| !row[s].is_zero()) {
        return None;
    }
    Some((0..s).map(|i| aug[i][s].clone()).collect())
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for j in 0..n {
        let extra: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(j);
                t
            })
            .collect();
        out.extend(extra);
    }
    out
}

/// All basic feasible solutions of `Ax = b, x >= 0`.
pub fn basic_feasible_solutions(
    a: &[Vec<Rational>],
    b: &[Rational],
    n: usize,
) -> Vec<Vec<Rational>> {
    let m = a.len();
    subsets(n, m.min(n))
        .into_iter()
        .filter_map(|cols| {
            let xs = solve_on_columns(a, b, &cols)?;
            if xs.iter().any(|v| v.is_negative()) {
                return None;
            }
            let mut x = vec![Rational::zero(); n];
            for (c, v) in cols.iter().zip(xs) {
                x[*c] = v;
            }
            Some(x)
        })
        .collect()
}

pub fn brute_feasible(lp: &Program) -> bool {
    !basic_feasible_solutions(lp.a(), lp.b(), lp.cols()).is_empty()
}

#[derive(Debug, PartialEq)]
pub enum BruteOptimum {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

pub fn brute_optimize(lp: &Program) -> BruteOptimum {
    let c = lp.objective().expect("objective");
    let n = lp.cols();
    let bfs = basic_feasible_solutions(lp.a(), lp.b(), n);
    if bfs.is_empty() {
        return BruteOptimum::Infeasible;
    }
    // Extreme rays of {Ar = 0, r >= 0} are the vertices of the slice 1·r = 1.
    let mut ray_a: Vec<Vec<Rational>> = lp.a().to_vec();
    ray_a.push(vec![Rational::one(); n]);
    let mut ray_b = vec![Rational::zero(); lp.rows()];
    ray_b.push(Rational::one());
    let dot = |x: &[Rational]| {
        x.iter()
            .zip(c)
            .fold(Rational::zero(), |s, (a, b)| s + a * b)
    };
    if basic_feasible_solutions(&ray_a, &ray_b, n)
        .iter()
        .any(|r| dot(r).is_negative())
    {
        return BruteOptimum::Unbounded;
    }
    BruteOptimum::Optimal(bfs.iter().map(|x| dot(x)).min().expect("nonempty"))
}
