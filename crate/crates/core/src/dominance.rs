//! Dominance checking through the coupling LP and its Farkas dual.
//!
//! The primal system has one variable `p_ij >= 0` per (benchmark, candidate)
//! pair plus, for the increasing order, multipliers `λ_jl >= 0` expressing the
//! slack of the conditional-mean constraint in terms of cone generators:
//!
//! ```text
//!   -Σ_j p_ij                        = -P(y_i)    for each i
//!    Σ_i p_ij                        =  P(z_j)    for each j
//!    Σ_i p_ij (y_i - z_j) + Σ_l λ_jl g_l = 0      for each j (k rows)
//! ```
//!
//! For the concave order the `λ` columns are omitted. A Farkas vector for
//! this system splits row-wise into `(a, b, c)`: column `p_ij` yields
//! `a_i <= b_j + c_j·(y_i - z_j)`, column `λ_jl` yields `c_j·g_l >= 0`, and
//! the right-hand side yields a negative gap.

use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, solve_optimize, LinearProgram, LpOutcome};
use crate::model::{Coupling, DominanceProblem, OrderKind, UtilityCertificate, Verdict};
use crate::scalar::{dot, sub, Field};

/// The coupling LP together with its row and column layout.
#[derive(Debug, Clone)]
pub struct PrimalEncoding<T> {
    pub lp: LinearProgram<T>,
    benchmark_len: usize,
    candidate_len: usize,
    dimension: usize,
    /// Generators per candidate atom; zero for the concave order.
    slack_width: usize,
}

impl<T> PrimalEncoding<T> {
    pub fn coupling_column(&self, i: usize, j: usize) -> usize {
        i * self.candidate_len + j
    }

    pub fn slack_column(&self, j: usize, l: usize) -> Option<usize> {
        (l < self.slack_width)
            .then(|| self.benchmark_len * self.candidate_len + j * self.slack_width + l)
    }

    pub fn benchmark_row(&self, i: usize) -> usize {
        i
    }

    pub fn candidate_row(&self, j: usize) -> usize {
        self.benchmark_len + j
    }

    pub fn cone_row(&self, j: usize, d: usize) -> usize {
        self.benchmark_len + self.candidate_len + j * self.dimension + d
    }

    pub fn variable_count(&self) -> usize {
        self.benchmark_len * self.candidate_len + self.candidate_len * self.slack_width
    }

    pub fn row_count(&self) -> usize {
        self.benchmark_len + self.candidate_len + self.candidate_len * self.dimension
    }
}

/// Encode the coupling feasibility system for `problem`.
pub fn build_primal<T: Field>(problem: &DominanceProblem<T>) -> PrimalEncoding<T> {
    let y = problem.benchmark();
    let z = problem.candidate();
    let k = problem.dimension();
    let generators = problem.cone().generators();
    let slack_width = match problem.order() {
        OrderKind::Icv => generators.len(),
        OrderKind::Cv => 0,
    };
    let mut enc = PrimalEncoding {
        lp: LinearProgram::new(vec![], vec![], 0).expect("empty program"),
        benchmark_len: y.len(),
        candidate_len: z.len(),
        dimension: k,
        slack_width,
    };
    let cols = enc.variable_count();
    let mut a = vec![vec![T::zero(); cols]; enc.row_count()];
    let mut rhs = vec![T::zero(); enc.row_count()];

    for (i, prob) in y.probs().iter().enumerate() {
        let r = enc.benchmark_row(i);
        rhs[r] = -prob.clone();
        for j in 0..z.len() {
            a[r][enc.coupling_column(i, j)] = -T::one();
        }
    }
    for (j, prob) in z.probs().iter().enumerate() {
        let r = enc.candidate_row(j);
        rhs[r] = prob.clone();
        for i in 0..y.len() {
            a[r][enc.coupling_column(i, j)] = T::one();
        }
    }
    for (j, zj) in z.points().iter().enumerate() {
        for (i, yi) in y.points().iter().enumerate() {
            let col = enc.coupling_column(i, j);
            for (d, diff) in sub(yi, zj).into_iter().enumerate() {
                a[enc.cone_row(j, d)][col] = diff;
            }
        }
        for (l, g) in generators.iter().enumerate().take(slack_width) {
            let col = enc.slack_column(j, l).expect("slack column");
            for (d, v) in g.iter().enumerate() {
                a[enc.cone_row(j, d)][col] = v.clone();
            }
        }
    }
    enc.lp = LinearProgram::new(a, rhs, cols).expect("consistent shapes");
    enc
}

/// Decide whether the candidate dominates the benchmark, returning a coupling
/// or a normalized utility certificate.
pub fn check_dominance<T: Field>(problem: &DominanceProblem<T>) -> Verdict<T> {
    let enc = build_primal(problem);
    match solve_feasibility(&enc.lp) {
        LpOutcome::Feasible { x } => {
            let p = (0..problem.benchmark().len())
                .map(|i| {
                    (0..problem.candidate().len())
                        .map(|j| x[enc.coupling_column(i, j)].clone())
                        .collect()
                })
                .collect();
            Verdict::Dominates(Coupling { p })
        }
        LpOutcome::Infeasible { y } => Verdict::NotDominates(
            extract_certificate(problem, &enc, &y)
                .expect("solver returned an invalid Farkas vector"),
        ),
        other => unreachable!("feasibility solve returned {other:?}"),
    }
}

/// Split a Farkas vector of the coupling LP into `(a, b, c)` and normalize
/// the gap to `-1`.
pub fn extract_certificate<T: Field>(
    problem: &DominanceProblem<T>,
    primal: &PrimalEncoding<T>,
    farkas: &[T],
) -> Result<UtilityCertificate<T>> {
    if farkas.len() != primal.row_count() {
        return Err(Error::Shape(format!(
            "Farkas vector has {} entries, expected {}",
            farkas.len(),
            primal.row_count()
        )));
    }
    if !primal.lp.is_farkas_certificate(farkas) {
        return Err(Error::InvalidCertificate(
            "vector is not a Farkas certificate for the coupling system".into(),
        ));
    }
    let nz = problem.candidate().len();
    let k = problem.dimension();
    let cert = UtilityCertificate {
        a: (0..problem.benchmark().len())
            .map(|i| farkas[primal.benchmark_row(i)].clone())
            .collect(),
        b: (0..nz)
            .map(|j| farkas[primal.candidate_row(j)].clone())
            .collect(),
        c: (0..nz)
            .map(|j| {
                (0..k)
                    .map(|d| farkas[primal.cone_row(j, d)].clone())
                    .collect()
            })
            .collect(),
    };
    let cert = cert
        .normalized(problem)
        .ok_or_else(|| Error::InvalidCertificate("gap is not negative".into()))?;
    if let Some(reason) = certificate_defect(problem, &cert) {
        return Err(Error::InvalidCertificate(reason));
    }
    Ok(cert)
}

fn certificate_defect<T: Field>(
    problem: &DominanceProblem<T>,
    cert: &UtilityCertificate<T>,
) -> Option<String> {
    let y = problem.benchmark().points();
    let z = problem.candidate().points();
    for (i, yi) in y.iter().enumerate() {
        for (j, zj) in z.iter().enumerate() {
            let rhs = cert.b[j].clone() + dot(&cert.c[j], &sub(yi, zj));
            if cert.a[i] > rhs {
                return Some(format!("pair inequality fails at ({i}, {j})"));
            }
        }
    }
    if problem.order() == OrderKind::Icv {
        if let Some(j) = cert.c.iter().position(|c| !problem.cone().dual_contains(c)) {
            return Some(format!("slope {j} is outside the dual cone"));
        }
    }
    None
}

/// Outcome of minimizing the utility gap directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualReport<T> {
    /// The minimum is attained; its value is always zero.
    Optimal { value: T },
    /// The gap is unbounded below; the improving ray, normalized to gap `-1`.
    Unbounded { certificate: UtilityCertificate<T> },
}

impl<T> DualReport<T> {
    pub fn agrees_with(&self, verdict: &Verdict<T>) -> bool
    where
        T: num_traits::Zero,
    {
        match (self, verdict) {
            (DualReport::Optimal { value }, Verdict::Dominates(_)) => value.is_zero(),
            (DualReport::Unbounded { .. }, Verdict::NotDominates(_)) => true,
            _ => false,
        }
    }
}

/// Independent route: minimize `Σ_j b_j P(z_j) - Σ_i a_i P(y_i)` over all
/// `(a, b, c)` with `a_i <= b_j + c_j·(y_i - z_j)` and (increasing order)
/// `c_j ∈ K*`.
///
/// Free variables are split into nonnegative parts; each pair inequality and
/// each dual-cone inequality gets its own surplus column.
pub fn check_via_dual<T: Field>(problem: &DominanceProblem<T>) -> DualReport<T> {
    let y = problem.benchmark();
    let z = problem.candidate();
    let (ny, nz, k) = (y.len(), z.len(), problem.dimension());
    let generators = problem.cone().generators();
    let ng = match problem.order() {
        OrderKind::Icv => generators.len(),
        OrderKind::Cv => 0,
    };

    // column layout: a±, b±, c±, pair surplus, cone surplus
    let a_col = |i: usize, neg: bool| 2 * i + usize::from(neg);
    let b_col = |j: usize, neg: bool| 2 * ny + 2 * j + usize::from(neg);
    let c_col = |j: usize, d: usize, neg: bool| 2 * (ny + nz) + 2 * (j * k + d) + usize::from(neg);
    let t_col = |i: usize, j: usize| 2 * (ny + nz + nz * k) + i * nz + j;
    let s_col = |j: usize, l: usize| 2 * (ny + nz + nz * k) + ny * nz + j * ng + l;
    let cols = 2 * (ny + nz + nz * k) + ny * nz + nz * ng;

    let mut a = Vec::with_capacity(ny * nz + nz * ng);
    for (i, yi) in y.points().iter().enumerate() {
        for (j, zj) in z.points().iter().enumerate() {
            // b_j - a_i + c_j·(y_i - z_j) - t_ij = 0
            let mut row = vec![T::zero(); cols];
            row[b_col(j, false)] = T::one();
            row[b_col(j, true)] = -T::one();
            row[a_col(i, false)] = -T::one();
            row[a_col(i, true)] = T::one();
            for (d, diff) in sub(yi, zj).into_iter().enumerate() {
                row[c_col(j, d, true)] = -diff.clone();
                row[c_col(j, d, false)] = diff;
            }
            row[t_col(i, j)] = -T::one();
            a.push(row);
        }
    }
    for j in 0..nz {
        for (l, g) in generators.iter().enumerate().take(ng) {
            // c_j·g_l - s_jl = 0
            let mut row = vec![T::zero(); cols];
            for (d, v) in g.iter().enumerate() {
                row[c_col(j, d, false)] = v.clone();
                row[c_col(j, d, true)] = -v.clone();
            }
            row[s_col(j, l)] = -T::one();
            a.push(row);
        }
    }
    let mut objective = vec![T::zero(); cols];
    for (j, p) in z.probs().iter().enumerate() {
        objective[b_col(j, false)] = p.clone();
        objective[b_col(j, true)] = -p.clone();
    }
    for (i, p) in y.probs().iter().enumerate() {
        objective[a_col(i, false)] = -p.clone();
        objective[a_col(i, true)] = p.clone();
    }
    let rows = a.len();
    let lp = LinearProgram::new(a, vec![T::zero(); rows], cols)
        .and_then(|lp| lp.with_objective(objective))
        .expect("consistent shapes");

    match solve_optimize(&lp).expect("objective present") {
        LpOutcome::Optimal { value, .. } => DualReport::Optimal { value },
        LpOutcome::Unbounded { ray } => {
            let diff = |pos: usize, neg: usize| ray[pos].clone() - ray[neg].clone();
            let cert = UtilityCertificate {
                a: (0..ny)
                    .map(|i| diff(a_col(i, false), a_col(i, true)))
                    .collect(),
                b: (0..nz)
                    .map(|j| diff(b_col(j, false), b_col(j, true)))
                    .collect(),
                c: (0..nz)
                    .map(|j| {
                        (0..k)
                            .map(|d| diff(c_col(j, d, false), c_col(j, d, true)))
                            .collect()
                    })
                    .collect(),
            };
            let certificate = cert
                .normalized(problem)
                .expect("improving ray has a negative gap");
            DualReport::Unbounded { certificate }
        }
        other => unreachable!("homogeneous system is always feasible, got {other:?}"),
    }
}

/// Evaluate `u(x) = min_j { b_j + c_j·(x - z_j) }` and the slope of the
/// lowest-index active piece, which is a supergradient of `u` at `x`.
pub fn evaluate_utility<T: Field>(
    cert: &UtilityCertificate<T>,
    candidate_points: &[Vec<T>],
    x: &[T],
) -> Result<(T, Vec<T>)> {
    if cert.b.is_empty() {
        return Err(Error::Shape("certificate has no affine pieces".into()));
    }
    if cert.c.len() != cert.b.len() || candidate_points.len() != cert.b.len() {
        return Err(Error::Shape(format!(
            "{} levels, {} slopes, {} candidate points",
            cert.b.len(),
            cert.c.len(),
            candidate_points.len()
        )));
    }
    let mut best: Option<(T, usize)> = None;
    for (j, ((b, c), zj)) in cert.b.iter().zip(&cert.c).zip(candidate_points).enumerate() {
        if c.len() != x.len() || zj.len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: if c.len() != x.len() {
                    c.len()
                } else {
                    zj.len()
                },
            });
        }
        let value = b.clone() + dot(c, &sub(x, zj));
        if best.as_ref().map_or(true, |(v, _)| value < *v) {
            best = Some((value, j));
        }
    }
    let (value, j) = best.expect("at least one piece");
    Ok((value, cert.c[j].clone()))
}
