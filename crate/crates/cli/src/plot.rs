//! Sample points of a scalar certificate utility for external plotting.

use std::fmt::Write as _;

use sdom_core::{evaluate_utility, Certificate, Problem, Rational};

use crate::error::CliError;

/// `(x, u(x), s(x))` at support points, active kinks, and the midpoints
/// between consecutive samples, sorted by `x`.
pub fn utility_samples(
    problem: &Problem,
    cert: &Certificate,
) -> Result<Vec<(Rational, Rational, Rational)>, CliError> {
    if problem.dimension() != 1 {
        return Err(CliError::Usage(format!(
            "plot data needs a scalar problem, this one has dimension {}",
            problem.dimension()
        )));
    }
    let zs = problem.candidate().points();
    let eval = |x: &Rational| {
        evaluate_utility(cert, zs, std::slice::from_ref(x))
            .map_err(|e| CliError::invalid("certificate", e))
    };
    // intercept of piece j at the origin
    let intercept = |j: usize| &cert.b[j] - &cert.c[j][0] * &zs[j][0];

    let mut xs: Vec<Rational> = problem
        .benchmark()
        .points()
        .iter()
        .chain(zs)
        .map(|p| p[0].clone())
        .collect();
    for j in 0..cert.b.len() {
        for l in j + 1..cert.b.len() {
            let slope_gap = &cert.c[j][0] - &cert.c[l][0];
            if slope_gap == Rational::from_integer(0.into()) {
                continue;
            }
            let x = (intercept(l) - intercept(j)) / slope_gap;
            // keep only crossings that lie on the lower envelope
            if eval(&x)?.0 == intercept(j) + &cert.c[j][0] * &x {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    let two = Rational::from_integer(2.into());
    let mids: Vec<Rational> = xs.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect();
    xs.extend(mids);
    xs.sort();

    xs.into_iter()
        .map(|x| {
            let (u, s) = eval(&x)?;
            Ok((x, u, s[0].clone()))
        })
        .collect()
}

/// CSV with header `x,u,s`; values are exact rationals.
pub fn utility_csv(problem: &Problem, cert: &Certificate) -> Result<String, CliError> {
    let mut out = String::from("x,u,s\n");
    for (x, u, s) in utility_samples(problem, cert)? {
        writeln!(out, "{x},{u},{s}").expect("write to string");
    }
    Ok(out)
}
