//! Seeded random instances.
//!
//! Coordinates are integers in `[-5, 5]`, probabilities are `m/D` with
//! `D <= 20`. The stream comes from ChaCha8, so a seed fixes the instance on
//! every platform.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdom_core::{rational, Cone, Distribution, OrderKind, Problem, Rational};

use crate::error::CliError;

const COORD: i64 = 5;
const MAX_DENOMINATOR: usize = 20;
const RAY_COORD: i64 = 3;
const MAX_GENERATORS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeChoice {
    Orthant,
    Ray,
    Halfspace,
    Generators,
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub dimension: usize,
    pub benchmark_atoms: usize,
    pub candidate_atoms: usize,
    pub order: OrderKind,
    pub cone: ConeChoice,
}

impl GenParams {
    fn validate(&self) -> Result<(), CliError> {
        if self.dimension == 0 {
            return Err(CliError::Usage("dimension must be positive".into()));
        }
        let lattice = (2 * COORD as u128 + 1).saturating_pow(self.dimension as u32);
        for (name, n) in [("ny", self.benchmark_atoms), ("nz", self.candidate_atoms)] {
            if n == 0 {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
            if n > MAX_DENOMINATOR || n as u128 > lattice {
                return Err(CliError::Usage(format!(
                    "{name} = {n} is too large for denominators <= {MAX_DENOMINATOR} on the [-{COORD}, {COORD}] lattice"
                )));
            }
        }
        Ok(())
    }
}

fn int(v: i64) -> Rational {
    rational(v, 1)
}

fn nonzero_vector(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    loop {
        let v: Vec<i64> = (0..k)
            .map(|_| rng.gen_range(-RAY_COORD..=RAY_COORD))
            .collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(int).collect();
        }
    }
}

fn random_cone(rng: &mut ChaCha8Rng, k: usize, choice: ConeChoice) -> Cone {
    match choice {
        ConeChoice::Orthant => Cone::orthant(k),
        ConeChoice::Ray => Cone::ray(nonzero_vector(rng, k)),
        ConeChoice::Halfspace => Cone::halfspace(nonzero_vector(rng, k)),
        ConeChoice::Generators => {
            let n = rng.gen_range(1..=MAX_GENERATORS);
            Cone::from_generators((0..n).map(|_| nonzero_vector(rng, k)).collect())
        }
    }
    .expect("valid random cone")
}

/// `n` positive probabilities `m_i / D` summing to one, `n <= D <= 20`.
fn random_probs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let denominator = rng.gen_range(n..=MAX_DENOMINATOR);
    let mut cuts: Vec<usize> = sample(rng, denominator - 1, n - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(denominator);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let m = c - prev;
            prev = c;
            rational(m as i64, denominator as i64)
        })
        .collect()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<Vec<Rational>> {
    let mut seen = BTreeSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p: Vec<i64> = (0..k).map(|_| rng.gen_range(-COORD..=COORD)).collect();
        if seen.insert(p.clone()) {
            points.push(p.into_iter().map(int).collect());
        }
    }
    points
}

fn random_distribution(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Distribution {
    let points = random_points(rng, n, k);
    let probs = random_probs(rng, n);
    Distribution::new(points, probs, k).expect("valid random distribution")
}

/// Independent random benchmark and candidate.
pub fn generate(seed: u64, params: &GenParams) -> Result<Problem, CliError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = params.dimension;
    let cone = random_cone(&mut rng, k, params.cone);
    let y = random_distribution(&mut rng, params.benchmark_atoms, k);
    let z = random_distribution(&mut rng, params.candidate_atoms, k);
    Ok(Problem::new(params.order, cone, y, z).expect("consistent dimensions"))
}

/// An instance where the candidate dominates by construction: benchmark atoms
/// are grouped, each group is replaced by its conditional mean, and (for the
/// increasing order) that mean is shifted by a random cone element.
///
/// The candidate may end up with fewer atoms than requested when groups are
/// empty or collide.
pub fn generate_dominating(seed: u64, params: &GenParams) -> Result<Problem, CliError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = params.dimension;
    let cone = random_cone(&mut rng, k, params.cone);
    let y = random_distribution(&mut rng, params.benchmark_atoms, k);
    let groups = params.candidate_atoms.min(y.len());
    let mut mass = vec![Rational::zero(); groups];
    let mut weighted = vec![vec![Rational::zero(); k]; groups];
    for (point, prob) in y.atoms() {
        let g = rng.gen_range(0..groups);
        mass[g] = &mass[g] + prob;
        for (acc, v) in weighted[g].iter_mut().zip(point) {
            *acc = &*acc + v * prob;
        }
    }
    let mut points = Vec::new();
    let mut probs = Vec::new();
    for (m, w) in mass.into_iter().zip(weighted) {
        if m.is_zero() {
            continue;
        }
        let mut z: Vec<Rational> = w.into_iter().map(|v| v / &m).collect();
        if params.order == OrderKind::Icv {
            let lambda: Vec<Rational> = cone
                .generators()
                .iter()
                .map(|_| int(rng.gen_range(0..=2)))
                .collect();
            for (zd, s) in z.iter_mut().zip(cone.combine(&lambda)) {
                *zd = &*zd + s;
            }
        }
        points.push(z);
        probs.push(m);
    }
    let z = Distribution::new(points, probs, k).expect("valid constructed distribution");
    Ok(Problem::new(params.order, cone, y, z).expect("consistent dimensions"))
}
