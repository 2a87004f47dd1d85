//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

#[path = "../../core/tests/common/mod.rs"]
mod brute;

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use brute::{brute_feasible, brute_optimize, BruteOptimum};
use sdom_cli::{commands, generate, generate_dominating, ConeChoice, GenParams, ProblemFile};
use sdom_core::witness::check_certificate_rows;
use sdom_core::{
    check_dominance, check_via_dual, closed_form, halfspace_reduce, rational, solve_feasibility,
    solve_optimize, verify_coupling, verify_utility, Cone, ConeKind, LpOutcome, OrderKind, Problem,
    Program, Rational, RationalVerdict, Verdict,
};

const ENSEMBLE: u64 = 500;
const TIME_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

const CONES: [ConeChoice; 4] = [
    ConeChoice::Orthant,
    ConeChoice::Ray,
    ConeChoice::Halfspace,
    ConeChoice::Generators,
];

/// Instance `seed` of the main ensemble: k in {1,2,3}, at most five atoms a
/// side, both orders, all cone families; every third instance is built to
/// dominate so both verdicts are well represented.
fn ensemble_instance(seed: u64) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + seed);
    let params = GenParams {
        dimension: rng.gen_range(1..=3),
        benchmark_atoms: rng.gen_range(1..=5),
        candidate_atoms: rng.gen_range(1..=5),
        order: if rng.gen_bool(0.5) {
            OrderKind::Icv
        } else {
            OrderKind::Cv
        },
        cone: CONES[rng.gen_range(0..4)],
    };
    if seed % 3 == 2 {
        generate_dominating(seed, &params).unwrap()
    } else {
        generate(seed, &params).unwrap()
    }
}

fn counts(verdicts: &[bool]) -> String {
    let yes = verdicts.iter().filter(|&&d| d).count();
    format!("{yes} dominates / {} not_dominates", verdicts.len() - yes)
}

fn primal_dual_agreement(ensemble: &[Problem], verdicts: &mut Vec<RationalVerdict>) -> Outcome {
    let start = Instant::now();
    for (seed, p) in ensemble.iter().enumerate() {
        let verdict = check_dominance(p);
        let dual = check_via_dual(p);
        if !dual.agrees_with(&verdict) {
            return Err(format!(
                "seed {seed}: primal {} vs dual {dual:?}",
                verdict.label()
            ));
        }
        verdicts.push(verdict);
    }
    let elapsed = start.elapsed();
    if elapsed >= TIME_BUDGET {
        return Err(format!("took {elapsed:.1?}, budget {TIME_BUDGET:?}"));
    }
    let flags: Vec<bool> = verdicts.iter().map(|v| v.dominates()).collect();
    Ok(format!(
        "{} instances agree in {elapsed:.1?} ({})",
        ensemble.len(),
        counts(&flags)
    ))
}

fn witnesses_verify(ensemble: &[Problem], verdicts: &[RationalVerdict]) -> Outcome {
    let (mut couplings, mut certificates) = (0, 0);
    for (seed, (p, v)) in ensemble.iter().zip(verdicts).enumerate() {
        let result = match v {
            Verdict::Dominates(c) => {
                couplings += 1;
                verify_coupling(p, c)
            }
            Verdict::NotDominates(u) => {
                certificates += 1;
                verify_utility(p, u)
            }
        };
        result.map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(format!(
        "{couplings} couplings and {certificates} certificates verified exactly"
    ))
}

fn scalar_oracle() -> Outcome {
    let mut flags = Vec::new();
    for seed in 0..ENSEMBLE {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5CA1_0000 + seed);
        let params = GenParams {
            dimension: 1,
            benchmark_atoms: rng.gen_range(1..=5),
            candidate_atoms: rng.gen_range(1..=5),
            order: if seed % 2 == 0 {
                OrderKind::Icv
            } else {
                OrderKind::Cv
            },
            cone: ConeChoice::Orthant,
        };
        let p = if seed % 4 == 3 {
            generate_dominating(seed, &params)
        } else {
            generate(seed, &params)
        }
        .unwrap();
        let oracle = closed_form(&p).map_err(|e| format!("seed {seed}: {e}"))?;
        let lp = check_dominance(&p).dominates();
        if oracle != lp {
            return Err(format!(
                "seed {seed} ({}): oracle {oracle}, LP {lp}",
                p.order()
            ));
        }
        flags.push(lp);
    }
    Ok(format!(
        "{ENSEMBLE} scalar instances match ({})",
        counts(&flags)
    ))
}

fn halfspace_oracle() -> Outcome {
    let mut flags = Vec::new();
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4A1F_0000 + seed);
        let params = GenParams {
            dimension: 2,
            benchmark_atoms: rng.gen_range(1..=5),
            candidate_atoms: rng.gen_range(1..=5),
            order: OrderKind::Icv,
            cone: ConeChoice::Halfspace,
        };
        let p = if seed % 3 == 2 {
            generate_dominating(seed, &params)
        } else {
            generate(seed, &params)
        }
        .unwrap();
        let reduced = halfspace_reduce(&p).map_err(|e| format!("seed {seed}: {e}"))?;
        let lp = check_dominance(&p).dominates();
        if reduced != lp {
            return Err(format!("seed {seed}: projection {reduced}, LP {lp}"));
        }
        flags.push(lp);
    }
    Ok(format!(
        "200 planar halfspace instances match ({})",
        counts(&flags)
    ))
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational(x, 1)).collect()
}

fn named_examples() -> Outcome {
    let half = rational(1, 2);
    let line = |pts: &[i64]| {
        pts.iter()
            .map(|&x| vec![rational(x, 1)])
            .collect::<Vec<_>>()
    };
    let y = sdom_core::Distribution::uniform(line(&[0, 2])).unwrap();
    let z = sdom_core::Distribution::point_mass(vec![rational(1, 1)]).unwrap();
    let orthant1 = Cone::orthant(1).unwrap();

    let jensen = Problem::new(OrderKind::Cv, orthant1.clone(), y.clone(), z.clone()).unwrap();
    match check_dominance(&jensen) {
        Verdict::Dominates(c) if c.p == vec![vec![half.clone()], vec![half.clone()]] => {}
        other => return Err(format!("Jensen: {other:?}")),
    }

    let reversed = Problem::new(OrderKind::Icv, orthant1, z, y).unwrap();
    match check_dominance(&reversed) {
        Verdict::NotDominates(u) if u.gap(&reversed) == -Rational::one() => {}
        other => return Err(format!("reversed: {other:?}")),
    }

    let a = sdom_core::Distribution::point_mass(q(&[1, 1])).unwrap();
    let b = sdom_core::Distribution::point_mass(q(&[2, 0])).unwrap();
    let orthant = Problem::new(
        OrderKind::Icv,
        Cone::orthant(2).unwrap(),
        a.clone(),
        b.clone(),
    )
    .unwrap();
    if check_dominance(&orthant).dominates() {
        return Err("δ(2,0) should not dominate δ(1,1) under the orthant".into());
    }
    let halfspace =
        Problem::new(OrderKind::Icv, Cone::halfspace(q(&[1, 1])).unwrap(), a, b).unwrap();
    if !check_dominance(&halfspace).dominates() {
        return Err("δ(2,0) should dominate δ(1,1) under the halfspace w=(1,1)".into());
    }
    Ok("Jensen coupling (1/2, 1/2), reversed gap -1, orthant vs halfspace in the plane".into())
}

fn invariants(ensemble: &[Problem], verdicts: &[RationalVerdict]) -> Outcome {
    // reflexivity
    for (seed, p) in ensemble.iter().take(250).enumerate() {
        for order in [OrderKind::Icv, OrderKind::Cv] {
            let y = p.benchmark().clone();
            let same = Problem::new(order, p.cone().clone(), y.clone(), y).unwrap();
            if !check_dominance(&same).dominates() {
                return Err(format!("seed {seed}: Y does not dominate itself ({order})"));
            }
        }
    }

    // the concave order implies the increasing one with the same coupling
    let mut cv_dominating = 0;
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0C0_0000 + seed);
        let params = GenParams {
            dimension: rng.gen_range(1..=3),
            benchmark_atoms: rng.gen_range(1..=5),
            candidate_atoms: rng.gen_range(1..=5),
            order: OrderKind::Cv,
            cone: CONES[rng.gen_range(0..4)],
        };
        let cv = if seed % 5 == 4 {
            generate(seed, &params)
        } else {
            generate_dominating(seed, &params)
        }
        .unwrap();
        if let Verdict::Dominates(c) = check_dominance(&cv) {
            cv_dominating += 1;
            let icv = cv.with_order(OrderKind::Icv);
            verify_coupling(&icv, &c)
                .map_err(|e| format!("seed {seed}: CV coupling fails ICV: {e}"))?;
            if !check_dominance(&icv).dominates() {
                return Err(format!("seed {seed}: CV holds but ICV does not"));
            }
        }
    }
    if cv_dominating < 200 {
        return Err(format!(
            "only {cv_dominating} CV-dominating instances exercised"
        ));
    }

    // enlarging the cone preserves dominance
    let mut monotone = 0;
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE_0000 + seed);
        let params = GenParams {
            dimension: rng.gen_range(1..=3),
            benchmark_atoms: rng.gen_range(1..=5),
            candidate_atoms: rng.gen_range(1..=5),
            order: OrderKind::Icv,
            cone: CONES[rng.gen_range(0..4)],
        };
        let inner = if seed % 5 == 4 {
            generate(seed, &params)
        } else {
            generate_dominating(seed, &params)
        }
        .unwrap();
        let big = inner.with_cone(super_cone(&mut rng, inner.cone())).unwrap();
        for g in inner.cone().generators() {
            if !big.cone().contains(g).unwrap() {
                return Err(format!(
                    "seed {seed}: generator of the smaller cone escapes"
                ));
            }
        }
        if check_dominance(&inner).dominates() {
            monotone += 1;
            if !check_dominance(&big).dominates() {
                return Err(format!("seed {seed}: dominance lost on the larger cone"));
            }
        }
    }
    if monotone < 200 {
        return Err(format!(
            "only {monotone} cone-monotonicity instances exercised"
        ));
    }

    // positive multiples of a certificate are certificates with scaled gap
    let mut scaled = 0;
    let factors = [rational(2, 1), rational(1, 3), rational(7, 5)];
    for (seed, (p, v)) in ensemble.iter().zip(verdicts).enumerate() {
        let Verdict::NotDominates(u) = v else {
            continue;
        };
        for f in &factors {
            let s = u.scaled(f);
            check_certificate_rows(p, &s).map_err(|e| format!("seed {seed} × {f}: {e}"))?;
            if s.gap(p) != u.gap(p) * f || !s.gap(p).is_negative() {
                return Err(format!("seed {seed} × {f}: gap does not scale"));
            }
        }
        scaled += 1;
    }
    if scaled < 200 {
        return Err(format!("only {scaled} certificates exercised"));
    }
    Ok(format!(
        "reflexivity 500, CV⇒ICV {cv_dominating}, cone monotonicity {monotone}, homogeneity {scaled}"
    ))
}

/// `cone` plus one or two extra random generators.
fn super_cone(rng: &mut ChaCha8Rng, cone: &Cone) -> Cone {
    let k = cone.dimension();
    let mut rays = cone.generators().to_vec();
    while rays.len() < cone.generators().len() + rng.gen_range(1..=2) {
        let r: Vec<Rational> = (0..k).map(|_| rational(rng.gen_range(-3..=3), 1)).collect();
        if r.iter().any(|v| !v.is_zero()) {
            rays.push(r);
        }
    }
    Cone::from_generators(rays).unwrap()
}

fn random_program(rng: &mut ChaCha8Rng) -> Program {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=6);
    let entry = |rng: &mut ChaCha8Rng| rational(rng.gen_range(-4..=4), 1);
    let a = (0..rows)
        .map(|_| (0..cols).map(|_| entry(rng)).collect())
        .collect();
    let b = (0..rows).map(|_| entry(rng)).collect();
    let c = (0..cols).map(|_| entry(rng)).collect();
    Program::new(a, b, cols).unwrap().with_objective(c).unwrap()
}

fn lp_enumeration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1B_0000);
    let (mut infeasible, mut unbounded, mut optimal) = (0, 0, 0);
    for case in 0..200 {
        let lp = random_program(&mut rng);
        match solve_feasibility(&lp) {
            LpOutcome::Feasible { x } if lp.is_feasible_point(&x) && brute_feasible(&lp) => {}
            LpOutcome::Infeasible { y } if lp.is_farkas_certificate(&y) && !brute_feasible(&lp) => {
            }
            other => return Err(format!("case {case}: feasibility {other:?}")),
        }
        match (brute_optimize(&lp), solve_optimize(&lp).unwrap()) {
            (BruteOptimum::Infeasible, LpOutcome::Infeasible { y })
                if lp.is_farkas_certificate(&y) =>
            {
                infeasible += 1
            }
            (BruteOptimum::Unbounded, LpOutcome::Unbounded { ray })
                if lp.is_improving_ray(&ray) =>
            {
                unbounded += 1
            }
            (BruteOptimum::Optimal(v), LpOutcome::Optimal { x, value })
                if lp.is_feasible_point(&x) && v == value =>
            {
                optimal += 1
            }
            (expected, got) => {
                return Err(format!(
                    "case {case}: enumeration {expected:?}, simplex {got:?}"
                ))
            }
        }
    }
    Ok(format!(
        "200 programs match enumeration ({optimal} optimal, {unbounded} unbounded, {infeasible} infeasible)"
    ))
}

fn determinism() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let mut sink = Vec::new();
    for seed in 0..24u64 {
        let params = GenParams {
            dimension: 1 + (seed % 3) as usize,
            benchmark_atoms: 4,
            candidate_atoms: 3,
            order: if seed % 2 == 0 {
                OrderKind::Icv
            } else {
                OrderKind::Cv
            },
            cone: CONES[(seed % 4) as usize],
        };
        let mut problems = Vec::new();
        let mut witnesses = Vec::new();
        for run in 0..3 {
            let problem = dir.path().join(format!("p{seed}-{run}.json"));
            let witness = dir.path().join(format!("w{seed}-{run}.json"));
            if commands::gen(seed, &params, &problem, &mut sink) != 0 {
                return Err(format!("seed {seed}: gen failed"));
            }
            if commands::check(&problem, Some(&witness), &mut sink) > 1 {
                return Err(format!("seed {seed}: check failed"));
            }
            problems.push(fs::read(&problem).map_err(|e| e.to_string())?);
            witnesses.push(fs::read(&witness).map_err(|e| e.to_string())?);
        }
        if problems.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("seed {seed}: problem files differ"));
        }
        if witnesses.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("seed {seed}: witness files differ"));
        }
        let in_memory = ProblemFile::from_problem(&generate(seed, &params).unwrap()).to_json();
        if in_memory.as_bytes() != problems[0].as_slice() {
            return Err(format!(
                "seed {seed}: file differs from in-memory generation"
            ));
        }
    }
    Ok("24 seeds × 3 runs: gen and check outputs byte-identical".into())
}

fn main() -> ExitCode {
    let ensemble: Vec<Problem> = (0..ENSEMBLE).map(ensemble_instance).collect();
    let kinds = ensemble.iter().fold([0; 4], |mut acc, p| {
        acc[match p.cone().kind() {
            ConeKind::Orthant => 0,
            ConeKind::Ray(_) => 1,
            ConeKind::Halfspace(_) => 2,
            ConeKind::Generators => 3,
        }] += 1;
        acc
    });
    println!(
        "ensemble cones: orthant {}, ray {}, halfspace {}, generators {}",
        kinds[0], kinds[1], kinds[2], kinds[3]
    );

    let mut verdicts = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        (
            "1 primal/dual agreement",
            primal_dual_agreement(&ensemble, &mut verdicts),
        ),
        (
            "2 witness verification",
            witnesses_verify(&ensemble, &verdicts),
        ),
        ("3 scalar closed form", scalar_oracle()),
        ("4 halfspace projection", halfspace_oracle()),
        ("5 named examples", named_examples()),
        ("6 order invariants", invariants(&ensemble, &verdicts)),
        ("7 LP vs enumeration", lp_enumeration()),
        ("8 determinism", determinism()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
