//! Subcommand bodies. Each returns the process exit code; `out` receives the
//! human-readable report.
//!
//! Exit codes: 0 dominates / pass, 1 not dominated / fail, 2 input error.

use std::fs;
use std::io::Write;
use std::path::Path;

use sdom_core::{
    check_dominance, closed_form, verify_coupling, verify_utility, Problem, RationalVerdict,
    VerifyError,
};

use crate::error::CliError;
use crate::format::{ProblemFile, WitnessFile};
use crate::generate::{generate, GenParams};
use crate::plot::utility_csv;

pub const EXIT_DOMINATES: i32 = 0;
pub const EXIT_NOT_DOMINATES: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_problem(path: &Path) -> Result<Problem, CliError> {
    ProblemFile::parse(&read(path)?)?.to_problem()
}

pub fn load_witness(path: &Path) -> Result<RationalVerdict, CliError> {
    Ok(WitnessFile::parse(&read(path)?)?.to_verdict())
}

fn report(out: &mut dyn Write, result: Result<i32, CliError>) -> i32 {
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn verdict_code(dominates: bool) -> i32 {
    if dominates {
        EXIT_DOMINATES
    } else {
        EXIT_NOT_DOMINATES
    }
}

/// Decide dominance, re-verify the witness, optionally write it out.
pub fn check(problem: &Path, witness_out: Option<&Path>, out: &mut dyn Write) -> i32 {
    let result = (|| {
        let problem = load_problem(problem)?;
        let verdict = check_dominance(&problem);
        let verification = match &verdict {
            RationalVerdict::Dominates(c) => verify_coupling(&problem, c),
            RationalVerdict::NotDominates(cert) => verify_utility(&problem, cert),
        };
        if let Err(e) = verification {
            panic!("emitted witness failed verification: {e}");
        }
        let _ = writeln!(out, "{}", verdict.label());
        if let Some(path) = witness_out {
            write(path, &WitnessFile::from_verdict(&verdict).to_json())?;
        }
        Ok(verdict_code(verdict.dominates()))
    })();
    report(out, result)
}

/// Re-check a witness file against a problem file.
pub fn verify(problem: &Path, witness: &Path, out: &mut dyn Write) -> i32 {
    let result = (|| {
        let problem = load_problem(problem)?;
        let verdict = load_witness(witness)?;
        let outcome = match &verdict {
            RationalVerdict::Dominates(c) => verify_coupling(&problem, c),
            RationalVerdict::NotDominates(cert) => verify_utility(&problem, cert),
        };
        match outcome {
            Ok(()) => {
                let _ = writeln!(out, "pass: {}", verdict.label());
                Ok(0)
            }
            Err(VerifyError::Violated(v)) => {
                let _ = writeln!(out, "fail: {v}");
                Ok(1)
            }
            Err(VerifyError::Shape(s)) => Err(CliError::Usage(format!(
                "witness does not fit problem: {s}"
            ))),
        }
    })();
    report(out, result)
}

/// Closed-form verdict for scalar or halfspace instances.
pub fn oracle(problem: &Path, out: &mut dyn Write) -> i32 {
    let result = (|| {
        let problem = load_problem(problem)?;
        let dominates = closed_form(&problem).map_err(|e| CliError::Usage(e.to_string()))?;
        let _ = writeln!(
            out,
            "{}",
            if dominates {
                "dominates"
            } else {
                "not_dominates"
            }
        );
        Ok(verdict_code(dominates))
    })();
    report(out, result)
}

/// Write a seeded random problem file.
pub fn gen(seed: u64, params: &GenParams, out_path: &Path, out: &mut dyn Write) -> i32 {
    let result = (|| {
        let problem = generate(seed, params)?;
        write(out_path, &ProblemFile::from_problem(&problem).to_json())?;
        let _ = writeln!(out, "wrote {}", out_path.display());
        Ok(0)
    })();
    report(out, result)
}

/// Emit `x,u,s` samples of a scalar certificate's utility.
pub fn plot(problem: &Path, witness: &Path, out_path: &Path, out: &mut dyn Write) -> i32 {
    let result = (|| {
        let problem = load_problem(problem)?;
        let RationalVerdict::NotDominates(cert) = load_witness(witness)? else {
            return Err(CliError::Usage(
                "plot data needs a certificate witness, got a coupling".into(),
            ));
        };
        if let Err(VerifyError::Shape(s)) = verify_utility(&problem, &cert) {
            return Err(CliError::Usage(format!(
                "witness does not fit problem: {s}"
            )));
        }
        write(out_path, &utility_csv(&problem, &cert)?)?;
        let _ = writeln!(out, "wrote {}", out_path.display());
        Ok(0)
    })();
    report(out, result)
}
