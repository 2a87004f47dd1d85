//! JSON problem and witness files.
//!
//! Every number is either a JSON integer or a string `"n"` / `"n/d"`; output
//! always uses the canonical string form so files round-trip exactly.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sdom_core::{
    Certificate, Cone, ConeKind, Distribution, OrderKind, Problem, Rational, RationalCoupling,
    RationalVerdict,
};

use crate::error::CliError;

/// Exact rational on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Err(E::custom(format!(
                    "decimal {v} is not allowed; write rationals as strings \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                Rational::from_str(v.trim())
                    .map(Num)
                    .map_err(|_| E::custom(format!("\"{v}\" is not a rational \"p/q\"")))
            }
        }

        d.deserialize_any(NumVisitor)
    }
}

fn nums(v: &[Rational]) -> Vec<Num> {
    v.iter().cloned().map(Num).collect()
}

fn rats(v: Vec<Num>) -> Vec<Rational> {
    v.into_iter().map(|n| n.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderName {
    Icv,
    Cv,
}

impl From<OrderName> for OrderKind {
    fn from(o: OrderName) -> Self {
        match o {
            OrderName::Icv => OrderKind::Icv,
            OrderName::Cv => OrderKind::Cv,
        }
    }
}

impl From<OrderKind> for OrderName {
    fn from(o: OrderKind) -> Self {
        match o {
            OrderKind::Icv => OrderName::Icv,
            OrderKind::Cv => OrderName::Cv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConeSpec {
    Orthant,
    Ray { w: Vec<Num> },
    Halfspace { w: Vec<Num> },
    Generators { rays: Vec<Vec<Num>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    pub points: Vec<Vec<Num>>,
    pub probs: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub order: OrderName,
    pub dimension: usize,
    pub cone: ConeSpec,
    #[serde(rename = "Y")]
    pub benchmark: DistributionSpec,
    #[serde(rename = "Z")]
    pub candidate: DistributionSpec,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        parse_json(text)
    }

    /// Validate into a canonical problem, naming the offending field on error.
    pub fn to_problem(&self) -> Result<Problem, CliError> {
        let k = self.dimension;
        let cone = match &self.cone {
            ConeSpec::Orthant => Cone::orthant(k),
            ConeSpec::Ray { w } => Cone::ray(rats(w.clone())),
            ConeSpec::Halfspace { w } => Cone::halfspace(rats(w.clone())),
            ConeSpec::Generators { rays } => {
                Cone::from_generators(rays.iter().cloned().map(rats).collect())
            }
        }
        .map_err(field("cone"))?;
        if cone.dimension() != k {
            return Err(CliError::invalid(
                "cone",
                sdom_core::Error::DimensionMismatch {
                    expected: k,
                    found: cone.dimension(),
                },
            ));
        }
        let dist = |spec: &DistributionSpec, name: &'static str| {
            Distribution::new(
                spec.points.iter().cloned().map(rats).collect(),
                rats(spec.probs.clone()),
                k,
            )
            .map_err(field(name))
        };
        let y = dist(&self.benchmark, "Y")?;
        let z = dist(&self.candidate, "Z")?;
        Problem::new(self.order.into(), cone, y, z).map_err(field("dimension"))
    }

    /// Canonical file for a problem: merged, sorted supports and string numbers.
    pub fn from_problem(problem: &Problem) -> Self {
        let cone = problem.cone();
        let cone = match cone.kind() {
            ConeKind::Orthant => ConeSpec::Orthant,
            ConeKind::Ray(w) => ConeSpec::Ray { w: nums(w) },
            ConeKind::Halfspace(w) => ConeSpec::Halfspace { w: nums(w) },
            ConeKind::Generators => ConeSpec::Generators {
                rays: cone.generators().iter().map(|g| nums(g)).collect(),
            },
        };
        let dist = |d: &Distribution| DistributionSpec {
            points: d.points().iter().map(|p| nums(p)).collect(),
            probs: nums(d.probs()),
        };
        Self {
            order: problem.order().into(),
            dimension: problem.dimension(),
            cone,
            benchmark: dist(problem.benchmark()),
            candidate: dist(problem.candidate()),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    pub p: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub a: Vec<Num>,
    pub b: Vec<Num>,
    pub c: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum WitnessFile {
    #[serde(rename = "dominates")]
    Dominates { coupling: CouplingSpec },
    #[serde(rename = "not_dominates")]
    NotDominates { certificate: CertificateSpec },
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        parse_json(text)
    }

    pub fn from_verdict(verdict: &RationalVerdict) -> Self {
        match verdict {
            RationalVerdict::Dominates(c) => WitnessFile::Dominates {
                coupling: CouplingSpec {
                    p: c.p.iter().map(|row| nums(row)).collect(),
                },
            },
            RationalVerdict::NotDominates(cert) => WitnessFile::NotDominates {
                certificate: CertificateSpec {
                    a: nums(&cert.a),
                    b: nums(&cert.b),
                    c: cert.c.iter().map(|row| nums(row)).collect(),
                },
            },
        }
    }

    pub fn to_verdict(&self) -> RationalVerdict {
        match self {
            WitnessFile::Dominates { coupling } => RationalVerdict::Dominates(RationalCoupling {
                p: coupling.p.iter().cloned().map(rats).collect(),
            }),
            WitnessFile::NotDominates { certificate } => {
                RationalVerdict::NotDominates(Certificate {
                    a: rats(certificate.a.clone()),
                    b: rats(certificate.b.clone()),
                    c: certificate.c.iter().cloned().map(rats).collect(),
                })
            }
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

fn field(name: &'static str) -> impl Fn(sdom_core::Error) -> CliError {
    move |e| CliError::invalid(name, e)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Parse {
            path,
            message: e.into_inner().to_string(),
        }
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
