//! Wire formats: comparison specs in, certificates out.
//!
//! Rationals travel as strings (`"25/11"`, `"-1"`), never floats, so
//! certificates are bit-exact across platforms. Node positions use the
//! `λ`-convention: the node `λ` stands for the point `x + λ(y−x)`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use hhcert_core::functional::{Atom, FTerm, Functional, IntervalSpec};
use hhcert_core::ordering::{Certificate, Verdict, WitnessFn};
use hhcert_core::Q;

/// Input errors carry enough location information for a useful exit-3
/// message.
#[derive(Debug)]
pub struct SpecError(pub String);

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SpecError {}

fn parse_rational(s: &str, what: &str) -> Result<Q, SpecError> {
    Q::from_str(s.trim()).map_err(|e| SpecError(format!("bad rational {s:?} in {what}: {e}")))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalJson {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomJson {
    pub node: String,
    pub weight: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FTermJson {
    pub node: String,
    pub coef: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FunctionalJson {
    #[serde(default)]
    pub f_terms: Vec<AtomJson>,
    #[serde(default, rename = "F_terms")]
    pub anti_terms: Vec<FTermJson>,
}

fn default_relation() -> String {
    "leq".into()
}

/// The JSON comparison spec:
/// `{"interval":{"x":"0","y":"1"},"lhs":{...},"rhs":{...},"relation":"leq"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonSpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalJson>,
    pub lhs: FunctionalJson,
    pub rhs: FunctionalJson,
    #[serde(default = "default_relation")]
    pub relation: String,
}

/// A parsed spec: two validated functionals and the evaluation interval.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub lhs: Functional,
    pub rhs: Functional,
    pub interval: IntervalSpec,
}

fn parse_functional(spec: &FunctionalJson, side: &str) -> Result<Functional, SpecError> {
    let atoms = spec
        .f_terms
        .iter()
        .map(|a| {
            Ok(Atom {
                node: parse_rational(&a.node, &format!("{side}.f_terms"))?,
                weight: parse_rational(&a.weight, &format!("{side}.f_terms"))?,
            })
        })
        .collect::<Result<Vec<_>, SpecError>>()?;
    let fterms = spec
        .anti_terms
        .iter()
        .map(|t| {
            Ok(FTerm {
                node: parse_rational(&t.node, &format!("{side}.F_terms"))?,
                coef: parse_rational(&t.coef, &format!("{side}.F_terms"))?,
            })
        })
        .collect::<Result<Vec<_>, SpecError>>()?;
    Functional::make(atoms, fterms).map_err(|e| SpecError(format!("invalid {side}: {e}")))
}

impl ComparisonSpecJson {
    pub fn parse(&self) -> Result<Comparison, SpecError> {
        if self.relation != "leq" {
            return Err(SpecError(format!(
                "unsupported relation {:?}; only \"leq\" is defined",
                self.relation
            )));
        }
        let interval = match &self.interval {
            None => IntervalSpec::unit(),
            Some(iv) => {
                let x = parse_rational(&iv.x, "interval.x")?;
                let y = parse_rational(&iv.y, "interval.y")?;
                IntervalSpec::new(x, y).map_err(|e| SpecError(e.to_string()))?
            }
        };
        Ok(Comparison {
            lhs: parse_functional(&self.lhs, "lhs")?,
            rhs: parse_functional(&self.rhs, "rhs")?,
            interval,
        })
    }

    /// Canonical serialization of a parsed comparison: nodes sorted, merged,
    /// rationals reduced.
    pub fn canonical(cmp: &Comparison) -> ComparisonSpecJson {
        let render = |f: &Functional| FunctionalJson {
            f_terms: f
                .atoms()
                .iter()
                .map(|a| AtomJson {
                    node: a.node.to_string(),
                    weight: a.weight.to_string(),
                })
                .collect(),
            anti_terms: f
                .fterms()
                .iter()
                .map(|t| FTermJson {
                    node: t.node.to_string(),
                    coef: t.coef.to_string(),
                })
                .collect(),
        };
        ComparisonSpecJson {
            interval: Some(IntervalJson {
                x: cmp.interval.x().to_string(),
                y: cmp.interval.y().to_string(),
            }),
            lhs: render(&cmp.lhs),
            rhs: render(&cmp.rhs),
            relation: "leq".into(),
        }
    }
}

/// Reads a spec from inline JSON (first non-space byte `{`) or from a file.
pub fn load_spec(arg: &str) -> Result<ComparisonSpecJson, SpecError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| SpecError(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        SpecError(format!(
            "malformed spec JSON at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::NotComparable => "not_comparable",
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PairJson {
    pub lhs: String,
    pub rhs: String,
}

/// Witness JSON. For affine and constant witnesses the `t` field carries the
/// sign (`"1"` or `"-1"`), since the witness family has a single parameter
/// slot.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessJson {
    pub kind: String,
    pub t: String,
    pub violation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MinPrefixJson {
    pub t: String,
    pub value: String,
}

/// The full certificate:
/// `{"verdict":"holds|fails|not_comparable","mass":{...},"mean":{...},
///   "crossings":[...],"areas":[...],"partial_sums":[...],
///   "min_prefix":{...},"witness":{...}|null}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub verdict: String,
    pub mass: PairJson,
    pub mean: PairJson,
    pub crossings: Vec<String>,
    pub areas: Vec<String>,
    pub partial_sums: Vec<String>,
    pub min_prefix: MinPrefixJson,
    pub witness: Option<WitnessJson>,
}

impl CertificateJson {
    pub fn from_certificate(cert: &Certificate) -> CertificateJson {
        let strs = |v: &[Q]| v.iter().map(Q::to_string).collect::<Vec<_>>();
        let witness = cert.witness.as_ref().map(|w| {
            let (kind, t) = match &w.function {
                WitnessFn::Hinge { t } => ("hinge", t.to_string()),
                WitnessFn::Affine { positive } => {
                    ("affine", if *positive { "1".into() } else { "-1".to_string() })
                }
                WitnessFn::Constant { positive } => {
                    ("constant", if *positive { "1".into() } else { "-1".to_string() })
                }
            };
            WitnessJson {
                kind: kind.into(),
                t,
                violation: w.violation.to_string(),
            }
        });
        let (crossings, areas) = match &cert.profile {
            Some(p) => (strs(&p.crossings), strs(&p.areas)),
            None => (Vec::new(), Vec::new()),
        };
        CertificateJson {
            verdict: verdict_str(cert.verdict).into(),
            mass: PairJson {
                lhs: cert.mass_lhs.to_string(),
                rhs: cert.mass_rhs.to_string(),
            },
            mean: PairJson {
                lhs: cert.mean_lhs.to_string(),
                rhs: cert.mean_rhs.to_string(),
            },
            crossings,
            areas,
            partial_sums: strs(&cert.partial_sums),
            min_prefix: MinPrefixJson {
                t: cert.min_prefix.0.to_string(),
                value: cert.min_prefix.1.to_string(),
            },
            witness,
        }
    }
}
