//! On-disk certificate format, schema version "1".
//!
//! A UTF-8 JSON document. Rationals are `"p/q"` strings, polynomials are
//! `{degree: "p/q"}` maps and operators are `{"i,j": "p/q"}` maps for the term
//! `t^i d^j`. The `digest` field is the SHA-256 of the canonical JSON of every
//! other field except `created_unix`, so two runs with the same inputs produce
//! the same digest.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use nodal_core::{
    Certificate, CheckKind, CheckRecord, Claim, CurveRing, Decomposition, OperatorPairs, Poly,
    Quantifier, Rational, WeylOp, WitnessPair,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

pub type PolyDoc = BTreeMap<String, String>;
pub type OpDoc = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub schema: String,
    pub tool_version: String,
    pub claim: String,
    pub curve: CurveDoc,
    pub witness: WitnessDoc,
    pub parameters: ParametersDoc,
    pub checks: Vec<CheckDoc>,
    pub digest: String,
    pub created_unix: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub factors: Vec<PolyDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub operator: OpDoc,
    pub polynomial: PolyDoc,
    pub source_power: u32,
    pub target_power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametersDoc {
    pub seed: u64,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub description: String,
    pub verdict: bool,
    /// `"exact"`, `"structural"` or `"bounded"`.
    pub quantifier: String,
    pub bound: Option<u32>,
    pub statement: StatementDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub element: PolyDoc,
    pub operator: OpDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpPairDoc {
    pub left: OpDoc,
    pub right: OpDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum StatementDoc {
    OperatorInDa,
    MapsAIntoI,
    WitnessInIdealPower { power: u32 },
    ImageInIdealPower { power: u32 },
    PsiImageContainment { decomposition: Vec<PairDoc>, bound: u32 },
    PsiRepresentation { decomposition: Vec<PairDoc> },
    MuUpperContainment { a: PolyDoc, b: PolyDoc },
    MuLowerContainment { pairs: Vec<OpPairDoc>, a: PolyDoc, b: PolyDoc },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0:?}")]
    Schema(String),
    #[error("malformed certificate: {0}")]
    Field(String),
}

fn field(msg: impl Into<String>) -> FormatError {
    FormatError::Field(msg.into())
}

pub fn poly_to_doc(p: &Poly) -> PolyDoc {
    p.terms().map(|(d, c)| (d.to_string(), c.to_exact_string())).collect()
}

pub fn poly_from_doc(doc: &PolyDoc) -> Result<Poly, FormatError> {
    let terms = doc
        .iter()
        .map(|(d, c)| {
            let d: u32 = d.parse().map_err(|_| field(format!("bad degree {d:?}")))?;
            Ok((d, parse_rational(c)?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Poly::from_terms(terms))
}

pub fn op_to_doc(op: &WeylOp) -> OpDoc {
    op.terms()
        .map(|((i, j), c)| (format!("{i},{j}"), c.to_exact_string()))
        .collect()
}

pub fn op_from_doc(doc: &OpDoc) -> Result<WeylOp, FormatError> {
    let terms = doc
        .iter()
        .map(|(k, c)| {
            let (i, j) = k
                .split_once(',')
                .ok_or_else(|| field(format!("operator key {k:?} is not \"i,j\"")))?;
            let i: u32 = i.trim().parse().map_err(|_| field(format!("bad exponent in {k:?}")))?;
            let j: u32 = j.trim().parse().map_err(|_| field(format!("bad exponent in {k:?}")))?;
            Ok(((i, j), parse_rational(c)?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(WeylOp::from_terms(terms))
}

fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    if !s.contains('/') {
        return Err(field(format!("rational {s:?} is not of the form p/q")));
    }
    s.parse().map_err(|_| field(format!("bad rational {s:?}")))
}

fn dec_to_doc(dec: &Decomposition) -> Vec<PairDoc> {
    dec.pairs
        .iter()
        .map(|(a, op)| PairDoc {
            element: poly_to_doc(a),
            operator: op_to_doc(op),
        })
        .collect()
}

fn dec_from_doc(doc: &[PairDoc]) -> Result<Decomposition, FormatError> {
    Ok(Decomposition::new(
        doc.iter()
            .map(|p| Ok((poly_from_doc(&p.element)?, op_from_doc(&p.operator)?)))
            .collect::<Result<_, FormatError>>()?,
    ))
}

fn statement_to_doc(kind: &CheckKind) -> StatementDoc {
    match kind {
        CheckKind::OperatorInDa => StatementDoc::OperatorInDa,
        CheckKind::MapsAIntoI => StatementDoc::MapsAIntoI,
        CheckKind::WitnessInIdealPower { power } => StatementDoc::WitnessInIdealPower { power: *power },
        CheckKind::ImageInIdealPower { power } => StatementDoc::ImageInIdealPower { power: *power },
        CheckKind::PsiImageContainment {
            decomposition,
            bound,
        } => StatementDoc::PsiImageContainment {
            decomposition: dec_to_doc(decomposition),
            bound: *bound,
        },
        CheckKind::PsiRepresentation { decomposition } => StatementDoc::PsiRepresentation {
            decomposition: dec_to_doc(decomposition),
        },
        CheckKind::MuUpperContainment { a, b } => StatementDoc::MuUpperContainment {
            a: poly_to_doc(a),
            b: poly_to_doc(b),
        },
        CheckKind::MuLowerContainment { pairs, a, b } => StatementDoc::MuLowerContainment {
            pairs: pairs
                .pairs
                .iter()
                .map(|(l, r)| OpPairDoc {
                    left: op_to_doc(l),
                    right: op_to_doc(r),
                })
                .collect(),
            a: poly_to_doc(a),
            b: poly_to_doc(b),
        },
    }
}

fn statement_from_doc(doc: &StatementDoc) -> Result<CheckKind, FormatError> {
    Ok(match doc {
        StatementDoc::OperatorInDa => CheckKind::OperatorInDa,
        StatementDoc::MapsAIntoI => CheckKind::MapsAIntoI,
        StatementDoc::WitnessInIdealPower { power } => CheckKind::WitnessInIdealPower { power: *power },
        StatementDoc::ImageInIdealPower { power } => CheckKind::ImageInIdealPower { power: *power },
        StatementDoc::PsiImageContainment {
            decomposition,
            bound,
        } => CheckKind::PsiImageContainment {
            decomposition: dec_from_doc(decomposition)?,
            bound: *bound,
        },
        StatementDoc::PsiRepresentation { decomposition } => CheckKind::PsiRepresentation {
            decomposition: dec_from_doc(decomposition)?,
        },
        StatementDoc::MuUpperContainment { a, b } => CheckKind::MuUpperContainment {
            a: poly_from_doc(a)?,
            b: poly_from_doc(b)?,
        },
        StatementDoc::MuLowerContainment { pairs, a, b } => CheckKind::MuLowerContainment {
            pairs: OperatorPairs::new(
                pairs
                    .iter()
                    .map(|p| Ok((op_from_doc(&p.left)?, op_from_doc(&p.right)?)))
                    .collect::<Result<_, FormatError>>()?,
            ),
            a: poly_from_doc(a)?,
            b: poly_from_doc(b)?,
        },
    })
}

fn quantifier_to_doc(q: Quantifier) -> (String, Option<u32>) {
    match q {
        Quantifier::Exact => ("exact".into(), None),
        Quantifier::Structural => ("structural".into(), None),
        Quantifier::Bounded(n) => ("bounded".into(), Some(n)),
    }
}

fn quantifier_from_doc(kind: &str, bound: Option<u32>) -> Result<Quantifier, FormatError> {
    match (kind, bound) {
        ("exact", None) => Ok(Quantifier::Exact),
        ("structural", None) => Ok(Quantifier::Structural),
        ("bounded", Some(n)) => Ok(Quantifier::Bounded(n)),
        _ => Err(field(format!("bad quantifier {kind:?} with bound {bound:?}"))),
    }
}

impl CertificateFile {
    /// Renders a certificate; `created_unix` is the current time.
    pub fn from_certificate(cert: &Certificate) -> Self {
        let created_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self::from_certificate_at(cert, created_unix)
    }

    pub fn from_certificate_at(cert: &Certificate, created_unix: u64) -> Self {
        let mut file = CertificateFile {
            schema: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            claim: cert.claim.name().into(),
            curve: CurveDoc {
                factors: cert.curve.factors().iter().map(poly_to_doc).collect(),
            },
            witness: WitnessDoc {
                operator: op_to_doc(&cert.witness.operator),
                polynomial: poly_to_doc(&cert.witness.witness),
                source_power: cert.witness.source_power,
                target_power: cert.witness.target_power,
            },
            parameters: ParametersDoc {
                seed: cert.seed,
                bound: cert.bound,
            },
            checks: cert
                .checks
                .iter()
                .map(|c| {
                    let (quantifier, bound) = quantifier_to_doc(c.quantifier);
                    CheckDoc {
                        description: c.description.clone(),
                        verdict: c.verdict,
                        quantifier,
                        bound,
                        statement: statement_to_doc(&c.kind),
                    }
                })
                .collect(),
            digest: String::new(),
            created_unix,
        };
        file.digest = file.compute_digest();
        file
    }

    /// SHA-256 over the canonical JSON of all fields except `digest` and `created_unix`.
    pub fn compute_digest(&self) -> String {
        let mut value = serde_json::to_value(self).expect("certificate serializes");
        let obj = value.as_object_mut().expect("certificate is an object");
        obj.remove("digest");
        obj.remove("created_unix");
        let canonical = serde_json::to_vec(&value).expect("value serializes");
        hex::encode(Sha256::digest(&canonical))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self, FormatError> {
        let file: CertificateFile = serde_json::from_str(src)?;
        if file.schema != SCHEMA_VERSION {
            return Err(FormatError::Schema(file.schema));
        }
        Ok(file)
    }

    /// Rebuilds the in-memory certificate; the curve is revalidated.
    pub fn to_certificate(&self) -> Result<Certificate, FormatError> {
        let claim = Claim::from_name(&self.claim)
            .ok_or_else(|| field(format!("unknown claim {:?}", self.claim)))?;
        let factors = self
            .curve
            .factors
            .iter()
            .map(poly_from_doc)
            .collect::<Result<Vec<_>, _>>()?;
        let curve = CurveRing::new(factors).map_err(|e| field(format!("invalid curve: {e}")))?;
        let witness = WitnessPair {
            operator: op_from_doc(&self.witness.operator)?,
            witness: poly_from_doc(&self.witness.polynomial)?,
            source_power: self.witness.source_power,
            target_power: self.witness.target_power,
        };
        let checks = self
            .checks
            .iter()
            .map(|c| {
                Ok(CheckRecord {
                    description: c.description.clone(),
                    kind: statement_from_doc(&c.statement)?,
                    verdict: c.verdict,
                    quantifier: quantifier_from_doc(&c.quantifier, c.bound)?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Certificate {
            claim,
            curve,
            witness,
            checks,
            seed: self.parameters.seed,
            bound: self.parameters.bound,
        })
    }
}
