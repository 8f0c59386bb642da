//! JSON documents for GS proofs and Herbrand certificates.
//!
//! Formulas and terms are stored as strings in the concrete syntax and are
//! parsed against the document's signature.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parser::{parse_formula, parse_term, ParseError};
use crate::gs::{GsProof, Rule};
use crate::herbrand::{HerbrandProof, WitnessingSubstitution};
use crate::prenex::{Binder, PrenexFormula};
use crate::signature::{Signature, SignatureError};
use crate::syntax::{Quantifier, Sequent, Var};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("bad signature: {0}")]
    Signature(#[from] SignatureError),
    #[error("in `{text}`: {error}")]
    Parse { text: String, error: ParseError },
    #[error("bad variable name `{0}`")]
    Variable(String),
    #[error("certificate has no signature and none was supplied")]
    MissingSignature,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SymbolJson {
    pub name: String,
    pub arity: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SignatureJson {
    pub relations: Vec<SymbolJson>,
    pub functions: Vec<SymbolJson>,
}

impl SignatureJson {
    pub fn from_signature(sig: &Signature) -> Self {
        let conv = |v: &[(String, usize)]| {
            v.iter().map(|(name, arity)| SymbolJson { name: name.clone(), arity: *arity }).collect()
        };
        SignatureJson { relations: conv(sig.relations()), functions: conv(sig.functions()) }
    }

    pub fn to_signature(&self) -> Result<Signature, SignatureError> {
        let conv = |v: &[SymbolJson]| v.iter().map(|s| (s.name.clone(), s.arity)).collect();
        Signature::new(conv(&self.relations), conv(&self.functions))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum RuleJson {
    Ax,
    Or,
    And,
    Contract,
    Weaken,
    Exists { witness: String, index: usize },
    Forall { eigenvariable: String, index: usize },
    Exchange { permutation: Vec<usize> },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NodeJson {
    pub conclusion: Vec<String>,
    #[serde(flatten)]
    pub rule: RuleJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ProofDocumentJson {
    pub format_version: u32,
    pub signature: SignatureJson,
    pub proof: NodeJson,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BinderJson {
    pub q: String,
    pub var: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CertificateJson {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<SignatureJson>,
    pub expansion: Vec<String>,
    pub prefix: Vec<BinderJson>,
    pub matrix: String,
    pub witness: Vec<String>,
}

fn parse_with<T>(text: &str, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, DocumentError> {
    f(text).map_err(|error| DocumentError::Parse { text: text.to_string(), error })
}

fn variable(name: &str) -> Result<Var, DocumentError> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(Var::from(name))
    } else {
        Err(DocumentError::Variable(name.to_string()))
    }
}

fn sequent_strings(s: &Sequent) -> Vec<String> {
    s.0.iter().map(|f| f.to_string()).collect()
}

fn parse_members(members: &[String], sig: &Signature) -> Result<Sequent, DocumentError> {
    members
        .iter()
        .map(|m| parse_with(m, |t| parse_formula(t, sig)))
        .collect::<Result<Vec<_>, _>>()
        .map(Sequent)
}

fn node_to_json(p: &GsProof) -> NodeJson {
    let rule = match &p.rule {
        Rule::Ax => RuleJson::Ax,
        Rule::OrR => RuleJson::Or,
        Rule::AndR => RuleJson::And,
        Rule::ContractR => RuleJson::Contract,
        Rule::WeakenR => RuleJson::Weaken,
        Rule::ExistsR { witness, index } => RuleJson::Exists { witness: witness.to_string(), index: *index },
        Rule::ForallR { eigenvariable, index } => {
            RuleJson::Forall { eigenvariable: eigenvariable.to_string(), index: *index }
        }
        Rule::ExchangeR { permutation } => RuleJson::Exchange { permutation: permutation.clone() },
    };
    NodeJson {
        conclusion: sequent_strings(&p.conclusion),
        rule,
        children: p.children.iter().map(node_to_json).collect(),
    }
}

fn node_from_json(n: &NodeJson, sig: &Signature) -> Result<GsProof, DocumentError> {
    let conclusion = parse_members(&n.conclusion, sig)?;
    let rule = match &n.rule {
        RuleJson::Ax => Rule::Ax,
        RuleJson::Or => Rule::OrR,
        RuleJson::And => Rule::AndR,
        RuleJson::Contract => Rule::ContractR,
        RuleJson::Weaken => Rule::WeakenR,
        RuleJson::Exists { witness, index } => Rule::ExistsR {
            witness: parse_with(witness, |t| parse_term(t, sig))?,
            index: *index,
        },
        RuleJson::Forall { eigenvariable, index } => {
            Rule::ForallR { eigenvariable: variable(eigenvariable)?, index: *index }
        }
        RuleJson::Exchange { permutation } => Rule::ExchangeR { permutation: permutation.clone() },
    };
    let children = n.children.iter().map(|c| node_from_json(c, sig)).collect::<Result<_, _>>()?;
    Ok(GsProof::new(conclusion, rule, children))
}

pub fn proof_to_json(sig: &Signature, p: &GsProof) -> String {
    let doc = ProofDocumentJson {
        format_version: FORMAT_VERSION,
        signature: SignatureJson::from_signature(sig),
        proof: node_to_json(p),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn proof_from_json(text: &str) -> Result<(Signature, GsProof), DocumentError> {
    let doc: ProofDocumentJson = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocumentError::Version(doc.format_version));
    }
    let sig = doc.signature.to_signature()?;
    let proof = node_from_json(&doc.proof, &sig)?;
    Ok((sig, proof))
}

pub fn certificate_to_json(sig: Option<&Signature>, h: &HerbrandProof) -> String {
    let doc = CertificateJson {
        format_version: FORMAT_VERSION,
        signature: sig.map(SignatureJson::from_signature),
        expansion: sequent_strings(&h.expansion),
        prefix: h
            .prenex
            .prefix
            .iter()
            .map(|b| BinderJson { q: b.q.keyword().to_string(), var: b.var.to_string() })
            .collect(),
        matrix: h.prenex.matrix.to_string(),
        witness: h.witness.0.iter().map(|t| t.to_string()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Reads a certificate, using its embedded signature if present and
/// `fallback` otherwise.
pub fn certificate_from_json(
    text: &str,
    fallback: Option<&Signature>,
) -> Result<(Signature, HerbrandProof), DocumentError> {
    let doc: CertificateJson = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocumentError::Version(doc.format_version));
    }
    let sig = match (&doc.signature, fallback) {
        (Some(s), _) => s.to_signature()?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(DocumentError::MissingSignature),
    };
    let expansion = parse_members(&doc.expansion, &sig)?;
    let prefix = doc
        .prefix
        .iter()
        .map(|b| {
            let q = match b.q.as_str() {
                "forall" => Quantifier::Forall,
                "exists" => Quantifier::Exists,
                other => return Err(DocumentError::Variable(format!("{other} (quantifier)"))),
            };
            Ok(Binder::new(q, variable(&b.var)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = parse_with(&doc.matrix, |t| parse_formula(t, &sig))?;
    let witness = doc
        .witness
        .iter()
        .map(|t| parse_with(t, |t| parse_term(t, &sig)))
        .collect::<Result<Vec<_>, _>>()?;
    let h = HerbrandProof {
        expansion,
        prenex: PrenexFormula { prefix, matrix },
        witness: WitnessingSubstitution(witness),
    };
    Ok((sig, h))
}
