//! Reading and writing formulas, sequents, proofs and certificates.

mod json;
mod parser;

pub use json::{
    certificate_from_json, certificate_to_json, proof_from_json, proof_to_json, CertificateJson, DocumentError,
    NodeJson, ProofDocumentJson, RuleJson, SignatureJson, FORMAT_VERSION,
};
pub use parser::{
    parse_formula, parse_sequent, parse_sequent_document, parse_term, print_sequent_document, print_signature,
    ParseError, ParseErrorKind, SequentDocument,
};
