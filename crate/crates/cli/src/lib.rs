//! Command-line surface for herbrand-core.
//!
//! Every command produces a [`Report`]: an ordered list of `key: value`
//! lines, or a JSON object under `--json`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use herbrand_core::gs::check_gs;
use herbrand_core::herbrand::check_herbrand;
use herbrand_core::semantics::valid_up_to;
use herbrand_core::text::{
    certificate_from_json, certificate_to_json, parse_sequent_document, proof_from_json, proof_to_json,
    SequentDocument,
};
use herbrand_core::translate::translate_with_constant;
use herbrand_core::{search_gs, ContractionPolicy, GsProof, HerbrandProof, SearchBounds, SearchOutcome, Signature};
use serde_json::{Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const BUSS_DOCUMENT: &str = "\
rel A/1
rel B/1
fun c/0
|- (forall x. A(x)) /\\ (forall x. B(x)),
   ((exists x. ~A(x)) \\/ (exists x. ~B(x))) /\\ ((exists x. ~A(x)) \\/ (exists x. ~B(x)))
";

pub const DRINKER_DOCUMENT: &str = "\
rel P/1
fun c/0
|- exists x. (~P(x) \\/ forall y. P(y))
";

pub const BUSS_BOUNDS: SearchBounds = SearchBounds { depth: 12, term_depth: 1 };
pub const DRINKER_BOUNDS: SearchBounds = SearchBounds { depth: 8, term_depth: 1 };

#[derive(Parser, Debug)]
#[command(name = "herbrand", version, about = "Check Herbrand certificates and translate GS proofs into them")]
pub struct Cli {
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a GS proof document.
    CheckGs { file: PathBuf },
    /// Search for a GS proof of a sequent document.
    Search {
        seqfile: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Policy::Full)]
        policy: Policy,
        /// Write the proof document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate a GS proof into a Herbrand certificate.
    Translate {
        gsproof: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a Herbrand certificate against a sequent document.
    CheckHerbrand { seqfile: PathBuf, cert: PathBuf },
    /// Run a built-in, self-checking demonstration.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    Full,
    Restricted,
}

impl From<Policy> for ContractionPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Full => ContractionPolicy::Full,
            Policy::Restricted => ContractionPolicy::Restricted,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    Buss,
    Drinker,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub fields: Vec<(String, Value)>,
}

impl Report {
    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                other => writeln!(out, "{k}: {other}"),
            }
            .expect("writing to a String");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("serializable")
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Report,
    pub output: String,
}

struct Failure {
    code: i32,
    report: Report,
}

fn input_error(kind: &str, message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        report: Report::default().with("result", "error").with("reason", kind).with("message", message.to_string()),
    }
}

fn rejected(kind: &str, message: impl ToString) -> Failure {
    Failure {
        code: EXIT_REJECTED,
        report: Report::default().with("result", "rejected").with("reason", kind).with("message", message.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error("io-error", format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error("io-error", format!("{}: {e}", path.display())))
}

fn sequent_document(text: &str, origin: &str) -> Result<SequentDocument, Failure> {
    parse_sequent_document(text).map_err(|e| {
        let mut f = input_error(e.kind_name(), &e.kind);
        f.report.push("file", origin);
        f.report.push("line", e.line);
        f.report.push("column", e.column);
        f
    })
}

fn load_sequent(path: &Path) -> Result<SequentDocument, Failure> {
    sequent_document(&read(path)?, &path.display().to_string())
}

fn load_proof(path: &Path) -> Result<(Signature, GsProof), Failure> {
    proof_from_json(&read(path)?).map_err(|e| input_error("bad-proof-document", e))
}

fn constant_of(sig: &Signature) -> Result<herbrand_core::Term, Failure> {
    sig.distinguished_constant().ok_or_else(|| input_error("no-constant", "the signature declares no constant"))
}

fn certificate_lines(h: &HerbrandProof) -> Report {
    let prefix: String = h.prenex.prefix.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
    Report::default()
        .with("expansion", h.expansion.to_string())
        .with("prefix", prefix)
        .with("matrix", h.prenex.matrix.to_string())
        .with("witness", h.witness.0.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "))
}

fn extend(report: &mut Report, more: Report) {
    report.fields.extend(more.fields);
}

/// Translates `p` and runs the certificate checker on the result.
fn translate_checked(sig: &Signature, p: &GsProof) -> Result<HerbrandProof, Failure> {
    let h = translate_with_constant(p, constant_of(sig)?).map_err(|e| rejected(e.kind(), e))?;
    check_herbrand(&p.conclusion, &h).map_err(|e| rejected(e.kind(), format!("translated certificate: {e}")))?;
    Ok(h)
}

fn check_gs_cmd(file: &Path) -> Result<Report, Failure> {
    let (_, p) = load_proof(file)?;
    check_gs(&p).map_err(|e| rejected(e.kind(), e))?;
    Ok(Report::default()
        .with("result", "ok")
        .with("conclusion", p.conclusion.to_string())
        .with("size", p.size())
        .with("height", p.height()))
}

fn search_cmd(
    seqfile: &Path,
    bounds: SearchBounds,
    policy: Policy,
    output: Option<&Path>,
) -> Result<Report, Failure> {
    let doc = load_sequent(seqfile)?;
    let base = Report::default()
        .with("sequent", doc.sequent.to_string())
        .with("policy", format!("{policy:?}").to_lowercase())
        .with("depth", bounds.depth)
        .with("terms", bounds.term_depth);
    match search_gs(&doc.sequent, bounds, policy.into()) {
        SearchOutcome::Exhausted => {
            let mut report = Report::default().with("result", "exhausted").with("reason", "exhausted");
            extend(&mut report, base);
            Err(Failure { code: EXIT_REJECTED, report })
        }
        SearchOutcome::Proved(p) => {
            let mut report = Report::default().with("result", "proved");
            extend(&mut report, base);
            report.push("size", p.size());
            report.push("height", p.height());
            if let Some(out) = output {
                write(out, &proof_to_json(&doc.signature, &p))?;
                report.push("output", out.display().to_string());
            }
            Ok(report)
        }
    }
}

fn translate_cmd(gsproof: &Path, output: &Path) -> Result<Report, Failure> {
    let (sig, p) = load_proof(gsproof)?;
    check_gs(&p).map_err(|e| rejected(e.kind(), format!("input proof: {e}")))?;
    let h = translate_checked(&sig, &p)?;
    write(output, &certificate_to_json(Some(&sig), &h))?;
    let mut report = Report::default().with("result", "ok");
    extend(&mut report, certificate_lines(&h));
    report.push("output", output.display().to_string());
    Ok(report)
}

fn check_herbrand_cmd(seqfile: &Path, cert: &Path) -> Result<Report, Failure> {
    let doc = load_sequent(seqfile)?;
    let (_, h) = certificate_from_json(&read(cert)?, Some(&doc.signature))
        .map_err(|e| input_error("bad-certificate-document", e))?;
    check_herbrand(&doc.sequent, &h).map_err(|e| rejected(e.kind(), e))?;
    Ok(Report::default().with("result", "accepted").with("sequent", doc.sequent.to_string()))
}

fn demo_failure(step: &str, message: impl ToString) -> Failure {
    Failure {
        code: EXIT_REJECTED,
        report: Report::default()
            .with("result", "failed")
            .with("reason", "self-check-failed")
            .with("step", step)
            .with("message", message.to_string()),
    }
}

/// Search, check, translate, check again, and confirm the certificate's
/// sequent has no small countermodel.
fn prove_and_certify(doc: &SequentDocument, bounds: SearchBounds, report: &mut Report) -> Result<(), Failure> {
    let p = search_gs(&doc.sequent, bounds, ContractionPolicy::Full)
        .proof()
        .ok_or_else(|| demo_failure("full-search", "FULL search exhausted"))?;
    report.push("full", "proved");
    report.push("proof-size", p.size());
    report.push("proof-height", p.height());
    check_gs(&p).map_err(|e| demo_failure("check-gs", e))?;
    report.push("check-gs", "ok");
    let h = translate_checked(&doc.signature, &p).map_err(|f| demo_failure("translate", message_of(&f)))?;
    extend(report, certificate_lines(&h));
    let text = certificate_to_json(Some(&doc.signature), &h);
    let (_, back) = certificate_from_json(&text, None).map_err(|e| demo_failure("certificate-round-trip", e))?;
    check_herbrand(&doc.sequent, &back).map_err(|e| demo_failure("check-herbrand", e))?;
    report.push("check-herbrand", "accepted");
    let closed: Option<_> = doc.sequent.closed_disjunction();
    let sound = closed
        .map(|f| valid_up_to(&f, 2))
        .transpose()
        .map_err(|e| demo_failure("valid-up-to-2", e))?
        .unwrap_or(false);
    if !sound {
        return Err(demo_failure("valid-up-to-2", "countermodel of size at most 2"));
    }
    report.push("valid-up-to-2", true);
    Ok(())
}

fn message_of(f: &Failure) -> String {
    f.report.get("message").and_then(Value::as_str).unwrap_or_default().to_string()
}

fn bounds_text(b: SearchBounds) -> String {
    format!("depth {}, term depth {}", b.depth, b.term_depth)
}

fn demo_buss() -> Result<Report, Failure> {
    let doc = sequent_document(BUSS_DOCUMENT, "<buss>")?;
    let mut report = Report::default().with("sequent", doc.sequent.to_string()).with("bounds", bounds_text(BUSS_BOUNDS));
    if search_gs(&doc.sequent, BUSS_BOUNDS, ContractionPolicy::Restricted).is_proved() {
        return Err(demo_failure("restricted-search", "RESTRICTED search found a proof"));
    }
    report.push("restricted", "exhausted");
    prove_and_certify(&doc, BUSS_BOUNDS, &mut report)?;
    report.push("result", "ok");
    Ok(report)
}

fn demo_drinker() -> Result<Report, Failure> {
    let doc = sequent_document(DRINKER_DOCUMENT, "<drinker>")?;
    let mut report =
        Report::default().with("sequent", doc.sequent.to_string()).with("bounds", bounds_text(DRINKER_BOUNDS));
    prove_and_certify(&doc, DRINKER_BOUNDS, &mut report)?;
    report.push("result", "ok");
    Ok(report)
}

pub fn execute(cli: &Cli) -> (i32, Report) {
    let r = match &cli.command {
        Command::CheckGs { file } => check_gs_cmd(file),
        Command::Search { seqfile, depth, terms, policy, output } => {
            search_cmd(seqfile, SearchBounds { depth: *depth, term_depth: *terms }, *policy, output.as_deref())
        }
        Command::Translate { gsproof, output } => translate_cmd(gsproof, output),
        Command::CheckHerbrand { seqfile, cert } => check_herbrand_cmd(seqfile, cert),
        Command::Demo { which: Demo::Buss } => demo_buss(),
        Command::Demo { which: Demo::Drinker } => demo_drinker(),
    };
    match r {
        Ok(report) => (EXIT_OK, report),
        Err(Failure { code, report }) => (code, report),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let report = if code == EXIT_OK {
                Report::default()
            } else {
                Report::default().with("result", "error").with("reason", "usage").with("message", e.to_string().trim().to_string())
            };
            let output = if code == EXIT_OK { e.to_string() } else { report.to_text() };
            return Outcome { code, report, output };
        }
    };
    let (code, report) = execute(&cli);
    let output = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    Outcome { code, report, output }
}
