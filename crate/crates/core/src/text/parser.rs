//! Concrete syntax for formulas, terms and sequent documents.
//!
//! ```text
//! formula := disj
//! disj    := conj ("\/" conj)*
//! conj    := unary ("/\" unary)*
//! unary   := "~" atom | atom | "(" formula ")" | quant
//! quant   := ("forall" | "exists") IDENT "." formula
//! atom    := IDENT ["(" term ("," term)* ")"]
//! term    := IDENT ["(" term ("," term)* ")"]
//! ```
//!
//! An identifier in term position is a function symbol when the signature
//! declares it and no enclosing quantifier binds it; otherwise a variable.

use std::fmt;

use thiserror::Error;

use crate::signature::Signature;
use crate::syntax::{Atom, Formula, Sequent, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredSymbol(String),
    ArityMismatch { symbol: String, expected: usize, found: usize },
    NegationNotAtomic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ParseErrorKind::Syntax(_) => "syntax-error",
            ParseErrorKind::UndeclaredSymbol(_) => "undeclared-symbol",
            ParseErrorKind::ArityMismatch { .. } => "arity-mismatch",
            ParseErrorKind::NegationNotAtomic => "negation-not-atomic",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UndeclaredSymbol(s) => write!(f, "undeclared symbol `{s}`"),
            ParseErrorKind::ArityMismatch { symbol, expected, found } => {
                write!(f, "`{symbol}` expects {expected} argument(s), got {found}")
            }
            ParseErrorKind::NegationNotAtomic => f.write_str("negation applies only to atoms"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    LParen,
    RParen,
    Comma,
    Dot,
    Slash,
    Tilde,
    Or,
    And,
    Arrow,
    Turnstile,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let next = chars.get(i + 1).copied();
        let mut push = |tok, len: usize| {
            out.push(Spanned { tok, line: l, column: col });
            len
        };
        let len = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => push(Tok::LParen, 1),
            ')' => push(Tok::RParen, 1),
            ',' => push(Tok::Comma, 1),
            '.' => push(Tok::Dot, 1),
            '~' => push(Tok::Tilde, 1),
            '\\' if next == Some('/') => push(Tok::Or, 2),
            '/' if next == Some('\\') => push(Tok::And, 2),
            '/' => push(Tok::Slash, 1),
            '-' if next == Some('>') => push(Tok::Arrow, 2),
            '|' if next == Some('-') => push(Tok::Turnstile, 2),
            c if c.is_ascii_digit() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[start..j].iter().collect();
                let n = digits.parse().map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax(format!("number `{digits}` too large")),
                    line: l,
                    column: col,
                })?;
                push(Tok::Number(n), j - start)
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                push(Tok::Ident(chars[start..j].iter().collect()), j - start)
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                    line: l,
                    column: col,
                })
            }
        };
        i += len;
        column += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "exists" | "rel" | "fun")
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
    bound: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, sig, bound: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line: at.line, column: at.column }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let at = &self.toks[self.pos];
        let msg = if at.tok == Tok::Arrow {
            "implication `->` is not part of the syntax; write formulas in negation normal form".to_string()
        } else {
            format!("expected {expected}, found {}", at.tok)
        };
        self.error_at(at, ParseErrorKind::Syntax(msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Spanned), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => Ok((s, self.bump())),
            _ => Err(self.unexpected(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                let at = self.bump();
                match self.peek() {
                    Tok::Ident(s) if !is_keyword(s) => Ok(Formula::NegAtom(self.atom()?)),
                    Tok::LParen | Tok::Tilde | Tok::Ident(_) => {
                        Err(self.error_at(&at, ParseErrorKind::NegationNotAtomic))
                    }
                    _ => Err(self.unexpected("an atom after `~`")),
                }
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(s) if s == "forall" || s == "exists" => {
                self.bump();
                let (x, _) = self.ident("a bound variable")?;
                self.expect(Tok::Dot, "`.`")?;
                self.bound.push(x.clone());
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                Ok(if s == "forall" { Formula::forall(&x, body) } else { Formula::exists(&x, body) })
            }
            Tok::Ident(s) if !is_keyword(&s) => Ok(Formula::Atom(self.atom()?)),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Vec::new());
        }
        self.bump();
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn check_arity(&self, at: &Spanned, symbol: &str, expected: usize, found: usize) -> Result<(), ParseError> {
        if expected == found {
            Ok(())
        } else {
            Err(self.error_at(at, ParseErrorKind::ArityMismatch { symbol: symbol.to_string(), expected, found }))
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (rel, at) = self.ident("a relation symbol")?;
        let Some(arity) = self.sig.relation_arity(&rel) else {
            return Err(self.error_at(&at, ParseErrorKind::UndeclaredSymbol(rel)));
        };
        let args = self.arguments()?;
        self.check_arity(&at, &rel, arity, args.len())?;
        Ok(Atom { rel, args })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, at) = self.ident("a term")?;
        let has_args = *self.peek() == Tok::LParen;
        if self.bound.contains(&name) {
            if has_args {
                return Err(self.unexpected("`,` or `)` after a bound variable"));
            }
            return Ok(Term::Var(Var::new(name)));
        }
        match self.sig.function_arity(&name) {
            Some(arity) => {
                let args = self.arguments()?;
                self.check_arity(&at, &name, arity, args.len())?;
                Ok(Term::App(name, args))
            }
            None if has_args => Err(self.error_at(&at, ParseErrorKind::UndeclaredSymbol(name))),
            None => Ok(Term::Var(Var::new(name))),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn declarations(&mut self) -> Result<Signature, ParseError> {
        let mut relations = Vec::new();
        let mut functions = Vec::new();
        while let Tok::Ident(kw) = self.peek().clone() {
            if kw != "rel" && kw != "fun" {
                break;
            }
            // `rel` followed by something other than a declaration is a formula.
            if !matches!(self.peek_at(2), Tok::Slash) {
                break;
            }
            let kw_at = self.bump();
            let (name, _) = self.ident("a symbol name")?;
            self.expect(Tok::Slash, "`/`")?;
            let Tok::Number(arity) = self.peek().clone() else {
                return Err(self.unexpected("an arity"));
            };
            self.bump();
            let list = if kw == "rel" { &mut relations } else { &mut functions };
            if list.iter().any(|(n, _)| *n == name) {
                return Err(self.error_at(&kw_at, ParseErrorKind::Syntax(format!("`{name}` declared twice"))));
            }
            list.push((name, arity));
        }
        let sig = Signature::unchecked(relations, functions).expect("duplicates rejected above");
        Ok(sig)
    }
}

/// Parses one formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.end()?;
    Ok(f)
}

/// Parses a term; unbound identifiers not declared as functions are
/// variables.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

/// Parses `|- F1, ..., Fn` (or a single formula) over `sig`.
pub fn parse_sequent(text: &str, sig: &Signature) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let s = sequent_body(&mut p)?;
    p.end()?;
    Ok(s)
}

fn sequent_body(p: &mut Parser<'_>) -> Result<Sequent, ParseError> {
    if *p.peek() != Tok::Turnstile {
        return Ok(Sequent(vec![p.formula()?]));
    }
    p.bump();
    let mut members = Vec::new();
    if *p.peek() == Tok::Eof {
        return Ok(Sequent(members));
    }
    members.push(p.formula()?);
    while *p.peek() == Tok::Comma {
        p.bump();
        members.push(p.formula()?);
    }
    Ok(Sequent(members))
}

/// A signature declaration block followed by a sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentDocument {
    pub signature: Signature,
    pub sequent: Sequent,
}

/// Reads a sequent document:
///
/// ```text
/// # comment
/// rel P/1
/// fun c/0
/// |- exists x. (~P(x) \/ forall y. P(y))
/// ```
///
/// The signature must declare at least one constant.
pub fn parse_sequent_document(text: &str) -> Result<SequentDocument, ParseError> {
    let empty = Signature::default();
    let mut p = Parser::new(text, &empty)?;
    let sig = p.declarations()?;
    if sig.distinguished_constant().is_none() {
        let at = p.toks[p.pos].clone();
        return Err(p.error_at(&at, ParseErrorKind::Syntax("the signature must declare a constant (`fun c/0`)".into())));
    }
    let mut body = Parser { toks: p.toks.clone(), pos: p.pos, sig: &sig, bound: Vec::new() };
    let sequent = sequent_body(&mut body)?;
    body.end()?;
    Ok(SequentDocument { signature: sig, sequent })
}

/// Declaration lines for `sig`, in declaration order.
pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for (r, n) in sig.relations() {
        out.push_str(&format!("rel {r}/{n}\n"));
    }
    for (f, n) in sig.functions() {
        out.push_str(&format!("fun {f}/{n}\n"));
    }
    out
}

pub fn print_sequent_document(doc: &SequentDocument) -> String {
    format!("{}{}\n", print_signature(&doc.signature), doc.sequent)
}
