//! Parser for the ASCII surface syntax (with Unicode aliases accepted on
//! input). Every error carries a byte-offset span into the source text.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Label, Var};
use crate::sequent::{LabeledSequent, Sequent};

/// Byte range into the parsed source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    BoxOp,
    DiaI,
    DiaC,
    Forall,
    ExistsI,
    ExistsC,
    RelName,
    Not,
    And,
    OrI,
    OrC,
    ImpI,
    ImpC,
    IffI,
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::Bot => "`bot`",
            Tok::BoxOp => "`box`",
            Tok::DiaI => "`dia_i`",
            Tok::DiaC => "`dia_c`",
            Tok::Forall => "`forall`",
            Tok::ExistsI => "`exists_i`",
            Tok::ExistsC => "`exists_c`",
            Tok::RelName => "`R`",
            Tok::Not => "`~`",
            Tok::And => "`/\\`",
            Tok::OrI => "`\\/i`",
            Tok::OrC => "`\\/c`",
            Tok::ImpI => "`->i`",
            Tok::ImpC => "`->c`",
            Tok::IffI => "`<->i`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Turnstile => "`|-`",
            Tok::Eof => "end of input",
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        // Multi-char ASCII operators, longest first.
        let ascii_ops: &[(&str, Tok)] = &[
            ("<->i", Tok::IffI),
            ("->i", Tok::ImpI),
            ("->c", Tok::ImpC),
            ("\\/i", Tok::OrI),
            ("\\/c", Tok::OrC),
            ("/\\", Tok::And),
            ("|-", Tok::Turnstile),
        ];
        if let Some((text, tok)) = ascii_ops.iter().find(|(text, _)| rest.starts_with(text)) {
            i += text.len();
            toks.push((tok.clone(), SourceSpan::new(start, i)));
            continue;
        }
        let simple = match c {
            '~' | '¬' => Some(Tok::Not),
            '∧' => Some(Tok::And),
            '⊥' => Some(Tok::Bot),
            '□' => Some(Tok::BoxOp),
            '∀' => Some(Tok::Forall),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = simple {
            i += c.len_utf8();
            toks.push((tok, SourceSpan::new(start, i)));
            continue;
        }
        // Unicode connectives that require an i/c subscript.
        if matches!(c, '∨' | '→' | '↔' | '◊' | '∃' | '⊢') {
            if c == '⊢' {
                i += c.len_utf8();
                toks.push((Tok::Turnstile, SourceSpan::new(start, i)));
                continue;
            }
            i += c.len_utf8();
            let sub = src[i..].chars().next();
            let kind = match sub {
                Some('i') | Some('ᵢ') => 'i',
                Some('c') => 'c',
                _ => {
                    return Err(ParseError::new(
                        SourceSpan::new(start, i),
                        format!("connective `{c}` needs an `i` or `c` subscript"),
                    ))
                }
            };
            if c == '↔' && kind == 'c' {
                return Err(ParseError::new(
                    SourceSpan::new(start, i),
                    "only the intuitionistic biconditional `<->i` exists",
                ));
            }
            i += sub.unwrap().len_utf8();
            let tok = match (c, kind) {
                ('∨', 'i') => Tok::OrI,
                ('∨', 'c') => Tok::OrC,
                ('→', 'i') => Tok::ImpI,
                ('→', 'c') => Tok::ImpC,
                ('↔', _) => Tok::IffI,
                ('◊', 'i') => Tok::DiaI,
                ('◊', 'c') => Tok::DiaC,
                ('∃', 'i') => Tok::ExistsI,
                ('∃', 'c') => Tok::ExistsC,
                _ => unreachable!(),
            };
            toks.push((tok, SourceSpan::new(start, i)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < src.len()
                && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
            {
                j += 1;
            }
            let word = &src[i..j];
            let tok = match word {
                "box" => Tok::BoxOp,
                "dia_i" => Tok::DiaI,
                "dia_c" => Tok::DiaC,
                "forall" => Tok::Forall,
                "exists_i" => Tok::ExistsI,
                "exists_c" => Tok::ExistsC,
                "bot" => Tok::Bot,
                "R" => Tok::RelName,
                _ => Tok::Ident(word.to_string()),
            };
            i = j;
            toks.push((tok, SourceSpan::new(start, i)));
            continue;
        }
        return Err(ParseError::new(
            SourceSpan::new(start, start + c.len_utf8()),
            format!("unexpected character `{c}`"),
        ));
    }
    toks.push((Tok::Eof, SourceSpan::new(src.len(), src.len())));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    /// Modal-fragment mode: quantifiers, `R(..)` and applied atoms rejected.
    modal_only: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok) -> Result<SourceSpan, ParseError> {
        if self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(ParseError::new(
                self.span(),
                format!("expected {}, found {}", tok.describe(), self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match self.bump() {
            (Tok::Ident(name), span) => Ok((name, span)),
            (tok, span) => Err(ParseError::new(
                span,
                format!("expected {what}, found {}", tok.describe()),
            )),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.imp_level()
    }

    fn imp_level(&mut self) -> Result<Formula, ParseError> {
        let left = self.or_level()?;
        match self.peek() {
            Tok::ImpI => {
                self.bump();
                Ok(Formula::imp_i(left, self.imp_level()?))
            }
            Tok::ImpC => {
                self.bump();
                Ok(Formula::imp_c(left, self.imp_level()?))
            }
            Tok::IffI => {
                self.bump();
                Ok(Formula::iff_i(left, self.imp_level()?))
            }
            _ => Ok(left),
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and_level()?;
        loop {
            match self.peek() {
                Tok::OrI => {
                    self.bump();
                    acc = Formula::or_i(acc, self.and_level()?);
                }
                Tok::OrC => {
                    self.bump();
                    acc = Formula::or_c(acc, self.and_level()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == &Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::BoxOp => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::DiaI => {
                self.bump();
                Ok(Formula::dia_i(self.unary()?))
            }
            Tok::DiaC => {
                self.bump();
                Ok(Formula::dia_c(self.unary()?))
            }
            Tok::Forall => self.quantifier(Quant::Forall),
            Tok::ExistsI => self.quantifier(Quant::ExistsI),
            Tok::ExistsC => self.quantifier(Quant::ExistsC),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self, q: Quant) -> Result<Formula, ParseError> {
        let span = self.bump().1;
        if self.modal_only {
            return Err(ParseError::new(
                span,
                "quantifiers are not allowed in the modal fragment",
            ));
        }
        let (name, vspan) = self.ident("a bound variable")?;
        check_plain_var(&name, vspan)?;
        self.expect(&Tok::Dot)?;
        let body = self.unary()?;
        let v = Var::new(name);
        Ok(match q {
            Quant::Forall => Formula::forall(v, body),
            Quant::ExistsI => Formula::exists_i(v, body),
            Quant::ExistsC => Formula::exists_c(v, body),
        })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            (Tok::Bot, _) => Ok(Formula::Bottom),
            (Tok::LParen, _) => {
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            (Tok::RelName, span) => {
                if self.modal_only {
                    return Err(ParseError::new(
                        span,
                        "relational atoms are not allowed in the modal fragment",
                    ));
                }
                self.expect(&Tok::LParen)?;
                let (x, xs) = self.ident("a variable")?;
                check_plain_var(&x, xs)?;
                self.expect(&Tok::Comma)?;
                let (y, ys) = self.ident("a variable")?;
                check_plain_var(&y, ys)?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::rel(Var::new(x), Var::new(y)))
            }
            (Tok::Ident(name), span) => {
                let (base, classical) = split_atom_name(&name).ok_or_else(|| {
                    ParseError::new(
                        span,
                        format!(
                            "atom `{name}` must end in `_i` or `_c` to pick its ecumenical kind"
                        ),
                    )
                })?;
                let args = if self.peek() == &Tok::LParen {
                    let lparen = self.bump().1;
                    if self.modal_only {
                        return Err(ParseError::new(
                            lparen,
                            "applied atoms are not allowed in the modal fragment",
                        ));
                    }
                    let mut args = Vec::new();
                    loop {
                        let (v, vs) = self.ident("a variable")?;
                        check_plain_var(&v, vs)?;
                        args.push(Var::new(v));
                        match self.bump() {
                            (Tok::Comma, _) => continue,
                            (Tok::RParen, _) => break,
                            (tok, span) => {
                                return Err(ParseError::new(
                                    span,
                                    format!(
                                        "expected `,` or `)`, found {}",
                                        tok.describe()
                                    ),
                                ))
                            }
                        }
                    }
                    args
                } else {
                    Vec::new()
                };
                Ok(if classical {
                    Formula::catom(base, args)
                } else {
                    Formula::iatom(base, args)
                })
            }
            (tok, span) => Err(ParseError::new(
                span,
                format!("expected a formula, found {}", tok.describe()),
            )),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        let (name, span) = self.ident("a world label")?;
        check_plain_var(&name, span)?;
        Ok(Label::new(name))
    }

    fn eof(&self) -> Result<(), ParseError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(ParseError::new(
                self.span(),
                format!("unexpected trailing {}", self.peek().describe()),
            ))
        }
    }
}

enum Quant {
    Forall,
    ExistsI,
    ExistsC,
}

/// Labels and variables must not carry the `_i`/`_c` atom suffix and must
/// not collide with the reserved `#n` canonical names.
fn check_plain_var(name: &str, span: SourceSpan) -> Result<(), ParseError> {
    if split_atom_name(name).is_some() {
        return Err(ParseError::new(
            span,
            format!("`{name}` looks like an atom; variables and labels take no `_i`/`_c` suffix"),
        ));
    }
    Ok(())
}

fn split_atom_name(name: &str) -> Option<(String, bool)> {
    if let Some(base) = name.strip_suffix("_i") {
        if !base.is_empty() {
            return Some((base.to_string(), false));
        }
    }
    if let Some(base) = name.strip_suffix("_c") {
        if !base.is_empty() {
            return Some((base.to_string(), true));
        }
    }
    None
}

fn parser(src: &str, modal_only: bool) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(src)?,
        pos: 0,
        modal_only,
    })
}

/// Parse a formula in the full language (first-order constructs allowed).
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = parser(src, false)?;
    let f = p.formula()?;
    p.eof()?;
    Ok(f)
}

/// Parse a formula restricted to the modal fragment: no quantifiers, no
/// relational atoms, atoms propositional.
pub fn parse_modal_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = parser(src, true)?;
    let f = p.formula()?;
    p.eof()?;
    Ok(f)
}

/// Parse `A1, ..., An |- B`.
pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = parser(src, false)?;
    let mut ante = Vec::new();
    if p.peek() != &Tok::Turnstile {
        loop {
            ante.push(p.formula()?);
            match p.bump() {
                (Tok::Comma, _) => continue,
                (Tok::Turnstile, _) => break,
                (tok, span) => {
                    return Err(ParseError::new(
                        span,
                        format!("expected `,` or `|-`, found {}", tok.describe()),
                    ))
                }
            }
        }
    } else {
        p.bump();
    }
    let succ = p.formula()?;
    p.eof()?;
    Ok(Sequent::new(ante, succ))
}

/// Parse `x R y, x: A, ... |- z: C`. Exactly one labeled succedent; formulas
/// must be in the modal fragment.
pub fn parse_labeled_sequent(src: &str) -> Result<LabeledSequent, ParseError> {
    let mut p = parser(src, true)?;
    let mut rel = Vec::new();
    let mut ante = Vec::new();
    if p.peek() != &Tok::Turnstile {
        loop {
            let x = p.label()?;
            match p.bump() {
                (Tok::RelName, _) => {
                    let y = p.label()?;
                    rel.push((x, y));
                }
                (Tok::Colon, _) => {
                    let f = p.formula()?;
                    ante.push((x, f));
                }
                (tok, span) => {
                    return Err(ParseError::new(
                        span,
                        format!("expected `R` or `:` after a label, found {}", tok.describe()),
                    ))
                }
            }
            match p.bump() {
                (Tok::Comma, _) => continue,
                (Tok::Turnstile, _) => break,
                (tok, span) => {
                    return Err(ParseError::new(
                        span,
                        format!("expected `,` or `|-`, found {}", tok.describe()),
                    ))
                }
            }
        }
    } else {
        p.bump();
    }
    let x = p.label()?;
    p.expect(&Tok::Colon)?;
    let f = p.formula()?;
    if p.peek() == &Tok::Comma {
        return Err(ParseError::new(
            p.span(),
            "labeled sequents have exactly one succedent formula",
        ));
    }
    p.eof()?;
    Ok(LabeledSequent::new(rel, ante, (x, f)))
}
