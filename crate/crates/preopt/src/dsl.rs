//! Text and JSON forms for signatures and diagrams.
//!
//! Signature files are statement lists:
//!
//! ```text
//! # writer-ish demo
//! atoms A B ;
//! gen s : A -> A central ;
//! gen h : A -> A*A central ;
//! ```
//!
//! Diagram literals are a domain word followed by slices:
//!
//! ```text
//! A*B | s@0, g@1
//! A*B | s@0, hole(B,B,0)@1
//! A   | f@0, barrier, s@0
//! A*B                      (no bar: the identity)
//! ```
//!
//! `I` is the empty word. Hole slices carry their boundary inline, so a
//! literal is self-contained: parsing extends the ambient signature with the
//! specs it mentions. Printing emits the same shape back; `parse(print(d))`
//! reproduces `d` slice for slice.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Slice, SliceKind};
use crate::error::{Error, Result};
use crate::signature::{Generator, HoleSpec, ObjectWord, Signature};

// ── tokens ──────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Semi,
    Colon,
    Arrow,
    Star,
    LParen,
    RParen,
    Comma,
    At,
    Bar,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Star => write!(f, "`*`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::At => write!(f, "`@`"),
            Tok::Bar => write!(f, "`|`"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Span {
    line: usize,
    col: usize,
}

fn syntax(span: Span, msg: impl Into<String>) -> Error {
    Error::SyntaxError { line: span.line, col: span.col, msg: msg.into() }
}

struct Lexer {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            ';' | ':' | '*' | '(' | ')' | ',' | '@' | '|' => {
                chars.next();
                col += 1;
                toks.push((
                    match c {
                        ';' => Tok::Semi,
                        ':' => Tok::Colon,
                        '*' => Tok::Star,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        '@' => Tok::At,
                        _ => Tok::Bar,
                    },
                    span,
                ));
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    toks.push((Tok::Arrow, span));
                } else {
                    return Err(syntax(span, "expected `->`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let v = n.parse().map_err(|_| syntax(span, "number out of range"))?;
                toks.push((Tok::Nat(v), span));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), span));
            }
            other => return Err(syntax(span, format!("unexpected character `{other}`"))),
        }
    }
    Ok(Lexer { toks, pos: 0, end: Span { line, col } })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span> {
        match self.next() {
            Some((t, s)) if t == want => Ok(s),
            Some((t, s)) => Err(syntax(s, format!("expected {want}, found {t}"))),
            None => Err(syntax(self.end, format!("expected {want}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Span)> {
        match self.next() {
            Some((Tok::Ident(s), sp)) => Ok((s, sp)),
            Some((t, s)) => Err(syntax(s, format!("expected a name, found {t}"))),
            None => Err(syntax(self.end, "expected a name, found end of input")),
        }
    }

    fn nat(&mut self) -> Result<(usize, Span)> {
        match self.next() {
            Some((Tok::Nat(n), sp)) => Ok((n, sp)),
            Some((t, s)) => Err(syntax(s, format!("expected a number, found {t}"))),
            None => Err(syntax(self.end, "expected a number, found end of input")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

// ── signature format ────────────────────────────────────────────────────

fn parse_word(lx: &mut Lexer) -> Result<ObjectWord> {
    let (first, _) = lx.ident()?;
    if first == "I" {
        return Ok(ObjectWord::empty());
    }
    let mut atoms = vec![first];
    while lx.peek() == Some(&Tok::Star) {
        lx.next();
        let (a, sp) = lx.ident()?;
        if a == "I" {
            return Err(syntax(sp, "`I` cannot appear inside a word"));
        }
        atoms.push(a);
    }
    Ok(ObjectWord::new(atoms))
}

/// Parse the statement form `atoms .. ;` / `gen .. ;` into a validated
/// signature.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut lx = lex(text)?;
    let mut atoms: Vec<String> = Vec::new();
    let mut gens: Vec<Generator> = Vec::new();
    while !lx.at_end() {
        let (kw, sp) = lx.ident()?;
        match kw.as_str() {
            "atoms" => loop {
                match lx.next() {
                    Some((Tok::Ident(a), _)) => atoms.push(a),
                    Some((Tok::Semi, _)) => break,
                    Some((t, s)) => return Err(syntax(s, format!("expected an atom or `;`, found {t}"))),
                    None => return Err(syntax(lx.span(), "unterminated `atoms` statement")),
                }
            },
            "gen" => {
                let (name, _) = lx.ident()?;
                lx.expect(Tok::Colon)?;
                let dom = parse_word(&mut lx)?;
                lx.expect(Tok::Arrow)?;
                let cod = parse_word(&mut lx)?;
                let central = if lx.peek() == Some(&Tok::Ident("central".into())) {
                    lx.next();
                    true
                } else {
                    false
                };
                lx.expect(Tok::Semi)?;
                gens.push(Generator { name, dom, cod, central });
            }
            other => return Err(syntax(sp, format!("expected `atoms` or `gen`, found `{other}`"))),
        }
    }
    Signature::declare(&atoms, &gens)
}

// ── diagram literals ────────────────────────────────────────────────────

enum RawSlice {
    Gen(String, usize, Span),
    Hole(HoleSpec, usize, Span),
    Barrier(Span),
}

fn parse_slice(lx: &mut Lexer) -> Result<RawSlice> {
    let (name, sp) = lx.ident()?;
    match name.as_str() {
        "barrier" => Ok(RawSlice::Barrier(sp)),
        "hole" => {
            lx.expect(Tok::LParen)?;
            let in_type = parse_word(lx)?;
            lx.expect(Tok::Comma)?;
            let out_type = parse_word(lx)?;
            lx.expect(Tok::Comma)?;
            let (slot, _) = lx.nat()?;
            lx.expect(Tok::RParen)?;
            lx.expect(Tok::At)?;
            let (off, _) = lx.nat()?;
            Ok(RawSlice::Hole(HoleSpec::new(slot as u32, in_type, out_type), off, sp))
        }
        _ => {
            lx.expect(Tok::At)?;
            let (off, _) = lx.nat()?;
            Ok(RawSlice::Gen(name, off, sp))
        }
    }
}

/// Parse a diagram literal over `sig`. Hole specs mentioned in the literal
/// extend the signature; the returned diagram is over the extension.
pub fn parse_diagram(sig: &Arc<Signature>, text: &str) -> Result<Diagram> {
    let mut lx = lex(text)?;
    let dom = parse_word(&mut lx)?;
    let mut raw: Vec<RawSlice> = Vec::new();
    if !lx.at_end() {
        lx.expect(Tok::Bar)?;
        if !lx.at_end() {
            raw.push(parse_slice(&mut lx)?);
            while !lx.at_end() {
                lx.expect(Tok::Comma)?;
                raw.push(parse_slice(&mut lx)?);
            }
        }
    }

    let mut specs: Vec<HoleSpec> = Vec::new();
    let mut needs_ext = false;
    for r in &raw {
        match r {
            RawSlice::Hole(spec, _, sp) => {
                if let Some(prev) = specs.iter().find(|p| p.slot == spec.slot) {
                    if prev != spec {
                        return Err(syntax(*sp, format!("hole slot {} re-declared with a different boundary", spec.slot)));
                    }
                } else {
                    specs.push(spec.clone());
                }
                needs_ext = true;
            }
            RawSlice::Barrier(_) => needs_ext = true,
            RawSlice::Gen(..) => {}
        }
    }
    let sig = if needs_ext { sig.extend_with_holes(&specs)?.into_arc() } else { sig.clone() };

    let mut slices: Vec<Slice> = Vec::with_capacity(raw.len());
    let mut spans: Vec<Span> = Vec::with_capacity(raw.len());
    for r in &raw {
        match r {
            RawSlice::Gen(name, off, sp) => {
                let id = sig
                    .lookup(name)
                    .ok_or_else(|| syntax(*sp, format!("unknown generator `{name}`")))?;
                slices.push(Slice::gen(id, *off));
                spans.push(*sp);
            }
            RawSlice::Hole(spec, off, sp) => {
                slices.push(Slice::hole(spec.slot, *off));
                spans.push(*sp);
            }
            RawSlice::Barrier(sp) => {
                slices.push(Slice::barrier());
                spans.push(*sp);
            }
        }
    }
    match Diagram::from_slices(&sig, dom.clone(), slices.clone()) {
        Ok(d) => Ok(d),
        Err(Error::TypeMismatch(_)) => {
            // find the offending slice to report its span
            for i in 0..slices.len() {
                if let Err(Error::TypeMismatch(msg)) =
                    Diagram::from_slices(&sig, dom.clone(), slices[..=i].to_vec())
                {
                    let sp = spans[i];
                    return Err(Error::TypeMismatch(format!("at {}:{}: {msg}", sp.line, sp.col)));
                }
            }
            unreachable!("prefix probing reproduces the type error")
        }
        Err(e) => Err(e),
    }
}

/// Canonical literal for a diagram; inverse of [`parse_diagram`].
pub fn print_diagram(d: &Diagram) -> String {
    let sig = d.signature();
    if d.slices().is_empty() {
        return d.dom().to_string();
    }
    let body: Vec<String> = d
        .slices()
        .iter()
        .map(|s| match s.kind {
            SliceKind::Gen(id) => format!("{}@{}", sig.generator(id).name, s.offset),
            SliceKind::Hole(slot) => {
                let h = sig.hole(slot).expect("stored diagram has specs for its holes");
                format!("hole({},{},{})@{}", h.in_type, h.out_type, slot, s.offset)
            }
            SliceKind::Barrier => "barrier".to_string(),
        })
        .collect();
    format!("{} | {}", d.dom(), body.join(", "))
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_diagram(self))
    }
}

/// Print a signature in its statement form.
pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    if !sig.atoms().is_empty() {
        out.push_str("atoms ");
        out.push_str(&sig.atoms().join(" "));
        out.push_str(" ;\n");
    }
    for g in sig.generators() {
        out.push_str(&format!(
            "gen {} : {} -> {}{} ;\n",
            g.name,
            g.dom,
            g.cod,
            if g.central { " central" } else { "" }
        ));
    }
    out
}

// ── JSON form ───────────────────────────────────────────────────────────

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SliceJson {
    Gen {
        name: String,
        offset: usize,
    },
    Hole {
        slot: u32,
        #[serde(rename = "in")]
        in_type: Vec<String>,
        out: Vec<String>,
        offset: usize,
    },
    Barrier,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    dom: Vec<String>,
    slices: Vec<SliceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cod: Option<Vec<String>>,
}

pub fn diagram_to_json(d: &Diagram) -> DiagramJson {
    let sig = d.signature();
    DiagramJson {
        dom: d.dom().atoms().to_vec(),
        slices: d
            .slices()
            .iter()
            .map(|s| match s.kind {
                SliceKind::Gen(id) => SliceJson::Gen {
                    name: sig.generator(id).name.clone(),
                    offset: s.offset,
                },
                SliceKind::Hole(slot) => {
                    let h = sig.hole(slot).expect("stored diagram has specs for its holes");
                    SliceJson::Hole {
                        slot,
                        in_type: h.in_type.atoms().to_vec(),
                        out: h.out_type.atoms().to_vec(),
                        offset: s.offset,
                    }
                }
                SliceKind::Barrier => SliceJson::Barrier,
            })
            .collect(),
        cod: Some(d.cod().atoms().to_vec()),
    }
}

pub fn diagram_from_json(sig: &Arc<Signature>, json: &DiagramJson) -> Result<Diagram> {
    let mut specs: Vec<HoleSpec> = Vec::new();
    let mut needs_ext = false;
    for s in &json.slices {
        match s {
            SliceJson::Hole { slot, in_type, out, .. } => {
                let spec = HoleSpec::new(
                    *slot,
                    ObjectWord::new(in_type.clone()),
                    ObjectWord::new(out.clone()),
                );
                if let Some(prev) = specs.iter().find(|p| p.slot == spec.slot) {
                    if *prev != spec {
                        return Err(Error::DuplicateName(spec.pseudo_name()));
                    }
                } else {
                    specs.push(spec);
                }
                needs_ext = true;
            }
            SliceJson::Barrier => needs_ext = true,
            SliceJson::Gen { .. } => {}
        }
    }
    let sig = if needs_ext { sig.extend_with_holes(&specs)?.into_arc() } else { sig.clone() };
    let slices = json
        .slices
        .iter()
        .map(|s| match s {
            SliceJson::Gen { name, offset } => sig
                .lookup(name)
                .map(|id| Slice::gen(id, *offset))
                .ok_or_else(|| Error::UndeclaredAtom(name.clone())),
            SliceJson::Hole { slot, offset, .. } => Ok(Slice::hole(*slot, *offset)),
            SliceJson::Barrier => Ok(Slice::barrier()),
        })
        .collect::<Result<Vec<_>>>()?;
    let d = Diagram::from_slices(&sig, ObjectWord::new(json.dom.clone()), slices)?;
    if let Some(cod) = &json.cod {
        if d.cod().atoms() != cod.as_slice() {
            return Err(Error::mismatch(format!(
                "declared codomain {} does not match computed {}",
                ObjectWord::new(cod.clone()),
                d.cod()
            )));
        }
    }
    Ok(d)
}
