//! Concrete syntax for terms and pomset literals, and the letter interner.
//!
//! ```text
//! t ::= '0' | '1' | ident | '(' t ')' | t '*' | t '^' | t ';' t | t '|' t | t '+' t
//! ```
//! Postfix operators bind tightest, then `;`, then `|`, then `+`; binary
//! operators associate to the left. `^` is parallel iteration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::pomset::{Letter, SpPomset};
use crate::term::{Node, Term};

/// Interns identifier names as [`Letter`]s in order of first use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    ids: BTreeMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Alphabet {
        Alphabet::default()
    }

    /// An alphabet with the given names interned in order.
    pub fn with_names<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Alphabet {
        let mut a = Alphabet::new();
        for n in names {
            a.intern(n);
        }
        a
    }

    pub fn intern(&mut self, name: &str) -> Letter {
        if let Some(&l) = self.ids.get(name) {
            return l;
        }
        let l = Letter(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), l);
        l
    }

    pub fn get(&self, name: &str) -> Option<Letter> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, l: Letter) -> Option<&str> {
        self.names.get(l.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    fn write_letter(&self, l: Letter, out: &mut String) {
        match self.name(l) {
            Some(n) => out.push_str(n),
            None => {
                let _ = write!(out, "#{}", l.0);
            }
        }
    }

    pub fn parse_term(&mut self, text: &str) -> Result<Term> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, at: 0, end: text.len(), alphabet: self };
        let t = p.plus()?;
        match p.tokens.get(p.at) {
            None => Ok(t),
            Some(tok) => Err(Error::Syntax { pos: tok.pos, msg: format!("unexpected {}", tok.kind.describe()) }),
        }
    }

    /// Parses a pomset literal: `1`, letters, `;`, `|` and parentheses.
    pub fn parse_pomset(&mut self, text: &str) -> Result<SpPomset> {
        let t = self.parse_term(text)?;
        term_to_pomset(&t).ok_or(Error::Syntax {
            pos: 0,
            msg: "pomset literals use only 1, letters, ';', '|' and parentheses".to_string(),
        })
    }

    pub fn render_term(&self, t: &Term) -> String {
        render_term_with(t, &|l, out: &mut String| self.write_letter(l, out))
    }

    pub fn render_pomset(&self, p: &SpPomset) -> String {
        let mut out = String::new();
        render_pomset_into(p, &|l, out: &mut String| self.write_letter(l, out), false, &mut out);
        out
    }
}

fn term_to_pomset(t: &Term) -> Option<SpPomset> {
    Some(match t.node() {
        Node::One => SpPomset::Unit,
        Node::Letter(l) => SpPomset::Atom(*l),
        Node::Dot(u, v) => SpPomset::seq(&term_to_pomset(u)?, &term_to_pomset(v)?),
        Node::Par(u, v) => SpPomset::par(&term_to_pomset(u)?, &term_to_pomset(v)?),
        _ => return None,
    })
}

/// The term denoting exactly `{p}`.
pub fn pomset_to_term(p: &SpPomset) -> Term {
    match p {
        SpPomset::Unit => Term::one(),
        SpPomset::Atom(l) => Term::letter(*l),
        SpPomset::Seq(cs) => Term::dots(cs.iter().map(pomset_to_term)),
        SpPomset::Par(cs) => Term::pars(cs.iter().map(pomset_to_term)),
    }
}

fn render_pomset_into(p: &SpPomset, letter: &dyn Fn(Letter, &mut String), in_seq: bool, out: &mut String) {
    match p {
        SpPomset::Unit => out.push('1'),
        SpPomset::Atom(l) => letter(*l, out),
        SpPomset::Seq(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push(';');
                }
                render_pomset_into(c, letter, true, out);
            }
        }
        SpPomset::Par(cs) => {
            if in_seq {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push('|');
                }
                render_pomset_into(c, letter, false, out);
            }
            if in_seq {
                out.push(')');
            }
        }
    }
}

/// Renders with a caller-supplied letter printer. The output reparses to the
/// same tree.
pub fn render_term_with(t: &Term, letter: &dyn Fn(Letter, &mut String)) -> String {
    let mut out = String::new();
    render(t, 0, letter, &mut out);
    out
}

fn render(t: &Term, prec: u8, letter: &dyn Fn(Letter, &mut String), out: &mut String) {
    let (level, wrap) = match t.node() {
        Node::Plus(..) => (0, prec > 0),
        Node::Par(..) => (1, prec > 1),
        Node::Dot(..) => (2, prec > 2),
        _ => (3, false),
    };
    if wrap {
        out.push('(');
    }
    match t.node() {
        Node::Zero => out.push('0'),
        Node::One => out.push('1'),
        Node::Letter(l) => letter(*l, out),
        Node::Plus(u, v) | Node::Par(u, v) | Node::Dot(u, v) => {
            render(u, level, letter, out);
            out.push(match t.node() {
                Node::Plus(..) => '+',
                Node::Par(..) => '|',
                _ => ';',
            });
            render(v, level + 1, letter, out);
        }
        Node::Star(u) => {
            render(u, 3, letter, out);
            out.push('*');
        }
        Node::ParStar(u) => {
            render(u, 3, letter, out);
            out.push('^');
        }
    }
    if wrap {
        out.push(')');
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Zero,
    One,
    Ident(String),
    Open,
    Close,
    Star,
    Hat,
    Semi,
    Bar,
    Plus,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Zero => "'0'".into(),
            Kind::One => "'1'".into(),
            Kind::Ident(s) => format!("identifier '{s}'"),
            Kind::Open => "'('".into(),
            Kind::Close => "')'".into(),
            Kind::Star => "'*'".into(),
            Kind::Hat => "'^'".into(),
            Kind::Semi => "';'".into(),
            Kind::Bar => "'|'".into(),
            Kind::Plus => "'+'".into(),
        }
    }
}

struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0' => Kind::Zero,
            b'1' => Kind::One,
            b'(' => Kind::Open,
            b')' => Kind::Close,
            b'*' => Kind::Star,
            b'^' => Kind::Hat,
            b';' => Kind::Semi,
            b'|' => Kind::Bar,
            b'+' => Kind::Plus,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: Kind::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character '{ch}'") });
            }
        };
        out.push(Token { kind, pos: i });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    alphabet: &'a mut Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn plus(&mut self) -> Result<Term> {
        let mut t = self.par()?;
        while self.peek() == Some(&Kind::Plus) {
            self.at += 1;
            let r = self.par()?;
            t = Term::raw(Node::Plus(t, r));
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term> {
        let mut t = self.dot()?;
        while self.peek() == Some(&Kind::Bar) {
            self.at += 1;
            let r = self.dot()?;
            t = Term::raw(Node::Par(t, r));
        }
        Ok(t)
    }

    fn dot(&mut self) -> Result<Term> {
        let mut t = self.postfix()?;
        while self.peek() == Some(&Kind::Semi) {
            self.at += 1;
            let r = self.postfix()?;
            t = Term::raw(Node::Dot(t, r));
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.primary()?;
        loop {
            match self.peek() {
                Some(Kind::Star) => t = Term::raw(Node::Star(t)),
                Some(Kind::Hat) => t = Term::raw(Node::ParStar(t)),
                _ => return Ok(t),
            }
            self.at += 1;
        }
    }

    fn primary(&mut self) -> Result<Term> {
        let pos = self.pos();
        let kind = match self.peek() {
            Some(k) => k.clone(),
            None => return Err(Error::Syntax { pos, msg: "unexpected end of input".to_string() }),
        };
        self.at += 1;
        match kind {
            Kind::Zero => Ok(Term::zero()),
            Kind::One => Ok(Term::one()),
            Kind::Ident(name) => Ok(Term::letter(self.alphabet.intern(&name))),
            Kind::Open => {
                let t = self.plus()?;
                if self.peek() != Some(&Kind::Close) {
                    return Err(Error::Syntax { pos: self.pos(), msg: "expected ')'".to_string() });
                }
                self.at += 1;
                Ok(t)
            }
            other => Err(Error::Syntax { pos, msg: format!("expected an operand, found {}", other.describe()) }),
        }
    }
}
