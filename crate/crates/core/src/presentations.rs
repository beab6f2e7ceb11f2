//! Group presentations: a text grammar, the named families used throughout
//! the crate, and the reversible-relations test.
//!
//! Grammar:
//!
//! ```text
//! presentation := "<" names "|" relations ">"
//! names        := name ("," name)*
//! relations    := chain ("," chain)*
//! chain        := term ("=" term)+ | term
//! term         := "1" | factor+
//! factor       := name ("^" integer)?
//! name         := letter (letter | digit | "_")*
//! ```
//!
//! A chain `u1 = u2 = ... = uk` contributes the relators `u_i u_{i+1}^-1` for
//! each adjacent pair; a bare term `u` contributes `u`. Trivial relators are
//! dropped, so `<a | 1 = 1>` is the free group of rank one.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::toddcoxeter::{CayleyRealization, ElementId, EnumerationError};
use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("expected {expected}, found {found:?}")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} declared twice")]
    DuplicateGenerator(String),
    #[error("exponent {0} is out of range")]
    ExponentOutOfRange(String),
}

/// A syntax error together with the byte offset where it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown builtin presentation {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Generators and relators of a finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Arc<Alphabet>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for r in &relators {
            if !Arc::ptr_eq(r.alphabet(), &alphabet) && **r.alphabet() != *alphabet {
                return Err(WordError::AlphabetMismatch {
                    left: alphabet.names().join(","),
                    right: r.alphabet().names().join(","),
                }
                .into());
            }
        }
        Ok(Self { alphabet, relators })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text)?.presentation()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generators(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parses a single word (the `term` production) over this alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        parse_word(&self.alphabet, text)
    }

    /// Parses a tuple of words.
    ///
    /// With commas, each comma-separated term is one entry. Without commas,
    /// every factor (`name` or `name^k`) is its own entry, so `"a a b b"`
    /// is the four-tuple `(a, a, b, b)`.
    pub fn parse_word_tuple(&self, text: &str) -> Result<Vec<Word>, ParseError> {
        parse_word_tuple(&self.alphabet, text)
    }
}

/// Renders in the input grammar; runs of one letter are written as powers.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.alphabet.names().join(", "))?;
        if self.relators.is_empty() {
            f.write_str("1")?;
        }
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_compressed(f, &self.alphabet, r)?;
        }
        f.write_str(">")
    }
}

fn write_compressed(f: &mut fmt::Formatter<'_>, alphabet: &Alphabet, w: &Word) -> fmt::Result {
    if w.is_empty() {
        return f.write_str("1");
    }
    let mut first = true;
    for run in w.letters().chunk_by(|a, b| a == b) {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        let name = alphabet.name(run[0].generator);
        let exp = run.len() as i64 * i64::from(run[0].sign());
        if exp == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{exp}")?;
        }
    }
    Ok(())
}

impl FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

pub fn parse_word(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(text)?;
    let w = p.term(alphabet)?;
    p.expect_end()?;
    Ok(w)
}

pub fn parse_word_tuple(alphabet: &Arc<Alphabet>, text: &str) -> Result<Vec<Word>, ParseError> {
    let mut p = Parser::new(text)?;
    let has_commas = p.tokens.iter().any(|t| t.tok == Tok::Comma);
    let mut out = Vec::new();
    if has_commas {
        out.push(p.term(alphabet)?);
        while p.eat(&Tok::Comma) {
            out.push(p.term(alphabet)?);
        }
    } else {
        while !p.at_end() {
            if p.eat(&Tok::Int(1)) {
                out.push(Word::identity(alphabet));
            } else {
                out.push(p.factor(alphabet)?);
            }
        }
    }
    p.expect_end()?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lt,
    Gt,
    Bar,
    Comma,
    Eq,
    Caret,
    Minus,
    Int(u64),
    Name(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lt => f.write_str("<"),
            Tok::Gt => f.write_str(">"),
            Tok::Bar => f.write_str("|"),
            Tok::Comma => f.write_str(","),
            Tok::Eq => f.write_str("="),
            Tok::Caret => f.write_str("^"),
            Tok::Minus => f.write_str("-"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Debug)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

struct Parser {
    tokens: Vec<Spanned>,
    next: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut tokens = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            let simple = match c {
                '<' => Some(Tok::Lt),
                '>' => Some(Tok::Gt),
                '|' => Some(Tok::Bar),
                ',' => Some(Tok::Comma),
                '=' => Some(Tok::Eq),
                '^' => Some(Tok::Caret),
                '-' => Some(Tok::Minus),
                _ => None,
            };
            if let Some(tok) = simple {
                chars.next();
                tokens.push(Spanned { tok, pos });
            } else if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                let digits = &text[pos..end];
                let n = digits.parse::<u64>().map_err(|_| ParseError {
                    position: pos,
                    kind: ParseErrorKind::ExponentOutOfRange(digits.to_string()),
                })?;
                tokens.push(Spanned {
                    tok: Tok::Int(n),
                    pos,
                });
            } else if c.is_alphabetic() {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                tokens.push(Spanned {
                    tok: Tok::Name(text[pos..end].to_string()),
                    pos,
                });
            } else {
                return Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::UnexpectedChar(c),
                });
            }
        }
        Ok(Self {
            tokens,
            next: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.next).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |t| t.pos)
    }

    fn at_end(&self) -> bool {
        self.next >= self.tokens.len()
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let kind = match self.peek() {
            Some(t) => ParseErrorKind::Expected {
                expected,
                found: t.to_string(),
            },
            None => ParseErrorKind::UnexpectedEnd(expected),
        };
        ParseError {
            position: self.pos(),
            kind,
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn name(&mut self) -> Result<(String, usize), ParseError> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let out = (n.clone(), self.pos());
                self.next += 1;
                Ok(out)
            }
            _ => Err(self.error("generator name")),
        }
    }

    fn presentation(mut self) -> Result<Presentation, ParseError> {
        self.expect(Tok::Lt, "'<'")?;
        let mut names: Vec<String> = Vec::new();
        loop {
            let (n, pos) = self.name()?;
            if names.contains(&n) {
                return Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::DuplicateGenerator(n),
                });
            }
            names.push(n);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Bar, "'|' or ','")?;
        let alphabet = Alphabet::new(names);
        let mut relators = Vec::new();
        if self.peek() != Some(&Tok::Gt) {
            loop {
                self.chain(&alphabet, &mut relators)?;
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Gt, "'>' or ','")?;
        self.expect_end()?;
        Ok(Presentation { alphabet, relators })
    }

    fn chain(&mut self, alphabet: &Arc<Alphabet>, out: &mut Vec<Word>) -> Result<(), ParseError> {
        let mut prev = self.term(alphabet)?;
        if !self.eat(&Tok::Eq) {
            if !prev.is_empty() {
                out.push(prev);
            }
            return Ok(());
        }
        loop {
            let next = self.term(alphabet)?;
            let rel = prev
                .concat(&next.inverse())
                .expect("terms share the presentation alphabet");
            if !rel.is_empty() {
                out.push(rel);
            }
            prev = next;
            if !self.eat(&Tok::Eq) {
                return Ok(());
            }
        }
    }

    fn term(&mut self, alphabet: &Arc<Alphabet>) -> Result<Word, ParseError> {
        if self.eat(&Tok::Int(1)) {
            return Ok(Word::identity(alphabet));
        }
        let mut w = self.factor(alphabet)?;
        while let Some(Tok::Name(_)) = self.peek() {
            let f = self.factor(alphabet)?;
            w = w.concat(&f).expect("same alphabet");
        }
        Ok(w)
    }

    fn factor(&mut self, alphabet: &Arc<Alphabet>) -> Result<Word, ParseError> {
        let (n, pos) = self.name()?;
        let index = alphabet.index_of(&n).ok_or(ParseError {
            position: pos,
            kind: ParseErrorKind::UnknownGenerator(n),
        })?;
        let g = Word::reduce(alphabet, [Letter::new(index)]).expect("index is in range");
        if !self.eat(&Tok::Caret) {
            return Ok(g);
        }
        let negative = self.eat(&Tok::Minus);
        let exp_pos = self.pos();
        let magnitude = match self.peek() {
            Some(&Tok::Int(k)) => {
                self.next += 1;
                k
            }
            _ => return Err(self.error("integer exponent")),
        };
        let exp = i64::try_from(magnitude)
            .ok()
            .filter(|&k| k <= 1 << 20)
            .ok_or(ParseError {
                position: exp_pos,
                kind: ParseErrorKind::ExponentOutOfRange(magnitude.to_string()),
            })?;
        Ok(g.pow(if negative { -exp } else { exp }))
    }
}

/// A symmetric Coxeter matrix; `0` off the diagonal means no relation (∞).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix(pub Vec<Vec<u32>>);

impl CoxeterMatrix {
    /// Linear diagram: `m[i][i+1] = labels[i]`, all other pairs commute.
    pub fn linear(labels: &[u32]) -> Self {
        let n = labels.len() + 1;
        let mut m = vec![vec![2; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, &l) in labels.iter().enumerate() {
            m[i][i + 1] = l;
            m[i + 1][i] = l;
        }
        Self(m)
    }
}

/// Named presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// `<r, s | r^n, s^2, r s r s^-1>`
    DihedralRs(u32),
    /// `<a, b | a^2, b^2, (a b)^n>`
    DihedralInv(u32),
    /// `<a, b | a^4, a^2 b^-2, b a b^-1 a>`
    Q8Ab,
    /// `<m, i, j, k | m^2, i^2 m, j^2 m, k^2 m, i j k m>`, `m` playing `-1`.
    Q8Ijk,
    /// `<a, b | a^3, b^3, a b a (b a b)^-1>`
    G4,
    /// `<a, b | a^3, b^2, (a b)^3 (b a)^-3>`
    G6,
    Shephard {
        p: Vec<u32>,
        q: Vec<u32>,
    },
    Coxeter(CoxeterMatrix),
}

/// `a b a b ...` with `len` letters.
fn alternating(alphabet: &Arc<Alphabet>, first: usize, second: usize, len: u32) -> Word {
    let letters = (0..len).map(|k| Letter::new(if k % 2 == 0 { first } else { second }));
    Word::reduce(alphabet, letters).expect("indices are in range")
}

fn braid_relator(alphabet: &Arc<Alphabet>, i: usize, j: usize, len: u32) -> Word {
    alternating(alphabet, i, j, len)
        .concat(&alternating(alphabet, j, i, len).inverse())
        .expect("same alphabet")
}

fn power(alphabet: &Arc<Alphabet>, g: usize, k: i64) -> Word {
    Word::generator(alphabet, g)
        .expect("index is in range")
        .pow(k)
}

fn letters(alphabet: &Arc<Alphabet>, spec: &[(usize, bool)]) -> Word {
    Word::reduce(
        alphabet,
        spec.iter()
            .map(|&(generator, inverse)| Letter { generator, inverse }),
    )
    .expect("indices are in range")
}

impl Builtin {
    pub fn presentation(&self) -> Result<Presentation, PresentationError> {
        let invalid = |msg: String| Err(PresentationError::InvalidParameters(msg));
        let p = match self {
            Builtin::DihedralRs(n) => {
                if *n < 1 {
                    return invalid("dihedral-rs needs n >= 1".into());
                }
                let al = Alphabet::new(["r", "s"]);
                let rels = vec![
                    power(&al, 0, i64::from(*n)),
                    power(&al, 1, 2),
                    letters(&al, &[(0, false), (1, false), (0, false), (1, true)]),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::DihedralInv(n) => {
                if *n < 1 {
                    return invalid("dihedral-inv needs n >= 1".into());
                }
                let al = Alphabet::new(["a", "b"]);
                let rels = vec![
                    power(&al, 0, 2),
                    power(&al, 1, 2),
                    alternating(&al, 0, 1, 2 * n),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::Q8Ab => {
                let al = Alphabet::new(["a", "b"]);
                let rels = vec![
                    power(&al, 0, 4),
                    letters(&al, &[(0, false), (0, false), (1, true), (1, true)]),
                    letters(&al, &[(1, false), (0, false), (1, true), (0, false)]),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::Q8Ijk => {
                let al = Alphabet::new(["m", "i", "j", "k"]);
                let (m, i, j, k) = ((0, false), (1, false), (2, false), (3, false));
                let rels = vec![
                    letters(&al, &[m, m]),
                    letters(&al, &[i, i, m]),
                    letters(&al, &[j, j, m]),
                    letters(&al, &[k, k, m]),
                    letters(&al, &[i, j, k, m]),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::G4 => {
                let al = Alphabet::new(["a", "b"]);
                let rels = vec![
                    power(&al, 0, 3),
                    power(&al, 1, 3),
                    braid_relator(&al, 0, 1, 3),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::G6 => {
                let al = Alphabet::new(["a", "b"]);
                let rels = vec![
                    power(&al, 0, 3),
                    power(&al, 1, 2),
                    braid_relator(&al, 0, 1, 6),
                ];
                Presentation::new(al, rels)?
            }
            Builtin::Shephard { p, q } => {
                if p.is_empty() || q.len() + 1 != p.len() {
                    return invalid(format!(
                        "shephard needs n orders and n-1 braid lengths, got {} and {}",
                        p.len(),
                        q.len()
                    ));
                }
                if p.iter().any(|&x| x < 1) || q.iter().any(|&x| x < 2) {
                    return invalid("shephard needs every p_i >= 1 and q_i >= 2".into());
                }
                let n = p.len();
                let al = Alphabet::new((1..=n).map(|i| format!("s{i}")));
                let mut rels: Vec<Word> = p
                    .iter()
                    .enumerate()
                    .map(|(i, &pi)| power(&al, i, i64::from(pi)))
                    .collect();
                for i in 0..n {
                    for j in i + 2..n {
                        rels.push(braid_relator(&al, i, j, 2));
                    }
                }
                for (i, &qi) in q.iter().enumerate() {
                    rels.push(braid_relator(&al, i, i + 1, qi));
                }
                rels.retain(|r| !r.is_empty());
                Presentation::new(al, rels)?
            }
            Builtin::Coxeter(CoxeterMatrix(m)) => {
                let n = m.len();
                if n == 0 || m.iter().any(|row| row.len() != n) {
                    return invalid("coxeter matrix must be square and non-empty".into());
                }
                for (i, row) in m.iter().enumerate() {
                    if row[i] != 1 {
                        return invalid("coxeter matrix needs 1 on the diagonal".into());
                    }
                    for (j, &mij) in row.iter().enumerate() {
                        if mij != m[j][i] || (i != j && mij == 1) {
                            return invalid(
                                "coxeter matrix must be symmetric with entries >= 2 or 0".into(),
                            );
                        }
                    }
                }
                let al = Alphabet::new((1..=n).map(|i| format!("s{i}")));
                let mut rels: Vec<Word> = (0..n).map(|i| power(&al, i, 2)).collect();
                for (i, row) in m.iter().enumerate() {
                    for (j, &mij) in row.iter().enumerate().skip(i + 1) {
                        if mij != 0 {
                            rels.push(braid_relator(&al, i, j, mij));
                        }
                    }
                }
                Presentation::new(al, rels)?
            }
        };
        Ok(p)
    }
}

/// Accepts `g4`, `g6`, `q8-ab`, `q8-ijk`, `dihedral-rs:N`, `dihedral-inv:N`,
/// `shephard:P1,P2,...:Q1,...` and `coxeter:M1,M2,...` (a linear diagram).
impl FromStr for Builtin {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let mut parts = lower.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let unknown = || PresentationError::UnknownBuiltin(s.to_string());
        let list = |text: &str| -> Result<Vec<u32>, PresentationError> {
            text.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim().parse::<u32>().map_err(|_| {
                        PresentationError::InvalidParameters(format!("bad number {t:?}"))
                    })
                })
                .collect()
        };
        let single = |rest: &[&str]| -> Result<u32, PresentationError> {
            match rest {
                [n] => n
                    .trim()
                    .parse()
                    .map_err(|_| PresentationError::InvalidParameters(format!("bad number {n:?}"))),
                _ => Err(PresentationError::InvalidParameters(format!(
                    "{head} expects exactly one parameter, e.g. {head}:4"
                ))),
            }
        };
        match (head, rest.as_slice()) {
            ("g4", []) => Ok(Builtin::G4),
            ("g6", []) => Ok(Builtin::G6),
            ("q8-ab", []) => Ok(Builtin::Q8Ab),
            ("q8-ijk", []) => Ok(Builtin::Q8Ijk),
            ("dihedral-rs", r) => Ok(Builtin::DihedralRs(single(r)?)),
            ("dihedral-inv", r) => Ok(Builtin::DihedralInv(single(r)?)),
            ("shephard", [p, q]) => Ok(Builtin::Shephard {
                p: list(p)?,
                q: list(q)?,
            }),
            ("shephard", [p]) => Ok(Builtin::Shephard {
                p: list(p)?,
                q: Vec::new(),
            }),
            ("coxeter", [labels]) => Ok(Builtin::Coxeter(CoxeterMatrix::linear(&list(labels)?))),
            _ => Err(unknown()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversibilityStatus {
    Reversible,
    NotReversible,
    Unknown,
}

/// Which of the quick sufficient conditions for reversibility a relator
/// meets, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    /// `g^k`: the relator is its own reverse.
    GeneratorOrder,
    /// Encodes `u = u*`, i.e. the relator is `u (u*)^-1`.
    SelfReverseEquation,
    /// Encodes `u = v` with both sides palindromes.
    PalindromeEquation,
}

impl Shortcut {
    /// Looks for the shortcut forms over every split point of `relator`.
    pub fn detect(relator: &Word) -> Option<Shortcut> {
        if relator.single_generator().is_some() {
            return Some(Shortcut::GeneratorOrder);
        }
        let mut palindromes = false;
        for at in 0..=relator.len() {
            let (left, right) = relator.split_at(at);
            let rhs = right.inverse();
            if left == rhs.reverse() {
                return Some(Shortcut::SelfReverseEquation);
            }
            palindromes |= left.is_palindrome() && rhs.is_palindrome();
        }
        palindromes.then_some(Shortcut::PalindromeEquation)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelatorCheck {
    #[serde(serialize_with = "crate::serialize_display")]
    pub relator: Word,
    #[serde(serialize_with = "crate::serialize_display")]
    pub reverse: Word,
    pub reverse_is_identity: bool,
    pub shortcut: Option<Shortcut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::serialize_display")]
    pub relator: Word,
    #[serde(serialize_with = "crate::serialize_display")]
    pub reverse: Word,
    /// The element the reversed relator evaluates to (never the identity).
    pub value: ElementId,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReversibilityReport {
    pub status: ReversibilityStatus,
    pub witness: Option<Witness>,
    pub cap_hit: bool,
    /// Per-relator verdicts, filled only when an explanation is requested.
    pub details: Vec<RelatorCheck>,
}

/// Decides whether every relator's reverse lies in the normal closure of the
/// relators, by evaluating each reverse in a finite realization of the group
/// (membership in the normal closure is triviality in the quotient).
///
/// `None` for the realization means enumeration did not finish; the status
/// is then `Unknown`.
pub fn check_reversible(
    presentation: &Presentation,
    realization: Option<&CayleyRealization>,
    explain: bool,
) -> Result<ReversibilityReport, PresentationError> {
    let Some(realization) = realization else {
        return Ok(ReversibilityReport {
            status: ReversibilityStatus::Unknown,
            witness: None,
            cap_hit: true,
            details: Vec::new(),
        });
    };
    let mut witness = None;
    let mut details = Vec::new();
    for relator in presentation.relators() {
        let reverse = relator.reverse();
        let value = realization.evaluate_word(&reverse)?;
        let trivial = value == ElementId::IDENTITY;
        if explain {
            details.push(RelatorCheck {
                relator: relator.clone(),
                reverse: reverse.clone(),
                reverse_is_identity: trivial,
                shortcut: Shortcut::detect(relator),
            });
        }
        if !trivial && witness.is_none() {
            witness = Some(Witness {
                relator: relator.clone(),
                reverse,
                value,
            });
            if !explain {
                break;
            }
        }
    }
    Ok(ReversibilityReport {
        status: if witness.is_some() {
            ReversibilityStatus::NotReversible
        } else {
            ReversibilityStatus::Reversible
        },
        witness,
        cap_hit: false,
        details,
    })
}
