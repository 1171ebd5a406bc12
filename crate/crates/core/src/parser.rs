//! The `.alg` presentation format.
//!
//! One statement per line, `key: value`. `#` starts a comment.
//!
//! ```text
//! # quantum plane deformation
//! generators: x1, x2
//! relation: x1*x2 - 2*x2*x1 + 3*x1 + 5*x2 + 7
//! graded_nakayama: [2,0;0,1/2]
//! degree_bound: 6
//! ```
//!
//! `homogenizing: t` declares `t` as the central homogenizing generator; it
//! is the only way the reserved name `t` may appear in `generators`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::freealg::{is_identifier, AlgebraError, Alphabet, NCPoly, Scalar, Word};
use crate::linalg::Matrix;
use crate::presentation::Presentation;

/// Name reserved for the homogenizing element.
pub const RESERVED_T: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    ZeroDenominator,
    ReservedIdentifier(String),
    MissingGenerators,
    DuplicateKey(String),
    UnknownKey(String),
    Alphabet(AlgebraError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
            ParseErrorKind::ReservedIdentifier(id) => {
                write!(f, "`{id}` is reserved for the homogenizing element")
            }
            ParseErrorKind::MissingGenerators => write!(f, "missing `generators:` line"),
            ParseErrorKind::DuplicateKey(k) => write!(f, "duplicate key `{k}`"),
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown key `{k}`"),
            ParseErrorKind::Alphabet(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parsed contents of a `.alg` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationSource {
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub relations: Vec<NCPoly>,
    pub graded_nakayama: Option<Matrix>,
    pub homogenizing: Option<String>,
    pub options: BTreeMap<String, String>,
}

impl PresentationSource {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.generators.clone()).expect("validated while parsing")
    }

    pub fn presentation(&self) -> Presentation {
        let alphabet = self.alphabet();
        let central = self
            .homogenizing
            .as_deref()
            .and_then(|t| alphabet.index_of(t));
        Presentation {
            alphabet,
            relations: self.relations.clone(),
            central,
        }
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.options.get("degree_bound").and_then(|v| v.parse().ok())
    }
}

const KNOWN_OPTIONS: &[&str] = &["degree_bound"];

pub fn parse_presentation(text: &str) -> Result<PresentationSource, ParseError> {
    let mut generators: Option<(usize, usize, String)> = None;
    let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut nakayama: Option<(usize, usize, String)> = None;
    let mut homogenizing: Option<String> = None;
    let mut name = None;
    let mut options = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(colon) = raw.find(':') else {
            return Err(ParseError {
                line: line_no,
                column: raw.len() - trimmed.len() + 1,
                kind: ParseErrorKind::Syntax("expected `key: value`".into()),
            });
        };
        let key = raw[..colon].trim();
        let value = &raw[colon + 1..];
        let value_col = colon + 2;
        let dup = |k: &str| ParseError {
            line: line_no,
            column: 1,
            kind: ParseErrorKind::DuplicateKey(k.to_string()),
        };
        match key {
            "generators" => {
                if generators.is_some() {
                    return Err(dup(key));
                }
                generators = Some((line_no, value_col, value.to_string()));
            }
            "relation" => relation_lines.push((line_no, value_col, value.to_string())),
            "graded_nakayama" => {
                if nakayama.is_some() {
                    return Err(dup(key));
                }
                nakayama = Some((line_no, value_col, value.to_string()));
            }
            "homogenizing" => {
                if homogenizing.is_some() {
                    return Err(dup(key));
                }
                homogenizing = Some(value.trim().to_string());
            }
            "name" => name = Some(value.trim().to_string()),
            k if KNOWN_OPTIONS.contains(&k) => {
                if options.insert(k.to_string(), value.trim().to_string()).is_some() {
                    return Err(dup(k));
                }
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    column: 1,
                    kind: ParseErrorKind::UnknownKey(other.to_string()),
                })
            }
        }
    }

    let (gline, gcol, gtext) = generators.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingGenerators,
    })?;
    let mut names = Vec::new();
    let mut offset = 0;
    for part in gtext.split(',') {
        let id = part.trim();
        let col = gcol + offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        if !is_identifier(id) {
            return Err(ParseError {
                line: gline,
                column: col,
                kind: ParseErrorKind::Syntax(format!("invalid generator name `{id}`")),
            });
        }
        if id == RESERVED_T && homogenizing.as_deref() != Some(RESERVED_T) {
            return Err(ParseError {
                line: gline,
                column: col,
                kind: ParseErrorKind::ReservedIdentifier(id.to_string()),
            });
        }
        names.push(id.to_string());
    }
    let alphabet = Alphabet::new(names.clone()).map_err(|e| ParseError {
        line: gline,
        column: gcol,
        kind: ParseErrorKind::Alphabet(e),
    })?;
    if let Some(h) = &homogenizing {
        if !alphabet.contains(h) {
            return Err(ParseError {
                line: gline,
                column: gcol,
                kind: ParseErrorKind::UnknownIdentifier(h.clone()),
            });
        }
    }

    let mut relations = Vec::new();
    for (line, col, text) in relation_lines {
        relations.push(parse_poly_at(&text, &alphabet, line, col)?);
    }

    let graded_nakayama = match nakayama {
        Some((line, col, text)) => Some(parse_matrix_at(&text, line, col)?),
        None => None,
    };

    Ok(PresentationSource {
        name,
        generators: names,
        relations,
        graded_nakayama,
        homogenizing,
        options,
    })
}

/// Parses a single polynomial expression over `alphabet`.
pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<NCPoly, ParseError> {
    parse_poly_at(text, alphabet, 1, 1)
}

/// Parses a matrix literal such as `[2,0;0,1/2]`.
pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    parse_matrix_at(text, 1, 1)
}

fn parse_poly_at(text: &str, alphabet: &Alphabet, line: usize, col: usize) -> Result<NCPoly, ParseError> {
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
        line,
        col,
        alphabet,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax(format!(
            "unexpected `{}`",
            p.src[p.pos] as char
        ))));
    }
    Ok(f)
}

fn parse_matrix_at(text: &str, line: usize, col: usize) -> Result<Matrix, ParseError> {
    let empty = Alphabet::standard(1);
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
        line,
        col,
        alphabet: &empty,
    };
    p.skip_ws();
    p.expect(b'[')?;
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::new()];
    loop {
        p.skip_ws();
        let neg = p.eat(b'-');
        if !neg {
            p.eat(b'+');
        }
        p.skip_ws();
        let v = p.rational()?;
        rows.last_mut().unwrap().push(if neg { -v } else { v });
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b';') => {
                p.pos += 1;
                rows.push(Vec::new());
            }
            Some(b']') => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.error(ParseErrorKind::Syntax("expected `,`, `;` or `]`".into()))),
        }
    }
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax("trailing input after matrix".into())));
    }
    let start = p.col;
    Matrix::from_rows(rows).map_err(|e| ParseError {
        line,
        column: start,
        kind: ParseErrorKind::Syntax(e.to_string()),
    })
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    alphabet: &'a Alphabet,
}

impl ExprParser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col + self.pos,
            kind,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax(format!("expected `{}`", c as char))))
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        self.skip_ws();
        if self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'(') {
            return Err(self.error(ParseErrorKind::Syntax(
                "juxtaposition is not multiplication; use `*`".into(),
            )));
        }
        Ok(acc)
    }

    // factor := ident ('^' posint)? | '(' expr ')' ('^' posint)? | rational
    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        self.skip_ws();
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                e
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let id = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.alphabet.index_of(id) {
                    Some(i) => NCPoly::var(i),
                    None => {
                        self.pos = start;
                        return Err(self.error(ParseErrorKind::UnknownIdentifier(id.to_string())));
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => NCPoly::constant(self.rational()?),
            Some(c) => {
                return Err(self.error(ParseErrorKind::Syntax(format!("unexpected `{}`", c as char))))
            }
            None => return Err(self.error(ParseErrorKind::Syntax("unexpected end of input".into()))),
        };
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            if e.is_zero() {
                return Err(self.error(ParseErrorKind::Syntax("exponent must be positive".into())));
            }
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error(ParseErrorKind::Syntax("exponent too large".into())))?;
            if e > 64 {
                return Err(self.error(ParseErrorKind::Syntax("exponent too large".into())));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(ParseErrorKind::Syntax("expected integer".into())));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    // rational := int ('/' posint)?
    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let num = self.uint()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                self.pos = den_pos;
                return Err(self.error(ParseErrorKind::ZeroDenominator));
            }
            return Ok(Scalar::new(num, den));
        }
        self.pos = save;
        Ok(Scalar::from_integer(num))
    }
}

fn render_coeff(c: &Scalar) -> String {
    c.to_string()
}

/// Deterministic rendering, highest deg-lex term first.
pub fn render_poly(f: &NCPoly, alphabet: &Alphabet) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in f.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            out.push_str(&render_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&alphabet.render_word(w));
        } else {
            out.push_str(&render_coeff(&abs));
            out.push('*');
            out.push_str(&alphabet.render_word(w));
        }
    }
    out
}

pub fn render_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", rows.join(";"))
}

/// Renders a presentation in the `.alg` format.
pub fn render_presentation(p: &Presentation, graded_nakayama: Option<&Matrix>, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("name: {n}\n"));
    }
    out.push_str(&format!("generators: {}\n", p.alphabet.names().join(", ")));
    if let Some(c) = p.central {
        out.push_str(&format!("homogenizing: {}\n", p.alphabet.name(c)));
    }
    for r in &p.relations {
        out.push_str(&format!("relation: {}\n", render_poly(r, &p.alphabet)));
    }
    if let Some(m) = graded_nakayama {
        out.push_str(&format!("graded_nakayama: {}\n", render_matrix(m)));
    }
    out
}

/// Renders a word using the alphabet, `1` for the empty word.
pub fn render_word(w: &Word, alphabet: &Alphabet) -> String {
    alphabet.render_word(w)
}
