use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::network::{Element, Mode, NetworkSpec};

/// A 1-based line and an inclusive, 1-based character column range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    /// Whether the span lies inside `text`. Empty input and empty lines only
    /// admit the single position `1..=1`.
    pub fn is_within(&self, text: &str) -> bool {
        let lines: Vec<&str> = text.split('\n').collect();
        let Some(line) = self.line.checked_sub(1).and_then(|l| lines.get(l)) else {
            return false;
        };
        let width = line.trim_end_matches('\r').chars().count().max(1);
        1 <= self.start && self.start <= self.end && self.end <= width
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.line, self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnknownDirective,
    UnknownMode,
    MalformedNumber,
    DuplicateModesDecl,
    ArityMismatch,
    /// No `modes` line, or an element before it.
    MissingModesDecl,
    /// An element names the same mode twice.
    RepeatedMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}: {}", self.span, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed network together with where each part came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedCircuit {
    pub spec: NetworkSpec,
    pub modes_span: SourceSpan,
    /// One span per element, covering the whole element line.
    pub element_spans: Vec<SourceSpan>,
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    span: SourceSpan,
}

/// Splits a comment-stripped line on whitespace, recording char columns, and
/// glues a token ending in `:` or `=` to the one after it (`eta= 0.4`).
fn tokenize(line: &str, line_no: usize) -> Vec<Token> {
    let mut words: Vec<Token> = Vec::new();
    let mut current: Option<Token> = None;
    for (col, ch) in line.chars().enumerate().map(|(i, c)| (i + 1, c)) {
        if ch.is_whitespace() {
            words.extend(current.take());
        } else if let Some(tok) = current.as_mut() {
            tok.text.push(ch);
            tok.span.end = col;
        } else {
            current = Some(Token { text: ch.to_string(), span: SourceSpan { line: line_no, start: col, end: col } });
        }
    }
    words.extend(current);
    let mut tokens: Vec<Token> = Vec::with_capacity(words.len());
    let mut iter = words.into_iter();
    while let Some(mut tok) = iter.next() {
        if tok.text.ends_with(':') || tok.text.ends_with('=') {
            if let Some(next) = iter.next() {
                tok.text.push_str(&next.text);
                tok.span.end = next.span.end;
            }
        }
        tokens.push(tok);
    }
    tokens
}

pub(crate) fn parse_float(s: &str) -> Option<f64> {
    // f64::from_str also takes "inf" and "nan"; those are rejected by the
    // finiteness check, and the leading-character check rules out words
    let first = s.chars().next()?;
    if !(first.is_ascii_digit() || matches!(first, '+' | '-' | '.')) {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

pub(crate) fn parse_complex(s: &str) -> Option<Complex64> {
    let Some(body) = s.strip_suffix('i') else {
        return parse_float(s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'))?;
    let re = parse_float(&body[..split])?;
    let im = parse_float(&body[split..])?;
    Some(Complex64::new(re, im))
}

pub(crate) fn parse_angle(s: &str) -> Option<f64> {
    if s == "pi" {
        return Some(PI);
    }
    if let Some(den) = s.strip_prefix("pi/") {
        let n: u64 = den.parse().ok().filter(|&n| n > 0)?;
        if !den.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        return Some(PI / n as f64);
    }
    if let Some(factor) = s.strip_suffix("*pi") {
        return parse_float(factor).map(|f| f * PI).filter(|x| x.is_finite());
    }
    parse_float(s)
}

struct Parser {
    errors: Vec<ParseError>,
    modes: Option<(usize, usize, SourceSpan)>,
    elements: Vec<(Element, SourceSpan)>,
}

impl Parser {
    fn error(&mut self, span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) {
        self.errors.push(ParseError { span, kind, message: message.into() });
    }

    fn count(&mut self, tok: &Token, key: &str) -> Option<usize> {
        let Some(value) = tok.text.strip_prefix(key) else {
            self.error(tok.span, ParseErrorKind::ArityMismatch, format!("expected `{key}N`, found `{}`", tok.text));
            return None;
        };
        match value.parse::<usize>() {
            Ok(n) if n >= 1 && value.bytes().all(|b| b.is_ascii_digit()) => Some(n),
            Ok(_) => {
                self.error(
                    tok.span,
                    ParseErrorKind::MalformedNumber,
                    format!("mode count in `{}` must be at least 1", tok.text),
                );
                None
            }
            Err(_) => {
                self.error(tok.span, ParseErrorKind::MalformedNumber, format!("`{value}` is not a mode count"));
                None
            }
        }
    }

    fn modes_decl(&mut self, tokens: &[Token], line_span: SourceSpan) {
        if let Some((_, _, first)) = self.modes {
            self.error(
                tokens[0].span,
                ParseErrorKind::DuplicateModesDecl,
                format!("modes already declared on line {}", first.line),
            );
            return;
        }
        if tokens.len() != 3 {
            self.error(
                line_span,
                ParseErrorKind::ArityMismatch,
                format!("`modes` takes `a:N b:N`, found {} arguments", tokens.len() - 1),
            );
            return;
        }
        let r = self.count(&tokens[1], "a:");
        let s = self.count(&tokens[2], "b:");
        if let (Some(r), Some(s)) = (r, s) {
            self.modes = Some((r, s, line_span));
        }
    }

    fn mode(&mut self, tok: &Token) -> Option<Mode> {
        let mut chars = tok.text.chars();
        let side = chars.next();
        let digits = chars.as_str();
        let index = if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            digits.parse::<usize>().ok().filter(|&n| n >= 1)
        } else {
            None
        };
        let (mode, limit) = match (side, index, self.modes) {
            (Some('a'), Some(n), m) => (Mode::A(n - 1), m.map(|(r, _, _)| r)),
            (Some('b'), Some(n), m) => (Mode::B(n - 1), m.map(|(_, s, _)| s)),
            _ => {
                self.error(
                    tok.span,
                    ParseErrorKind::UnknownMode,
                    format!("`{}` is not a mode (expected a1, a2, …, b1, …)", tok.text),
                );
                return None;
            }
        };
        if let Some(limit) = limit {
            if mode.index() >= limit {
                self.error(
                    tok.span,
                    ParseErrorKind::UnknownMode,
                    format!("mode `{}` out of range: only {limit} declared", tok.text),
                );
                return None;
            }
        }
        Some(mode)
    }

    fn keyed<'a>(&mut self, tok: &'a Token, key: &str) -> Option<&'a str> {
        let value = tok.text.strip_prefix(key);
        if value.is_none() {
            self.error(tok.span, ParseErrorKind::ArityMismatch, format!("expected `{key}…`, found `{}`", tok.text));
        }
        value
    }

    fn element(&mut self, tokens: &[Token], line_span: SourceSpan) {
        let directive = tokens[0].text.as_str();
        let arity = if directive == "sq" { 4 } else { 5 };
        if self.modes.is_none() {
            self.error(tokens[0].span, ParseErrorKind::MissingModesDecl, "elements must follow a `modes a:N b:N` line");
        }
        if tokens.len() != arity {
            let usage =
                if directive == "sq" { "sq MODE MODE eta=COMPLEX" } else { "bs MODE MODE theta=ANGLE phi=ANGLE" };
            self.error(
                line_span,
                ParseErrorKind::ArityMismatch,
                format!("expected `{usage}`, found {} tokens", tokens.len()),
            );
            return;
        }
        let before = self.errors.len();
        let p = self.mode(&tokens[1]);
        let q = self.mode(&tokens[2]);
        if let (Some(p), Some(q)) = (p, q) {
            if p == q {
                self.error(
                    tokens[2].span,
                    ParseErrorKind::RepeatedMode,
                    format!("element uses mode `{}` twice", tokens[2].text),
                );
            }
        }
        let element = if directive == "sq" {
            let eta = self.keyed(&tokens[3], "eta=").and_then(|v| {
                let parsed = parse_complex(v);
                if parsed.is_none() {
                    self.error(
                        tokens[3].span,
                        ParseErrorKind::MalformedNumber,
                        format!("`{v}` is not a finite complex number"),
                    );
                }
                parsed
            });
            eta.zip(p.zip(q)).map(|(eta, (p, q))| Element::squeezer(p, q, eta))
        } else {
            let mut angle = |tok: &Token, key: &str| {
                self.keyed(tok, key).and_then(|v| {
                    let parsed = parse_angle(v);
                    if parsed.is_none() {
                        self.error(tok.span, ParseErrorKind::MalformedNumber, format!("`{v}` is not a finite angle"));
                    }
                    parsed
                })
            };
            let theta = angle(&tokens[3], "theta=");
            let phi = angle(&tokens[4], "phi=");
            theta.zip(phi).zip(p.zip(q)).map(|((t, f), (p, q))| Element::beamsplitter(p, q, t, f))
        };
        if self.errors.len() == before {
            if let Some(e) = element {
                self.elements.push((e, line_span));
            }
        }
    }
}

/// Parses circuit text, collecting every error rather than stopping at the first.
pub fn parse(text: &str) -> Result<ParsedCircuit, Vec<ParseError>> {
    let mut parser = Parser { errors: Vec::new(), modes: None, elements: Vec::new() };
    for (idx, raw_line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        let code = line.split('#').next().unwrap_or("");
        let tokens = tokenize(code, line_no);
        let Some(first) = tokens.first() else { continue };
        let line_span = SourceSpan { line: line_no, start: first.span.start, end: tokens[tokens.len() - 1].span.end };
        match first.text.as_str() {
            "modes" => parser.modes_decl(&tokens, line_span),
            "sq" | "bs" => parser.element(&tokens, line_span),
            other => parser.error(first.span, ParseErrorKind::UnknownDirective, format!("unknown directive `{other}`")),
        }
    }
    if parser.modes.is_none() && !parser.errors.iter().any(|e| e.kind == ParseErrorKind::MissingModesDecl) {
        let width = text.split('\n').next().map_or(0, |l| l.trim_end_matches('\r').chars().count()).max(1);
        let span = SourceSpan { line: 1, start: 1, end: width };
        parser.error(span, ParseErrorKind::MissingModesDecl, "missing `modes a:N b:N` declaration");
    }
    if !parser.errors.is_empty() {
        return Err(parser.errors);
    }
    let (r, s, modes_span) = parser.modes.expect("checked above");
    let (elements, element_spans): (Vec<_>, Vec<_>) = parser.elements.into_iter().unzip();
    let spec = NetworkSpec::new(r, s, elements).expect("elements validated while parsing");
    Ok(ParsedCircuit { spec, modes_span, element_spans })
}

/// [`parse`] for arbitrary bytes; invalid UTF-8 is replaced before parsing,
/// and spans refer to the replaced text.
pub fn parse_bytes(bytes: &[u8]) -> Result<ParsedCircuit, Vec<ParseError>> {
    parse(&String::from_utf8_lossy(bytes))
}
