//! Line-oriented text form of a [`Presentation`].
//!
//! ```text
//! gens 3
//! pow 1 2 3
//! cyc 1 2 3 ^ 2
//! rel 1 2 3 ^ 2
//! ```
//!
//! Indices are 1-based and `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use super::{CycleRelator, ExtraRelator, PowerRelator, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn emit_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    writeln!(out, "gens {}", p.generators()).unwrap();
    for r in p.power_relators() {
        writeln!(out, "pow {} {} {}", r.i + 1, r.j + 1, r.m).unwrap();
    }
    for r in p.cycle_relators() {
        let cyc = Word::new(r.rotated_cycle());
        writeln!(out, "cyc {} ^ {}", cyc.to_indices(), r.exponent).unwrap();
    }
    for r in p.extra_relators() {
        writeln!(out, "rel {} ^ {}", r.word.to_indices(), r.exponent).unwrap();
    }
    out
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push(Token { column: content[..s].chars().count() + 1, text: &content[s..pos] });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct LineParser<'a> {
    line: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
    generators: Option<usize>,
}

impl<'a> LineParser<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn number(&self, tok: &Token) -> Result<u64, ParseError> {
        tok.text
            .parse()
            .map_err(|_| self.err(tok.column, format!("expected a non-negative integer, found {:?}", tok.text)))
    }

    fn index(&self, tok: &Token) -> Result<usize, ParseError> {
        let n = self.generators.expect("checked by caller");
        let v = self.number(tok)? as usize;
        if v == 0 || v > n {
            return Err(self.err(tok.column, format!("generator index {v} is not in 1..={n}")));
        }
        Ok(v - 1)
    }

    fn exponent(&self, tok: &Token) -> Result<u32, ParseError> {
        let v = self.number(tok)?;
        u32::try_from(v)
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| self.err(tok.column, format!("exponent {v} is out of range")))
    }

    /// Splits `<i1> ... <ik> ^ <m>` into indices and exponent.
    fn word_and_exponent(&self) -> Result<(Vec<usize>, u32), ParseError> {
        let body = &self.tokens[1..];
        let Some(caret) = body.iter().position(|t| t.text == "^") else {
            return Err(self.err(self.end_column, "expected '^ <exponent>'"));
        };
        let letters = body[..caret].iter().map(|t| self.index(t)).collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(self.err(body[caret].column, "empty word before '^'"));
        }
        match &body[caret + 1..] {
            [m] => Ok((letters, self.exponent(m)?)),
            [] => Err(self.err(self.end_column, "missing exponent after '^'")),
            [_, extra, ..] => Err(self.err(extra.column, "unexpected token after exponent")),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut generators: Option<usize> = None;
    let mut power = Vec::new();
    let mut cycles = Vec::new();
    let mut extra = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else { continue };
        let head_text = head.text;
        let head_column = head.column;
        let p = LineParser {
            line: idx + 1,
            end_column: raw.split('#').next().unwrap_or("").chars().count() + 1,
            tokens,
            generators,
        };
        if head_text != "gens" && generators.is_none() {
            return Err(p.err(head_column, "the first item must be 'gens <n>'"));
        }
        match head_text {
            "gens" => {
                if generators.is_some() {
                    return Err(p.err(head_column, "duplicate 'gens'"));
                }
                match &p.tokens[1..] {
                    [n] => generators = Some(p.number(n)? as usize),
                    _ => return Err(p.err(head_column, "expected 'gens <n>'")),
                }
            }
            "pow" => match &p.tokens[1..] {
                [a, b, m] => {
                    let (i, j) = (p.index(a)?, p.index(b)?);
                    if i == j {
                        return Err(p.err(b.column, "pow needs two distinct generators"));
                    }
                    let m = p.exponent(m)?;
                    power.push(PowerRelator { i: i.min(j), j: i.max(j), m });
                }
                _ => return Err(p.err(head_column, "expected 'pow <i> <j> <m>'")),
            },
            "cyc" => {
                let (verts, m) = p.word_and_exponent()?;
                let mut sorted = verts.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if verts.len() < 3 || sorted.len() != verts.len() {
                    return Err(p.err(head_column, "a cycle needs at least 3 distinct vertices"));
                }
                let d = verts.len();
                let least = (0..d).min_by_key(|&q| verts[q]).unwrap();
                let rotation = (d - least) % d;
                let relator = CycleRelator::from_parts(&verts, rotation, m).ok_or_else(|| {
                    let col = p.tokens.last().map_or(head_column, |t| t.column);
                    p.err(col, format!("cycle exponent {m} is not one of 2, 3, 4, 6"))
                })?;
                cycles.push(relator);
            }
            "rel" => {
                let (letters, m) = p.word_and_exponent()?;
                extra.push(ExtraRelator { word: Word::new(letters), exponent: m });
            }
            other => return Err(p.err(head_column, format!("unknown item {other:?}"))),
        }
    }
    let n = generators.ok_or(ParseError { line: 1, column: 1, message: "missing 'gens <n>'".into() })?;
    Ok(Presentation::new(n, power, cycles, extra))
}
