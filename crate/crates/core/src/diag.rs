//! Parse diagnostics shared by the netlist, formula and graph readers.

use std::fmt;

/// Stable diagnostic codes. The numeric part never changes once assigned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Code {
    Syntax,
    DuplicateDriver,
    UndeclaredNode,
    CombinationalCycle,
    UnknownConstant,
    NextInGtel,
    UnknownVertex,
    Unreachable,
    MissingInit,
    DuplicateName,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "E001",
            Code::DuplicateDriver => "E002",
            Code::UndeclaredNode => "E003",
            Code::CombinationalCycle => "E004",
            Code::UnknownConstant => "E005",
            Code::NextInGtel => "E006",
            Code::UnknownVertex => "E007",
            Code::Unreachable => "E008",
            Code::MissingInit => "E009",
            Code::DuplicateName => "E010",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located parse failure. Lines and columns are 1-based; column counts
/// characters, not bytes.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: error[{code}]: {message}")]
pub struct ParseError {
    pub code: Code,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(code: Code, line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            code,
            line,
            col,
            message: message.into(),
        }
    }

    /// Shifts a diagnostic produced for a substring so that it points into the
    /// enclosing line.
    pub(crate) fn at_offset(mut self, line: usize, col_offset: usize) -> Self {
        if self.line <= 1 {
            self.line = line;
            self.col += col_offset;
        }
        self
    }
}

/// Strips a `#` comment and splits the rest of a line into whitespace
/// separated tokens with their 1-based character columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in body.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &body[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &body[b..]));
    }
    out
}

/// Node and constant names: a letter or `_`, then letters, digits, `_`, and
/// optionally trailing primes (`out'`).
pub(crate) fn is_name(s: &str) -> bool {
    let trimmed = s.trim_end_matches('\'');
    let mut chars = trimmed.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Words that the formula grammar claims for itself.
pub(crate) fn is_reserved(s: &str) -> bool {
    matches!(s, "N" | "true" | "false")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_columns() {
        let toks = tokens("  and r p  q # trailing");
        assert_eq!(toks, vec![(3, "and"), (7, "r"), (9, "p"), (12, "q")]);
        assert!(tokens("# only comment").is_empty());
    }

    #[test]
    fn names() {
        assert!(is_name("out'"));
        assert!(is_name("in_1"));
        assert!(is_name("reg''"));
        assert!(!is_name("1x"));
        assert!(!is_name("a'b"));
        assert!(!is_name("'"));
        assert!(!is_name("!p"));
    }

    #[test]
    fn display_format() {
        let e = ParseError::new(Code::CombinationalCycle, 3, 5, "cycle");
        assert_eq!(e.to_string(), "3:5: error[E004]: cycle");
    }
}
