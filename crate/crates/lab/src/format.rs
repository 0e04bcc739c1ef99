//! The plain-text family format.
//!
//! One member per line, elements as decimal integers separated by single
//! spaces. Lines starting with `#` are comments and blank lines are
//! ignored. An optional header line `n=<int>` before the first member fixes
//! the ground set; without it the ground set is `[max element]`.
//!
//! [`write_family`] emits the canonical form: the header, then the members
//! in canonical order with ascending elements.

use std::fmt::{self, Write as _};

use sunflower_core::{GroundSet, MemberSet, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_family(text: &str) -> Result<SetFamily, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut members: Vec<(usize, MemberSet)> = Vec::new();
    let mut max_element = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if raw.starts_with('#') || raw.trim().is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("n=") {
            if header.is_some() {
                return Err(err(line_no, 1, "duplicate header line"));
            }
            if !members.is_empty() {
                return Err(err(line_no, 1, "header must come before the first member"));
            }
            let n = parse_number(rest, line_no, 3)?;
            header = Some((n, line_no));
            continue;
        }
        let mut member = MemberSet::empty();
        let mut col = 1;
        for (i, token) in raw.split(' ').enumerate() {
            if token.is_empty() {
                let what = if i == 0 { "leading space" } else { "empty element (use single spaces)" };
                return Err(err(line_no, col, what));
            }
            let e = parse_number(token, line_no, col)?;
            if e == 0 {
                return Err(err(line_no, col, "elements start at 1"));
            }
            if member.contains(e) {
                return Err(err(line_no, col, format!("element {e} repeated")));
            }
            member.insert(e);
            max_element = max_element.max(e);
            col += token.chars().count() + 1;
        }
        members.push((line_no, member));
    }

    let n = match header {
        Some((n, line)) => {
            if let Some((l, m)) = members.iter().find(|(_, m)| m.max_element() > Some(n)) {
                let e = m.max_element().unwrap_or(0);
                return Err(err(*l, 1, format!("element {e} exceeds n={n} (header on line {line})")));
            }
            n
        }
        None => max_element,
    };
    let ground = GroundSet::new(n).map_err(|e| err(header.map_or(1, |h| h.1), 1, e.to_string()))?;
    SetFamily::new(ground, members.into_iter().map(|(_, m)| m).collect())
        .map_err(|e| err(1, 1, e.to_string()))
}

fn parse_number(token: &str, line: usize, column: usize) -> Result<usize, ParseError> {
    if let Some((offset, c)) = token.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        let at = column + token[..offset].chars().count();
        return Err(err(line, at, format!("unexpected character {c:?}")));
    }
    if token.is_empty() {
        return Err(err(line, column, "expected a number"));
    }
    token
        .parse()
        .map_err(|_| err(line, column, format!("number {token} is too large")))
}

pub fn write_family(fam: &SetFamily) -> String {
    let mut out = format!("n={}\n", fam.ground().size());
    for m in fam.members() {
        let mut first = true;
        for e in m.elements() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{e}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_comments_and_sorts() {
        let f = parse_family("# triangle\nn=4\n2 3\n1 2\n\n1 3\n").unwrap();
        assert_eq!(f.ground().size(), 4);
        assert_eq!(write_family(&f), "n=4\n1 2\n1 3\n2 3\n");
    }

    #[test]
    fn ground_defaults_to_max_element() {
        let f = parse_family("3 1\n5\n").unwrap();
        assert_eq!(f.ground().size(), 5);
        assert_eq!(write_family(&f), "n=5\n1 3\n5\n");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_family("1 2\n1  3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_family("1 2\n1 x3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_family("n=2\n1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_family("1 2\nn=3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_family("0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_family("1 2 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse_family(" 1\n").is_err());
        assert!(parse_family("1 \n").is_err());
    }
}
