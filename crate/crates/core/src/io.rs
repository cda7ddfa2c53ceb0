//! Plain-text tournament files.
//!
//! ```text
//! # optional comments
//! 3
//! 010
//! 001
//! 100
//! ```
//!
//! The first non-comment line is `n`, followed by `n` rows of `n` characters
//! from `{0, 1}`; character `j` of row `i` is `1` iff `i -> j`. Lines starting
//! with `#` and blank lines are ignored. Line numbers in errors are 1-based.

use crate::error::{Error, Result};
use crate::tournament::{Tournament, MAX_VERTICES};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::BadFile {
        line,
        msg: msg.into(),
    }
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| bad(1, "missing header line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| bad(hline, format!("header `{header}` is not a vertex count")))?;
    if n > MAX_VERTICES {
        return Err(bad(hline, format!("{n} vertices exceed the limit {MAX_VERTICES}")));
    }

    let mut rows = vec![0u64; n];
    let mut row_line = vec![0usize; n];
    let mut last = hline;
    for i in 0..n {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| bad(last + 1, format!("expected {n} matrix rows, found {i}")))?;
        last = ln;
        row_line[i] = ln;
        if row.chars().count() != n {
            return Err(bad(ln, format!("row has {} characters, expected {n}", row.chars().count())));
        }
        for (j, c) in row.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i == j => return Err(bad(ln, format!("diagonal entry {i} is 1"))),
                '1' => rows[i] |= 1 << j,
                _ => return Err(bad(ln, format!("unexpected character `{c}` in column {j}"))),
            }
        }
        for j in 0..i {
            match (rows[j] >> i & 1, rows[i] >> j & 1) {
                (1, 1) => return Err(bad(ln, format!("pair {{{j}, {i}}} is oriented both ways"))),
                (0, 0) => return Err(bad(ln, format!("pair {{{j}, {i}}} is not oriented"))),
                _ => {}
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "unexpected content after the matrix"));
    }
    Tournament::from_rows(rows)
}

/// Renders a tournament in the file format, with optional leading comment lines.
pub fn write_tournament(t: &Tournament, comments: &[&str]) -> String {
    let n = t.order();
    let mut s = String::with_capacity((n + 2) * (n + 1));
    for c in comments {
        s.push_str("# ");
        s.push_str(c);
        s.push('\n');
    }
    s.push_str(&n.to_string());
    s.push('\n');
    for i in 0..n {
        for j in 0..n {
            s.push(if t.edge(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::BadFile { line, .. } => line,
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        for t in [Tournament::cycle3(), Tournament::diamond(), Tournament::empty(), Tournament::chain(1)] {
            let text = write_tournament(&t, &["example"]);
            assert_eq!(parse_tournament(&text).unwrap(), t);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = parse_tournament("# c3\n\n3\n010\n# mid\n001\n100\n").unwrap();
        assert_eq!(t, Tournament::cycle3());
    }

    #[test]
    fn malformed_files_report_lines() {
        assert_eq!(line_of(parse_tournament("3\n010\n01\n100\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_tournament("2\n11\n00\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_tournament("2\n01\n10\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_tournament("2\n00\n00\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_tournament("# x\n3\n010\n001\n").unwrap_err()), 5);
        assert_eq!(line_of(parse_tournament("x\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_tournament("1\n0\n0\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_tournament("2\n0a\n00\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_tournament("").unwrap_err()), 1);
    }
}
