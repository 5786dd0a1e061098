//! Line-oriented problem files.
//!
//! ```text
//! # objective matrix, one row per line; `eps` is -inf
//! matrix
//! 1 2 -2
//! -1 0 eps
//! 0 1 3
//! k
//! 2 1 0
//! c
//! 2
//! ```
//!
//! Section headers are `matrix`, `k` and `c`. Tokens may follow a header on
//! the same line. `#` starts a comment. LF and CRLF line endings are accepted.

use std::fmt::{self, Write as _};

use maxplus_opt::{ExtScalar, MaxPlusMatrix, OptProblem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Matrix,
    K,
    C,
}

impl Section {
    fn from_token(s: &str) -> Option<Self> {
        match s {
            "matrix" => Some(Section::Matrix),
            "k" => Some(Section::K),
            "c" => Some(Section::C),
            _ => None,
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Matrix => "matrix",
            Section::K => "k",
            Section::C => "c",
        })
    }
}

#[derive(Default)]
struct Sections<'a> {
    matrix: Option<(Token<'a>, Vec<Vec<Token<'a>>>)>,
    k: Option<(Token<'a>, Vec<Token<'a>>)>,
    c: Option<(Token<'a>, Vec<Token<'a>>)>,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, ch)) in content.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, col)) = start.take() {
                tokens.push(Token { text: &content[b..byte], line: line_no, column: col + 1 });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, col)) = start {
        tokens.push(Token { text: &content[b..], line: line_no, column: col + 1 });
    }
    tokens
}

fn split_sections(text: &str) -> Result<(Sections<'_>, usize), ParseError> {
    let mut sections = Sections::default();
    let mut current: Option<Section> = None;
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let mut tokens = tokenize(line, line_no);
        if tokens.is_empty() {
            continue;
        }
        if let Some(section) = Section::from_token(tokens[0].text) {
            let header = tokens.remove(0);
            let duplicate = match section {
                Section::Matrix => sections.matrix.replace((header, Vec::new())).is_some(),
                Section::K => sections.k.replace((header, Vec::new())).is_some(),
                Section::C => sections.c.replace((header, Vec::new())).is_some(),
            };
            if duplicate {
                return Err(header.error(format!("duplicate `{section}` section")));
            }
            current = Some(section);
            if tokens.is_empty() {
                continue;
            }
        }
        match current {
            None => {
                return Err(tokens[0].error(format!(
                    "expected a section header (`matrix`, `k` or `c`), found `{}`",
                    tokens[0].text
                )))
            }
            Some(Section::Matrix) => sections.matrix.as_mut().unwrap().1.push(tokens),
            Some(Section::K) => sections.k.as_mut().unwrap().1.extend(tokens),
            Some(Section::C) => sections.c.as_mut().unwrap().1.extend(tokens),
        }
    }
    Ok((sections, last_line))
}

fn parse_real(tok: &Token<'_>, what: &str) -> Result<f64, ParseError> {
    match tok.text.parse::<ExtScalar>() {
        Ok(ExtScalar::Finite(v)) => Ok(v),
        Ok(_) => Err(tok.error(format!("{what} must be a finite real, found `{}`", tok.text))),
        Err(_) => Err(tok.error(format!("invalid number `{}`", tok.text))),
    }
}

fn parse_entry(tok: &Token<'_>) -> Result<ExtScalar, ParseError> {
    match tok.text.parse::<ExtScalar>() {
        Ok(ExtScalar::PosInf) => Err(tok.error(format!(
            "matrix entries must be in R_max (a real or `eps`), found `{}`",
            tok.text
        ))),
        Ok(v) => Ok(v),
        Err(_) => Err(tok.error(format!("invalid matrix entry `{}`", tok.text))),
    }
}

/// Parses a problem file into a validated [`OptProblem`].
pub fn parse_problem(text: &str) -> Result<OptProblem, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let (sections, last_line) = split_sections(text)?;
    let eof = ParseError { line: last_line + 1, column: 1, message: String::new() };
    let missing = |name: &str| ParseError { message: format!("missing `{name}` section"), ..eof.clone() };

    let (matrix_header, rows) = sections.matrix.ok_or_else(|| missing("matrix"))?;
    if rows.is_empty() {
        return Err(matrix_header.error("`matrix` section has no rows"));
    }
    let n = rows[0].len();
    let mut entries = Vec::with_capacity(rows.len() * n);
    for row in &rows {
        if row.len() != n {
            return Err(row[0].error(format!(
                "ragged matrix row: expected {n} entries, found {}",
                row.len()
            )));
        }
        for tok in row {
            entries.push(parse_entry(tok)?);
        }
    }
    let a = MaxPlusMatrix::new(rows.len(), n, entries)
        .map_err(|e| matrix_header.error(e.to_string()))?;

    let (k_header, k_tokens) = sections.k.ok_or_else(|| missing("k"))?;
    if k_tokens.len() != n {
        return Err(k_header.error(format!(
            "k has {} entries but the matrix has {n} columns",
            k_tokens.len()
        )));
    }
    let mut k = Vec::with_capacity(n);
    for tok in &k_tokens {
        let v = parse_real(tok, "k")?;
        if v < 0.0 {
            return Err(tok.error(format!("k must be nonnegative, found `{}`", tok.text)));
        }
        k.push(v);
    }
    if k.iter().all(|v| *v == 0.0) {
        return Err(k_header.error("k must not be all zero"));
    }

    let (c_header, c_tokens) = sections.c.ok_or_else(|| missing("c"))?;
    let c = match c_tokens.as_slice() {
        [tok] => parse_real(tok, "c")?,
        [] => return Err(c_header.error("`c` section is empty")),
        [_, extra, ..] => return Err(extra.error("`c` takes a single value")),
    };

    OptProblem::new(a, k, c).map_err(|e| matrix_header.error(e.to_string()))
}

/// Writes a problem in the file format; [`parse_problem`] reads it back unchanged.
pub fn format_problem(p: &OptProblem) -> String {
    let mut out = String::from("matrix\n");
    let a = p.matrix();
    for i in 0..a.rows() {
        let row: Vec<String> = a
            .row(i)
            .iter()
            .map(|v| match v {
                ExtScalar::NegInf => "eps".to_string(),
                ExtScalar::Finite(x) => format!("{x}"),
                ExtScalar::PosInf => unreachable!("problems have no +inf entries"),
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    let k: Vec<String> = p.coefficients().iter().map(|v| format!("{v}")).collect();
    writeln!(out, "k\n{}", k.join(" ")).unwrap();
    writeln!(out, "c\n{}", p.constant()).unwrap();
    out
}
