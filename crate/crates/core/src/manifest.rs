//! Line-oriented geometry manifests.
//!
//! The format is deliberately trivial to parse from any language: UTF-8
//! text, `#` starts a comment to end of line, blank lines are ignored, and
//! every entry is `key = value`. Integer vectors are written `[a,b,...]`,
//! matrices and cone lists `[[...],[...]]`, and whitespace around tokens is
//! free. Required keys: `n`, `w`, `Q`; optional: `name`, `cones`, `order`.
//!
//! ```text
//! name = local_P1
//! n = 2
//! w = [[0],[-1],[1]]
//! Q = [[-2,1,1]]
//! ```

use thiserror::Error;

use crate::toric::ToricCYData;

/// Default truncation order when the manifest does not set one.
pub const DEFAULT_ORDER: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifestError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("missing required key `{key}`")]
    MissingKey { key: &'static str },
    #[error("{message}")]
    Semantic { message: String },
}

/// A parsed manifest. `to_data` builds the toric data; validation is a
/// separate, explicit step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub name: Option<String>,
    pub n: usize,
    pub w: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    pub cones: Option<Vec<Vec<usize>>>,
    pub order: u32,
}

impl Manifest {
    pub fn to_data(&self) -> ToricCYData {
        ToricCYData::new(self.n, self.w.clone(), self.q.clone())
    }

    /// Display name for reports.
    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("geometry")
    }
}

/// Parse a manifest document; either every key parses or a diagnostic names
/// the offending line and column. No partial results escape.
pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let mut name = None;
    let mut n: Option<i64> = None;
    let mut w: Option<Vec<Vec<i64>>> = None;
    let mut q: Option<Vec<Vec<i64>>> = None;
    let mut cones: Option<Vec<Vec<i64>>> = None;
    let mut order: Option<i64> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let eq = line.find('=').ok_or_else(|| ManifestError::Syntax {
            line: line_no,
            col: line.len() + 1,
            message: "expected `key = value`".into(),
        })?;
        let key = line[..eq].trim();
        let value_start = line[..eq].chars().count() + 1;
        let mut cursor = Cursor::new(line, line_no, value_start);
        match key {
            "name" => {
                check_unset(name.is_none(), "name", line_no)?;
                name = Some(cursor.identifier()?);
            }
            "n" => {
                check_unset(n.is_none(), "n", line_no)?;
                n = Some(cursor.integer()?);
            }
            "order" => {
                check_unset(order.is_none(), "order", line_no)?;
                order = Some(cursor.integer()?);
            }
            "w" => {
                check_unset(w.is_none(), "w", line_no)?;
                w = Some(cursor.matrix()?);
            }
            "Q" => {
                check_unset(q.is_none(), "Q", line_no)?;
                q = Some(cursor.matrix()?);
            }
            "cones" => {
                check_unset(cones.is_none(), "cones", line_no)?;
                cones = Some(cursor.matrix()?);
            }
            other => {
                return Err(ManifestError::Syntax {
                    line: line_no,
                    col: 1,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
        cursor.finish()?;
    }

    let n = n.ok_or(ManifestError::MissingKey { key: "n" })?;
    let w = w.ok_or(ManifestError::MissingKey { key: "w" })?;
    let q = q.ok_or(ManifestError::MissingKey { key: "Q" })?;
    if n < 2 {
        return Err(ManifestError::Semantic {
            message: format!("n must be at least 2, got {n}"),
        });
    }
    let m = w.len();
    for (row, entries) in q.iter().enumerate() {
        if entries.len() != m {
            return Err(ManifestError::Semantic {
                message: format!(
                    "Q row {row} has {} entries, expected one per lattice point ({m})",
                    entries.len()
                ),
            });
        }
    }
    let cones = match cones {
        None => None,
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (row, simplex) in list.iter().enumerate() {
                let mut indices = Vec::with_capacity(simplex.len());
                for &v in simplex {
                    if v < 0 || v as usize >= m {
                        return Err(ManifestError::Semantic {
                            message: format!(
                                "cones row {row} references point {v}, valid range is 0..{m}"
                            ),
                        });
                    }
                    indices.push(v as usize);
                }
                out.push(indices);
            }
            Some(out)
        }
    };
    let order = match order {
        None => DEFAULT_ORDER,
        Some(v) if (0..=u32::MAX as i64).contains(&v) => v as u32,
        Some(v) => {
            return Err(ManifestError::Semantic {
                message: format!("order must be nonnegative, got {v}"),
            })
        }
    };
    Ok(Manifest {
        name,
        n: n as usize,
        w,
        q,
        cones,
        order,
    })
}

fn check_unset(unset: bool, key: &str, line: usize) -> Result<(), ManifestError> {
    if unset {
        Ok(())
    } else {
        Err(ManifestError::Syntax {
            line,
            col: 1,
            message: format!("duplicate key `{key}`"),
        })
    }
}

/// Character cursor over one line, tracking 1-based columns for diagnostics.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize, start: usize) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: start,
            line,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ManifestError> {
        Err(ManifestError::Syntax {
            line: self.line,
            col: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ManifestError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
            None => self.error(format!("expected `{c}`, found end of line")),
        }
    }

    fn integer(&mut self) -> Result<i64, ManifestError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.chars[start] == '-') {
            return self.error("expected an integer");
        }
        let lexeme: String = self.chars[start..self.pos].iter().collect();
        lexeme
            .parse()
            .or_else(|_| self.error(format!("integer `{lexeme}` out of range")))
    }

    fn identifier(&mut self) -> Result<String, ManifestError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '-')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an identifier");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn vector(&mut self) -> Result<Vec<i64>, ManifestError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(found) => return self.error(format!("expected `,` or `]`, found `{found}`")),
                None => return self.error("unterminated vector"),
            }
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, ManifestError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.vector()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(found) => return self.error(format!("expected `,` or `]`, found `{found}`")),
                None => return self.error("unterminated matrix"),
            }
        }
    }

    fn finish(&mut self) -> Result<(), ManifestError> {
        if let Some(found) = self.peek() {
            return self.error(format!("unexpected `{found}` after value"));
        }
        Ok(())
    }
}
