//! Shared cursor and diagnostics for the small text grammars.

use std::fmt;
use std::str::FromStr;

use hamiltonian_core::kernel::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    /// the clause being read, e.g. `gamma.basis`
    pub clause: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)?;
        if let Some(c) = &self.clause {
            write!(f, " ({c})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// Shift a position inside a clause to the enclosing document.
    pub fn relocate(mut self, line: usize, column: usize, clause: &str) -> ParseError {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self.clause.get_or_insert_with(|| clause.to_string());
        self
    }
}

pub type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Cursor<'a> {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, clause: None, message: msg.into() }
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos, msg)
    }

    pub fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error(format!("expected `{s}`, found {found}")))
        }
    }

    pub fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input `{}`", self.rest().trim_end())))
        }
    }

    pub fn uint(&mut self) -> PResult<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        let start = self.pos;
        self.pos += digits.len();
        digits.parse().map_err(|_| self.error_at(start, "integer too large"))
    }

    /// The text up to the next `,` or closing bracket at depth 0.
    pub fn raw_item(&mut self) -> &'a str {
        self.skip_ws();
        let mut depth = 0i32;
        let r = self.rest();
        let mut end = r.len();
        for (i, c) in r.char_indices() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' | ']' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        self.pos += end;
        r[..end].trim_end()
    }

    /// A scalar written in either rendering, ending at `,` or a closing bracket.
    pub fn scalar_item(&mut self) -> PResult<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let raw = self.raw_item();
        Scalar::from_str(raw).map_err(|_| self.error_at(start, format!("malformed scalar `{raw}`")))
    }

    /// `open item, item, ... close`, possibly empty, trailing comma allowed.
    pub fn list<T>(&mut self, open: &str, close: &str, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
            if self.eat(close) {
                return Ok(out);
            }
        }
    }

    /// A coefficient: `n`, `n/m`, `sqrt(d)`, or a parenthesised scalar.
    pub fn coefficient(&mut self) -> PResult<Scalar> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let raw = self.raw_item();
            self.expect(")")?;
            return Scalar::from_str(raw).map_err(|_| self.error_at(start, format!("malformed scalar `{raw}`")));
        }
        if self.eat("sqrt(") {
            let d = self.uint()?;
            self.expect(")")?;
            return Ok(Scalar::sqrt_of(d as i64));
        }
        let n = self.uint()?;
        let mut text = n.to_string();
        if self.eat("/") {
            text.push('/');
            text.push_str(&self.uint()?.to_string());
        }
        Scalar::from_str(&text).map_err(|_| self.error_at(start, format!("malformed rational `{text}`")))
    }

    pub fn at_coefficient(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '(') || self.starts_with("sqrt(")
    }
}

/// One logical `key = value` clause.
pub struct Clause {
    pub section: Option<String>,
    pub key: String,
    pub value: String,
    pub line: usize,
    /// column of the first value character
    pub column: usize,
}

/// Split a document into clauses; `[name]` lines open a section.
pub fn split_clauses(text: &str) -> PResult<Vec<Clause>> {
    let mut out: Vec<Clause> = Vec::new();
    let mut open: Option<(Clause, i32)> = None;
    let mut section: Option<String> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if let Some((mut c, depth)) = open.take() {
            let depth = depth + bracket_delta(body);
            c.value.push('\n');
            c.value.push_str(body);
            if depth > 0 {
                open = Some((c, depth));
            } else {
                out.push(c);
            }
            continue;
        }
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            section = Some(name.trim().to_string());
            continue;
        }
        let Some(eq) = body.find('=') else {
            let column = body.len() - body.trim_start().len() + 1;
            return Err(ParseError { line, column, clause: None, message: "expected `key = value`".into() });
        };
        let key = body[..eq].trim().to_string();
        let value = body[eq + 1..].to_string();
        let column = eq + 2;
        let depth = bracket_delta(&value);
        let c = Clause { section: section.clone(), key, value, line, column };
        if depth > 0 {
            open = Some((c, depth));
        } else {
            out.push(c);
        }
    }
    if let Some((c, _)) = open {
        return Err(ParseError {
            line: c.line,
            column: c.column,
            clause: Some(c.key),
            message: "unclosed bracket".into(),
        });
    }
    Ok(out)
}

fn bracket_delta(s: &str) -> i32 {
    s.chars().map(|c| match c {
        '[' | '(' => 1,
        ']' | ')' => -1,
        _ => 0,
    }).sum()
}

/// Parse a whole clause value, locating errors in the document.
pub fn parse_value<T>(c: &Clause, f: impl FnOnce(&mut Cursor) -> PResult<T>) -> PResult<T> {
    let mut cur = Cursor::new(&c.value);
    let v = f(&mut cur).and_then(|v| cur.finish().map(|_| v));
    v.map_err(|e| e.relocate(c.line, c.column, &c.key))
}

/// Human rendering of a coefficient inside a product.
pub fn coefficient_text(c: &Scalar) -> String {
    if c.is_compound() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

/// Split `c` into a sign and a magnitude suitable for `a + c*x` / `a - c*x`.
pub fn split_sign(c: &Scalar) -> (bool, Scalar) {
    if c.is_zero() || c.is_canonically_positive() {
        (false, c.clone())
    } else {
        (true, -c)
    }
}
