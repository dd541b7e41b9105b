//! `.alg` documents: `key = value` lines describing an algebra.
//!
//! ```text
//! # F1
//! shape.l = [1,0,0,0,0,0,0]
//! gamma.basis = [[1,0],[0,1]]
//! field = rational
//! ```
//!
//! A value may continue over several lines while a bracket is open.
//! `fixture = F1` alone loads a standard algebra; written next to explicit
//! fields, the two must agree.

use std::fmt::Write as _;
use std::sync::Arc;

use hamiltonian_core::fixtures;
use hamiltonian_core::kernel::{Algebra, Field, GroupVector, Lattice, Scalar, Shape};

use crate::syntax::{parse_value, split_clauses, Clause, Cursor, PResult, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecDocument {
    pub l: [usize; 7],
    pub basis: Vec<Vec<Scalar>>,
    pub field: Field,
    pub fixture: Option<String>,
}

impl AlgebraSpecDocument {
    pub fn from_algebra(alg: &Algebra, fixture: Option<&str>) -> AlgebraSpecDocument {
        AlgebraSpecDocument {
            l: alg.shape().l(),
            basis: alg.lattice().basis().iter().map(|g| g.coords().to_vec()).collect(),
            field: alg.field(),
            fixture: fixture.map(str::to_string),
        }
    }

    pub fn fixture(name: &str) -> Option<AlgebraSpecDocument> {
        let alg = fixtures::by_name(name)?;
        Some(AlgebraSpecDocument::from_algebra(&alg, Some(&name.to_ascii_uppercase())))
    }

    /// Build the algebra, running the shape and lattice checks.
    pub fn build(&self) -> hamiltonian_core::Result<Arc<Algebra>> {
        let shape = Shape::new(self.l)?;
        let basis = self.basis.iter().map(|r| GroupVector::new(r.clone())).collect();
        Ok(Algebra::new(Lattice::new(shape, self.field, basis)?))
    }
}

struct Located<T> {
    value: T,
    line: usize,
    column: usize,
}

fn parse_field(cur: &mut Cursor) -> PResult<Field> {
    if cur.eat("rational") {
        return Ok(Field::Rational);
    }
    let start = cur.pos();
    cur.expect("quadratic:")?;
    let d = cur.uint()? as i64;
    Field::quadratic(d).map_err(|e| cur.error_at(start, e.to_string()))
}

fn parse_fixture(cur: &mut Cursor) -> PResult<String> {
    cur.skip_ws();
    let name: String = cur.rest().chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
    if fixtures::by_name(&name).is_none() {
        return Err(cur.error(format!("unknown fixture `{name}`")));
    }
    cur.eat(&name);
    Ok(name.to_ascii_uppercase())
}

fn parse_rows(cur: &mut Cursor) -> PResult<Vec<Located<Vec<Scalar>>>> {
    cur.list("[", "]", |c| {
        c.skip_ws();
        let pos = c.pos();
        let row = c.list("[", "]", Cursor::scalar_item)?;
        let e = c.error_at(pos, "");
        Ok(Located { value: row, line: e.line, column: e.column })
    })
}

pub fn parse_spec(text: &str) -> PResult<AlgebraSpecDocument> {
    let mut l: Option<[usize; 7]> = None;
    let mut basis: Option<(Vec<Located<Vec<Scalar>>>, Clause)> = None;
    let mut field: Option<Field> = None;
    let mut fixture: Option<(String, Clause)> = None;
    let mut seen = std::collections::BTreeSet::new();
    for c in split_clauses(text)? {
        if let Some(sec) = &c.section {
            return Err(ParseError { line: c.line, column: 1, clause: Some(c.key.clone()), message: format!("unexpected section [{sec}]") });
        }
        if !seen.insert(c.key.clone()) {
            return Err(ParseError {
                line: c.line,
                column: 1,
                clause: Some(c.key.clone()),
                message: "duplicate key".into(),
            });
        }
        match c.key.as_str() {
            "shape.l" => {
                let v = parse_value(&c, |cur| {
                    let pos = cur.pos();
                    let xs = cur.list("[", "]", |c| c.uint())?;
                    let arr: [u64; 7] = xs
                        .try_into()
                        .map_err(|xs: Vec<u64>| cur.error_at(pos, format!("expected 7 block sizes, found {}", xs.len())))?;
                    Ok(arr.map(|x| x as usize))
                })?;
                l = Some(v);
            }
            "gamma.basis" => {
                let rows = parse_value(&c, parse_rows)?;
                basis = Some((rows, c));
            }
            "field" => {
                field = Some(parse_value(&c, parse_field)?);
            }
            "fixture" => {
                let name = parse_value(&c, parse_fixture)?;
                fixture = Some((name, c));
            }
            other => {
                return Err(ParseError {
                    line: c.line,
                    column: 1,
                    clause: Some(other.to_string()),
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }

    let fixture_doc = fixture.as_ref().map(|(n, _)| AlgebraSpecDocument::fixture(n).expect("checked fixture name"));
    let missing = |what: &str| ParseError { line: 1, column: 1, clause: Some(what.to_string()), message: format!("missing `{what}`") };

    let l_val = match (&l, &fixture_doc) {
        (Some(v), _) => *v,
        (None, Some(f)) => f.l,
        (None, None) => return Err(missing("shape.l")),
    };
    let field_val = match (field, &fixture_doc) {
        (Some(f), _) => f,
        (None, Some(f)) => f.field,
        (None, None) => Field::Rational,
    };
    let n: usize = l_val.iter().sum();
    let rows = match (basis, &fixture_doc) {
        (Some((rows, c)), _) => {
            for r in &rows {
                let at = |message: String| {
                    ParseError { line: r.line, column: r.column, clause: None, message }.relocate(c.line, c.column, &c.key)
                };
                if r.value.len() != 2 * n {
                    return Err(at(format!("basis row has {} entries, expected {}", r.value.len(), 2 * n)));
                }
                if let Some(bad) = r.value.iter().find(|s| !field_val.contains(s)) {
                    return Err(at(format!("entry {bad} is outside the field {field_val}")));
                }
            }
            rows.into_iter().map(|r| r.value).collect()
        }
        (None, Some(f)) => f.basis.clone(),
        (None, None) => return Err(missing("gamma.basis")),
    };
    let doc = AlgebraSpecDocument { l: l_val, basis: rows, field: field_val, fixture: fixture.as_ref().map(|(n, _)| n.clone()) };
    if let (Some(f), Some((_, c))) = (&fixture_doc, &fixture) {
        if f.l != doc.l || f.basis != doc.basis || f.field != doc.field {
            return Err(ParseError {
                line: c.line,
                column: c.column,
                clause: Some(c.key.clone()),
                message: format!("explicit fields disagree with fixture {}", f.fixture.as_deref().unwrap_or("")),
            });
        }
    }
    Ok(doc)
}

pub fn format_spec(doc: &AlgebraSpecDocument) -> String {
    let mut s = String::new();
    if let Some(f) = &doc.fixture {
        let _ = writeln!(s, "fixture = {f}");
    }
    let l: Vec<String> = doc.l.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "shape.l = [{}]", l.join(","));
    let rows: Vec<String> = doc
        .basis
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let _ = writeln!(s, "gamma.basis = [{}]", rows.join(","));
    let _ = writeln!(s, "field = {}", doc.field);
    s
}
