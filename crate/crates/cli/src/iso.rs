//! `.iso` files describing a preserving isomorphism.
//!
//! ```text
//! [nu]
//! pairs = [(1,2),(2,1)]
//! [params]
//! a = [0,1/2]
//! b = [1,2]
//! [blocks]
//! B15 = [1,0]        # row-major entries
//! [character]
//! values = [1,-1]
//! [target]
//! basis = [[1,0],[0,1]]
//! ```
//!
//! Every entry is optional; a missing one takes its identity value. Without
//! `[target]` the target lattice is the image of the source basis.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hamiltonian_core::isomorphisms::{Block, PreservingIso};
use hamiltonian_core::kernel::{Scalar, Shape};

use crate::syntax::{parse_value, split_clauses, Cursor, PResult, ParseError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoDocument {
    pub nu: Option<Vec<(usize, usize)>>,
    pub a: Option<Vec<Scalar>>,
    pub b: Option<Vec<Scalar>>,
    pub blocks: BTreeMap<Block, Vec<Scalar>>,
    pub character: Option<Vec<Scalar>>,
    pub target: Option<Vec<Vec<Scalar>>>,
}

fn scalars(cur: &mut Cursor) -> PResult<Vec<Scalar>> {
    cur.list("[", "]", Cursor::scalar_item)
}

fn pairs(cur: &mut Cursor) -> PResult<Vec<(usize, usize)>> {
    cur.list("[", "]", |c| {
        c.expect("(")?;
        let p = c.uint()? as usize;
        c.expect(",")?;
        let q = c.uint()? as usize;
        c.expect(")")?;
        Ok((p, q))
    })
}

pub fn parse_iso(text: &str) -> PResult<IsoDocument> {
    let mut doc = IsoDocument::default();
    let mut seen = std::collections::BTreeSet::new();
    for c in split_clauses(text)? {
        let section = c.section.clone().unwrap_or_default();
        let err = |msg: String| ParseError { line: c.line, column: 1, clause: Some(c.key.clone()), message: msg };
        if !seen.insert((section.clone(), c.key.clone())) {
            return Err(err("duplicate key".into()));
        }
        match (section.as_str(), c.key.as_str()) {
            ("nu", "pairs") => doc.nu = Some(parse_value(&c, pairs)?),
            ("params", "a") => doc.a = Some(parse_value(&c, scalars)?),
            ("params", "b") => doc.b = Some(parse_value(&c, scalars)?),
            ("blocks", name) => {
                let blk: Block = name.parse().map_err(err)?;
                doc.blocks.insert(blk, parse_value(&c, scalars)?);
            }
            ("character", "values") => doc.character = Some(parse_value(&c, scalars)?),
            ("target", "basis") => doc.target = Some(parse_value(&c, |cur| cur.list("[", "]", scalars))?),
            ("", key) => return Err(err(format!("`{key}` outside a section"))),
            (s, key) => return Err(err(format!("unknown key `{key}` in [{s}]"))),
        }
    }
    Ok(doc)
}

fn list(xs: &[Scalar]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn format_iso(doc: &IsoDocument) -> String {
    let mut s = String::new();
    if let Some(nu) = &doc.nu {
        let p: Vec<String> = nu.iter().map(|(p, q)| format!("({p},{q})")).collect();
        let _ = write!(s, "[nu]\npairs = [{}]\n", p.join(","));
    }
    if doc.a.is_some() || doc.b.is_some() {
        s.push_str("[params]\n");
        if let Some(a) = &doc.a {
            let _ = writeln!(s, "a = {}", list(a));
        }
        if let Some(b) = &doc.b {
            let _ = writeln!(s, "b = {}", list(b));
        }
    }
    if !doc.blocks.is_empty() {
        s.push_str("[blocks]\n");
        for (blk, m) in &doc.blocks {
            let _ = writeln!(s, "{blk} = {}", list(m));
        }
    }
    if let Some(v) = &doc.character {
        let _ = write!(s, "[character]\nvalues = {}\n", list(v));
    }
    if let Some(t) = &doc.target {
        let rows: Vec<String> = t.iter().map(|r| list(r)).collect();
        let _ = write!(s, "[target]\nbasis = [{}]\n", rows.join(","));
    }
    s
}

/// Fill in identity defaults for `shape`; dimension errors are reported as text.
pub fn build_iso(doc: &IsoDocument, shape: &Shape) -> Result<PreservingIso, String> {
    let mut iso = PreservingIso::identity(shape);
    let n4 = shape.iota(4);
    if let Some(nu) = &doc.nu {
        for &(p, q) in nu {
            if p == 0 || p > n4 {
                return Err(format!("nu is defined on 1..={n4}, got p = {p}"));
            }
            iso.nu[p - 1] = q;
        }
    }
    if let Some(a) = &doc.a {
        iso.a = a.clone();
    }
    if let Some(b) = &doc.b {
        iso.b = b.clone();
    }
    for (blk, entries) in &doc.blocks {
        let (r, c) = blk.dims(shape);
        if entries.len() != r * c {
            return Err(format!("{blk} needs {r}x{c} = {} entries, got {}", r * c, entries.len()));
        }
        let m = if c == 0 { vec![Vec::new(); r] } else { entries.chunks(c).map(|row| row.to_vec()).collect() };
        iso.blocks.insert(*blk, m);
    }
    iso.check().map_err(|e| e.to_string())?;
    Ok(iso)
}

/// The full document of an isomorphism, every entry written out.
pub fn iso_document(iso: &PreservingIso) -> IsoDocument {
    IsoDocument {
        nu: Some(iso.nu.iter().enumerate().map(|(i, &q)| (i + 1, q)).collect()),
        a: Some(iso.a.clone()),
        b: Some(iso.b.clone()),
        blocks: iso.blocks.iter().map(|(b, m)| (*b, m.iter().flatten().cloned().collect())).collect(),
        character: None,
        target: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamiltonian_core::sampling::{preserving_iso, sample_rng};

    #[test]
    fn empty_file_is_identity() {
        let s = Shape::new([1, 0, 0, 1, 1, 1, 0]).unwrap();
        assert_eq!(build_iso(&parse_iso("").unwrap(), &s).unwrap(), PreservingIso::identity(&s));
    }

    #[test]
    fn random_round_trip() {
        let s = Shape::new([2, 1, 1, 1, 1, 1, 1]).unwrap();
        for k in 0..10 {
            let iso = preserving_iso(&s, &mut sample_rng(3, k));
            let doc = iso_document(&iso);
            let back = parse_iso(&format_iso(&doc)).unwrap();
            assert_eq!(back, doc);
            assert_eq!(build_iso(&back, &s).unwrap(), iso);
        }
    }

    #[test]
    fn errors() {
        assert!(parse_iso("[blocks]\nB99 = [1]").is_err());
        assert!(parse_iso("a = [1]").is_err());
        let s = Shape::new([1, 0, 0, 0, 1, 0, 0]).unwrap();
        assert!(build_iso(&parse_iso("[blocks]\nB15 = [1,2]").unwrap(), &s).is_err());
        assert!(build_iso(&parse_iso("[params]\nb = [0]").unwrap(), &s).is_err());
    }
}
