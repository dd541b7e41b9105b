//! Linear combinations of named atoms, shared by the derivation and
//! cocycle grammars.
//!
//! ```text
//! combo := ['-'] part (('+' | '-') part)*
//! part  := [coef '*'] (atom | '(' combo ')')
//! ```
//!
//! A lone atom without sign or coefficient denotes the atom itself; any
//! other input is a combination. Formatting writes every coefficient, so
//! the two readings never collide.

use std::str::FromStr;
use std::sync::Arc;

use hamiltonian_core::kernel::{Algebra, Scalar};

use crate::syntax::{coefficient_text, split_sign, Cursor, PResult};

pub trait Atoms: Sized {
    fn combination(parts: Vec<(Scalar, Self)>) -> Self;
    fn parts(&self) -> Option<&[(Scalar, Self)]>;
    /// Parse one atom, or `None` when the input does not start one.
    fn atom(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Option<Self>>;
    fn format_atom(&self, alg: &Arc<Algebra>) -> String;
}

pub fn parse_combo<T: Atoms>(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<T> {
    let mut probe = cur.clone();
    if probe.eat("0") && matches!(probe.peek(), None | Some(')')) {
        *cur = probe;
        return Ok(T::combination(Vec::new()));
    }
    let mut out = Vec::new();
    let mut bare = true;
    let mut neg = cur.eat("-");
    loop {
        let (coef, explicit, item) = part(cur, alg)?;
        bare &= !neg && !explicit;
        out.push((if neg { -coef } else { coef }, item));
        if cur.eat("+") {
            neg = false;
        } else if cur.eat("-") {
            neg = true;
        } else {
            break;
        }
        bare = false;
    }
    if bare && out.len() == 1 {
        return Ok(out.pop().expect("one part").1);
    }
    Ok(T::combination(out))
}

fn explicit_coefficient(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Option<Scalar>> {
    let save = cur.clone();
    if cur.starts_with("(") {
        // `(scalar)*` or a parenthesised combination
        cur.eat("(");
        let start = cur.pos();
        let raw = cur.raw_item();
        if let (Ok(c), true) = (Scalar::from_str(raw), cur.eat(")")) {
            if cur.eat("*") {
                return field_checked(cur, start, c, alg).map(Some);
            }
        }
        *cur = save;
        return Ok(None);
    }
    if cur.at_coefficient() {
        let start = cur.pos();
        let c = cur.coefficient()?;
        cur.expect("*")?;
        return field_checked(cur, start, c, alg).map(Some);
    }
    Ok(None)
}

fn field_checked(cur: &Cursor, start: usize, c: Scalar, alg: &Arc<Algebra>) -> PResult<Scalar> {
    if alg.field().contains(&c) {
        Ok(c)
    } else {
        Err(cur.error_at(start, format!("{c} is outside the field {}", alg.field())))
    }
}

fn part<T: Atoms>(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<(Scalar, bool, T)> {
    let coef = explicit_coefficient(cur, alg)?;
    let item = if cur.eat("(") {
        let inner = parse_combo(cur, alg)?;
        cur.expect(")")?;
        inner
    } else {
        match T::atom(cur, alg)? {
            Some(a) => a,
            None => return Err(cur.error("expected a term")),
        }
    };
    Ok((coef.clone().unwrap_or_else(Scalar::one), coef.is_some(), item))
}

pub fn format_combo<T: Atoms>(x: &T, alg: &Arc<Algebra>) -> String {
    let Some(parts) = x.parts() else {
        return x.format_atom(alg);
    };
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (c, item)) in parts.iter().enumerate() {
        let (neg, mag) = split_sign(c);
        match (n, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let body = match item.parts() {
            Some(_) => format!("({})", format_combo(item, alg)),
            None => item.format_atom(alg),
        };
        out.push_str(&format!("{}*{body}", coefficient_text(&mag)));
    }
    out
}
