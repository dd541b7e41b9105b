//! Element expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'sqrt(' INT ')' | 'x[(' s, ... ')]' | 't' INT ['^' INT] | '(' expr ')'
//! ```

use std::sync::Arc;

use hamiltonian_core::kernel::{Algebra, Element, GroupVector, Key, MultiIndex, Scalar};
use serde_json::{json, Value};

use crate::syntax::{coefficient_text, split_sign, Cursor, PResult};

pub fn parse_element(text: &str, alg: &Arc<Algebra>) -> PResult<Element> {
    let mut cur = Cursor::new(text);
    let e = expr(&mut cur, alg)?;
    cur.finish()?;
    Ok(e)
}

/// Parse an expression embedded in a larger grammar.
pub fn expr(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Element> {
    let neg = cur.eat("-");
    let mut acc = term(cur, alg)?;
    if neg {
        acc = acc.neg();
    }
    loop {
        let sub = if cur.eat("+") {
            false
        } else if cur.eat("-") {
            true
        } else {
            return Ok(acc);
        };
        let pos = cur.pos();
        let t = term(cur, alg)?;
        acc = if sub { acc.try_sub(&t) } else { acc.try_add(&t) }.map_err(|e| cur.error_at(pos, e.to_string()))?;
    }
}

fn term(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Element> {
    let mut acc = factor(cur, alg)?;
    while cur.eat("*") {
        cur.skip_ws();
        let pos = cur.pos();
        let f = factor(cur, alg)?;
        acc = acc.multiply(&f).map_err(|e| cur.error_at(pos, e.to_string()))?;
    }
    Ok(acc)
}

fn factor(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Element> {
    cur.skip_ws();
    let start = cur.pos();
    let at = |cur: &Cursor, e: hamiltonian_core::Error| cur.error_at(start, e.to_string());
    if cur.eat("(") {
        let e = expr(cur, alg)?;
        cur.expect(")")?;
        return Ok(e);
    }
    if cur.eat("x[") {
        let coords = cur.list("(", ")", Cursor::scalar_item)?;
        cur.expect("]")?;
        if coords.len() != alg.dim() {
            return Err(cur.error_at(start, format!("exponent has {} coordinates, expected {}", coords.len(), alg.dim())));
        }
        if let Some(bad) = coords.iter().find(|c| !alg.field().contains(c)) {
            return Err(cur.error_at(start, format!("coordinate {bad} is outside the field {}", alg.field())));
        }
        return Element::x(alg, GroupVector::new(coords)).map_err(|e| at(cur, e));
    }
    if cur.eat("t") {
        let p = cur.uint()? as usize;
        let k = if cur.eat("^") { cur.uint()? } else { 1 };
        let t = Element::t(alg, p).map_err(|e| at(cur, e))?;
        let k = u32::try_from(k).map_err(|_| cur.error_at(start, "exponent too large"))?;
        return Ok(t.pow(k));
    }
    if cur.at_coefficient() {
        let c = cur.coefficient()?;
        if !alg.field().contains(&c) {
            return Err(cur.error_at(start, format!("{c} is outside the field {}", alg.field())));
        }
        return Ok(Element::one(alg).scale(&c));
    }
    Err(cur.error("expected a number, `sqrt(d)`, `x[(...)]`, `t<p>` or `(`"))
}

/// The monomial part of a term, `None` for the unit key.
pub fn format_key(alg: &Algebra, k: &Key) -> Option<String> {
    let s = alg.shape();
    let mut parts = Vec::new();
    if !k.alpha.is_zero() {
        let c: Vec<String> = k.alpha.coords().iter().map(|c| c.to_string()).collect();
        parts.push(format!("x[({})]", c.join(",")));
    }
    for p in s.all_indices() {
        match k.index[s.slot(p)] {
            0 => {}
            1 => parts.push(format!("t{p}")),
            e => parts.push(format!("t{p}^{e}")),
        }
    }
    (!parts.is_empty()).then(|| parts.join("*"))
}

fn format_term(alg: &Algebra, k: &Key, c: &Scalar) -> String {
    match format_key(alg, k) {
        None => coefficient_text(c),
        Some(m) if c.is_one() => m,
        Some(m) => format!("{}*{m}", coefficient_text(c)),
    }
}

/// Normal form: terms in canonical order, `0` for the zero element.
pub fn format_element(u: &Element) -> String {
    let alg = u.algebra();
    let mut out = String::new();
    for (n, (k, c)) in u.terms().iter().enumerate() {
        let (neg, mag) = split_sign(c);
        match (n, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&format_term(alg, k, &mag));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn element_to_json(u: &Element) -> Value {
    Value::Array(
        u.terms()
            .iter()
            .map(|(k, c)| {
                json!({
                    "alpha": k.alpha.coords().iter().map(|a| a.to_canonical_string()).collect::<Vec<_>>(),
                    "i": k.index.entries(),
                    "c": c.to_canonical_string(),
                })
            })
            .collect(),
    )
}

/// Inverse of [`element_to_json`].
pub fn element_from_json(v: &Value, alg: &Arc<Algebra>) -> Result<Element, String> {
    let terms = v.as_array().ok_or("expected a list of terms")?;
    let mut out = Vec::new();
    for t in terms {
        let scalar = |v: &Value| -> Result<Scalar, String> {
            v.as_str().ok_or("expected a scalar string")?.parse().map_err(|e: hamiltonian_core::kernel::ParseScalarError| e.to_string())
        };
        let alpha = t["alpha"].as_array().ok_or("missing alpha")?.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
        let index = t["i"]
            .as_array()
            .ok_or("missing i")?
            .iter()
            .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or("bad index entry"))
            .collect::<Result<Vec<_>, _>>()?;
        if alpha.len() != alg.dim() || index.len() != alg.dim() {
            return Err(format!("term has the wrong length, expected {}", alg.dim()));
        }
        out.push((Key::new(GroupVector::new(alpha), MultiIndex::new(index)), scalar(&t["c"])?));
    }
    Element::from_terms(alg, false, out).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamiltonian_core::fixtures;

    #[test]
    fn two_terms() {
        let a = fixtures::f1();
        let u = parse_element("x[(1,0)] + 3/2*x[(0,1)]", &a).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(format_element(&u), "3/2*x[(0,1)] + x[(1,0)]");
    }

    #[test]
    fn classical_t_power() {
        let a = fixtures::f2();
        let u = parse_element("t1^2*t2", &a).unwrap();
        let (k, _) = u.as_monomial().unwrap();
        assert_eq!(k.index.entries(), &[2, 1]);
        assert_eq!(format_element(&u), "t1^2*t2");
    }

    #[test]
    fn forbidden_t_is_rejected() {
        let e = parse_element("x[(1,0)] + t1", &fixtures::f1()).unwrap_err();
        assert_eq!(e.column, 12);
    }

    #[test]
    fn quadratic_coefficients() {
        let a = fixtures::f6();
        let u = parse_element("(1 - sqrt(2))*x[(sqrt(2),0)] - 2*sqrt(2)", &a).unwrap();
        let s = format_element(&u);
        assert_eq!(parse_element(&s, &a).unwrap(), u);
        assert!(parse_element("sqrt(3)", &a).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = fixtures::f3();
        let u = parse_element("x[(1,-1)]*t2^3 - 5/7*x[(0,2)]", &a).unwrap();
        assert_eq!(element_from_json(&element_to_json(&u), &a).unwrap(), u);
    }
}
