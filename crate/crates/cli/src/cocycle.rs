//! Cocycle expressions: `phi[p]`, `phi'[p]`, `phimu{v1,...}`, `cb{<element>}`
//! and their scalar combinations. In `cb{u}` the coefficients of `u` are the
//! values of the functional `f`.

use std::sync::Arc;

use hamiltonian_core::cohomology::{Cocycle, LinearFunctional};
use hamiltonian_core::derivations::HomPlus;
use hamiltonian_core::kernel::{Algebra, Element, Scalar};

use crate::combo::{format_combo, parse_combo, Atoms};
use crate::element::{expr, format_element};
use crate::syntax::{Cursor, PResult};

impl Atoms for Cocycle {
    fn combination(parts: Vec<(Scalar, Self)>) -> Self {
        Cocycle::Combo(parts)
    }

    fn parts(&self) -> Option<&[(Scalar, Self)]> {
        match self {
            Cocycle::Combo(p) => Some(p),
            _ => None,
        }
    }

    fn atom(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Option<Self>> {
        cur.skip_ws();
        let start = cur.pos();
        let index = |cur: &mut Cursor| -> PResult<usize> {
            let p = cur.uint()? as usize;
            cur.expect("]")?;
            Ok(p)
        };
        if cur.eat("phi'[") {
            return Ok(Some(Cocycle::PhiPPrime(index(cur)?)));
        }
        if cur.eat("phi[") {
            return Ok(Some(Cocycle::PhiP(index(cur)?)));
        }
        if cur.eat("phimu") {
            let values = cur.list("{", "}", Cursor::scalar_item)?;
            let h = HomPlus::new(alg, values).map_err(|e| cur.error_at(start, e.to_string()))?;
            return Ok(Some(Cocycle::PhiMu(h)));
        }
        if cur.eat("cb{") {
            let u = expr(cur, alg)?;
            cur.expect("}")?;
            return Ok(Some(Cocycle::Coboundary(LinearFunctional::from_element(&u))));
        }
        Ok(None)
    }

    fn format_atom(&self, alg: &Arc<Algebra>) -> String {
        match self {
            Cocycle::PhiP(p) => format!("phi[{p}]"),
            Cocycle::PhiPPrime(p) => format!("phi'[{p}]"),
            Cocycle::PhiMu(h) => {
                format!("phimu{{{}}}", h.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            }
            Cocycle::Coboundary(f) => format!("cb{{{}}}", format_element(&functional_element(f, alg))),
            Cocycle::Table(t) => format!("<table on {} keys>", t.keybox.len()),
            Cocycle::Combo(_) => format_combo(self, alg),
        }
    }
}

pub fn parse_cocycle(text: &str, alg: &Arc<Algebra>) -> PResult<Cocycle> {
    let mut cur = Cursor::new(text);
    let c: Cocycle = parse_combo(&mut cur, alg)?;
    cur.finish()?;
    c.validate(alg).map_err(|e| cur.error_at(0, e.to_string()))?;
    Ok(c)
}

/// Table cocycles have no text form and print as a placeholder.
pub fn format_cocycle(c: &Cocycle, alg: &Arc<Algebra>) -> String {
    format_combo(c, alg)
}

fn functional_element(f: &LinearFunctional, alg: &Arc<Algebra>) -> Element {
    let terms = f.values().iter().map(|(k, c)| (k.clone(), c.clone())).collect();
    Element::from_terms(alg, false, terms).expect("functional keys lie in the algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamiltonian_core::fixtures;

    #[test]
    fn round_trips() {
        let a = fixtures::f6();
        for text in ["phi[1]", "phi'[1] - 2*phi[1]", "phimu{0,0,1}", "cb{x[(1,0)] - 1/3*x[(0,1)]}", "1*(phi[1] + cb{1})"] {
            let c = parse_cocycle(text, &a).unwrap();
            let s = format_cocycle(&c, &a);
            assert_eq!(parse_cocycle(&s, &a).unwrap(), c, "{text} -> {s}");
        }
    }

    #[test]
    fn phi_needs_pure_first_block() {
        assert!(parse_cocycle("phi[1]", &fixtures::f3()).is_err());
    }
}
