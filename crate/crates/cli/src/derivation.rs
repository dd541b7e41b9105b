//! Derivation expressions: `d0`, `d0'`, `d[p]`, `dt[q]`, `dmu{v1,...}`,
//! `ad(<element>)` combined with `+`, `-` and scalar multiples.

use std::sync::Arc;

use hamiltonian_core::derivations::{DerivationSpec, HomPlus};
use hamiltonian_core::kernel::{Algebra, Scalar};

use crate::combo::{format_combo, parse_combo, Atoms};
use crate::element::{expr, format_element};
use crate::syntax::{Cursor, PResult};

impl Atoms for DerivationSpec {
    fn combination(parts: Vec<(Scalar, Self)>) -> Self {
        DerivationSpec::Combo(parts)
    }

    fn parts(&self) -> Option<&[(Scalar, Self)]> {
        match self {
            DerivationSpec::Combo(p) => Some(p),
            _ => None,
        }
    }

    fn atom(cur: &mut Cursor, alg: &Arc<Algebra>) -> PResult<Option<Self>> {
        cur.skip_ws();
        let start = cur.pos();
        if cur.eat("d0'") {
            return Ok(Some(DerivationSpec::DPrime0));
        }
        if cur.eat("dmu") {
            let values = cur.list("{", "}", Cursor::scalar_item)?;
            let h = HomPlus::new(alg, values).map_err(|e| cur.error_at(start, e.to_string()))?;
            return Ok(Some(DerivationSpec::DMu(h)));
        }
        if cur.eat("dt[") {
            let q = cur.uint()? as usize;
            cur.expect("]")?;
            return Ok(Some(DerivationSpec::PartialT(q)));
        }
        if cur.eat("d[") {
            let p = cur.uint()? as usize;
            cur.expect("]")?;
            return Ok(Some(DerivationSpec::DOuter(p)));
        }
        if cur.eat("d0") {
            return Ok(Some(DerivationSpec::D0));
        }
        if cur.eat("ad(") {
            let u = expr(cur, alg)?;
            cur.expect(")")?;
            return Ok(Some(DerivationSpec::Ad(u)));
        }
        Ok(None)
    }

    fn format_atom(&self, alg: &Arc<Algebra>) -> String {
        match self {
            DerivationSpec::DPrime0 => "d0'".into(),
            DerivationSpec::D0 => "d0".into(),
            DerivationSpec::DOuter(p) => format!("d[{p}]"),
            DerivationSpec::PartialT(q) => format!("dt[{q}]"),
            DerivationSpec::DMu(h) => {
                format!("dmu{{{}}}", h.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            }
            DerivationSpec::Ad(u) => format!("ad({})", format_element(u)),
            DerivationSpec::Combo(_) => format_combo(self, alg),
        }
    }
}

/// Parse and check the generator indices against the algebra.
pub fn parse_derivation(text: &str, alg: &Arc<Algebra>) -> PResult<DerivationSpec> {
    let mut cur = Cursor::new(text);
    let d: DerivationSpec = parse_combo(&mut cur, alg)?;
    cur.finish()?;
    d.validate(alg).map_err(|e| cur.error_at(0, e.to_string()))?;
    Ok(d)
}

/// `ad(..)` carries its algebra; the other atoms need none.
pub fn format_derivation(d: &DerivationSpec, alg: &Arc<Algebra>) -> String {
    format_combo(d, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamiltonian_core::fixtures;

    #[test]
    fn atoms_and_combinations() {
        let a = fixtures::f1();
        assert_eq!(parse_derivation("d0", &a).unwrap(), DerivationSpec::D0);
        let c = parse_derivation("d0 - 3/2*d[1] + ad(x[(1,0)])", &a).unwrap();
        let DerivationSpec::Combo(parts) = &c else { panic!("{c:?}") };
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[1].0, Scalar::from_ratio(-3, 2));
        assert_eq!(format_derivation(&c, &a), "1*d0 - 3/2*d[1] + 1*ad(x[(1,0)])");
        assert_eq!(parse_derivation(&format_derivation(&c, &a), &a).unwrap(), c);
    }

    #[test]
    fn nested_and_zero() {
        let a = fixtures::f1();
        for text in ["2*(d0 + d0') - d[2]", "0", "-d0", "1*(0)", "(1+sqrt(2))*d0"] {
            let alg = if text.contains("sqrt") { fixtures::f6() } else { a.clone() };
            let d = parse_derivation(text, &alg).unwrap();
            assert_eq!(parse_derivation(&format_derivation(&d, &alg), &alg).unwrap(), d, "{text}");
        }
    }

    #[test]
    fn unknown_generator() {
        assert!(parse_derivation("d[9]", &fixtures::f1()).is_err());
        assert!(parse_derivation("q0", &fixtures::f1()).is_err());
    }
}
